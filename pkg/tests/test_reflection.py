"""Reflection of coalgebras onto fixed points, and the dual coreflection of algebras."""
import pytest

from fixcat.core.algebra import Algebra, Coalgebra, StructureHom, coalgebra_homs, iter_coalgebras
from fixcat.core.category import FinMap, FinSet
from fixcat.core.chains import NotStabilized
from fixcat.core.errors import CapabilityMissing, IllTypedInput
from fixcat.core.functors import Constant, Declared, Identity
from fixcat.core.fixpoint import (
    FixedPoint,
    algebra_as_fixed_point,
    coreflect,
    fixed_point_hom_enumerate,
    is_F_local,
    iter_fixed_points,
    reflect,
    reflection_adjunction_check,
    relative_initial_check,
)
from fixcat.models.algebra import CoalgebraDocument
from fixcat.services.loader import build_coalgebra, load_document

THREE = FinSet.range(3)


@pytest.fixture
def lasso(corpus):
    return build_coalgebra(load_document(corpus / "lasso-coalgebra.json", CoalgebraDocument))


def test_lasso_reflects_onto_its_cycle(lasso):
    refl = reflect(lasso)
    assert refl.index == 1
    assert refl.fixed.carrier == FinSet((1, 2))
    assert refl.fixed.iso.table() == {1: 2, 2: 1}
    assert refl.unit.table() == {0: 1, 1: 2, 2: 1}


def test_reflection_unit_is_a_coalgebra_hom(lasso):
    refl = reflect(lasso)
    assert refl.unit in coalgebra_homs(lasso, refl.fixed.as_coalgebra())


def test_reflection_adjunction_counts(lasso):
    report = reflection_adjunction_check(lasso, probe_size=2)
    assert report["probed"] == 4
    assert report["passed"], report["failures"]


def test_relative_initial_algebra_agrees_with_the_reflection(lasso):
    report = relative_initial_check(lasso)
    assert report["agree"]
    assert report["reflection_size"] == report["relative_size"] == 2


def test_fixed_points_of_the_identity():
    found = list(iter_fixed_points(Identity(), 2))
    assert [len(k.carrier) for k in found] == [0, 1, 2, 2]


def test_fixed_point_homs_into_the_swap():
    F = Identity()
    two = FinSet.range(2)
    swap = FinMap(two, two, (1, 0))
    k = FixedPoint(F, two, swap, swap)
    assert len(fixed_point_hom_enumerate(k, k)) == 2
    point = FixedPoint(F, FinSet.range(1), FinMap.identity(FinSet.range(1)), FinMap.identity(FinSet.range(1)))
    assert fixed_point_hom_enumerate(k, point) != []
    assert fixed_point_hom_enumerate(point, k) == []


def test_fixed_point_needs_mutually_inverse_maps():
    F = Identity()
    two = FinSet.range(2)
    swap = FinMap(two, two, (1, 0))
    with pytest.raises(IllTypedInput):
        FixedPoint(F, two, swap, FinMap.identity(two))


def test_unbounded_coalgebra_does_not_stabilize(functors):
    F = functors["one-plus-x"]
    point = FinSet.range(1)
    coalg = Coalgebra(F, point, FinMap(point, F.on_object(point), (0,)))
    out = reflect(coalg, budget=6)
    assert isinstance(out, NotStabilized)
    assert out.trend == "strictly-increasing"
    assert reflection_adjunction_check(coalg, budget=6)["status"] == "not-stabilized"


def test_reflection_needs_colimit_preservation():
    F = Declared(Identity(), colimits=False)
    coalg = Coalgebra(F, THREE, FinMap(THREE, THREE, (1, 2, 1)))
    with pytest.raises(CapabilityMissing):
        reflect(coalg)


def test_coreflection_of_the_lasso_algebra():
    alg = Algebra(Identity(), THREE, FinMap(THREE, THREE, (1, 2, 1)))
    core = coreflect(alg)
    assert core.index == 0
    assert core.fixed.carrier == FinSet((1, 2))
    assert core.fixed.inverse.table() == {1: 2, 2: 1}
    assert core.counit.table() == {1: 1, 2: 2}


def test_invertible_algebras_are_fixed_points():
    two = FinSet.range(2)
    alg = Algebra(Identity(), two, FinMap(two, two, (1, 0)))
    assert algebra_as_fixed_point(alg).as_algebra() == alg
    with pytest.raises(IllTypedInput):
        algebra_as_fixed_point(Algebra(Identity(), two, FinMap(two, two, (0, 0))))


# ── Sweeps over small coalgebras ──

SWEEP = [
    pytest.param(c, id=f"{c.functor.description}-{len(c.carrier)}-{c.coaction.values}")
    for F in (Identity(), Constant(FinSet(("a", "b"))))
    for c in iter_coalgebras(F, 2)
]


@pytest.mark.parametrize("coalg", SWEEP)
def test_reflection_adjunction_on_small_coalgebras(coalg):
    report = reflection_adjunction_check(coalg, probe_size=3)
    assert report["passed"], report["failures"]


@pytest.mark.parametrize("coalg", SWEEP)
def test_every_coaction_is_local(coalg):
    F = coalg.functor
    image = Coalgebra(F, F.on_object(coalg.carrier), F.on_morphism(coalg.coaction))
    verdict = is_F_local(StructureHom(coalg, image, coalg.coaction))
    assert verdict.is_local, verdict.witness


@pytest.mark.parametrize("coalg", SWEEP)
def test_relative_initial_algebra_on_small_coalgebras(coalg):
    assert relative_initial_check(coalg)["agree"]
