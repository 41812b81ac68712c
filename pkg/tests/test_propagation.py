import itertools

import pytest

from fixcat.core.adamek import (
    LaxPropagation,
    adamek_lax,
    propagate,
    propagate_hom,
    propagation_fixed_check,
    transfinite_restart,
    unit_is_natural,
)
from fixcat.core.algebra import (
    Algebra,
    embed_to_lax,
    free_lax_on_object,
    iter_lax_algebras,
    lax_homs,
    lax_to_algebra,
)
from fixcat.core.category import FinMap, FinSet
from fixcat.core.errors import ComparisonNotIso, ResolutionNotInvertible
from fixcat.core.functors import Constant, Identity, Sum
from fixcat.models.algebra import LaxAlgebraDocument
from fixcat.services.loader import build_lax_algebra, load_document

A = FinSet(("a",))
LAX_FUNCTORS = {
    "identity": Identity(),
    "const-a": Constant(A),
    "a-plus-x": Sum((Identity(), Constant(A))),
}


@pytest.mark.parametrize("name", sorted(LAX_FUNCTORS))
def test_unit_invertible_exactly_when_resolution_is(name):
    for lax in iter_lax_algebras(LAX_FUNCTORS[name], 2, 2):
        report = propagation_fixed_check(lax)
        assert report["agree"], report
        assert (report["witness"] is None) == report["resolution_iso"]


@pytest.mark.parametrize("name", sorted(LAX_FUNCTORS))
def test_unit_is_natural_on_small_lax_algebras(name):
    small = list(iter_lax_algebras(LAX_FUNCTORS[name], 1, 2))
    for src, dst in itertools.product(small, repeat=2):
        for h in lax_homs(src, dst):
            assert unit_is_natural(h)


def test_propagating_a_hom_lands_between_the_outputs():
    F = Identity()
    small = list(iter_lax_algebras(F, 1, 1))
    for src, dst in itertools.product(small, repeat=2):
        for h in lax_homs(src, dst):
            image = propagate_hom(h)
            assert image.source == propagate(src).output
            assert image.target == propagate(dst).output


def test_point_lax_is_already_fixed(corpus):
    lax = build_lax_algebra(load_document(corpus / "point-lax.json", LaxAlgebraDocument))
    step = propagate(lax)
    assert len(step.pushout.apex) == 1
    report = propagation_fixed_check(lax)
    assert report["unit_iso"] and report["resolution_iso"]
    assert lax_to_algebra(lax).action("a") == "x"


def test_propagation_glues_the_generators_to_the_constants():
    F = Constant(A)
    lax = free_lax_on_object(F, FinSet(("x",)))
    assert len(lax.apex) == 0
    step = propagate(lax)
    assert len(step.pushout.apex) == 2
    assert step.output.apex == A
    # a constant functor resolves after one step
    assert propagation_fixed_check(step.output)["resolution_iso"]
    report = propagation_fixed_check(lax)
    assert not report["unit_iso"]
    assert report["witness"]["kind"] == "uncovered"


def test_strict_algebras_embed_as_fixed_lax_algebras():
    two = FinSet.range(2)
    alg = Algebra(Identity(), two, FinMap(two, two, (1, 0)))
    lax = embed_to_lax(alg)
    assert propagation_fixed_check(lax)["agree"]
    assert lax_to_algebra(lax) == alg


def test_lax_to_algebra_needs_an_invertible_resolution():
    F = Identity()
    lax = free_lax_on_object(F, FinSet(("x",)))
    with pytest.raises(ResolutionNotInvertible) as err:
        lax_to_algebra(lax)
    assert err.value.witness["kind"] == "uncovered"


def test_restart_stops_at_the_first_fixed_colimit():
    F = Constant(A)
    run = transfinite_restart(free_lax_on_object(F, FinSet(("x",))), LaxPropagation(F))
    assert run.stopped == "fixed"
    assert len(run.fixed.carrier) == 2
    assert len(run.rounds) == 1


def test_restart_reports_a_growing_chain():
    F = Identity()
    run = transfinite_restart(free_lax_on_object(F, FinSet(("x",))), LaxPropagation(F), budget=6)
    assert run.stopped == "not-stabilized"
    assert run.report()["rounds"][-1]["trend"] == "strictly-increasing"


def test_lax_route_reports_a_non_invertible_unit_as_a_comparison_failure(monkeypatch):
    lax = free_lax_on_object(Constant(A), FinSet(("x",)))
    monkeypatch.setattr(LaxPropagation, "unit_is_iso", lambda self, x: (False, {"kind": "uncovered"}))
    with pytest.raises(ComparisonNotIso) as info:
        adamek_lax(lax)
    assert info.value.witness == {"kind": "uncovered"}
