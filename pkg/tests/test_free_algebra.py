"""Free algebras on an object: the direct chain and the lax route agree."""
import pytest

from fixcat.core.adamek import adamek_on_object, free_algebra
from fixcat.core.algebra import algebra_homs, enumerate_algebras, enumerate_coalgebras, iter_algebras
from fixcat.core.category import FinSet
from fixcat.core.chains import NotStabilized
from fixcat.core.functors import MonotoneEndofunctor
from fixcat.core.lattice import FiniteLattice, MonotoneMap, least_prefixed_above

FREE_PAIRS = [
    ("const-a", ("x",), 2),
    ("const-ab", ("x", "y"), 4),
    ("const-empty", ("x",), 1),
    ("x-times-empty", ("x", "y"), 2),
    ("one-plus-x-times-empty", ("x",), 2),
]


@pytest.mark.parametrize("name, elements, size", FREE_PAIRS)
def test_free_algebra_has_the_universal_hom_count(functors, name, elements, size):
    F = functors[name]
    K = FinSet(elements)
    cert = free_algebra(F, K, probe_size=2)
    assert cert.verified, cert.probes
    assert len(cert.result.carrier) == size
    cat = F.category
    for alg in iter_algebras(F, 2):
        assert len(algebra_homs(cert.result, alg)) == len(cat.hom(K, alg.carrier))


@pytest.mark.parametrize("name, elements, size", FREE_PAIRS)
def test_lax_route_matches_the_direct_route(functors, name, elements, size):
    F = functors[name]
    K = FinSet(elements)
    direct = free_algebra(F, K, probe_size=0)
    lax = adamek_on_object(F, K, probe_size=2)
    assert lax.verified, lax.probes
    assert len(lax.result.carrier) == len(direct.result.carrier) == size


def test_unit_factors_every_map_out_of_the_generators(functors):
    F = functors["const-a"]
    K = FinSet(("x",))
    cert = free_algebra(F, K)
    cat = F.category
    assert cert.index == 2
    for alg in iter_algebras(F, 2):
        for k in cat.hom(K, alg.carrier):
            lifts = [h for h in algebra_homs(cert.result, alg) if cat.compose(h, cert.unit) == k]
            assert len(lifts) == 1


def test_free_algebra_on_the_empty_set_is_initial(functors):
    F = functors["const-ab"]
    cert = free_algebra(F, FinSet())
    assert len(cert.result.carrier) == 2
    assert cert.verified


def test_free_identity_algebra_grows_without_bound(functors):
    out = free_algebra(functors["identity"], FinSet(("x",)), budget=6)
    assert isinstance(out, NotStabilized)
    assert out.trend == "strictly-increasing"
    assert out.stage_sizes[:4] == [1, 2, 3, 4]


@pytest.mark.parametrize("start, expected", [("0", "1"), ("2", "2")])
def test_free_algebra_in_a_lattice_is_the_least_prefixed_point_above(start, expected):
    lattice = FiniteLattice.chain(4)
    f = MonotoneMap.constant(lattice, "1")
    cert = free_algebra(MonotoneEndofunctor(f), start)
    assert cert.result.carrier == expected == least_prefixed_above(f, start)
    assert cert.verified


def test_identity_structures_on_small_carriers(functors):
    F = functors["identity"]
    assert len(enumerate_algebras(F, 2)) == 6
    assert len(enumerate_coalgebras(F, 2)) == 6
