"""Least and greatest fixed points through the generic drivers, against brute force."""
import pytest

from fixcat.core.errors import LatticeError
from fixcat.core.lattice import (
    FiniteLattice,
    MonotoneMap,
    all_fixed_points,
    enumerate_lattices,
    enumerate_monotone_maps,
    gfp,
    gfp_via_adamek,
    greatest_of,
    least_of,
    least_prefixed_above,
    lfp,
    lfp_via_adamek,
)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5)])
def test_lattice_counts_up_to_isomorphism(n, count):
    assert len(enumerate_lattices(n)) == count


@pytest.mark.acceptance
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_adamek_matches_the_extreme_fixed_points(n):
    for lattice in enumerate_lattices(n):
        for f in enumerate_monotone_maps(lattice):
            fixed = all_fixed_points(f)
            least, greatest = least_of(lattice, fixed), greatest_of(lattice, fixed)
            assert lfp_via_adamek(f) == least == lfp(f).element
            assert gfp_via_adamek(f) == greatest == gfp(f).element


def test_kleene_trace_climbs_from_bottom():
    lattice = FiniteLattice.chain(4)
    f = MonotoneMap.from_function(lattice, lambda x: str(min(int(x) + 1, 2)))
    result = lfp(f)
    assert result.element == "2"
    assert result.trace == ["0", "1", "2"]
    assert result.stage == 2
    assert gfp(f).element == "2"


def test_powerset_lattice_meets_and_joins():
    lattice = FiniteLattice.powerset(["a", "b"])
    assert lattice.bottom == "{}"
    assert lattice.top == "{a,b}"
    assert lattice.join("{a}", "{b}") == "{a,b}"
    assert lattice.meet("{a}", "{b}") == "{}"
    assert sorted(lattice.hasse_edges()) == sorted([
        ("{}", "{a}"), ("{}", "{b}"), ("{a}", "{a,b}"), ("{b}", "{a,b}"),
    ])


def test_non_lattice_poset_names_the_pair():
    with pytest.raises(LatticeError) as err:
        FiniteLattice.from_hasse(["⊥", "a", "b", "c", "d"],
                                 [("⊥", "a"), ("⊥", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    assert err.value.witness is not None


def test_cyclic_hasse_diagram_is_rejected():
    with pytest.raises(LatticeError):
        FiniteLattice.from_hasse(["a", "b"], [("a", "b"), ("b", "a")])


def test_non_monotone_map_is_rejected_with_a_witness():
    lattice = FiniteLattice.chain(2)
    swap = MonotoneMap.from_table(lattice, {"0": "1", "1": "0"})
    assert not swap.is_monotone()
    with pytest.raises(LatticeError) as err:
        lfp(swap)
    assert err.value.witness == ["0", "1"]


def test_least_prefixed_point_above_an_element():
    lattice = FiniteLattice.chain(4)
    f = MonotoneMap.constant(lattice, "1")
    # x ∨ f(x) = x from 1 upwards
    assert least_prefixed_above(f, "0") == "1"
    assert least_prefixed_above(f, "2") == "2"
