"""Chains that never stabilize are reported, not looped on."""
import pytest

from fixcat.core.adamek import adamek_on_object, free_algebra, initial_algebra, terminal_coalgebra
from fixcat.core.category import FinSet
from fixcat.core.chains import NotStabilized

BUDGET = 7


def _assert_growing(out, direction="colimit"):
    assert isinstance(out, NotStabilized)
    assert out.trend == "strictly-increasing"
    assert out.direction == direction
    assert len(out.stage_sizes) == BUDGET + 1
    report = out.report()
    assert report["status"] == "not-stabilized"
    assert report["budget"] == BUDGET


def test_natural_numbers_have_no_finite_initial_algebra(functors):
    out = initial_algebra(functors["one-plus-x"], budget=BUDGET)
    _assert_growing(out)
    assert out.stage_sizes == list(range(BUDGET + 1))


def test_streams_have_no_finite_terminal_coalgebra(functors):
    out = terminal_coalgebra(functors["x-times-bits"], budget=BUDGET)
    _assert_growing(out, "limit")
    assert out.stage_sizes[:4] == [1, 2, 4, 8]


@pytest.mark.parametrize("route", [free_algebra, adamek_on_object])
def test_free_identity_algebra_on_a_point(functors, route):
    out = route(functors["identity"], FinSet(("x",)), budget=BUDGET)
    _assert_growing(out)


def test_image_sizes_grow_with_the_stages(functors):
    out = initial_algebra(functors["one-plus-x"], budget=BUDGET)
    assert out.image_sizes == [0] + list(range(BUDGET))
