import pytest

from fixcat.core.category import FinMap, FinSet, FinSetCategory, OrderArrow, ThinLatticeCategory
from fixcat.core.chains import (
    NotStabilized,
    Stabilized,
    chain_colimit,
    chain_limit,
    growth_trend,
    iterate_links,
    joint_chain_outcomes,
)
from fixcat.core.errors import IllTypedInput
from fixcat.core.lattice import FiniteLattice

A = FinSet(("a",))


def _const_a_links():
    """∅ → A → A → ..., the initial chain of the constant functor A."""
    first = FinMap(FinSet(), A, ())
    return iterate_links(first, lambda link: FinMap.identity(A))


def test_constant_chain_stabilizes_after_the_image_catches_up():
    out = chain_colimit(FinSetCategory(), _const_a_links())
    assert isinstance(out, Stabilized)
    assert out.index == 2
    assert out.colimit == A
    assert out.stage_sizes == [0, 1, 1, 1]


def test_identity_chain_is_stable_immediately():
    links = iterate_links(FinMap.identity(FinSet.range(2)), lambda m: m)
    out = chain_colimit(FinSetCategory(), links)
    assert out.index == 0
    assert out.colimit == FinSet.range(2)
    assert out.legs[0] == FinMap.identity(FinSet.range(2))


def test_collapsing_chain_keeps_the_eventual_image():
    # 0 → 1 → 2 → 1 on {0, 1, 2}
    nu = FinMap(FinSet.range(3), FinSet.range(3), (1, 2, 1))
    out = chain_colimit(FinSetCategory(), iterate_links(nu, lambda m: m))
    assert out.index == 1
    assert out.colimit == FinSet((1, 2))
    # legs form a cocone
    for k, link in enumerate(out.links):
        assert out.legs[k + 1].after(link) == out.legs[k]


def test_mediating_map_factors_through_the_section():
    out = chain_colimit(FinSetCategory(), _const_a_links())
    leg = FinMap.identity(A)
    assert out.mediate(leg) == FinMap.identity(A)


def test_growing_chain_reports_not_stabilized():
    def grow(link):
        n = len(link.target)
        return FinMap(FinSet.range(n), FinSet.range(n + 1), tuple(range(n)))

    first = FinMap(FinSet.range(0), FinSet.range(1), ())
    out = chain_colimit(FinSetCategory(), iterate_links(first, grow), budget=6)
    assert isinstance(out, NotStabilized)
    assert out.stage_sizes == [0, 1, 2, 3, 4, 5, 6]
    assert out.trend == "strictly-increasing"
    assert out.report()["status"] == "not-stabilized"
    assert out.budget == 6


def test_finite_chain_uses_its_last_stage():
    link = FinMap(FinSet.range(1), FinSet.range(2), (0,))
    out = chain_colimit(FinSetCategory(), [link])
    assert out.colimit == FinSet.range(2)
    assert out.index == 1


def test_empty_chain_needs_a_start():
    with pytest.raises(IllTypedInput):
        chain_colimit(FinSetCategory(), [])
    out = chain_colimit(FinSetCategory(), [], start=A)
    assert out.colimit == A


def test_links_must_be_composable():
    a = FinMap(FinSet.range(1), FinSet.range(2), (0,))
    b = FinMap(FinSet.range(3), FinSet.range(3), (0, 1, 2))
    with pytest.raises(IllTypedInput):
        chain_colimit(FinSetCategory(), [a, b])


def test_limit_chain_of_surjections_settles():
    # 1 ← 2 ← 2 ← ... with identities after the first projection
    p0 = FinMap(FinSet.range(2), FinSet.range(1), (0, 0))
    out = chain_limit(FinSetCategory(), iterate_links(p0, lambda m: FinMap.identity(FinSet.range(2))))
    assert isinstance(out, Stabilized)
    assert out.direction == "limit"
    assert len(out.colimit) == 2


def test_thin_chain_is_kleene_iteration():
    lattice = FiniteLattice.chain(3)
    cat = ThinLatticeCategory(lattice)
    step = {"0": "1", "1": "2", "2": "2"}
    links = iterate_links(OrderArrow("0", "1"), lambda m: OrderArrow(step[m.source], step[m.target]))
    out = chain_colimit(cat, links)
    assert out.colimit == "2"
    assert out.stage_sizes[:3] == [1, 2, 3]


def test_joint_chains_share_a_stage():
    cat = FinSetCategory()
    slow = _const_a_links()
    fast = iterate_links(FinMap.identity(A), lambda m: m)
    out_slow, out_fast = joint_chain_outcomes([cat, cat], [FinSet(), A], [slow, fast])
    assert out_slow.index == out_fast.index == 2


@pytest.mark.parametrize("sizes, trend", [
    ([1, 2, 4], "strictly-increasing"),
    ([3, 3, 3], "constant"),
    ([1, 1, 2], "non-decreasing"),
    ([4, 2, 2], "non-increasing"),
    ([1, 3, 2], "irregular"),
    ([5], "too-short"),
])
def test_growth_trend(sizes, trend):
    assert growth_trend(sizes) == trend
