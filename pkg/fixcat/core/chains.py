"""
Sequential (co)limits with stabilization detection.

A chain is consumed lazily, one link at a time, up to a stage budget. For a
colimit chain X_0 → X_1 → ... we track J_n, the image of the incoming link in
X_n (J_0 = X_0). The chain is declared stable at N once link_N maps J_N
bijectively onto J_{N+1} and link_{N+1} does the same one stage later; the
colimit is then J_N. Limits are dual: K_n is the image of the outgoing
projection and stability asks that two consecutive projections restrict to
bijections K_{n+1} → K_n.

Budget exhaustion is reported as a NotStabilized value, never raised.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from fixcat.core.category import (
    ConcreteCategory,
    FinMap,
    FinSet,
    FinSetCategory,
    OrderArrow,
    ThinLatticeCategory,
    UnderArrow,
    UnderCategory,
)
from fixcat.core.errors import CapabilityMissing, IllTypedInput

logger = logging.getLogger("fixcat.chains")

DEFAULT_STAGE_BUDGET = 64


@dataclass
class Stabilized:
    """
    `legs[n]` is the cocone leg X_n → L (colimits) or projection L → X_n
    (limits) for n ≤ index + 1. `section` is the inclusion L ⊆ X_index.
    """

    index: int
    colimit: object
    legs: list
    section: object
    stages: list
    links: list
    category: ConcreteCategory
    direction: str = "colimit"

    @property
    def stage_sizes(self) -> list[int]:
        return [self.category.size(x) for x in self.stages]

    def mediate(self, leg_at_index):
        """
        Unique map between L and a compatible (co)cone, given its component at
        stage `index`: c_N ∘ section for colimits, corestriction of c_N for limits.
        """
        if self.direction == "colimit":
            return self.category.compose(leg_at_index, self.section)
        return _corestrict(self.category, leg_at_index, self.colimit)


@dataclass
class NotStabilized:
    stage_sizes: list
    image_sizes: list
    trend: str
    reason: str
    budget: int
    stages: list = field(default_factory=list, repr=False)
    links: list = field(default_factory=list, repr=False)
    direction: str = "colimit"

    def report(self) -> dict:
        return {
            "status": "not-stabilized",
            "direction": self.direction,
            "stage_sizes": self.stage_sizes,
            "image_sizes": self.image_sizes,
            "trend": self.trend,
            "reason": self.reason,
            "budget": self.budget,
        }


ChainOutcome = Stabilized | NotStabilized


def growth_trend(sizes: list[int]) -> str:
    if len(sizes) < 2:
        return "too-short"
    diffs = np.diff(np.asarray(sizes, dtype=np.int64))
    if np.all(diffs > 0):
        return "strictly-increasing"
    if np.all(diffs == 0):
        return "constant"
    if np.all(diffs >= 0):
        return "non-decreasing"
    if np.all(diffs <= 0):
        return "non-increasing"
    return "irregular"


def iterate_links(first, step):
    """first, step(first), step(step(first)), ... (infinite generator)."""
    link = first
    while True:
        yield link
        link = step(link)


def _corestrict(cat, m, sub):
    if isinstance(cat, FinSetCategory):
        return cat.corestrict(m, sub)
    if isinstance(cat, ThinLatticeCategory):
        return OrderArrow(m.source, sub)
    if isinstance(cat, UnderCategory):
        return UnderArrow(m.source, sub, _corestrict(cat.base, m.base, sub.target))
    raise CapabilityMissing(f"No corestriction in {cat.kind} category")


# ── Trackers ─────────────────────────────────────────────────────────


class _FinSetTracker:
    def __init__(self, cat, start: FinSet, direction: str):
        self.cat = cat
        self.direction = direction
        self.stages = [start]
        self.links = []
        self.images = [set(range(len(start)))] if direction == "colimit" else []
        self.bijective = []

    def push(self, link: FinMap):
        if self.direction == "colimit":
            if link.source != self.stages[-1]:
                raise IllTypedInput(f"Link {len(self.links)} does not start at the previous stage")
            n = len(self.links)
            j_n = self.images[n]
            image = set(link.values)
            restricted = {link.values[i] for i in j_n}
            self.bijective.append(len(restricted) == len(j_n) and restricted == image)
            self.images.append(image)
            self.stages.append(link.target)
        else:
            if link.target != self.stages[-1]:
                raise IllTypedInput(f"Projection {len(self.links)} does not land in the previous stage")
            self.images.append(set(link.values))
            if self.links:
                prev = self.links[-1]
                k_next = self.images[-1]
                restricted = {prev.values[i] for i in k_next}
                self.bijective.append(len(restricted) == len(k_next) and restricted == self.images[-2])
            self.stages.append(link.source)
        self.links.append(link)

    def stable_at(self, n: int) -> bool:
        return n + 1 < len(self.bijective) and self.bijective[n] and self.bijective[n + 1]

    def image_sizes(self) -> list[int]:
        return [len(j) for j in self.images]

    def outcome(self, n: int) -> Stabilized:
        if self.direction == "colimit":
            return self._colimit_outcome(n)
        return self._limit_outcome(n)

    def _colimit_outcome(self, n: int) -> Stabilized:
        x_n = self.stages[n]
        j_n = sorted(self.images[n])
        colim = FinSet(tuple(x_n.elements[i] for i in j_n))
        section = FinMap.inclusion(colim, x_n)
        link_n, link_next = self.links[n], self.links[n + 1]
        # β_N⁻¹ and β_{N+1}⁻¹ on the image subsets
        back_n = {link_n.values[i]: i for i in j_n}
        back_next = {link_next.values[i]: i for i in self.images[n + 1]}
        leg_n = FinMap.from_function(
            x_n, colim, lambda x: x_n.elements[back_n[link_n.values[x_n.position(x)]]]
        )
        x_next = self.stages[n + 1]
        leg_next = FinMap.from_function(
            x_next, colim,
            lambda y: x_n.elements[back_n[back_next[link_next.values[x_next.position(y)]]]],
        )
        legs = [leg_n, leg_next]
        for k in range(n - 1, -1, -1):
            legs.insert(0, legs[0].after(self.links[k]))
        return Stabilized(n, colim, legs, section, self.stages[: n + 2], self.links[: n + 1], self.cat)

    def _limit_outcome(self, n: int) -> Stabilized:
        x_n = self.stages[n]
        k_n = sorted(self.images[n])
        lim = FinSet(tuple(x_n.elements[i] for i in k_n))
        incl = FinMap.inclusion(lim, x_n)
        p_n = self.links[n]
        back = {p_n.values[i]: i for i in self.images[n + 1]}
        x_next = self.stages[n + 1]
        proj_next = FinMap.from_function(lim, x_next, lambda k: x_next.elements[back[x_n.position(k)]])
        legs = [incl, proj_next]
        for k in range(n - 1, -1, -1):
            legs.insert(0, self.links[k].after(legs[0]))
        return Stabilized(n, lim, legs, incl, self.stages[: n + 2], self.links[: n + 1], self.cat, "limit")

    def exhausted_outcome(self) -> Stabilized:
        """Finite chain: the (co)limit is its last stage."""
        m = len(self.stages) - 1
        last = self.stages[m]
        legs = [FinMap.identity(last)]
        for k in range(m - 1, -1, -1):
            if self.direction == "colimit":
                legs.insert(0, legs[0].after(self.links[k]))
            else:
                legs.insert(0, self.links[k].after(legs[0]))
        return Stabilized(m, last, legs, FinMap.identity(last), self.stages, self.links, self.cat, self.direction)


class _ThinTracker:
    def __init__(self, cat, start: str, direction: str):
        self.cat = cat
        self.direction = direction
        self.stages = [start]
        self.links = []
        self.bijective = []

    def push(self, link: OrderArrow):
        expected = link.source if self.direction == "colimit" else link.target
        if expected != self.stages[-1]:
            raise IllTypedInput(f"Link {len(self.links)} does not attach to the previous stage")
        self.bijective.append(link.source == link.target)
        self.stages.append(link.target if self.direction == "colimit" else link.source)
        self.links.append(link)

    def stable_at(self, n: int) -> bool:
        return n + 1 < len(self.bijective) and self.bijective[n] and self.bijective[n + 1]

    def image_sizes(self) -> list[int]:
        return [self.cat.size(x) for x in self.stages]

    def _legs(self, value, upto):
        if self.direction == "colimit":
            return [OrderArrow(x, value) for x in self.stages[: upto + 1]]
        return [OrderArrow(value, x) for x in self.stages[: upto + 1]]

    def outcome(self, n: int) -> Stabilized:
        value = self.stages[n]
        return Stabilized(n, value, self._legs(value, n + 1), OrderArrow(value, value),
                          self.stages[: n + 2], self.links[: n + 1], self.cat, self.direction)

    def exhausted_outcome(self) -> Stabilized:
        m = len(self.stages) - 1
        value = self.stages[m]
        return Stabilized(m, value, self._legs(value, m), OrderArrow(value, value),
                          self.stages, self.links, self.cat, self.direction)


class _UnderTracker:
    """Colimits in an undercategory are computed on the base."""

    def __init__(self, cat: UnderCategory, start, direction: str):
        if direction != "colimit":
            raise CapabilityMissing("Undercategories here only create sequential colimits")
        self.cat = cat
        self.direction = direction
        self.stages = [start]
        self.links = []
        self.inner = _make_tracker(cat.base, start.target, direction)

    @property
    def bijective(self):
        return self.inner.bijective

    def push(self, link: UnderArrow):
        if link.source != self.stages[-1]:
            raise IllTypedInput(f"Link {len(self.links)} does not start at the previous stage")
        self.inner.push(link.base)
        self.stages.append(link.target)
        self.links.append(link)

    def stable_at(self, n: int) -> bool:
        return self.inner.stable_at(n)

    def image_sizes(self) -> list[int]:
        return self.inner.image_sizes()

    def _lift(self, base: Stabilized) -> Stabilized:
        structure = self.cat.base.compose(base.legs[0], self.stages[0])
        legs = [UnderArrow(self.stages[k], structure, leg) for k, leg in enumerate(base.legs)]
        section = UnderArrow(structure, self.stages[base.index], base.section)
        return Stabilized(base.index, structure, legs, section,
                          self.stages[: len(base.stages)], self.links[: len(base.links)], self.cat)

    def outcome(self, n: int) -> Stabilized:
        return self._lift(self.inner.outcome(n))

    def exhausted_outcome(self) -> Stabilized:
        return self._lift(self.inner.exhausted_outcome())


def _make_tracker(cat: ConcreteCategory, start, direction: str):
    flag = "sequential_colimits" if direction == "colimit" else "sequential_limits"
    cat.require(flag)
    if isinstance(cat, FinSetCategory):
        return _FinSetTracker(cat, start, direction)
    if isinstance(cat, ThinLatticeCategory):
        return _ThinTracker(cat, start, direction)
    if isinstance(cat, UnderCategory):
        return _UnderTracker(cat, start, direction)
    raise CapabilityMissing(f"No sequential {direction}s in {cat.kind} category")


# ── Drivers ──────────────────────────────────────────────────────────


def _not_stabilized(tracker, budget: int, reason: str) -> NotStabilized:
    sizes = [tracker.cat.size(x) for x in tracker.stages]
    return NotStabilized(
        stage_sizes=sizes,
        image_sizes=tracker.image_sizes(),
        trend=growth_trend(sizes),
        reason=reason,
        budget=budget,
        stages=tracker.stages,
        links=tracker.links,
        direction=tracker.direction,
    )


def joint_chain_outcomes(cats, starts, link_streams, budget: int = DEFAULT_STAGE_BUDGET,
                         min_index: int = 0, direction: str = "colimit") -> list[ChainOutcome]:
    """
    Run several chains in lockstep and stop at the first index N ≥ min_index
    where all of them are stable, so every outcome exposes legs at stage N.
    """
    trackers = [_make_tracker(cat, start, direction) for cat, start in zip(cats, starts)]
    iterators = [iter(stream) for stream in link_streams]
    exhausted = False
    while True:
        for n in range(min_index, len(trackers[0].bijective)):
            if all(t.stable_at(n) for t in trackers):
                logger.debug("Chains stable at stage %d (%s)", n, direction)
                return [t.outcome(n) for t in trackers]
        if exhausted:
            return [t.exhausted_outcome() for t in trackers]
        if len(trackers[0].links) >= budget:
            logger.info("Chain budget of %d stages exhausted (%s)", budget, direction)
            return [_not_stabilized(t, budget, f"budget of {budget} stages exhausted") for t in trackers]
        pushed = 0
        for tracker, it in zip(trackers, iterators):
            link = next(it, None)
            if link is not None:
                tracker.push(link)
                pushed += 1
        if pushed == 0:
            exhausted = True
        elif pushed != len(trackers):
            raise IllTypedInput("Jointly tracked chains ended at different lengths")
        else:
            logger.debug("Stage %d: sizes %s", len(trackers[0].links),
                         [t.cat.size(t.stages[-1]) for t in trackers])


def _start_of(cat, links, start, direction):
    links = iter(links)
    first = next(links, None)
    if first is None:
        if start is None:
            raise IllTypedInput("Empty chain needs an explicit start object")
        return start, iter(())
    if start is None:
        start = first.source if direction == "colimit" else first.target

    def relinked():
        yield first
        yield from links

    return start, relinked()


def chain_colimit(cat: ConcreteCategory, links, budget: int = DEFAULT_STAGE_BUDGET,
                  start=None, min_index: int = 0) -> ChainOutcome:
    start, stream = _start_of(cat, links, start, "colimit")
    return joint_chain_outcomes([cat], [start], [stream], budget, min_index, "colimit")[0]


def chain_limit(cat: ConcreteCategory, links, budget: int = DEFAULT_STAGE_BUDGET,
                start=None, min_index: int = 0) -> ChainOutcome:
    """Links are the projections p_n: X_{n+1} → X_n, in order of n."""
    start, stream = _start_of(cat, links, start, "limit")
    return joint_chain_outcomes([cat], [start], [stream], budget, min_index, "limit")[0]
