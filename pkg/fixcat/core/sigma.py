"""
The simplex category Δ and the category Σ of finite sequences of positive
integers, with a truncation normal form for morphisms.

An object (k_0, ..., k_{n-1}) stands for the sequence padded with zeros. A
morphism is a levelwise sequence of Δ maps φ_i: [k_i] → [ℓ_i]; two sequences
are identified once they agree below a level where both are constant, so the
normal form keeps the components up to and including the first constant one.
Levels past the source dimension have source [0], so every normal form is
finite.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from fixcat.core.category import DEFAULT_HOM_BUDGET, Capabilities, ConcreteCategory, check_category_axioms
from fixcat.core.errors import BudgetExceeded, IllTypedInput, TypeMismatch

logger = logging.getLogger("fixcat.sigma")


# ── Δ ───────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class DeltaMap:
    """Weakly increasing map [m] → [n]; values[i] is the image of i."""

    m: int
    n: int
    values: tuple

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or len(self.values) != self.m + 1:
            raise IllTypedInput(f"Δ map [{self.m}]→[{self.n}] needs {self.m + 1} values")
        if any(not 0 <= v <= self.n for v in self.values):
            raise IllTypedInput(f"Δ map values must lie in [0, {self.n}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise IllTypedInput("Δ map values must be weakly increasing")

    @classmethod
    def identity(cls, m: int) -> "DeltaMap":
        return cls(m, m, tuple(range(m + 1)))

    @classmethod
    def constant(cls, m: int, n: int, value: int) -> "DeltaMap":
        return cls(m, n, (value,) * (m + 1))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def after(self, other: "DeltaMap") -> "DeltaMap":
        if other.n != self.m:
            raise TypeMismatch(f"Cannot compose [{self.m}]→[{self.n}] after [{other.m}]→[{other.n}]")
        return DeltaMap(other.m, self.n, tuple(self.values[v] for v in other.values))

    @property
    def is_constant(self) -> bool:
        return len(set(self.values)) == 1

    @property
    def is_inert(self) -> bool:
        """φ(i) = φ(0) + i."""
        return all(v == self.values[0] + i for i, v in enumerate(self.values))

    def label(self) -> str:
        return "".join(str(v) for v in self.values)


def delta_hom_enumerate(m: int, n: int, budget: int = DEFAULT_HOM_BUDGET) -> list[DeltaMap]:
    count = comb(m + n + 1, m + 1)
    if count > budget:
        raise BudgetExceeded(f"|Hom([{m}],[{n}])| = {count} exceeds budget {budget}")
    return [DeltaMap(m, n, values) for values in itertools.combinations_with_replacement(range(n + 1), m + 1)]


def segal_delta_map(ell: int, i: int) -> DeltaMap:
    """ρ_i: [1] → [ℓ], 0 ↦ i-1, 1 ↦ i, for 1 ≤ i ≤ ℓ."""
    if not 1 <= i <= ell:
        raise IllTypedInput(f"Segal map index {i} outside 1..{ell}")
    return DeltaMap(1, ell, (i - 1, i))


# ── Σ objects ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SigmaObject:
    entries: tuple = ()

    def __post_init__(self):
        entries = tuple(self.entries)
        if any(not isinstance(k, int) or k <= 0 for k in entries):
            raise IllTypedInput(f"Σ object entries must be positive integers, got {entries!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> "SigmaObject":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        try:
            return cls(tuple(int(part) for part in text.split(",") if part.strip()))
        except ValueError:
            raise IllTypedInput(f"Cannot parse Σ object {text!r}; expected e.g. 2,1")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def entry(self, i: int) -> int:
        return self.entries[i] if i < len(self.entries) else 0

    def label(self) -> str:
        return "(" + ",".join(str(k) for k in self.entries) + ")"

    def __repr__(self):
        return self.label()


def extend(k: SigmaObject, ell: int) -> SigmaObject:
    """[k⃗, ℓ]: append ℓ when ℓ > 0; [k⃗, 0] = [k⃗]."""
    if ell < 0:
        raise IllTypedInput("Extension level must be non-negative")
    return SigmaObject(k.entries + (ell,)) if ell > 0 else k


# ── Σ morphisms ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class SigmaMorphism:
    """Normal form: every component but the last is non-constant, the last is constant."""

    source: SigmaObject
    target: SigmaObject
    components: tuple

    def label(self) -> str:
        return f"{self.source.label()}→{self.target.label()}[" + "|".join(c.label() for c in self.components) + "]"

    def __repr__(self):
        return self.label()


def truncate_at_constant(components) -> tuple:
    # cutting only at constant-0 is not a congruence: find_congruence_counterexample(truncate_at_zero, ...)
    for i, c in enumerate(components):
        if c.is_constant:
            return tuple(components[: i + 1])
    return tuple(components)


def truncate_at_zero(components) -> tuple:
    """The literal reading: cut at the first component constant at 0."""
    for i, c in enumerate(components):
        if c.is_constant and c.values[0] == 0:
            return tuple(components[: i + 1])
    return tuple(components)


def sigma_normalize(components, source: SigmaObject, target: SigmaObject) -> SigmaMorphism:
    """
    Canonical representative of a raw component list. Components must be
    given until a constant level is reached, except that levels whose target
    entry is 0 are filled in automatically.
    """
    components = list(components)
    for i, c in enumerate(components):
        if (c.m, c.n) != (source.entry(i), target.entry(i)):
            raise IllTypedInput(
                f"Component {i} is [{c.m}]→[{c.n}], expected [{source.entry(i)}]→[{target.entry(i)}]"
            )
    normal = truncate_at_constant(components)
    while not normal or not normal[-1].is_constant:
        i = len(normal)
        if target.entry(i) != 0:
            raise IllTypedInput(f"Component at level {i} is not determined; give it explicitly")
        normal = normal + (DeltaMap.constant(source.entry(i), 0, 0),)
    return SigmaMorphism(source, target, normal)


def sigma_identity(obj: SigmaObject) -> SigmaMorphism:
    return sigma_normalize([DeltaMap.identity(k) for k in obj.entries], obj, obj)


def sigma_compose(g: SigmaMorphism, f: SigmaMorphism) -> SigmaMorphism:
    """g ∘ f, levelwise on the stored representatives, then normalized."""
    if f.target != g.source:
        raise TypeMismatch(f"Cannot compose {g.label()} after {f.label()}")
    depth = min(len(f.components), len(g.components))
    raw = [g.components[i].after(f.components[i]) for i in range(depth)]
    return sigma_normalize(raw, f.source, g.target)


def sigma_hom_enumerate(src: SigmaObject, tgt: SigmaObject, budget: int = DEFAULT_HOM_BUDGET) -> list[SigmaMorphism]:
    return list(_sigma_homs(src, tgt, budget))


@lru_cache(maxsize=4096)
def _sigma_homs(src: SigmaObject, tgt: SigmaObject, budget: int) -> tuple:
    found = []

    def grow(prefix, level):
        for phi in delta_hom_enumerate(src.entry(level), tgt.entry(level), budget):
            if phi.is_constant:
                found.append(SigmaMorphism(src, tgt, tuple(prefix) + (phi,)))
                if len(found) > budget:
                    raise BudgetExceeded(f"Hom({src.label()}, {tgt.label()}) exceeds budget {budget}")
            else:
                grow(prefix + [phi], level + 1)

    grow([], 0)
    return tuple(found)


def extension_map(k: SigmaObject, theta: DeltaMap) -> SigmaMorphism:
    """i(θ): [k⃗, m] → [k⃗, ℓ], identity below level dim k⃗ and θ at it."""
    source, target = extend(k, theta.m), extend(k, theta.n)
    raw = [DeltaMap.identity(e) for e in k.entries] + [theta]
    return sigma_normalize(raw, source, target)


def segal_inclusion(k: SigmaObject, ell: int, i: int) -> SigmaMorphism:
    """ρ_i: [k⃗, 1] → [k⃗, ℓ]."""
    return extension_map(k, segal_delta_map(ell, i))


def endpoint_map(k: SigmaObject, end: int) -> SigmaMorphism:
    """δ_end: [k⃗] → [k⃗, 1] picking the source (0) or target (1) end."""
    return extension_map(k, DeltaMap(0, 1, (end,)))


# ── Σ as a category ──────────────────────────────────────────────────


@dataclass(frozen=True)
class SigmaBound:
    """Objects of dimension ≤ max_dim with entries ≤ max_entry; simplicial data up to max_level."""

    max_dim: int = 2
    max_entry: int = 2
    max_level: int = 2

    def __post_init__(self):
        if min(self.max_dim, self.max_entry, self.max_level) < 0:
            raise IllTypedInput("Bound components must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "SigmaBound":
        try:
            parts = [int(p) for p in text.split(",")]
        except ValueError:
            raise IllTypedInput(f"Cannot parse bound {text!r}; expected max_dim,max_entry,max_level")
        if len(parts) != 3:
            raise IllTypedInput("Bound needs three numbers: max_dim,max_entry,max_level")
        return cls(*parts)

    def objects(self) -> list[SigmaObject]:
        return [
            SigmaObject(entries)
            for d in range(self.max_dim + 1)
            for entries in itertools.product(range(1, self.max_entry + 1), repeat=d)
        ]

    def contains(self, obj: SigmaObject) -> bool:
        return obj.dim <= self.max_dim and all(k <= self.max_entry for k in obj.entries)

    def as_list(self) -> list[int]:
        return [self.max_dim, self.max_entry, self.max_level]


class SigmaCategory(ConcreteCategory):
    """The full subcategory of Σ on the objects within a bound."""

    kind = "sigma"
    capabilities = Capabilities(hom_enumerable=True)

    def __init__(self, bound: SigmaBound, hom_budget: int = DEFAULT_HOM_BUDGET):
        super().__init__(hom_budget)
        self.bound = bound

    def objects(self):
        return self.bound.objects()

    def identity(self, x: SigmaObject) -> SigmaMorphism:
        return sigma_identity(x)

    def compose(self, g: SigmaMorphism, f: SigmaMorphism) -> SigmaMorphism:
        return sigma_compose(g, f)

    def hom(self, x: SigmaObject, y: SigmaObject) -> list:
        return sigma_hom_enumerate(x, y, self.hom_budget)

    def is_iso(self, m: SigmaMorphism) -> bool:
        return m.source == m.target and m == sigma_identity(m.source)

    def inverse(self, m: SigmaMorphism) -> SigmaMorphism:
        if not self.is_iso(m):
            raise IllTypedInput(f"{m.label()} is not invertible")
        return m

    def size(self, x: SigmaObject) -> int:
        return x.dim


def sigma_category_axioms(bound: SigmaBound):
    return check_category_axioms(SigmaCategory(bound))


# ── Checks ───────────────────────────────────────────────────────────


def segal_fiber_count(k: SigmaObject, ell: int, target: SigmaObject) -> dict:
    """
    Compare |Hom([k⃗,ℓ], n⃗)| with the ℓ-fold fiber product of Hom([k⃗,1], n⃗)
    over Hom([k⃗], n⃗), joined end to start.
    """
    arrows = sigma_hom_enumerate(extend(k, 1), target)
    start, end = endpoint_map(k, 0), endpoint_map(k, 1)
    sources = [sigma_compose(h, start) for h in arrows]
    targets = [sigma_compose(h, end) for h in arrows]
    points = sigma_hom_enumerate(k, target)
    # paths[p] = number of composable ℓ'-strings ending at p
    paths = {p: 0 for p in points}
    for t in targets:
        paths[t] += 1
    terms = []
    for _ in range(ell - 1):
        step = {p: 0 for p in points}
        for s, t in zip(sources, targets):
            step[t] += paths[s]
        if ell == 2:
            terms = [[paths[p], sum(1 for s in sources if s == p)] for p in points]
        paths = step
    fiber = sum(paths.values()) if ell >= 1 else len(points)
    direct = len(sigma_hom_enumerate(extend(k, ell), target))
    return {"direct": direct, "fiber": fiber, "terms": terms, "agree": direct == fiber}


def _raw_components(src: SigmaObject, tgt: SigmaObject, levels: int):
    return itertools.product(*(delta_hom_enumerate(src.entry(i), tgt.entry(i)) for i in range(levels)))


def find_congruence_counterexample(normalizer, bound: SigmaBound, budget: int = DEFAULT_HOM_BUDGET):
    """
    Look for raw sequences identified by `normalizer` whose composites with a
    common morphism are not identified. Returns a witness dict or None.
    """
    objects = bound.objects()
    levels = bound.max_dim + 1
    raw = {(a, b): [tuple(r) for r in _raw_components(a, b, levels)] for a in objects for b in objects}
    work = 0

    def composite(g, f):
        return normalizer([gi.after(fi) for gi, fi in zip(g, f)])

    def describe(a, b, c, left, right, other, images):
        return {
            "objects": [a.label(), b.label(), c.label()],
            "identified": [[x.label() for x in left], [x.label() for x in right]],
            "composed_with": [x.label() for x in other],
            "composites": [[x.label() for x in images[0]], [x.label() for x in images[1]]],
        }

    for a in objects:
        for b in objects:
            for c in objects:
                fs, gs = raw[(a, b)], raw[(b, c)]
                work += len(fs) * len(gs)
                if work > budget:
                    raise BudgetExceeded(f"Congruence search exceeds budget {budget}")
                for g in gs:
                    seen = {}
                    for f in fs:
                        key, value = normalizer(f), composite(g, f)
                        if key in seen and seen[key][1] != value:
                            return describe(a, b, c, seen[key][0], f, g, (seen[key][1], value))
                        seen.setdefault(key, (f, value))
                for f in fs:
                    seen = {}
                    for g in gs:
                        key, value = normalizer(g), composite(g, f)
                        if key in seen and seen[key][1] != value:
                            return describe(a, b, c, seen[key][0], g, f, (seen[key][1], value))
                        seen.setdefault(key, (g, value))
    logger.debug("No congruence counterexample within bound %s", bound.as_list())
    return None
