"""
F-algebras, F-coalgebras and lax F-algebras as plain data, with homomorphism
tests, brute-force enumeration oracles and colimits of chains computed on
underlying objects.

A lax algebra is a span F(B) ←r– E –a→ B. Ordinary algebras embed as the lax
algebras whose resolution r is an identity.
"""
import itertools
import logging
from dataclasses import dataclass, field

from fixcat.core.category import DEFAULT_HOM_BUDGET, FinMap, FinSet, FinSetCategory
from fixcat.core.chains import DEFAULT_STAGE_BUDGET, NotStabilized, Stabilized, joint_chain_outcomes
from fixcat.core.errors import (
    BudgetExceeded,
    FunctorMismatch,
    IllTypedInput,
    ResolutionNotInvertible,
)
from fixcat.core.functors import Endofunctor

logger = logging.getLogger("fixcat.algebra")


@dataclass(frozen=True)
class Algebra:
    functor: Endofunctor
    carrier: object
    action: object

    def __post_init__(self):
        if self.action.source != self.functor.on_object(self.carrier):
            raise IllTypedInput("Algebra action must start at F(carrier)")
        if self.action.target != self.carrier:
            raise IllTypedInput("Algebra action must land in the carrier")


@dataclass(frozen=True)
class Coalgebra:
    functor: Endofunctor
    carrier: object
    coaction: object

    def __post_init__(self):
        if self.coaction.source != self.carrier:
            raise IllTypedInput("Coaction must start at the carrier")
        if self.coaction.target != self.functor.on_object(self.carrier):
            raise IllTypedInput("Coaction must land in F(carrier)")


@dataclass(frozen=True)
class LaxAlgebra:
    functor: Endofunctor
    apex: object
    carrier: object
    resolution: object
    action: object

    def __post_init__(self):
        r, a = self.resolution, self.action
        if r.source != self.apex or a.source != self.apex:
            raise IllTypedInput("Resolution and lax action must share the apex as source")
        if r.target != self.functor.on_object(self.carrier):
            raise IllTypedInput("Resolution must land in F(carrier)")
        if a.target != self.carrier:
            raise IllTypedInput("Lax action must land in the carrier")


@dataclass(frozen=True)
class LaxHom:
    """Strictly commuting pair: r′∘e = F(b)∘r and a′∘e = b∘a."""

    source: LaxAlgebra
    target: LaxAlgebra
    apex_map: object
    carrier_map: object

    def __post_init__(self):
        if not is_lax_hom(self.source, self.target, self.apex_map, self.carrier_map):
            raise IllTypedInput("Apex and carrier components do not commute with the lax structures")


@dataclass(frozen=True)
class StructureHom:
    """A morphism of underlying objects between two (co)algebras."""

    source: object
    target: object
    map: object


def _same_functor(src, dst):
    if src.functor != dst.functor:
        raise FunctorMismatch("Structures are over different endofunctors")
    return src.functor


# ── Homomorphism tests ───────────────────────────────────────────────


def is_algebra_hom(phi, src: Algebra, dst: Algebra) -> bool:
    F = _same_functor(src, dst)
    if phi.source != src.carrier or phi.target != dst.carrier:
        raise IllTypedInput("Candidate homomorphism is not typed carrier → carrier")
    cat = F.category
    return cat.compose(phi, src.action) == cat.compose(dst.action, F.on_morphism(phi))


def is_coalgebra_hom(phi, src: Coalgebra, dst: Coalgebra) -> bool:
    F = _same_functor(src, dst)
    if phi.source != src.carrier or phi.target != dst.carrier:
        raise IllTypedInput("Candidate homomorphism is not typed carrier → carrier")
    cat = F.category
    return cat.compose(F.on_morphism(phi), src.coaction) == cat.compose(dst.coaction, phi)


def is_lax_hom(src: LaxAlgebra, dst: LaxAlgebra, e, b) -> bool:
    F = _same_functor(src, dst)
    cat = F.category
    if e.source != src.apex or e.target != dst.apex or b.source != src.carrier or b.target != dst.carrier:
        return False
    return cat.compose(dst.resolution, e) == cat.compose(F.on_morphism(b), src.resolution) \
        and cat.compose(dst.action, e) == cat.compose(b, src.action)


def algebra_homs(src: Algebra, dst: Algebra) -> list:
    cat = _same_functor(src, dst).category
    return [phi for phi in cat.hom(src.carrier, dst.carrier) if is_algebra_hom(phi, src, dst)]


def coalgebra_homs(src: Coalgebra, dst: Coalgebra) -> list:
    cat = _same_functor(src, dst).category
    return [phi for phi in cat.hom(src.carrier, dst.carrier) if is_coalgebra_hom(phi, src, dst)]


def lax_homs(src: LaxAlgebra, dst: LaxAlgebra) -> list[LaxHom]:
    F = _same_functor(src, dst)
    cat = F.category
    found = []
    for b in cat.hom(src.carrier, dst.carrier):
        if isinstance(cat, FinSetCategory):
            Fb = F.on_morphism(b)
            # apex components are chosen pointwise
            candidates = [
                [y for y in dst.apex if dst.resolution(y) == Fb(src.resolution(x))
                 and dst.action(y) == b(src.action(x))]
                for x in src.apex
            ]
            for choice in itertools.product(*candidates):
                found.append(LaxHom(src, dst, FinMap.from_list(src.apex, dst.apex, choice), b))
        else:
            for e in cat.hom(src.apex, dst.apex):
                if is_lax_hom(src, dst, e, b):
                    found.append(LaxHom(src, dst, e, b))
    return found


def compose_lax(g: LaxHom, f: LaxHom) -> LaxHom:
    cat = f.source.functor.category
    return LaxHom(f.source, g.target, cat.compose(g.apex_map, f.apex_map),
                  cat.compose(g.carrier_map, f.carrier_map))


# ── Enumeration oracles ──────────────────────────────────────────────


def _check_budget(total: int, budget: int, what: str):
    if total > budget:
        raise BudgetExceeded(f"Enumerating {total} {what} exceeds budget {budget}")


def iter_algebras(F: Endofunctor, max_carrier_size: int, hom_budget: int = DEFAULT_HOM_BUDGET):
    """All algebras on carriers {0..n-1}, n ≤ max_carrier_size (not up to iso)."""
    carriers = [FinSet.range(n) for n in range(max_carrier_size + 1)]
    sources = [F.on_object(A) for A in carriers]
    _check_budget(sum(len(A) ** len(FA) for A, FA in zip(carriers, sources)), hom_budget, "algebras")
    for A, FA in zip(carriers, sources):
        for values in itertools.product(range(len(A)), repeat=len(FA)):
            yield Algebra(F, A, FinMap(FA, A, values))


def iter_coalgebras(F: Endofunctor, max_carrier_size: int, hom_budget: int = DEFAULT_HOM_BUDGET):
    carriers = [FinSet.range(n) for n in range(max_carrier_size + 1)]
    targets = [F.on_object(C) for C in carriers]
    _check_budget(sum(len(FC) ** len(C) for C, FC in zip(carriers, targets)), hom_budget, "coalgebras")
    for C, FC in zip(carriers, targets):
        for values in itertools.product(range(len(FC)), repeat=len(C)):
            yield Coalgebra(F, C, FinMap(C, FC, values))


def enumerate_algebras(F: Endofunctor, max_carrier_size: int, hom_budget: int = DEFAULT_HOM_BUDGET) -> list[Algebra]:
    return list(iter_algebras(F, max_carrier_size, hom_budget))


def enumerate_coalgebras(F: Endofunctor, max_carrier_size: int,
                         hom_budget: int = DEFAULT_HOM_BUDGET) -> list[Coalgebra]:
    return list(iter_coalgebras(F, max_carrier_size, hom_budget))


def iter_lax_algebras(F: Endofunctor, max_apex_size: int, max_carrier_size: int,
                      hom_budget: int = DEFAULT_HOM_BUDGET):
    for nb in range(max_carrier_size + 1):
        B = FinSet.range(nb)
        FB = F.on_object(B)
        for ne in range(max_apex_size + 1):
            E = FinSet.range(ne)
            _check_budget(len(FB) ** ne * nb ** ne, hom_budget, "lax algebras")
            for r in itertools.product(range(len(FB)), repeat=ne):
                for a in itertools.product(range(nb), repeat=ne):
                    yield LaxAlgebra(F, E, B, FinMap(E, FB, r), FinMap(E, B, a))


# ── Lax / strict conversions ─────────────────────────────────────────


def embed_to_lax(alg: Algebra) -> LaxAlgebra:
    cat = alg.functor.category
    FA = alg.action.source
    return LaxAlgebra(alg.functor, FA, alg.carrier, cat.identity(FA), alg.action)


def resolution_witness(lax: LaxAlgebra):
    """Why the resolution is not invertible (None if it is)."""
    r = lax.resolution
    if isinstance(r, FinMap):
        pair = r.injectivity_witness()
        if pair is not None:
            return {"kind": "non-injective", "elements": pair, "image": r(pair[0])}
        missed = r.surjectivity_witness()
        if missed is not None:
            return {"kind": "uncovered", "element": missed}
        return None
    cat = lax.functor.category
    return None if cat.is_iso(r) else {"kind": "not-iso"}


def lax_to_algebra(lax: LaxAlgebra) -> Algebra:
    witness = resolution_witness(lax)
    if witness is not None:
        raise ResolutionNotInvertible("Resolution is not an isomorphism", witness=witness)
    cat = lax.functor.category
    return Algebra(lax.functor, lax.carrier, cat.compose(lax.action, cat.inverse(lax.resolution)))


def free_lax_on_object(F: Endofunctor, K) -> LaxAlgebra:
    """F(K) ← ∅ → K."""
    cat = F.category
    cat.require("has_initial")
    empty = cat.initial()
    return LaxAlgebra(F, empty, K, cat.initial_arrow(F.on_object(K)), cat.initial_arrow(K))


# ── Chain colimits on underlying objects ─────────────────────────────


@dataclass
class LaxChainColimit:
    lax: LaxAlgebra
    index: int
    apex_outcome: Stabilized
    carrier_outcome: Stabilized
    legs: list = field(default_factory=list)
    stages: list = field(default_factory=list)

    @property
    def colimit(self) -> LaxAlgebra:
        return self.lax

    @property
    def stage_sizes(self) -> list[int]:
        return self.carrier_outcome.stage_sizes

    def mediate(self, leg_at_index: LaxHom, target: LaxAlgebra) -> LaxHom:
        """Mediating LaxHom to a cocone, given its component at stage `index`."""
        return LaxHom(self.lax, target,
                      self.apex_outcome.mediate(leg_at_index.apex_map),
                      self.carrier_outcome.mediate(leg_at_index.carrier_map))


def _recorded(first, rest, stages):
    stages.append(first.source)
    for h in itertools.chain([first], rest):
        stages.append(h.target)
        yield h


def lax_chain_colimit(links, budget: int = DEFAULT_STAGE_BUDGET, start: LaxAlgebra | None = None,
                      min_index: int = 0):
    """
    Colimit of a chain of lax algebras: colimits of the apex and carrier
    columns, with resolution F(leg_N^B)∘r_N∘sec^E and action leg_N^B∘a_N∘sec^E.
    """
    links = iter(links)
    first = next(links, None)
    if first is None:
        if start is None:
            raise IllTypedInput("Empty lax chain needs an explicit start")
        cat = start.functor.category
        ident = LaxHom(start, start, cat.identity(start.apex), cat.identity(start.carrier))
        apex_out = joint_chain_outcomes([cat], [start.apex], [iter(())])[0]
        carrier_out = joint_chain_outcomes([cat], [start.carrier], [iter(())])[0]
        return LaxChainColimit(start, 0, apex_out, carrier_out, [ident], [start])

    F = first.source.functor
    cat = F.category
    stages = []
    left, right = itertools.tee(_recorded(first, links, stages))
    apex_out, carrier_out = joint_chain_outcomes(
        [cat, cat], [first.source.apex, first.source.carrier],
        [(h.apex_map for h in left), (h.carrier_map for h in right)],
        budget, min_index,
    )
    if isinstance(carrier_out, NotStabilized):
        return carrier_out
    if isinstance(apex_out, NotStabilized):
        return apex_out

    n = carrier_out.index
    stage = stages[n]
    leg_b = carrier_out.legs[n]
    resolution = cat.compose(F.on_morphism(leg_b), cat.compose(stage.resolution, apex_out.section))
    action = cat.compose(leg_b, cat.compose(stage.action, apex_out.section))
    result = LaxAlgebra(F, apex_out.colimit, carrier_out.colimit, resolution, action)
    legs = [LaxHom(stages[k], result, apex_out.legs[k], carrier_out.legs[k])
            for k in range(len(carrier_out.legs))]
    logger.debug("Lax chain colimit at stage %d: apex %d, carrier %d",
                 n, cat.size(result.apex), cat.size(result.carrier))
    return LaxChainColimit(result, n, apex_out, carrier_out, legs, stages[: len(legs)])


@dataclass
class CoalgebraChainColimit:
    coalgebra: Coalgebra
    outcome: Stabilized
    legs: list

    @property
    def colimit(self) -> Coalgebra:
        return self.coalgebra


def coalgebra_chain_colimit(links, budget: int = DEFAULT_STAGE_BUDGET, min_index: int = 0):
    """
    Chain of coalgebra homomorphisms (StructureHom). The colimit is computed
    on carriers; the coaction is the canonical map F(leg_N)∘ν_N∘section.
    """
    links = iter(links)
    first = next(links, None)
    if first is None:
        raise IllTypedInput("Empty coalgebra chain")
    F = first.source.functor
    cat = F.category
    stages = []
    outcome = joint_chain_outcomes(
        [cat], [first.source.carrier], [(h.map for h in _recorded(first, links, stages))],
        budget, min_index,
    )[0]
    if isinstance(outcome, NotStabilized):
        return outcome
    n = outcome.index
    coaction = cat.compose(F.on_morphism(outcome.legs[n]), cat.compose(stages[n].coaction, outcome.section))
    result = Coalgebra(F, outcome.colimit, coaction)
    legs = [StructureHom(stages[k], result, leg) for k, leg in enumerate(outcome.legs)]
    return CoalgebraChainColimit(result, outcome, legs)
