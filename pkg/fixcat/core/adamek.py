"""
Adámek-style constructions.

  initial_algebra       ∅ → F∅ → F²∅ → ...              colimit I, action i⁻¹
  free_algebra          K → K⊔FK → K⊔F(K⊔FK) → ...      colimit K*, action induced by coprojections
  adamek_lax            iterate the propagation of a lax algebra until its resolution is invertible
  terminal_coalgebra    1 ← F1 ← F²1 ← ...              limit T, coaction φ⁻¹

Every driver returns a FreeAlgebraCertificate or the NotStabilized report of
its chain. Certificates carry the comparison map, its inverse and the outcome
of hom-count probes against small algebras.
"""
import logging
from dataclasses import dataclass, field

from fixcat.core.algebra import (
    Algebra,
    Coalgebra,
    LaxAlgebra,
    LaxHom,
    algebra_homs,
    coalgebra_homs,
    compose_lax,
    embed_to_lax,
    free_lax_on_object,
    iter_algebras,
    iter_coalgebras,
    lax_chain_colimit,
    lax_homs,
    lax_to_algebra,
    resolution_witness,
)
from fixcat.core.category import (
    Cospan,
    FinMap,
    FinSetCategory,
    OrderArrow,
    ThinLatticeCategory,
)
from fixcat.core.chains import (
    DEFAULT_STAGE_BUDGET,
    NotStabilized,
    Stabilized,
    chain_colimit,
    chain_limit,
    iterate_links,
)
from fixcat.core.errors import CapabilityMissing, ComparisonNotIso, UnitNotInvertible
from fixcat.core.functors import Endofunctor

logger = logging.getLogger("fixcat.adamek")

DEFAULT_PROBE_SIZE = 2


def iso_witness(cat, m):
    """None if m is invertible, otherwise a JSON-ready reason."""
    if cat.is_iso(m):
        return None
    if isinstance(m, FinMap):
        pair = m.injectivity_witness()
        if pair is not None:
            return {"kind": "non-injective", "elements": pair, "image": m(pair[0])}
        return {"kind": "uncovered", "element": m.surjectivity_witness()}
    return {"kind": "not-iso", "source": repr(m.source), "target": repr(m.target)}


# ── Propagation ──────────────────────────────────────────────────────


@dataclass
class PropagationStep:
    """
    Pushout of the resolution r: E → FB along the lax action a: E → B.
    `output` is FB ←F(i)– FB –j→ B⊔_E FB and `unit` is the LaxHom (r, i).
    """

    input: LaxAlgebra
    pushout: Cospan
    inclusion: object
    output: LaxAlgebra
    unit: LaxHom


def propagate(lax: LaxAlgebra) -> PropagationStep:
    F = lax.functor
    cat = F.category
    cat.require("has_pushouts")
    po = cat.pushout(lax.resolution, lax.action)
    j, i = po.left, po.right
    output = LaxAlgebra(F, lax.resolution.target, po.apex, F.on_morphism(i), j)
    unit = LaxHom(lax, output, lax.resolution, i)
    return PropagationStep(lax, po, i, output, unit)


def propagate_hom(h: LaxHom) -> LaxHom:
    """Propagation on a LaxHom: apex component F(b), carrier component by the pushout property."""
    F = h.source.functor
    cat = F.category
    src, dst = propagate(h.source), propagate(h.target)
    Fb = F.on_morphism(h.carrier_map)
    carrier = cat.pushout_mediate(
        src.pushout,
        cat.compose(dst.output.action, Fb),
        cat.compose(dst.inclusion, h.carrier_map),
    )
    return LaxHom(src.output, dst.output, Fb, carrier)


def unit_is_natural(h: LaxHom) -> bool:
    """Π(h) ∘ η_src = η_dst ∘ h, componentwise."""
    left = compose_lax(propagate_hom(h), propagate(h.source).unit)
    right = compose_lax(propagate(h.target).unit, h)
    return left.apex_map == right.apex_map and left.carrier_map == right.carrier_map


def propagation_fixed_check(lax: LaxAlgebra) -> dict:
    """Compare 'unit is an isomorphism pair' with 'resolution is invertible'."""
    step = propagate(lax)
    cat = lax.functor.category
    unit_iso = cat.is_iso(step.unit.apex_map) and cat.is_iso(step.unit.carrier_map)
    resolution_iso = cat.is_iso(lax.resolution)
    return {
        "unit_iso": unit_iso,
        "resolution_iso": resolution_iso,
        "agree": unit_iso == resolution_iso,
        "witness": resolution_witness(lax),
    }


# ── Unital endofunctors and the generic driver ───────────────────────


class LaxPropagation:
    """Propagation with its unit, on lax algebras over one functor."""

    def __init__(self, functor: Endofunctor):
        functor.category.require("has_pushouts")
        self.functor = functor
        self.category = functor.category

    def apply(self, lax: LaxAlgebra) -> LaxAlgebra:
        return propagate(lax).output

    def unit(self, lax: LaxAlgebra) -> LaxHom:
        return propagate(lax).unit

    def unit_is_iso(self, lax: LaxAlgebra):
        witness = resolution_witness(lax)
        return witness is None, witness

    def colimit(self, links, budget: int):
        return lax_chain_colimit(links, budget)

    def size(self, lax: LaxAlgebra) -> int:
        return self.category.size(lax.carrier)


@dataclass
class FreeFixedPoint:
    fixed: object
    outcome: object
    start: object

    @property
    def index(self) -> int:
        return self.outcome.index

    @property
    def stage_sizes(self) -> list[int]:
        return self.outcome.stage_sizes


def _unit_chain(start, endo):
    x = start
    while True:
        link = endo.unit(x)
        yield link
        x = link.target


def free_fixed_point(start, endo, budget: int = DEFAULT_STAGE_BUDGET):
    """
    Iterate L → ΠL → Π²L → ... along the unit, take the colimit and require
    the unit to be invertible there. `endo` provides unit, unit_is_iso and colimit.
    """
    outcome = endo.colimit(_unit_chain(start, endo), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Free fixed point: chain did not stabilize (%s)", outcome.trend)
        return outcome
    fixed = outcome.colimit
    ok, witness = endo.unit_is_iso(fixed)
    if not ok:
        raise UnitNotInvertible("Unit is not invertible at the chain colimit", witness=witness)
    logger.debug("Free fixed point at stage %d", outcome.index)
    return FreeFixedPoint(fixed, outcome, start)


@dataclass
class TransfiniteRun:
    fixed: object
    rounds: list = field(default_factory=list)
    stopped: str = "fixed"

    def report(self) -> dict:
        return {"stopped": self.stopped, "rounds": self.rounds}


def transfinite_restart(start, endo, budget: int = DEFAULT_STAGE_BUDGET, rounds: int = 3) -> TransfiniteRun:
    """
    Restart the unit chain from each colimit whose unit is not yet invertible,
    one ω-length run per round.
    """
    run = TransfiniteRun(None)
    x = start
    for _ in range(rounds):
        outcome = endo.colimit(_unit_chain(x, endo), budget)
        if isinstance(outcome, NotStabilized):
            run.rounds.append(outcome.report())
            run.stopped = "not-stabilized"
            return run
        run.rounds.append({"status": "stabilized", "index": outcome.index, "stage_sizes": outcome.stage_sizes})
        ok, _ = endo.unit_is_iso(outcome.colimit)
        if ok:
            run.fixed = outcome.colimit
            return run
        x = outcome.colimit
    run.stopped = "rounds-exhausted"
    return run


# ── Certificates ─────────────────────────────────────────────────────


@dataclass
class FreeAlgebraCertificate:
    result: object
    outcome: Stabilized
    comparison: object
    inverse: object
    probes: dict = field(default_factory=dict)
    unit: object = None

    @property
    def stage_sizes(self) -> list[int]:
        return self.outcome.stage_sizes

    @property
    def index(self) -> int:
        return self.outcome.index

    @property
    def verified(self) -> bool:
        return self.probes.get("failures", []) == []


def probe_algebras(F: Endofunctor, probe_size: int):
    cat = F.category
    if probe_size <= 0:
        return
    if isinstance(cat, FinSetCategory):
        yield from iter_algebras(F, probe_size, cat.hom_budget)
    elif isinstance(cat, ThinLatticeCategory):
        lattice = cat.lattice
        for x in lattice.elements:
            if lattice.leq(F.on_object(x), x):
                yield Algebra(F, x, OrderArrow(F.on_object(x), x))


def probe_coalgebras(F: Endofunctor, probe_size: int):
    cat = F.category
    if probe_size <= 0:
        return
    if isinstance(cat, FinSetCategory):
        yield from iter_coalgebras(F, probe_size, cat.hom_budget)
    elif isinstance(cat, ThinLatticeCategory):
        lattice = cat.lattice
        for x in lattice.elements:
            if lattice.leq(x, F.on_object(x)):
                yield Coalgebra(F, x, OrderArrow(x, F.on_object(x)))


def _probe_summary(checked: int, failures: list) -> dict:
    return {"probed": checked, "failures": failures[:10], "failure_count": len(failures)}


def _require_iso(cat, comparison, what: str):
    witness = iso_witness(cat, comparison)
    if witness is not None:
        logger.warning("%s is not invertible despite stabilization", what)
        raise ComparisonNotIso(f"{what} is not invertible at the stabilized colimit", witness=witness)
    return cat.inverse(comparison)


def initial_algebra(F: Endofunctor, budget: int = DEFAULT_STAGE_BUDGET,
                    probe_size: int = DEFAULT_PROBE_SIZE):
    cat = F.category
    cat.require("has_initial")
    if not F.preserves_colimits:
        logger.warning("Functor %s is not declared to preserve sequential colimits", F.description)
    first = cat.initial_arrow(F.on_object(cat.initial()))
    outcome = chain_colimit(cat, iterate_links(first, F.on_morphism), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Initial chain did not stabilize: sizes %s", outcome.stage_sizes)
        return outcome

    n = outcome.index
    comparison = cat.compose(F.on_morphism(outcome.legs[n]), cat.compose(outcome.links[n], outcome.section))
    inverse = _require_iso(cat, comparison, "Comparison I → F(I)")
    result = Algebra(F, outcome.colimit, inverse)

    checked, failures = 0, []
    for alg in probe_algebras(F, probe_size):
        checked += 1
        count = len(algebra_homs(result, alg))
        if count != 1:
            failures.append({"carrier": repr(alg.carrier), "homs": count})
    logger.info("Initial algebra at stage %d, carrier size %d", n, cat.size(result.carrier))
    return FreeAlgebraCertificate(result, outcome, comparison, inverse, _probe_summary(checked, failures))


def _coproduct_map(cat, f, g):
    if isinstance(cat, FinSetCategory):
        return cat.coproduct_map(f, g)
    if isinstance(cat, ThinLatticeCategory):
        join = cat.lattice.join
        return OrderArrow(join(f.source, g.source), join(f.target, g.target))
    raise CapabilityMissing(f"No coproduct maps in {cat.kind} category")


def free_algebra(F: Endofunctor, K, budget: int = DEFAULT_STAGE_BUDGET,
                 probe_size: int = DEFAULT_PROBE_SIZE):
    cat = F.category
    cat.require("has_coproducts")
    ident_k = cat.identity(K)

    def step(link):
        return _coproduct_map(cat, ident_k, F.on_morphism(link))

    first = cat.coproduct(K, F.on_object(K)).left
    outcome = chain_colimit(cat, iterate_links(first, step), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Free algebra chain did not stabilize: sizes %s", outcome.stage_sizes)
        return outcome

    n = outcome.index
    L = outcome.colimit
    # L → K ⊔ F(L)
    comparison = cat.compose(_coproduct_map(cat, ident_k, F.on_morphism(outcome.legs[n])),
                             cat.compose(outcome.links[n], outcome.section))
    inverse = _require_iso(cat, comparison, "Comparison K* → K ⊔ F(K*)")
    cop = cat.coproduct(K, F.on_object(L))
    result = Algebra(F, L, cat.compose(inverse, cop.right))
    unit = cat.compose(inverse, cop.left)

    checked, failures = 0, []
    for alg in probe_algebras(F, probe_size):
        checked += 1
        homs, maps = len(algebra_homs(result, alg)), len(cat.hom(K, alg.carrier))
        if homs != maps:
            failures.append({"carrier": repr(alg.carrier), "algebra_homs": homs, "maps_from_K": maps})
    logger.info("Free algebra at stage %d, carrier size %d", n, cat.size(L))
    return FreeAlgebraCertificate(result, outcome, comparison, inverse, _probe_summary(checked, failures), unit)


def adamek_lax(lax: LaxAlgebra, budget: int = DEFAULT_STAGE_BUDGET, probe_size: int = DEFAULT_PROBE_SIZE):
    """Outcomes as for initial_algebra: a certificate, NotStabilized, or ComparisonNotIso."""
    F = lax.functor
    cat = F.category
    try:
        found = free_fixed_point(lax, LaxPropagation(F), budget)
    except UnitNotInvertible as e:
        raise ComparisonNotIso("Propagation unit is not invertible at the chain colimit", witness=e.witness) from e
    if isinstance(found, NotStabilized):
        return found
    limit_lax = found.fixed
    result = lax_to_algebra(limit_lax)

    checked, failures = 0, []
    for alg in probe_algebras(F, probe_size):
        checked += 1
        homs, lax_count = len(algebra_homs(result, alg)), len(lax_homs(lax, embed_to_lax(alg)))
        if homs != lax_count:
            failures.append({"carrier": repr(alg.carrier), "algebra_homs": homs, "lax_homs": lax_count})
    logger.info("Lax Adámek construction at stage %d, carrier size %d", found.index, cat.size(result.carrier))
    return FreeAlgebraCertificate(
        result, found.outcome, limit_lax.resolution, cat.inverse(limit_lax.resolution),
        _probe_summary(checked, failures), found.outcome.legs[0],
    )


def adamek_on_object(F: Endofunctor, K, budget: int = DEFAULT_STAGE_BUDGET,
                     probe_size: int = DEFAULT_PROBE_SIZE):
    """The lax route to the free algebra on K."""
    return adamek_lax(free_lax_on_object(F, K), budget, probe_size)


def terminal_coalgebra(F: Endofunctor, budget: int = DEFAULT_STAGE_BUDGET,
                       probe_size: int = DEFAULT_PROBE_SIZE):
    cat = F.category
    cat.require("has_terminal")
    if not F.preserves_limits:
        logger.warning("Functor %s is not declared to preserve sequential limits", F.description)
    first = cat.terminal_arrow(F.on_object(cat.terminal()))
    outcome = chain_limit(cat, iterate_links(first, F.on_morphism), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Terminal chain did not stabilize: sizes %s", outcome.stage_sizes)
        return outcome

    n = outcome.index
    T = outcome.colimit
    # F(T) → T
    comparison = outcome.mediate(cat.compose(outcome.links[n], F.on_morphism(outcome.legs[n])))
    inverse = _require_iso(cat, comparison, "Comparison F(T) → T")
    result = Coalgebra(F, T, inverse)

    checked, failures = 0, []
    for coalg in probe_coalgebras(F, probe_size):
        checked += 1
        count = len(coalgebra_homs(coalg, result))
        if count != 1:
            failures.append({"carrier": repr(coalg.carrier), "homs": count})
    logger.info("Terminal coalgebra at stage %d, carrier size %d", n, cat.size(T))
    return FreeAlgebraCertificate(result, outcome, comparison, inverse, _probe_summary(checked, failures))


def lambek_verify(candidate: Algebra, probe_size: int = DEFAULT_PROBE_SIZE) -> dict:
    """(a) exactly one hom into every probed algebra; (b) the action is invertible."""
    F = candidate.functor
    cat = F.category
    failures = []
    checked = 0
    for alg in probe_algebras(F, probe_size):
        checked += 1
        count = len(algebra_homs(candidate, alg))
        if count != 1:
            failures.append({"carrier": repr(alg.carrier), "homs": count})
    witness = iso_witness(cat, candidate.action)
    report = {
        "unique_homs": not failures,
        "action_iso": witness is None,
        "probed": checked,
        "hom_failures": failures[:10],
        "action_witness": witness,
    }
    report["passed"] = report["unique_homs"] and report["action_iso"]
    return report
