"""
Fixed points of an endofunctor and the reflection of coalgebras onto them.

The reflection of (C, ν) is the colimit I_C of C →ν FC →Fν F²C → ... with its
canonical coaction I_C → F(I_C). A coalgebra hom φ is F-local when the induced
I_φ is invertible. Algebras are coreflected dually along A ←α FA ←Fα F²A ← ...
"""
import logging
from dataclasses import dataclass, field

from fixcat.core.adamek import DEFAULT_PROBE_SIZE, initial_algebra, iso_witness
from fixcat.core.algebra import (
    Algebra,
    Coalgebra,
    StructureHom,
    coalgebra_homs,
    is_coalgebra_hom,
    iter_coalgebras,
)
from fixcat.core.category import UnderCategory
from fixcat.core.chains import (
    DEFAULT_STAGE_BUDGET,
    NotStabilized,
    Stabilized,
    chain_colimit,
    chain_limit,
    iterate_links,
    joint_chain_outcomes,
)
from fixcat.core.errors import CapabilityMissing, CoactionNotIso, FunctorMismatch, IllTypedInput
from fixcat.core.functors import Endofunctor, RelativeEndofunctor

logger = logging.getLogger("fixcat.fixpoint")


@dataclass(frozen=True)
class FixedPoint:
    functor: Endofunctor
    carrier: object
    iso: object
    inverse: object

    def __post_init__(self):
        cat = self.functor.category
        if cat.compose(self.inverse, self.iso) != cat.identity(self.carrier) \
                or cat.compose(self.iso, self.inverse) != cat.identity(self.functor.on_object(self.carrier)):
            raise IllTypedInput("Fixed point comparison and its inverse are not mutually inverse")

    def as_coalgebra(self) -> Coalgebra:
        return Coalgebra(self.functor, self.carrier, self.iso)

    def as_algebra(self) -> Algebra:
        return Algebra(self.functor, self.carrier, self.inverse)


def algebra_as_fixed_point(alg: Algebra) -> FixedPoint:
    cat = alg.functor.category
    witness = iso_witness(cat, alg.action)
    if witness is not None:
        raise IllTypedInput("Algebra action is not invertible", witness=witness)
    return FixedPoint(alg.functor, alg.carrier, cat.inverse(alg.action), alg.action)


def coalgebra_as_fixed_point(coalg: Coalgebra) -> FixedPoint:
    cat = coalg.functor.category
    witness = iso_witness(cat, coalg.coaction)
    if witness is not None:
        raise IllTypedInput("Coaction is not invertible", witness=witness)
    return FixedPoint(coalg.functor, coalg.carrier, coalg.coaction, cat.inverse(coalg.coaction))


def fixed_point_hom_enumerate(x: FixedPoint, y: FixedPoint) -> list:
    """Carrier maps h with u_Y ∘ h = F(h) ∘ u_X."""
    if x.functor != y.functor:
        raise FunctorMismatch("Fixed points of different endofunctors")
    F = x.functor
    cat = F.category
    return [h for h in cat.hom(x.carrier, y.carrier)
            if cat.compose(y.iso, h) == cat.compose(F.on_morphism(h), x.iso)]


def iter_fixed_points(F: Endofunctor, max_carrier_size: int):
    cat = F.category
    for coalg in iter_coalgebras(F, max_carrier_size, cat.hom_budget):
        if cat.is_iso(coalg.coaction):
            yield coalgebra_as_fixed_point(coalg)


# ── Reflection ───────────────────────────────────────────────────────


@dataclass
class Reflection:
    source: Coalgebra
    fixed: FixedPoint
    unit: object
    outcome: Stabilized

    @property
    def index(self) -> int:
        return self.outcome.index


def _require_colimit_preservation(F: Endofunctor):
    if not F.preserves_colimits:
        raise CapabilityMissing(f"Functor {F.description} is not flagged as preserving sequential colimits")


def _reflection_from_outcome(coalg: Coalgebra, outcome: Stabilized) -> Reflection:
    F = coalg.functor
    cat = F.category
    n = outcome.index
    coaction = cat.compose(F.on_morphism(outcome.legs[n]), cat.compose(outcome.links[n], outcome.section))
    witness = iso_witness(cat, coaction)
    if witness is not None:
        raise CoactionNotIso("Canonical coaction on the reflected colimit is not invertible", witness=witness)
    fixed = FixedPoint(F, outcome.colimit, coaction, cat.inverse(coaction))
    return Reflection(coalg, fixed, outcome.legs[0], outcome)


def _coaction_chain(coalg: Coalgebra):
    return iterate_links(coalg.coaction, coalg.functor.on_morphism)


def reflect(coalg: Coalgebra, budget: int = DEFAULT_STAGE_BUDGET):
    F = coalg.functor
    _require_colimit_preservation(F)
    outcome = chain_colimit(F.category, _coaction_chain(coalg), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Reflection chain did not stabilize: sizes %s", outcome.stage_sizes)
        return outcome
    refl = _reflection_from_outcome(coalg, outcome)
    logger.debug("Reflected coalgebra at stage %d", refl.index)
    return refl


def reflection_adjunction_check(coalg: Coalgebra, budget: int = DEFAULT_STAGE_BUDGET,
                                probe_size: int = DEFAULT_PROBE_SIZE) -> dict:
    """|Hom_Fix(I_C, K)| = |Hom_coalg(C, K)| for every probed fixed point K."""
    refl = reflect(coalg, budget)
    if isinstance(refl, NotStabilized):
        return refl.report()
    failures, checked = [], 0
    for k in iter_fixed_points(coalg.functor, probe_size):
        checked += 1
        fix_homs = len(fixed_point_hom_enumerate(refl.fixed, k))
        coalg_homs = len(coalgebra_homs(coalg, k.as_coalgebra()))
        if fix_homs != coalg_homs:
            failures.append({"carrier": repr(k.carrier), "fix_homs": fix_homs, "coalgebra_homs": coalg_homs})
    return {"probed": checked, "failures": failures, "passed": not failures}


# ── Locality ─────────────────────────────────────────────────────────


@dataclass
class LocalityVerdict:
    hom: StructureHom
    verdict: str
    method: str
    reflected: object = None
    witness: object = None
    section: object = None
    details: dict = field(default_factory=dict)

    @property
    def is_local(self) -> bool:
        return self.verdict == "local"


def _check_coalgebra_hom(phi: StructureHom):
    if not isinstance(phi.source, Coalgebra) or not isinstance(phi.target, Coalgebra):
        raise IllTypedInput("Locality is defined for coalgebra homomorphisms")
    if not is_coalgebra_hom(phi.map, phi.source, phi.target):
        raise IllTypedInput("Map is not a coalgebra homomorphism")


def reflect_hom(phi: StructureHom, budget: int = DEFAULT_STAGE_BUDGET):
    """
    Reflect both endpoints at a common stage N and return
    (I_φ, reflection of source, reflection of target), or a NotStabilized.
    I_φ = leg^D_N ∘ F^N(φ) ∘ section^C_N.
    """
    _check_coalgebra_hom(phi)
    src, dst = phi.source, phi.target
    F = src.functor
    _require_colimit_preservation(F)
    cat = F.category
    out_c, out_d = joint_chain_outcomes(
        [cat, cat], [src.carrier, dst.carrier], [_coaction_chain(src), _coaction_chain(dst)], budget,
    )
    for out in (out_c, out_d):
        if isinstance(out, NotStabilized):
            return out
    n = out_c.index
    phi_n = phi.map
    for _ in range(n):
        phi_n = F.on_morphism(phi_n)
    reflected = cat.compose(out_d.legs[n], cat.compose(phi_n, out_c.section))
    return reflected, _reflection_from_outcome(src, out_c), _reflection_from_outcome(dst, out_d)


def is_F_local(phi: StructureHom, budget: int = DEFAULT_STAGE_BUDGET):
    found = reflect_hom(phi, budget)
    if isinstance(found, NotStabilized):
        return found
    reflected, _, _ = found
    cat = phi.source.functor.category
    witness = iso_witness(cat, reflected)
    verdict = "local" if witness is None else "not-local"
    logger.info("Locality by reflection: %s", verdict)
    return LocalityVerdict(phi, verdict, "reflection", reflected, witness)


def local_via_section(phi: StructureHom, budget: int = DEFAULT_STAGE_BUDGET):
    """Search s: D → I_C, a coalgebra hom, with s∘φ = η_C and I_φ∘s = η_D."""
    found = reflect_hom(phi, budget)
    if isinstance(found, NotStabilized):
        return found
    reflected, refl_c, refl_d = found
    cat = phi.source.functor.category
    target = refl_c.fixed.as_coalgebra()
    searched = 0
    for s in coalgebra_homs(phi.target, target):
        searched += 1
        if cat.compose(s, phi.map) == refl_c.unit and cat.compose(reflected, s) == refl_d.unit:
            return LocalityVerdict(phi, "local", "section", reflected, section=s, details={"searched": searched})
    return LocalityVerdict(phi, "not-local", "section", reflected,
                           witness={"sections_searched": searched}, details={"searched": searched})


def local_via_lift(phi: StructureHom) -> LocalityVerdict:
    """Search s: D → F(C) with s∘φ = ν and F(φ)∘s = μ. Absence is inconclusive."""
    _check_coalgebra_hom(phi)
    F = phi.source.functor
    cat = F.category
    nu, mu = phi.source.coaction, phi.target.coaction
    F_phi = F.on_morphism(phi.map)
    for s in cat.hom(phi.target.carrier, nu.target):
        if cat.compose(s, phi.map) == nu and cat.compose(F_phi, s) == mu:
            return LocalityVerdict(phi, "local", "lift", section=s)
    return LocalityVerdict(phi, "inconclusive", "lift")


# ── Coreflection ─────────────────────────────────────────────────────


@dataclass
class Coreflection:
    source: Algebra
    fixed: FixedPoint
    counit: object
    outcome: Stabilized

    @property
    def index(self) -> int:
        return self.outcome.index


def _require_limit_preservation(F: Endofunctor):
    if not F.preserves_limits:
        raise CapabilityMissing(f"Functor {F.description} is not flagged as preserving sequential limits")


def _coreflection_from_outcome(alg: Algebra, outcome: Stabilized) -> Coreflection:
    F = alg.functor
    cat = F.category
    n = outcome.index
    # F(T) → T
    action = outcome.mediate(cat.compose(outcome.links[n], F.on_morphism(outcome.legs[n])))
    witness = iso_witness(cat, action)
    if witness is not None:
        raise CoactionNotIso("Canonical action on the coreflected limit is not invertible", witness=witness)
    fixed = FixedPoint(F, outcome.colimit, cat.inverse(action), action)
    return Coreflection(alg, fixed, outcome.legs[0], outcome)


def _action_chain(alg: Algebra):
    return iterate_links(alg.action, alg.functor.on_morphism)


def coreflect(alg: Algebra, budget: int = DEFAULT_STAGE_BUDGET):
    F = alg.functor
    _require_limit_preservation(F)
    outcome = chain_limit(F.category, _action_chain(alg), budget)
    if isinstance(outcome, NotStabilized):
        logger.info("Coreflection chain did not stabilize: sizes %s", outcome.stage_sizes)
        return outcome
    return _coreflection_from_outcome(alg, outcome)


def is_F_colocal(phi: StructureHom, budget: int = DEFAULT_STAGE_BUDGET):
    """T_φ is invertible, computed at a common stage of both limit chains."""
    src, dst = phi.source, phi.target
    F = src.functor
    _require_limit_preservation(F)
    cat = F.category
    out_a, out_b = joint_chain_outcomes(
        [cat, cat], [src.carrier, dst.carrier], [_action_chain(src), _action_chain(dst)],
        budget, direction="limit",
    )
    for out in (out_a, out_b):
        if isinstance(out, NotStabilized):
            return out
    n = out_a.index
    phi_n = phi.map
    for _ in range(n):
        phi_n = F.on_morphism(phi_n)
    reflected = out_b.mediate(cat.compose(phi_n, out_a.legs[n]))
    witness = iso_witness(cat, reflected)
    return LocalityVerdict(phi, "local" if witness is None else "not-local", "coreflection", reflected, witness)


def colocal_via_lift(phi: StructureHom) -> LocalityVerdict:
    """Search s: F(B) → A with s∘F(φ) = α and φ∘s = β. Absence is inconclusive."""
    if not isinstance(phi.source, Algebra) or not isinstance(phi.target, Algebra):
        raise IllTypedInput("Colocality is defined for algebra homomorphisms")
    F = phi.source.functor
    cat = F.category
    alpha, beta = phi.source.action, phi.target.action
    F_phi = F.on_morphism(phi.map)
    for s in cat.hom(beta.source, phi.source.carrier):
        if cat.compose(s, F_phi) == alpha and cat.compose(phi.map, s) == beta:
            return LocalityVerdict(phi, "local", "lift", section=s)
    return LocalityVerdict(phi, "inconclusive", "lift")


# ── Relative cross-check ─────────────────────────────────────────────


def relative_initial_check(coalg: Coalgebra, budget: int = DEFAULT_STAGE_BUDGET) -> dict:
    """
    Compute I_C twice: by reflection, and as the initial algebra of
    F_C(u) = F(u)∘ν on the undercategory of C. The two must agree up to an
    isomorphism under C.
    """
    refl = reflect(coalg, budget)
    if isinstance(refl, NotStabilized):
        return refl.report()
    F = coalg.functor
    cat = F.category
    under = UnderCategory(cat, coalg.carrier)
    relative = RelativeEndofunctor(F, coalg.coaction, under)
    cert = initial_algebra(relative, budget, probe_size=0)
    if isinstance(cert, NotStabilized):
        return cert.report()
    structure = cert.result.carrier
    isos = [h for h in cat.hom(structure.target, refl.fixed.carrier)
            if cat.is_iso(h) and cat.compose(h, structure) == refl.unit]
    report = {
        "reflection_size": cat.size(refl.fixed.carrier),
        "relative_size": cat.size(structure.target),
        "reflection_index": refl.index,
        "relative_index": cert.index,
        "agree": bool(isos),
    }
    logger.info("Relative initial check: %s", "agree" if isos else "disagree")
    return report
