"""
Set-valued presheaves on Σ, truncated to a bound, with Segal and
completeness checks, plus the left Kan extension Σ[k⃗, X] of a truncated
simplicial set along ℓ ↦ [k⃗, ℓ].

Cells of P at [k⃗, ℓ] are the "ℓ-simplices over k⃗"; the Segal map sends a
cell to its restrictions along ρ_1, ..., ρ_ℓ.
"""
import itertools
import logging
from dataclasses import dataclass, field

from fixcat.core.category import DEFAULT_HOM_BUDGET
from fixcat.core.errors import BudgetExceeded, IllTypedInput
from fixcat.core.sigma import (
    DeltaMap,
    SigmaBound,
    SigmaMorphism,
    SigmaObject,
    delta_hom_enumerate,
    endpoint_map,
    extend,
    extension_map,
    segal_inclusion,
    sigma_compose,
    sigma_hom_enumerate,
    sigma_identity,
)
from fixcat.core.unionfind import UnionFind

logger = logging.getLogger("fixcat.sigma")


class SigmaPresheaf:
    """Contravariant: restrict(u, x) sends a cell x at u.target to a cell at u.source."""

    def __init__(self, bound: SigmaBound):
        self.bound = bound

    def cells(self, obj: SigmaObject) -> list:
        raise NotImplementedError

    def restrict(self, u: SigmaMorphism, cell):
        raise NotImplementedError

    def _require_in_bound(self, obj: SigmaObject):
        if not self.bound.contains(obj):
            raise IllTypedInput(f"{obj.label()} lies outside bound {self.bound.as_list()}")


class RepresentablePresheaf(SigmaPresheaf):
    """Σ[n⃗]: cells at A are the morphisms A → n⃗, restriction is precomposition."""

    def __init__(self, apex: SigmaObject, bound: SigmaBound, hom_budget: int = DEFAULT_HOM_BUDGET):
        super().__init__(bound)
        self.apex = apex
        self.hom_budget = hom_budget

    def cells(self, obj: SigmaObject) -> list:
        self._require_in_bound(obj)
        return sigma_hom_enumerate(obj, self.apex, self.hom_budget)

    def restrict(self, u: SigmaMorphism, cell: SigmaMorphism) -> SigmaMorphism:
        return sigma_compose(cell, u)


def representable(apex: SigmaObject, bound: SigmaBound) -> RepresentablePresheaf:
    return RepresentablePresheaf(apex, bound)


class TabulatedPresheaf(SigmaPresheaf):
    """Explicit cell lists per object and restriction tables per morphism."""

    def __init__(self, bound: SigmaBound, cells: dict, restrictions: dict):
        super().__init__(bound)
        self._cells = {obj: list(xs) for obj, xs in cells.items()}
        self._restrictions = restrictions

    def cells(self, obj: SigmaObject) -> list:
        self._require_in_bound(obj)
        return self._cells.get(obj, [])

    def restrict(self, u: SigmaMorphism, cell):
        try:
            return self._restrictions[u][cell]
        except KeyError:
            raise IllTypedInput(f"No restriction of cell {cell!r} along {u.label()}")


def in_bound_morphisms(bound: SigmaBound):
    objects = bound.objects()
    for a in objects:
        for b in objects:
            for u in sigma_hom_enumerate(a, b):
                yield u


def tabulate(P: SigmaPresheaf) -> TabulatedPresheaf:
    cells = {obj: list(P.cells(obj)) for obj in P.bound.objects()}
    restrictions = {u: {x: P.restrict(u, x) for x in cells[u.target]} for u in in_bound_morphisms(P.bound)}
    return TabulatedPresheaf(P.bound, cells, restrictions)


def delete_cell(P: SigmaPresheaf, obj: SigmaObject, cell) -> TabulatedPresheaf:
    """Remove a cell together with every cell that restricts onto a removed one."""
    table = tabulate(P)
    removed = {(obj, cell)}
    changed = True
    while changed:
        changed = False
        for u, mapping in table._restrictions.items():
            for x, y in mapping.items():
                if (u.source, y) in removed and (u.target, x) not in removed:
                    removed.add((u.target, x))
                    changed = True
    cells = {o: [x for x in xs if (o, x) not in removed] for o, xs in table._cells.items()}
    restrictions = {
        u: {x: y for x, y in mapping.items() if (u.target, x) not in removed}
        for u, mapping in table._restrictions.items()
    }
    logger.debug("Deleted %d cells", len(removed))
    return TabulatedPresheaf(P.bound, cells, restrictions)


def nerve_presheaf(objects, arrows: dict, bound: SigmaBound | None = None) -> TabulatedPresheaf:
    """
    One-dimensional nerve of a graph with identities, on the objects () and (1):
    cells at () are objects, cells at (1) are arrows name → (source, target)
    plus an identity "id_x" per object.
    """
    bound = bound or SigmaBound(1, 1, 1)
    if bound.max_dim > 1 or bound.max_entry > 1:
        raise IllTypedInput("Nerve presheaves are tabulated on () and (1) only")
    point, arrow = SigmaObject(()), SigmaObject((1,))
    ends = {f"id_{x}": (x, x) for x in objects}
    ends.update({name: tuple(st) for name, st in arrows.items()})
    cells = {point: list(objects), arrow: list(ends)}
    restrictions = {}
    for u in in_bound_morphisms(bound):
        if u.target == point:
            if u.source == point:
                restrictions[u] = {x: x for x in objects}
            else:
                restrictions[u] = {x: f"id_{x}" for x in objects}
        elif u.source == point:
            end = u.components[0].values[0]
            restrictions[u] = {name: st[end] for name, st in ends.items()}
        else:
            phi = u.components[0]
            if phi.is_constant:
                restrictions[u] = {name: f"id_{st[phi.values[0]]}" for name, st in ends.items()}
            else:
                restrictions[u] = {name: name for name in ends}
    return TabulatedPresheaf(bound, cells, restrictions)


# ── Checks ───────────────────────────────────────────────────────────


def check_presheaf_functoriality(P: SigmaPresheaf) -> list[dict]:
    violations = []
    objects = P.bound.objects()
    for c in objects:
        ident = sigma_identity(c)
        for x in P.cells(c):
            if P.restrict(ident, x) != x:
                violations.append({"law": "identity", "object": c.label(), "cell": repr(x)})
    for a, b, c in itertools.product(objects, repeat=3):
        for u in sigma_hom_enumerate(a, b):
            for v in sigma_hom_enumerate(b, c):
                vu = sigma_compose(v, u)
                for x in P.cells(c):
                    if P.restrict(vu, x) != P.restrict(u, P.restrict(v, x)):
                        violations.append({
                            "law": "composition", "morphisms": [v.label(), u.label()], "cell": repr(x),
                        })
    return violations


@dataclass
class SegalReport:
    checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures}


def segal_levels(bound: SigmaBound):
    """(k⃗, ℓ) pairs whose Segal map lies inside the bound."""
    for k in bound.objects():
        if k.dim < bound.max_dim:
            for ell in range(2, min(bound.max_level, bound.max_entry) + 1):
                yield k, ell


def segal_check(P: SigmaPresheaf) -> SegalReport:
    report = SegalReport()
    for k, ell in segal_levels(P.bound):
        rhos = [segal_inclusion(k, ell, i) for i in range(1, ell + 1)]
        start, end = endpoint_map(k, 0), endpoint_map(k, 1)
        arrows = P.cells(extend(k, 1))
        # composable strings of arrows, joined end to start
        strings = [(a,) for a in arrows]
        for _ in range(ell - 1):
            strings = [
                s + (a,) for s in strings for a in arrows
                if P.restrict(end, s[-1]) == P.restrict(start, a)
            ]
        images = {}
        failure = None
        for x in P.cells(extend(k, ell)):
            image = tuple(P.restrict(rho, x) for rho in rhos)
            if image in images:
                failure = {"k": k.label(), "ell": ell, "kind": "non-injective",
                           "cells": [repr(images[image]), repr(x)]}
                break
            images[image] = x
        if failure is None:
            missing = [s for s in strings if s not in images]
            if missing:
                failure = {"k": k.label(), "ell": ell, "kind": "non-surjective",
                           "cells": [repr(c) for c in missing[0]]}
        report.checked.append({"k": k.label(), "ell": ell, "cells": len(images), "strings": len(strings)})
        if failure is not None:
            report.failures.append(failure)
    logger.info("Segal check: %d levels, %d failures", len(report.checked), len(report.failures))
    return report


def completeness_check(P: SigmaPresheaf) -> dict:
    """Arrows f → g and g → f over the same k⃗ force f = g."""
    failures = []
    checked = 0
    for k in P.bound.objects():
        if k.dim >= P.bound.max_dim or P.bound.max_entry < 1:
            continue
        checked += 1
        start, end = endpoint_map(k, 0), endpoint_map(k, 1)
        ends = {(P.restrict(start, h), P.restrict(end, h)) for h in P.cells(extend(k, 1))}
        for f, g in ends:
            if f != g and (g, f) in ends:
                failures.append({"k": k.label(), "pair": sorted([repr(f), repr(g)])})
                break
    return {"passed": not failures, "levels_checked": checked, "failures": failures}


def completeness_check_representable(apex: SigmaObject, bound: SigmaBound) -> dict:
    return completeness_check(representable(apex, bound))


# ── Truncated simplicial sets and Kan extension ──────────────────────


@dataclass
class TruncatedSimplicialSet:
    """Levels 0..top with cell lists and restriction along Δ maps θ: [m] → [n]."""

    levels: dict
    restrict_fn: object

    @property
    def top(self) -> int:
        return max(self.levels)

    def cells(self, n: int) -> list:
        return self.levels[n]

    def restrict(self, theta: DeltaMap, cell):
        return self.restrict_fn(theta, cell)


def trivial_category_object(elements, n: int) -> list[tuple]:
    """Level n of the chaotic category on `elements`: all (n+1)-tuples."""
    return list(itertools.product(list(elements), repeat=n + 1))


def chaotic_simplicial_set(size: int, top: int) -> TruncatedSimplicialSet:
    """E^{size-1} truncated at level `top`; restriction is x ∘ θ."""
    elements = list(range(size))
    levels = {n: trivial_category_object(elements, n) for n in range(top + 1)}
    return TruncatedSimplicialSet(levels, lambda theta, x: tuple(x[v] for v in theta.values))


def kan_extension_cell(X: TruncatedSimplicialSet, k: SigmaObject, at: SigmaObject,
                       budget: int = DEFAULT_HOM_BUDGET) -> list:
    """
    Σ[k⃗, X] evaluated at `at`: pairs (h: at → [k⃗, ℓ], x ∈ X_ℓ) for ℓ ≤ top,
    modulo (i(θ)∘h, x) ~ (h, X(θ)x). Returns one representative per class.
    """
    top = X.top
    homs = {ell: sigma_hom_enumerate(at, extend(k, ell), budget) for ell in range(top + 1)}
    total = sum(len(homs[ell]) * len(X.cells(ell)) for ell in homs)
    if total > budget:
        raise BudgetExceeded(f"Kan extension cell has {total} raw elements, budget {budget}")
    uf = UnionFind((ell, h, x) for ell in homs for h in homs[ell] for x in X.cells(ell))
    for m in range(top + 1):
        for ell in range(top + 1):
            for theta in delta_hom_enumerate(m, ell):
                i_theta = extension_map(k, theta)
                for h in homs[m]:
                    pushed = sigma_compose(i_theta, h)
                    for x in X.cells(ell):
                        uf.union((ell, pushed, x), (m, h, X.restrict(theta, x)))
    classes = [min(members, key=lambda e: (e[0], e[1].label(), repr(e[2]))) for members in uf.classes()]
    logger.debug("Kan extension cell at %s over %s: %d classes", at.label(), k.label(), len(classes))
    return sorted(classes, key=lambda e: (e[0], e[1].label(), repr(e[2])))
