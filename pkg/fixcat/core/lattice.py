"""
Finite lattices and monotone maps: the thin-category instance of the engine.

In a lattice viewed as a category the Adámek chain ⊥ → f(⊥) → f²(⊥) → ... is
Kleene iteration, so lfp/gfp are the initial algebra and terminal coalgebra
of f. Both direct iteration and the generic driver are exposed; they must agree.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from fixcat.core.errors import BudgetExceeded, LatticeError

logger = logging.getLogger("fixcat.lattice")

ORACLE_MAX_ELEMENTS = 12


class FiniteLattice:
    """
    `order[i, j]` is True iff elements[i] ≤ elements[j]. Join and meet tables
    are computed once at construction; a poset lacking a join or meet raises
    LatticeError naming the offending pair.
    """

    def __init__(self, elements, order: np.ndarray):
        self.elements = tuple(elements)
        n = len(self.elements)
        if n == 0:
            raise LatticeError("A lattice needs at least one element")
        if len(set(self.elements)) != n:
            raise LatticeError("Lattice element names must be distinct")
        order = np.asarray(order, dtype=bool)
        if order.shape != (n, n):
            raise LatticeError(f"Order matrix has shape {order.shape}, expected {(n, n)}")
        if not order[np.diag_indices(n)].all():
            raise LatticeError("Order relation is not reflexive")
        if ((order & order.T).sum()) > n:
            raise LatticeError("Order relation is not antisymmetric (cycle in the Hasse diagram?)")
        if (~order & (order.astype(np.int64) @ order.astype(np.int64) > 0)).any():
            raise LatticeError("Order relation is not transitive")
        order.flags.writeable = False
        self.order = order
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.join_table = self._bound_table(order, "join")
        self.meet_table = self._bound_table(order.T, "meet")
        self.bottom = self.elements[self._extreme(order, low=True)]
        self.top = self.elements[self._extreme(order, low=False)]

    def _bound_table(self, leq: np.ndarray, what: str) -> np.ndarray:
        # an upper bound set determines its least element by its own up-set row
        n = len(self.elements)
        by_row = {tuple(leq[k, :]): k for k in range(n)}
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                above = tuple(leq[i, :] & leq[j, :])
                if above not in by_row:
                    raise LatticeError(
                        f"No {what} for {self.elements[i]!r} and {self.elements[j]!r}",
                        witness=[self.elements[i], self.elements[j]],
                    )
                table[i, j] = by_row[above]
        table.flags.writeable = False
        return table

    @staticmethod
    def _extreme(order: np.ndarray, low: bool) -> int:
        rows = order if low else order.T
        for i in range(len(order)):
            if rows[i].all():
                return i
        raise LatticeError("Lattice has no bottom" if low else "Lattice has no top")

    # -- constructors

    @classmethod
    def from_hasse(cls, elements, edges) -> "FiniteLattice":
        """Edges are (lower, upper) cover pairs; the order is their reflexive-transitive closure."""
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        order = np.eye(n, dtype=bool)
        for lower, upper in edges:
            if lower not in index or upper not in index:
                raise LatticeError(f"Hasse edge ({lower!r}, {upper!r}) names an unknown element")
            order[index[lower], index[upper]] = True
        for k in range(n):
            order |= order[:, k:k + 1] & order[k:k + 1, :]
        return cls(elements, order)

    @classmethod
    def powerset(cls, atoms) -> "FiniteLattice":
        atoms = list(atoms)
        subsets = [frozenset(c) for r in range(len(atoms) + 1) for c in itertools.combinations(atoms, r)]
        names = [subset_name(s, atoms) for s in subsets]
        order = np.array([[a <= b for b in subsets] for a in subsets], dtype=bool)
        return cls(names, order)

    @classmethod
    def chain(cls, n: int) -> "FiniteLattice":
        names = [str(i) for i in range(n)]
        return cls.from_hasse(names, [(names[i], names[i + 1]) for i in range(n - 1)])

    # -- queries

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, FiniteLattice) and self.elements == other.elements \
            and np.array_equal(self.order, other.order)

    def __hash__(self):
        return hash((self.elements, self.order.tobytes()))

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise LatticeError(f"{x!r} is not an element of the lattice")

    def leq(self, x: str, y: str) -> bool:
        return bool(self.order[self.idx(x), self.idx(y)])

    def join(self, x: str, y: str) -> str:
        return self.elements[self.join_table[self.idx(x), self.idx(y)]]

    def meet(self, x: str, y: str) -> str:
        return self.elements[self.meet_table[self.idx(x), self.idx(y)]]

    def join_all(self, xs) -> str:
        result = self.bottom
        for x in xs:
            result = self.join(result, x)
        return result

    def meet_all(self, xs) -> str:
        result = self.top
        for x in xs:
            result = self.meet(result, x)
        return result

    def height_of(self, x: str) -> int:
        """Number of elements ≤ x (growth measure for chain reports)."""
        return int(self.order[:, self.idx(x)].sum())

    def hasse_edges(self) -> list[tuple[str, str]]:
        lt = self.order.copy()
        np.fill_diagonal(lt, False)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        covers = lt & ~between
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(covers))]


def subset_name(subset, atoms) -> str:
    return "{" + ",".join(str(a) for a in atoms if a in subset) + "}"


@dataclass(frozen=True)
class MonotoneMap:
    """Value table of an endofunction on a lattice; table[i] indexes lattice.elements."""

    lattice: FiniteLattice
    table: tuple

    def __post_init__(self):
        n = len(self.lattice)
        if len(self.table) != n or any(not 0 <= v < n for v in self.table):
            raise LatticeError(f"Map table must list one element index per lattice element ({n})")

    @classmethod
    def from_table(cls, lattice: FiniteLattice, mapping: dict) -> "MonotoneMap":
        missing = [x for x in lattice.elements if x not in mapping]
        if missing:
            raise LatticeError(f"Map table is missing elements {missing!r}")
        return cls(lattice, tuple(lattice.idx(mapping[x]) for x in lattice.elements))

    @classmethod
    def from_function(cls, lattice: FiniteLattice, fn) -> "MonotoneMap":
        return cls(lattice, tuple(lattice.idx(fn(x)) for x in lattice.elements))

    @classmethod
    def constant(cls, lattice: FiniteLattice, value: str) -> "MonotoneMap":
        return cls(lattice, (lattice.idx(value),) * len(lattice))

    @classmethod
    def identity(cls, lattice: FiniteLattice) -> "MonotoneMap":
        return cls(lattice, tuple(range(len(lattice))))

    def __call__(self, x: str) -> str:
        return self.lattice.elements[self.table[self.lattice.idx(x)]]

    def monotonicity_witness(self):
        """A pair x ≤ y with f(x) ≰ f(y), or None."""
        order = self.lattice.order
        t = np.asarray(self.table)
        bad = order & ~order[np.ix_(t, t)]
        if bad.any():
            i, j = (int(v) for v in np.argwhere(bad)[0])
            return [self.lattice.elements[i], self.lattice.elements[j]]
        return None

    def is_monotone(self) -> bool:
        return self.monotonicity_witness() is None

    def as_table(self) -> dict:
        return {x: self(x) for x in self.lattice.elements}


def require_monotone(f: MonotoneMap):
    witness = f.monotonicity_witness()
    if witness is not None:
        x, y = witness
        raise LatticeError(f"Map is not monotone: {x} ≤ {y} but f({x}) ≰ f({y})", witness=witness)


@dataclass
class KleeneResult:
    element: str
    trace: list
    direction: str

    @property
    def stage(self) -> int:
        return len(self.trace) - 1


def _kleene(f: MonotoneMap, start: str, direction: str) -> KleeneResult:
    require_monotone(f)
    x, trace = start, [start]
    for _ in range(len(f.lattice) + 1):
        y = f(x)
        if y == x:
            return KleeneResult(x, trace, direction)
        trace.append(y)
        x = y
    raise LatticeError("Kleene iteration exceeded the lattice height; map is not monotone")


def lfp(f: MonotoneMap) -> KleeneResult:
    return _kleene(f, f.lattice.bottom, "ascending")


def gfp(f: MonotoneMap) -> KleeneResult:
    return _kleene(f, f.lattice.top, "descending")


def all_fixed_points(f: MonotoneMap, max_elements: int = ORACLE_MAX_ELEMENTS) -> list[str]:
    """Brute-force oracle, listed by position in a linear extension of the order."""
    if len(f.lattice) > max_elements:
        raise BudgetExceeded(f"Oracle limited to {max_elements} elements, lattice has {len(f.lattice)}")
    fixed = [x for x in f.lattice.elements if f(x) == x]
    return sorted(fixed, key=lambda x: (f.lattice.height_of(x), f.lattice.idx(x)))


def least_of(lattice: FiniteLattice, xs: list[str]):
    """The element of xs below all others, or None."""
    for x in xs:
        if all(lattice.leq(x, y) for y in xs):
            return x
    return None


def greatest_of(lattice: FiniteLattice, xs: list[str]):
    for x in xs:
        if all(lattice.leq(y, x) for y in xs):
            return x
    return None


# ── Through the generic drivers ──────────────────────────────────────


def lfp_via_adamek(f: MonotoneMap) -> str:
    """Initial algebra of f on the thin category; raises if it does not stabilize."""
    from fixcat.core.adamek import initial_algebra
    from fixcat.core.functors import MonotoneEndofunctor

    require_monotone(f)
    cert = initial_algebra(MonotoneEndofunctor(f), budget=len(f.lattice) + 3, probe_size=0)
    return cert.result.carrier


def gfp_via_adamek(f: MonotoneMap) -> str:
    from fixcat.core.adamek import terminal_coalgebra
    from fixcat.core.functors import MonotoneEndofunctor

    require_monotone(f)
    cert = terminal_coalgebra(MonotoneEndofunctor(f), budget=len(f.lattice) + 3, probe_size=0)
    return cert.result.carrier


class Inflation:
    """
    Pointed endofunctor x ↦ x ∨ f(x) with unit x ≤ x ∨ f(x). Its fixed points
    are the pre-fixed points of f, so the free fixed point on x is the least
    pre-fixed point above x.
    """

    def __init__(self, f: MonotoneMap):
        from fixcat.core.category import ThinLatticeCategory

        require_monotone(f)
        self.f = f
        self.category = ThinLatticeCategory(f.lattice)

    def apply(self, x: str) -> str:
        return self.f.lattice.join(x, self.f(x))

    def unit(self, x: str):
        return self.category.arrow(x, self.apply(x))

    def unit_is_iso(self, x: str):
        y = self.apply(x)
        return y == x, None if y == x else {"element": x, "inflated": y}

    def colimit(self, links, budget: int):
        from fixcat.core.chains import chain_colimit

        return chain_colimit(self.category, links, budget)

    def size(self, x: str) -> int:
        return self.f.lattice.height_of(x)


def least_prefixed_above(f: MonotoneMap, x: str, budget: int = 64) -> str:
    from fixcat.core.adamek import free_fixed_point
    from fixcat.core.chains import NotStabilized

    outcome = free_fixed_point(x, Inflation(f), budget)
    if isinstance(outcome, NotStabilized):
        raise LatticeError("Inflation chain did not stabilize on a finite lattice")
    return outcome.fixed


# ── Generators for exhaustive sweeps ─────────────────────────────────


def _order_from_middle(n: int, relation) -> np.ndarray:
    order = np.eye(n, dtype=bool)
    order[0, :] = True
    order[:, n - 1] = True
    for i, j in relation:
        order[i + 1, j + 1] = True
    return order


def enumerate_lattices(n: int) -> list[FiniteLattice]:
    """All lattices with n elements up to isomorphism (n ≤ 5 keeps this instant)."""
    if n <= 0:
        return []
    if n == 1:
        return [FiniteLattice(["⊥"], np.ones((1, 1), dtype=bool))]
    m = n - 2
    names = ["⊥"] + [chr(ord("a") + i) for i in range(m)] + ["⊤"]
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    seen = set()
    found = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        relation = [p for p, b in zip(pairs, bits) if b]
        rel = set(relation)
        if any((j, i) in rel for i, j in relation):
            continue
        if any((i, k) not in rel for i, j in relation for j2, k in relation if j == j2 and i != k):
            continue
        key = min(
            tuple(sorted((perm[i], perm[j]) for i, j in relation))
            for perm in itertools.permutations(range(m))
        )
        if key in seen:
            continue
        try:
            lattice = FiniteLattice(names, _order_from_middle(n, relation))
        except LatticeError:
            continue
        seen.add(key)
        found.append(lattice)
    logger.debug("Generated %d lattices with %d elements", len(found), n)
    return found


def enumerate_monotone_maps(lattice: FiniteLattice):
    n = len(lattice)
    order = lattice.order
    for table in itertools.product(range(n), repeat=n):
        t = np.asarray(table)
        if not (order & ~order[np.ix_(t, t)]).any():
            yield MonotoneMap(lattice, table)
