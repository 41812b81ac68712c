"""
Rank and Noetherianness of higher-category hom-skeletons.

A skeleton keeps only objects and, for each ordered pair of objects, the
skeleton of the hom. Two encodings:

  HomTree            finite depth: POINT or Node(objects, homs)
  RationalHigherCat  finitely many states whose homs point back at states,
                     so hom towers may be infinite

A skeleton is contractible when it has an object and all its homs are
contractible. On rational inputs this is a fixed point over states: the least
one (inductive) or the greatest one (coinductive). Rank follows the recursion
"rank < n+1 iff every hom has rank < n", with rank < 0 meaning contractible.
"""
import itertools
import logging
from dataclasses import dataclass, field

from fixcat.core.errors import BudgetExceeded, IllTypedInput

logger = logging.getLogger("fixcat.rank")

MODES = ("inductive", "coinductive")
DEFAULT_ENUMERATION_BUDGET = 200_000


# ── Encodings ────────────────────────────────────────────────────────


class _Point:
    """The terminal skeleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POINT"

    def __reduce__(self):
        return (_Point, ())


POINT = _Point()


@dataclass(frozen=True)
class Node:
    objects: tuple = ()
    homs: tuple = ()

    def __post_init__(self):
        objects = tuple(self.objects)
        if len(set(objects)) != len(objects):
            raise IllTypedInput("Skeleton object names must be distinct")
        homs = dict(self.homs)
        expected = {(x, y) for x in objects for y in objects}
        if set(homs) != expected:
            raise IllTypedInput("Skeleton homs must be given for exactly the ordered object pairs")
        for h in homs.values():
            if h is not POINT and not isinstance(h, Node):
                raise IllTypedInput(f"Hom skeleton {h!r} is neither POINT nor a Node")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "homs", tuple(((x, y), homs[(x, y)]) for x in objects for y in objects))

    @classmethod
    def from_dict(cls, objects, homs: dict) -> "Node":
        return cls(tuple(objects), tuple(homs.items()))

    def hom(self, x, y):
        return dict(self.homs)[(x, y)]


EMPTY = Node()


def depth(tree) -> int:
    if tree is POINT:
        return 0
    return 1 + max((depth(h) for _, h in tree.homs), default=0)


@dataclass(frozen=True)
class MachineState:
    objects: tuple = ()
    homs: tuple = ()
    point: bool = False

    def targets(self):
        return [t for _, t in self.homs]


@dataclass(frozen=True)
class RationalHigherCat:
    states: tuple
    root: int = 0

    def __post_init__(self):
        n = len(self.states)
        if not 0 <= self.root < n:
            raise IllTypedInput(f"Root state {self.root} out of range")
        for sid, state in enumerate(self.states):
            expected = {(x, y) for x in state.objects for y in state.objects}
            if {pair for pair, _ in state.homs} != expected:
                raise IllTypedInput(f"State {sid}: homs must cover exactly the ordered object pairs")
            if any(not 0 <= t < n for t in state.targets()):
                raise IllTypedInput(f"State {sid}: hom target out of range")
            if state.point and (len(state.objects) != 1 or state.targets() != [sid]):
                raise IllTypedInput(f"State {sid}: a point state has one object whose hom is itself")


def point_state(sid: int) -> MachineState:
    return MachineState(("*",), ((("*", "*"), sid),), True)


def self_loop_machine() -> RationalHigherCat:
    """One object x with Hom(x, x) the machine itself."""
    return RationalHigherCat((MachineState(("x",), ((("x", "x"), 0),)),), 0)


def to_machine(tree) -> RationalHigherCat:
    """Share equal subtrees; POINT becomes a flagged point state."""
    states, index = [], {}

    def visit(t):
        if t in index:
            return index[t]
        sid = len(states)
        index[t] = sid
        states.append(None)
        if t is POINT:
            states[sid] = point_state(sid)
        else:
            states[sid] = MachineState(t.objects, tuple((pair, visit(h)) for pair, h in t.homs))
        return sid

    root = visit(tree)
    return RationalHigherCat(tuple(states), root)


def _as_machine(spec) -> RationalHigherCat:
    return spec if isinstance(spec, RationalHigherCat) else to_machine(spec)


# ── Contractibility ──────────────────────────────────────────────────


def contractible_states(machine: RationalHigherCat, mode: str = "inductive") -> frozenset:
    """Least (inductive) or greatest (coinductive) set S closed under the trivial-state rule."""
    if mode not in MODES:
        raise IllTypedInput(f"Unknown contractibility mode {mode!r}")
    all_states = frozenset(range(len(machine.states)))

    def step(current):
        return frozenset(
            sid for sid, st in enumerate(machine.states)
            if st.point or (st.objects and all(t in current for t in st.targets()))
        )

    current = frozenset() if mode == "inductive" else all_states
    while True:
        following = step(current)
        if following == current:
            return current
        current = following


def contractible(spec, mode: str = "inductive") -> bool:
    if mode not in MODES:
        raise IllTypedInput(f"Unknown contractibility mode {mode!r}")
    if isinstance(spec, RationalHigherCat):
        return spec.root in contractible_states(spec, mode)
    if spec is POINT:
        return True
    return bool(spec.objects) and all(contractible(h, mode) for _, h in spec.homs)


# ── Rank ─────────────────────────────────────────────────────────────


@dataclass(frozen=True, order=True)
class RankValue:
    """kind is "contractible", "finite" or "not-small"; n only for finite."""

    kind: str
    n: int = 0

    @property
    def as_int(self) -> int | None:
        if self.kind == "contractible":
            return -1
        if self.kind == "finite":
            return self.n
        return None

    def label(self) -> str:
        return f"finite:{self.n}" if self.kind == "finite" else self.kind

    def as_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n} if self.kind == "finite" else {"kind": self.kind}


CONTRACTIBLE = RankValue("contractible")
NOT_SMALL = RankValue("not-small")


def finite(n: int) -> RankValue:
    return RankValue("finite", n)


def _from_int(n: int) -> RankValue:
    return CONTRACTIBLE if n < 0 else finite(n)


def _tree_rank(tree) -> int:
    if tree is POINT:
        return -1
    if contractible(tree):
        return -1
    return 1 + max((_tree_rank(h) for _, h in tree.homs), default=-1)


def _machine_rank(machine: RationalHigherCat) -> RankValue:
    trivial = contractible_states(machine, "inductive")
    memo, on_stack = {}, set()

    def visit(sid):
        if sid in trivial:
            return -1
        if sid in memo:
            return memo[sid]
        if sid in on_stack:
            return None
        on_stack.add(sid)
        best = -1
        for t in machine.states[sid].targets():
            r = visit(t)
            if r is None:
                on_stack.discard(sid)
                memo[sid] = None
                return None
            best = max(best, r)
        on_stack.discard(sid)
        memo[sid] = best + 1
        return memo[sid]

    value = visit(machine.root)
    return NOT_SMALL if value is None else _from_int(value)


def rank(spec) -> RankValue:
    if isinstance(spec, RationalHigherCat):
        return _machine_rank(spec)
    return _from_int(_tree_rank(spec))


def rank_below(spec, n: int) -> bool:
    """rank < n, by its own recursion; rank < 0 means contractible."""
    if isinstance(spec, RationalHigherCat):
        memo = {}

        def below(sid, k):
            state = spec.states[sid]
            if state.point:
                return True
            if k <= 0:
                return sid in contractible_states(spec, "inductive") if k == 0 else False
            if (sid, k) not in memo:
                memo[(sid, k)] = all(below(t, k - 1) for t in state.targets())
            return memo[(sid, k)]

        return below(spec.root, n)

    def below_tree(tree, k):
        if tree is POINT:
            return True
        if k <= 0:
            return k == 0 and contractible(tree)
        return all(below_tree(h, k - 1) for _, h in tree.homs)

    return below_tree(spec, n)


def hom_rank_profile(spec) -> dict:
    """Rank of every hom of the top level, keyed by "x→y"."""
    if isinstance(spec, RationalHigherCat):
        state = spec.states[spec.root]
        return {f"{x}→{y}": rank(RationalHigherCat(spec.states, t)).label() for (x, y), t in state.homs}
    if spec is POINT:
        return {}
    return {f"{x}→{y}": rank(h).label() for (x, y), h in spec.homs}


def small_rank_bound(tree) -> dict:
    """rank ≤ 1 + max hom rank, for a finite skeleton with finitely many objects."""
    r = rank(tree).as_int
    homs = [] if tree is POINT else [rank(h).as_int for _, h in tree.homs]
    bound = 1 + max(homs, default=-1)
    return {"rank": r, "bound": bound, "holds": r <= bound}


# ── Noetherianness ───────────────────────────────────────────────────


@dataclass
class TowerWitness:
    """Edges (state, (x, y)); after `prefix` the `cycle` repeats forever."""

    prefix: list = field(default_factory=list)
    cycle: list = field(default_factory=list)

    def unroll(self, machine: RationalHigherCat, length: int) -> list[int]:
        """States visited by the first `length` homs of the tower."""
        hom_of = {
            (sid, pair): t for sid, st in enumerate(machine.states) for pair, t in st.homs
        }
        edges = self.prefix + self.cycle * (length // max(len(self.cycle), 1) + 1)
        return [hom_of[(sid, pair)] for sid, pair in edges[:length]]

    def as_dict(self) -> dict:
        return {
            "prefix": [[sid, list(pair)] for sid, pair in self.prefix],
            "cycle": [[sid, list(pair)] for sid, pair in self.cycle],
        }


def find_tower(machine: RationalHigherCat):
    """Lasso through non-contractible states with objects, from the root; None if absent."""
    trivial = contractible_states(machine, "inductive")
    live = {sid for sid, st in enumerate(machine.states) if sid not in trivial and st.objects}
    if machine.root not in live:
        return None
    finished = set()
    path, on_path = [], [machine.root]
    stack = [iter(machine.states[machine.root].homs)]
    while stack:
        sid = on_path[-1]
        for pair, t in stack[-1]:
            if t not in live or t in finished:
                continue
            if t in on_path:
                i = on_path.index(t)
                return TowerWitness(path[:i], path[i:] + [(sid, pair)])
            path.append((sid, pair))
            on_path.append(t)
            stack.append(iter(machine.states[t].homs))
            break
        else:
            finished.add(sid)
            stack.pop()
            on_path.pop()
            if path:
                path.pop()
    return None


def is_noetherian(spec):
    """(verdict, witness): every infinite parallel tower eventually reaches a contractible hom."""
    witness = find_tower(_as_machine(spec))
    return witness is None, witness


def noeth_equiv_rank(spec) -> dict:
    machine = _as_machine(spec)
    noetherian, witness = is_noetherian(machine)
    value = rank(machine)
    report = {
        "noetherian": noetherian,
        "rank": value.label(),
        "agree": noetherian == (value != NOT_SMALL),
        "witness": witness.as_dict() if witness else None,
    }
    if not report["agree"]:
        logger.warning("Noetherian verdict and rank disagree: %s", report)
    return report


# ── Constructors ─────────────────────────────────────────────────────


def suspension(spec):
    """Objects ⊥, ⊤ with Hom(⊥,⊤) = X, Hom(⊤,⊥) = ∅ and contractible endo-homs."""
    if isinstance(spec, RationalHigherCat):
        states = list(spec.states)
        point, empty, root = len(states), len(states) + 1, len(states) + 2
        states.append(point_state(point))
        states.append(MachineState())
        states.append(MachineState(("⊥", "⊤"), (
            (("⊥", "⊥"), point), (("⊥", "⊤"), spec.root), (("⊤", "⊥"), empty), (("⊤", "⊤"), point),
        )))
        return RationalHigherCat(tuple(states), root)
    return Node(("⊥", "⊤"), ((("⊥", "⊥"), POINT), (("⊥", "⊤"), spec), (("⊤", "⊥"), EMPTY), (("⊤", "⊤"), POINT)))


def _is_empty(spec) -> bool:
    if isinstance(spec, RationalHigherCat):
        return not spec.states[spec.root].objects
    return spec is not POINT and not spec.objects


def coproduct(specs):
    """Disjoint union of objects, tagged "i:x"; homs across summands are ∅."""
    specs = [s for s in specs if not _is_empty(s)]
    if not specs:
        return EMPTY
    if len(specs) == 1:
        return specs[0]
    if any(isinstance(s, RationalHigherCat) for s in specs):
        return _machine_coproduct([_as_machine(s) for s in specs])
    objects, homs = [], {}
    parts = []
    for i, s in enumerate(specs):
        local = [("*", "*", POINT)] if s is POINT else [(x, y, h) for (x, y), h in s.homs]
        names = ["*"] if s is POINT else list(s.objects)
        parts.append([f"{i}:{x}" for x in names])
        objects.extend(parts[-1])
        for x, y, h in local:
            homs[(f"{i}:{x}", f"{i}:{y}")] = h
    for a, b in itertools.permutations(range(len(parts)), 2):
        for x in parts[a]:
            for y in parts[b]:
                homs[(x, y)] = EMPTY
    return Node.from_dict(objects, homs)


def _machine_coproduct(machines):
    states, roots = [], []
    for m in machines:
        offset = len(states)
        for st in m.states:
            states.append(MachineState(st.objects, tuple((p, t + offset) for p, t in st.homs), st.point))
        roots.append(m.root + offset)
    empty = len(states)
    states.append(MachineState())
    objects, homs = [], {}
    parts = []
    for i, r in enumerate(roots):
        st = states[r]
        names = ["*"] if st.point else list(st.objects)
        parts.append([f"{i}:{x}" for x in names])
        objects.extend(parts[-1])
        for (x, y), t in st.homs:
            homs[(f"{i}:{x}", f"{i}:{y}")] = t
    for a, b in itertools.permutations(range(len(parts)), 2):
        for x in parts[a]:
            for y in parts[b]:
                homs[(x, y)] = empty
    root = len(states)
    states.append(MachineState(tuple(objects), tuple(homs.items())))
    return RationalHigherCat(tuple(states), root)


def strictness_witness(theta: int):
    """Σ^θ(∅), of rank exactly θ."""
    tree = EMPTY
    for _ in range(theta):
        tree = suspension(tree)
    return tree


# ── Canonical forms and enumeration ──────────────────────────────────


def skeleton_key(tree) -> str:
    """Key of the canonical form: contractible collapses to "*", objects up to relabeling."""
    return _canonical(tree)[1]


def canonical(tree):
    return _canonical(tree)[0]


def _canonical(tree):
    if tree is POINT or contractible(tree):
        return POINT, "*"
    n = len(tree.objects)
    children = {pair: _canonical(h) for pair, h in tree.homs}
    best = None
    for perm in itertools.permutations(range(n)):
        # perm[i] is the old index placed at position i
        key = "[" + str(n) + ":" + ",".join(
            children[(tree.objects[perm[i]], tree.objects[perm[j]])][1] for i in range(n) for j in range(n)
        ) + "]"
        if best is None or key < best[0]:
            best = (key, perm)
    key, perm = best
    names = [str(i) for i in range(n)]
    homs = {
        (names[i], names[j]): children[(tree.objects[perm[i]], tree.objects[perm[j]])][0]
        for i in range(n) for j in range(n)
    }
    return Node.from_dict(names, homs), key


def enumerate_skeletons(max_objects: int, max_depth: int,
                        budget: int = DEFAULT_ENUMERATION_BUDGET) -> list:
    """All skeletons of depth ≤ max_depth with ≤ max_objects objects at every level, up to equivalence."""
    level = {"*": POINT}
    for _ in range(max_depth):
        found = dict(level)
        pool = list(level.values())
        for n in range(max_objects + 1):
            names = [str(i) for i in range(n)]
            pairs = [(x, y) for x in names for y in names]
            if len(pool) ** len(pairs) > budget:
                raise BudgetExceeded(f"{len(pool)}^{len(pairs)} hom assignments exceed budget {budget}")
            for choice in itertools.product(pool, repeat=len(pairs)):
                tree, key = _canonical(Node.from_dict(names, dict(zip(pairs, choice))))
                found.setdefault(key, tree)
        level = found
    logger.debug("Enumerated %d skeletons at (%d, %d)", len(level), max_objects, max_depth)
    return sorted(level.values(), key=lambda t: (depth(t), skeleton_key(t)))


def enumerate_labeled_skeletons(max_objects: int, max_depth: int,
                                budget: int = DEFAULT_ENUMERATION_BUDGET) -> list:
    """Second generator: labeled trees without intermediate dedup, canonicalized once at the end."""
    level = [POINT]
    for _ in range(max_depth):
        following = [POINT]
        for n in range(max_objects + 1):
            names = [str(i) for i in range(n)]
            pairs = [(x, y) for x in names for y in names]
            if len(level) ** len(pairs) > budget:
                raise BudgetExceeded(f"{len(level)}^{len(pairs)} labeled skeletons exceed budget {budget}")
            for choice in itertools.product(level, repeat=len(pairs)):
                following.append(Node.from_dict(names, dict(zip(pairs, choice))))
        level = following
    unique = {}
    for tree in level:
        canon, key = _canonical(tree)
        unique.setdefault(key, canon)
    return list(unique.values())


def _state_options(n_states: int, max_objects: int):
    """Per-state shapes; two-object states up to swapping the objects."""
    yield "point", None
    yield "empty", None
    if max_objects >= 1:
        for t in range(n_states):
            yield "one", (t,)
    if max_objects >= 2:
        for targets in itertools.product(range(n_states), repeat=4):
            xx, xy, yx, yy = targets
            if targets <= (yy, yx, xy, xx):
                yield "two", targets


def _build_state(sid: int, shape: str, targets) -> MachineState:
    if shape == "point":
        return point_state(sid)
    if shape == "empty":
        return MachineState()
    if shape == "one":
        return MachineState(("x",), ((("x", "x"), targets[0]),))
    xx, xy, yx, yy = targets
    return MachineState(("x", "y"), ((("x", "x"), xx), (("x", "y"), xy), (("y", "x"), yx), (("y", "y"), yy)))


def enumerate_machines(max_states: int = 3, max_objects: int = 2):
    """Every machine with 1..max_states states and root 0 (generator)."""
    for n in range(1, max_states + 1):
        options = list(_state_options(n, max_objects))
        for shapes in itertools.product(options, repeat=n):
            yield RationalHigherCat(
                tuple(_build_state(sid, shape, targets) for sid, (shape, targets) in enumerate(shapes)), 0,
            )
