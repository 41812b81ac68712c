"""
Concretely-presented categories.

Every presentation implements the same ConcreteCategory surface: identities,
composition, hom enumeration, iso tests and whichever (co)limits its capability
flags advertise. Kinds:

  finite-sets        FinSet objects, FinMap morphisms (dense value arrays)
  thin-lattice       lattice elements, OrderArrow morphisms (x ≤ y)
  finite-presented   named objects/arrows with an explicit composition table
  under-category     objects c → x of a base, commuting triangles as morphisms
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

from fixcat.core.errors import (
    BudgetExceeded,
    CapabilityMissing,
    IllTypedInput,
    NonEnumerable,
    TypeMismatch,
)
from fixcat.core.unionfind import UnionFind

logger = logging.getLogger("fixcat.category")

DEFAULT_HOM_BUDGET = 10**6
DEFAULT_UNIVERSE_BOUND = 3


def element_key(element):
    """Total order on element encodings: ints < strings < tuples (recursively)."""
    if isinstance(element, tuple):
        return (2, tuple(element_key(e) for e in element))
    if isinstance(element, str):
        return (1, element)
    if isinstance(element, int):
        return (0, element)
    raise IllTypedInput(f"Unsupported element encoding: {element!r}")


# ── Finite sets ──────────────────────────────────────────────────────


@dataclass(frozen=True)
class FinSet:
    """A finite set with canonically sorted, duplicate-free elements."""

    elements: tuple = ()

    def __post_init__(self):
        ordered = tuple(sorted(set(self.elements), key=element_key))
        if ordered != self.elements:
            object.__setattr__(self, "elements", ordered)

    @classmethod
    def range(cls, n: int) -> "FinSet":
        return cls(tuple(range(n)))

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def position(self, element) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise IllTypedInput(f"{element!r} is not an element of a set of size {len(self)}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element):
        return element in self.index

    def __repr__(self):
        return "FinSet(" + ", ".join(repr(e) for e in self.elements) + ")"


@dataclass(frozen=True)
class FinMap:
    """Total function between finite sets; values[i] indexes target.elements."""

    source: FinSet
    target: FinSet
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.source):
            raise IllTypedInput(
                f"Map table has {len(self.values)} entries for a source of size {len(self.source)}"
            )
        n = len(self.target)
        for v in self.values:
            if not 0 <= v < n:
                raise IllTypedInput(f"Map value index {v} outside target of size {n}")

    @classmethod
    def from_function(cls, source: FinSet, target: FinSet, fn) -> "FinMap":
        return cls(source, target, tuple(target.position(fn(x)) for x in source))

    @classmethod
    def from_pairs(cls, source: FinSet, target: FinSet, mapping: dict) -> "FinMap":
        missing = [x for x in source if x not in mapping]
        if missing:
            raise IllTypedInput(f"Map table is missing source elements {missing!r}")
        return cls.from_function(source, target, mapping.__getitem__)

    @classmethod
    def from_list(cls, source: FinSet, target: FinSet, images) -> "FinMap":
        """Dense form: images listed in the canonical order of the source."""
        images = list(images)
        if len(images) != len(source):
            raise IllTypedInput(
                f"Expected {len(source)} images (one per source element), got {len(images)}"
            )
        return cls(source, target, tuple(target.position(y) for y in images))

    @classmethod
    def identity(cls, obj: FinSet) -> "FinMap":
        return cls(obj, obj, tuple(range(len(obj))))

    @classmethod
    def inclusion(cls, sub: FinSet, sup: FinSet) -> "FinMap":
        return cls.from_function(sub, sup, lambda x: x)

    def __call__(self, x):
        return self.target.elements[self.values[self.source.position(x)]]

    def after(self, other: "FinMap") -> "FinMap":
        """self ∘ other."""
        if other.target != self.source:
            raise TypeMismatch("Composite of maps whose middle objects differ")
        return FinMap(other.source, self.target, tuple(self.values[v] for v in other.values))

    def image(self) -> FinSet:
        return FinSet(tuple(self.target.elements[v] for v in set(self.values)))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == len(self.target)

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and self.is_injective()

    def injectivity_witness(self):
        """A pair of distinct source elements with equal images, or None."""
        seen = {}
        for x, v in zip(self.source, self.values):
            if v in seen:
                return [seen[v], x]
            seen[v] = x
        return None

    def surjectivity_witness(self):
        hit = set(self.values)
        for i, y in enumerate(self.target):
            if i not in hit:
                return y
        return None

    def inverse(self) -> "FinMap":
        if not self.is_bijective():
            raise IllTypedInput("Map is not a bijection")
        values = [0] * len(self.values)
        for i, v in enumerate(self.values):
            values[v] = i
        return FinMap(self.target, self.source, tuple(values))

    def table(self) -> dict:
        return {x: self.target.elements[v] for x, v in zip(self.source, self.values)}

    def images(self) -> list:
        return [self.target.elements[v] for v in self.values]


# ── Other morphism kinds ─────────────────────────────────────────────


@dataclass(frozen=True)
class OrderArrow:
    """The unique morphism x → y of a thin category (exists iff x ≤ y)."""

    source: str
    target: str


@dataclass(frozen=True)
class NamedArrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class UnderArrow:
    """Commuting triangle between objects source, target of an undercategory."""

    source: object
    target: object
    base: object


@dataclass(frozen=True)
class Capabilities:
    has_initial: bool = False
    has_terminal: bool = False
    has_coproducts: bool = False
    has_products: bool = False
    has_pushouts: bool = False
    has_pullbacks: bool = False
    hom_enumerable: bool = False
    sequential_colimits: bool = False
    sequential_limits: bool = False

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class Cospan:
    """Result of a coproduct or pushout: apex with the two coprojections."""

    apex: object
    left: object
    right: object


@dataclass(frozen=True)
class Span:
    """Result of a product or pullback: apex with the two projections."""

    apex: object
    left: object
    right: object


class ConcreteCategory:
    kind = "abstract"
    capabilities = Capabilities()

    def __init__(self, hom_budget: int = DEFAULT_HOM_BUDGET):
        self.hom_budget = hom_budget

    def require(self, flag: str):
        if not getattr(self.capabilities, flag):
            raise CapabilityMissing(f"{self.kind} category lacks capability '{flag}'")

    # -- interface every kind implements
    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        """g ∘ f."""
        raise NotImplementedError

    def hom(self, x, y) -> list:
        raise NotImplementedError

    def objects(self):
        raise NonEnumerable(f"{self.kind} category has no enumerable object universe")

    def is_iso(self, m) -> bool:
        raise NotImplementedError

    def inverse(self, m):
        raise NotImplementedError

    def size(self, x) -> int:
        """Cardinality-like measure used by growth reports."""
        return 0

    # -- capability operations; defaults raise
    def initial(self):
        raise CapabilityMissing(f"{self.kind} category has no initial object")

    def initial_arrow(self, x):
        raise CapabilityMissing(f"{self.kind} category has no initial object")

    def terminal(self):
        raise CapabilityMissing(f"{self.kind} category has no terminal object")

    def terminal_arrow(self, x):
        raise CapabilityMissing(f"{self.kind} category has no terminal object")

    def coproduct(self, x, y) -> Cospan:
        raise CapabilityMissing(f"{self.kind} category has no coproducts")

    def product(self, x, y) -> Span:
        raise CapabilityMissing(f"{self.kind} category has no products")

    def pushout(self, r, a) -> Cospan:
        raise CapabilityMissing(f"{self.kind} category has no pushouts")

    def pushout_mediate(self, po: Cospan, f, g):
        raise CapabilityMissing(f"{self.kind} category has no pushouts")

    def pullback(self, f, g) -> Span:
        raise CapabilityMissing(f"{self.kind} category has no pullbacks")


class FinSetCategory(ConcreteCategory):
    """Finite sets; `universe_bound` limits only the enumerated object universe."""

    kind = "finite-sets"
    capabilities = Capabilities(
        has_initial=True, has_terminal=True, has_coproducts=True, has_products=True,
        has_pushouts=True, has_pullbacks=True, hom_enumerable=True,
        sequential_colimits=True, sequential_limits=True,
    )

    def __init__(self, universe_bound: int = DEFAULT_UNIVERSE_BOUND, hom_budget: int = DEFAULT_HOM_BUDGET):
        super().__init__(hom_budget)
        self.universe_bound = universe_bound

    def __eq__(self, other):
        return isinstance(other, FinSetCategory)

    def __hash__(self):
        return hash(self.kind)

    def objects(self):
        return [FinSet.range(n) for n in range(self.universe_bound + 1)]

    def identity(self, x: FinSet) -> FinMap:
        return FinMap.identity(x)

    def compose(self, g: FinMap, f: FinMap) -> FinMap:
        return g.after(f)

    def hom(self, x: FinSet, y: FinSet) -> list[FinMap]:
        count = len(y) ** len(x)
        if count > self.hom_budget:
            raise BudgetExceeded(
                f"Hom-set of size {len(y)}^{len(x)} = {count} exceeds budget {self.hom_budget}"
            )
        return [FinMap(x, y, values) for values in itertools.product(range(len(y)), repeat=len(x))]

    def count_hom(self, x: FinSet, y: FinSet) -> int:
        return len(y) ** len(x)

    def is_iso(self, m: FinMap) -> bool:
        return m.is_bijective()

    def inverse(self, m: FinMap) -> FinMap:
        return m.inverse()

    def size(self, x: FinSet) -> int:
        return len(x)

    def initial(self) -> FinSet:
        return FinSet()

    def initial_arrow(self, x: FinSet) -> FinMap:
        return FinMap(FinSet(), x, ())

    def terminal(self) -> FinSet:
        return FinSet(((),))

    def terminal_arrow(self, x: FinSet) -> FinMap:
        return FinMap(x, self.terminal(), (0,) * len(x))

    def coproduct(self, x: FinSet, y: FinSet) -> Cospan:
        apex = FinSet(tuple((0, a) for a in x) + tuple((1, b) for b in y))
        return Cospan(
            apex,
            FinMap.from_function(x, apex, lambda a: (0, a)),
            FinMap.from_function(y, apex, lambda b: (1, b)),
        )

    def copair(self, cop: Cospan, f: FinMap, g: FinMap) -> FinMap:
        """The map out of a coproduct restricting to f and g."""
        if f.target != g.target:
            raise TypeMismatch("Copairing maps with different targets")
        return FinMap.from_function(cop.apex, f.target, lambda e: f(e[1]) if e[0] == 0 else g(e[1]))

    def coproduct_map(self, f: FinMap, g: FinMap) -> FinMap:
        """f ⊔ g between the canonical coproducts."""
        src = self.coproduct(f.source, g.source)
        tgt = self.coproduct(f.target, g.target)
        return FinMap.from_function(
            src.apex, tgt.apex, lambda e: (0, f(e[1])) if e[0] == 0 else (1, g(e[1]))
        )

    def product(self, x: FinSet, y: FinSet) -> Span:
        apex = FinSet(tuple(itertools.product(x, y)))
        return Span(
            apex,
            FinMap.from_function(apex, x, lambda p: p[0]),
            FinMap.from_function(apex, y, lambda p: p[1]),
        )

    def pushout(self, r: FinMap, a: FinMap) -> Cospan:
        if r.source != a.source:
            raise TypeMismatch("Pushout of maps with different sources")
        uf = UnionFind([(0, x) for x in r.target] + [(1, y) for y in a.target])
        for e in r.source:
            uf.union((0, r(e)), (1, a(e)))
        rep = {}
        for members in uf.classes():
            chosen = min(members, key=element_key)
            for m in members:
                rep[m] = chosen
        apex = FinSet(tuple(set(rep.values())))
        return Cospan(
            apex,
            FinMap.from_function(r.target, apex, lambda x: rep[(0, x)]),
            FinMap.from_function(a.target, apex, lambda y: rep[(1, y)]),
        )

    def pushout_mediate(self, po: Cospan, f: FinMap, g: FinMap) -> FinMap:
        """Unique u: P → Z with u∘left = f and u∘right = g (cocone must commute)."""
        if f.target != g.target:
            raise TypeMismatch("Cocone legs have different targets")
        assigned = {}
        for leg, m in ((po.left, f), (po.right, g)):
            for x in leg.source:
                p = leg(x)
                value = m(x)
                if assigned.setdefault(p, value) != value:
                    raise IllTypedInput(f"Cocone does not commute at pushout class {p!r}")
        return FinMap.from_pairs(po.apex, f.target, assigned)

    def coequalizer(self, f: FinMap, g: FinMap) -> tuple[FinSet, FinMap]:
        if f.source != g.source or f.target != g.target:
            raise TypeMismatch("Coequalizer of non-parallel maps")
        uf = UnionFind(f.target.elements)
        for x in f.source:
            uf.union(f(x), g(x))
        rep = {}
        for members in uf.classes():
            chosen = min(members, key=element_key)
            for m in members:
                rep[m] = chosen
        quotient = FinSet(tuple(set(rep.values())))
        return quotient, FinMap.from_function(f.target, quotient, rep.__getitem__)

    def pullback(self, f: FinMap, g: FinMap) -> Span:
        if f.target != g.target:
            raise TypeMismatch("Pullback of maps with different targets")
        apex = FinSet(tuple((x, y) for x in f.source for y in g.source if f(x) == g(y)))
        return Span(
            apex,
            FinMap.from_function(apex, f.source, lambda p: p[0]),
            FinMap.from_function(apex, g.source, lambda p: p[1]),
        )

    def corestrict(self, m: FinMap, sub: FinSet) -> FinMap:
        """m with its target shrunk to `sub` (which must contain the image)."""
        return FinMap.from_function(m.source, sub, m)


class ThinLatticeCategory(ConcreteCategory):
    """A finite lattice viewed as a category with at most one arrow per pair."""

    kind = "thin-lattice"
    capabilities = Capabilities(
        has_initial=True, has_terminal=True, has_coproducts=True, has_products=True,
        has_pushouts=True, has_pullbacks=True, hom_enumerable=True,
        sequential_colimits=True, sequential_limits=True,
    )

    def __init__(self, lattice, hom_budget: int = DEFAULT_HOM_BUDGET):
        super().__init__(hom_budget)
        self.lattice = lattice

    def __eq__(self, other):
        return isinstance(other, ThinLatticeCategory) and other.lattice == self.lattice

    def __hash__(self):
        return hash((self.kind, self.lattice))

    def arrow(self, x: str, y: str) -> OrderArrow:
        if not self.lattice.leq(x, y):
            raise IllTypedInput(f"No arrow {x} → {y}: {x} ≰ {y}")
        return OrderArrow(x, y)

    def objects(self):
        return list(self.lattice.elements)

    def identity(self, x: str) -> OrderArrow:
        return OrderArrow(x, x)

    def compose(self, g: OrderArrow, f: OrderArrow) -> OrderArrow:
        if f.target != g.source:
            raise TypeMismatch(f"Cannot compose {g.source}≤{g.target} after {f.source}≤{f.target}")
        return OrderArrow(f.source, g.target)

    def hom(self, x: str, y: str) -> list:
        return [OrderArrow(x, y)] if self.lattice.leq(x, y) else []

    def is_iso(self, m: OrderArrow) -> bool:
        return m.source == m.target

    def inverse(self, m: OrderArrow) -> OrderArrow:
        if m.source != m.target:
            raise IllTypedInput(f"{m.source} ≤ {m.target} is not invertible")
        return m

    def size(self, x: str) -> int:
        return self.lattice.height_of(x)

    def initial(self) -> str:
        return self.lattice.bottom

    def initial_arrow(self, x: str) -> OrderArrow:
        return OrderArrow(self.lattice.bottom, x)

    def terminal(self) -> str:
        return self.lattice.top

    def terminal_arrow(self, x: str) -> OrderArrow:
        return OrderArrow(x, self.lattice.top)

    def coproduct(self, x: str, y: str) -> Cospan:
        j = self.lattice.join(x, y)
        return Cospan(j, OrderArrow(x, j), OrderArrow(y, j))

    def product(self, x: str, y: str) -> Span:
        m = self.lattice.meet(x, y)
        return Span(m, OrderArrow(m, x), OrderArrow(m, y))

    def pushout(self, r: OrderArrow, a: OrderArrow) -> Cospan:
        return self.coproduct(r.target, a.target)

    def pushout_mediate(self, po: Cospan, f: OrderArrow, g: OrderArrow) -> OrderArrow:
        return self.arrow(po.apex, f.target)

    def pullback(self, f: OrderArrow, g: OrderArrow) -> Span:
        return self.product(f.source, g.source)


class PresentedCategory(ConcreteCategory):
    """
    Finitely presented category: objects, named arrows and a composition table.
    Identities are implicit (`id_<object>`) and compose without table entries.
    """

    kind = "finite-presented"
    capabilities = Capabilities(hom_enumerable=True)

    def __init__(self, objects, arrows: dict, composition: dict, hom_budget: int = DEFAULT_HOM_BUDGET):
        super().__init__(hom_budget)
        self._objects = list(objects)
        self.arrows = {}
        for obj in self._objects:
            self.arrows[f"id_{obj}"] = NamedArrow(f"id_{obj}", obj, obj)
        for name, (src, tgt) in arrows.items():
            if src not in self._objects or tgt not in self._objects:
                raise IllTypedInput(f"Arrow {name} mentions an unknown object")
            self.arrows[name] = NamedArrow(name, src, tgt)
        self.composition = {}
        for (g, f), h in composition.items():
            ga, fa, ha = self.arrows.get(g), self.arrows.get(f), self.arrows.get(h)
            if ga is None or fa is None or ha is None:
                raise IllTypedInput(f"Composition entry {g}∘{f}={h} names an unknown arrow")
            if fa.target != ga.source or ha.source != fa.source or ha.target != ga.target:
                raise IllTypedInput(f"Composition entry {g}∘{f}={h} is ill-typed")
            self.composition[(g, f)] = h

    def objects(self):
        return list(self._objects)

    def identity(self, x: str) -> NamedArrow:
        return self.arrows[f"id_{x}"]

    def compose(self, g: NamedArrow, f: NamedArrow) -> NamedArrow:
        if f.target != g.source:
            raise TypeMismatch(f"Cannot compose {g.name} after {f.name}")
        if f.name == f"id_{f.source}":
            return g
        if g.name == f"id_{g.source}":
            return f
        try:
            return self.arrows[self.composition[(g.name, f.name)]]
        except KeyError:
            raise NonEnumerable(f"Composite {g.name}∘{f.name} is not tabulated")

    def hom(self, x: str, y: str) -> list:
        return [a for a in self.arrows.values() if a.source == x and a.target == y]

    def is_iso(self, m: NamedArrow) -> bool:
        return self._inverse_or_none(m) is not None

    def inverse(self, m: NamedArrow) -> NamedArrow:
        inv = self._inverse_or_none(m)
        if inv is None:
            raise IllTypedInput(f"Arrow {m.name} is not invertible")
        return inv

    def _inverse_or_none(self, m: NamedArrow):
        for cand in self.hom(m.target, m.source):
            try:
                if self.compose(cand, m) == self.identity(m.source) and \
                        self.compose(m, cand) == self.identity(m.target):
                    return cand
            except NonEnumerable:
                continue
        return None


class UnderCategory(ConcreteCategory):
    """
    The undercategory of `anchor` in a hom-enumerable base: objects are base
    morphisms with source `anchor`, morphisms are commuting triangles. Colimits
    are created by the base.
    """

    kind = "under-category"

    def __init__(self, base: ConcreteCategory, anchor):
        base.require("hom_enumerable")
        super().__init__(base.hom_budget)
        self.base = base
        self.anchor = anchor
        bc = base.capabilities
        self.capabilities = Capabilities(
            has_initial=True,
            has_pushouts=bc.has_pushouts,
            hom_enumerable=True,
            sequential_colimits=bc.sequential_colimits,
        )

    def __eq__(self, other):
        return isinstance(other, UnderCategory) and other.base == self.base and other.anchor == self.anchor

    def __hash__(self):
        return hash((self.kind, self.anchor))

    def _check_object(self, u):
        if u.source != self.anchor:
            raise IllTypedInput("Undercategory object must be a morphism out of the anchor")

    def objects(self):
        return [u for x in self.base.objects() for u in self.base.hom(self.anchor, x)]

    def identity(self, u) -> UnderArrow:
        return UnderArrow(u, u, self.base.identity(u.target))

    def arrow(self, u, v, h) -> UnderArrow:
        """Triangle h: u → v; raises if it does not commute."""
        self._check_object(u)
        self._check_object(v)
        if self.base.compose(h, u) != v:
            raise IllTypedInput("Base morphism does not commute with the structure maps")
        return UnderArrow(u, v, h)

    def compose(self, g: UnderArrow, f: UnderArrow) -> UnderArrow:
        if f.target != g.source:
            raise TypeMismatch("Cannot compose triangles over different middle objects")
        return UnderArrow(f.source, g.target, self.base.compose(g.base, f.base))

    def hom(self, u, v) -> list:
        return [UnderArrow(u, v, h) for h in self.base.hom(u.target, v.target)
                if self.base.compose(h, u) == v]

    def is_iso(self, m: UnderArrow) -> bool:
        return self.base.is_iso(m.base)

    def inverse(self, m: UnderArrow) -> UnderArrow:
        return UnderArrow(m.target, m.source, self.base.inverse(m.base))

    def size(self, u) -> int:
        return self.base.size(u.target)

    def initial(self):
        return self.base.identity(self.anchor)

    def initial_arrow(self, u) -> UnderArrow:
        return UnderArrow(self.initial(), u, u)

    def pushout(self, r: UnderArrow, a: UnderArrow) -> Cospan:
        self.require("has_pushouts")
        po = self.base.pushout(r.base, a.base)
        apex = self.base.compose(po.left, r.target)
        return Cospan(apex, UnderArrow(r.target, apex, po.left), UnderArrow(a.target, apex, po.right))

    def pushout_mediate(self, po: Cospan, f: UnderArrow, g: UnderArrow) -> UnderArrow:
        base_po = Cospan(po.apex.target, po.left.base, po.right.base)
        return UnderArrow(po.apex, f.target, self.base.pushout_mediate(base_po, f.base, g.base))


# ── Operations ───────────────────────────────────────────────────────


def hom_enumerate(cat: ConcreteCategory, x, y) -> list:
    cat.require("hom_enumerable")
    homs = cat.hom(x, y)
    if len(homs) > cat.hom_budget:
        raise BudgetExceeded(f"Hom-set of size {len(homs)} exceeds budget {cat.hom_budget}")
    return homs


def under_category(cat: ConcreteCategory, c) -> UnderCategory:
    return UnderCategory(cat, c)


def pushout(cat: ConcreteCategory, r, a) -> Cospan:
    cat.require("has_pushouts")
    return cat.pushout(r, a)


@dataclass
class AxiomReport:
    objects_checked: int = 0
    pairs_checked: int = 0
    triples_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _label(m) -> str:
    if isinstance(m, NamedArrow):
        return m.name
    if isinstance(m, OrderArrow):
        return f"{m.source}≤{m.target}"
    if isinstance(m, FinMap):
        return f"{list(m.values)}:{len(m.source)}→{len(m.target)}"
    return repr(m)


def check_category_axioms(cat: ConcreteCategory) -> AxiomReport:
    """Exhaustive unit and associativity check over the enumerable universe."""
    cat.require("hom_enumerable")
    objects = list(cat.objects())
    report = AxiomReport(objects_checked=len(objects))
    homs = {}
    for x in objects:
        for y in objects:
            homs[(objects.index(x), objects.index(y))] = hom_enumerate(cat, x, y)

    n = len(objects)
    triples = sum(
        len(homs[(w, x)]) * len(homs[(x, y)]) * len(homs[(y, z)])
        for w in range(n) for x in range(n) for y in range(n) for z in range(n)
    )
    if triples > cat.hom_budget:
        raise NonEnumerable(f"{triples} composable triples exceed budget {cat.hom_budget}")

    for (i, j), fs in homs.items():
        id_x, id_y = cat.identity(objects[i]), cat.identity(objects[j])
        for f in fs:
            report.pairs_checked += 1
            if cat.compose(f, id_x) != f or cat.compose(id_y, f) != f:
                report.violations.append({"law": "unit", "morphisms": [_label(f)]})

    for w in range(n):
        for x in range(n):
            for f in homs[(w, x)]:
                for y in range(n):
                    for g in homs[(x, y)]:
                        gf = cat.compose(g, f)
                        for z in range(n):
                            for h in homs[(y, z)]:
                                report.triples_checked += 1
                                if cat.compose(h, gf) != cat.compose(cat.compose(h, g), f):
                                    report.violations.append({
                                        "law": "associativity",
                                        "morphisms": [_label(h), _label(g), _label(f)],
                                    })
    logger.info("Axiom check on %s: %d triples, %d violations",
                cat.kind, report.triples_checked, len(report.violations))
    return report
