"""
Document loading: JSON files → pydantic documents → core objects.

Every validation problem surfaces as IllTypedInput carrying the offending
locations and the schema file that describes the document.
"""
import json
import logging
from pathlib import Path

from pydantic import BaseModel, ValidationError

from fixcat.core.algebra import Algebra, Coalgebra, LaxAlgebra, StructureHom
from fixcat.core.category import FinMap, FinSet
from fixcat.core.dataflow import ControlFlowGraph, gen_kill_cfg
from fixcat.core.errors import IllTypedInput
from fixcat.core.functors import (
    Composite,
    Constant,
    Declared,
    Endofunctor,
    Identity,
    MonotoneEndofunctor,
    Polynomial,
    Product,
    Sum,
)
from fixcat.core.lattice import FiniteLattice, MonotoneMap
from fixcat.core.presheaf import RepresentablePresheaf, TabulatedPresheaf, nerve_presheaf
from fixcat.core.rank import POINT, MachineState, Node, RationalHigherCat
from fixcat.core.sigma import DeltaMap, SigmaBound, SigmaObject, sigma_normalize
from fixcat.models.algebra import AlgebraDocument, CoalgebraDocument, HomDocument, HomKind, LaxAlgebraDocument
from fixcat.models.category import FunctorDocument, FunctorKind, FunctorSpec, ObjectDocument
from fixcat.models.higher import HomTreeDoc, PresheafDocument, SigmaMorphismDoc, SkeletonDocument
from fixcat.models.lattice import CfgDocument, LatticeDocument, MapDocument
from fixcat.models.run import RunConfig

logger = logging.getLogger("fixcat.loader")

SCHEMAS = {
    "functor": FunctorDocument,
    "object": ObjectDocument,
    "algebra": AlgebraDocument,
    "coalgebra": CoalgebraDocument,
    "lax-algebra": LaxAlgebraDocument,
    "hom": HomDocument,
    "lattice": LatticeDocument,
    "map": MapDocument,
    "cfg": CfgDocument,
    "presheaf": PresheafDocument,
    "skeleton": SkeletonDocument,
    "run-config": RunConfig,
}


def schema_pointer(model: type[BaseModel]) -> str:
    for name, candidate in SCHEMAS.items():
        if candidate is model:
            return f"schemas/{name}.schema.json"
    return "schemas/"


# ── Reading ──


def load_json(path) -> dict:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise IllTypedInput(f"No such input file: {path}")
    except json.JSONDecodeError as e:
        raise IllTypedInput(f"{path} is not valid JSON: {e.msg} (line {e.lineno})")


def parse_document(data, model: type[BaseModel]):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = [{"loc": [str(p) for p in err["loc"]], "msg": err["msg"]} for err in e.errors()]
        pointer = schema_pointer(model)
        raise IllTypedInput(
            f"Invalid {model.__name__}: {problems[0]['msg']} at {'/'.join(problems[0]['loc']) or '<root>'}"
            f" (see {pointer})",
            witness={"schema": pointer, "errors": problems},
        )


def load_document(path, model: type[BaseModel]):
    doc = parse_document(load_json(path), model)
    logger.debug("Loaded %s from %s", model.__name__, path)
    return doc


# ── Elements ──


def decode_element(value):
    """JSON arrays stand for tuples, recursively."""
    if isinstance(value, list):
        return tuple(decode_element(v) for v in value)
    return value


def encode_element(value):
    if isinstance(value, tuple):
        return [encode_element(v) for v in value]
    return value


def build_finset(elements) -> FinSet:
    return FinSet(tuple(decode_element(e) for e in elements))


def parse_elements(text: str) -> FinSet:
    """`a,b,c` on the command line, or a path to an object document."""
    if text.endswith(".json"):
        return build_finset(load_document(text, ObjectDocument).elements)
    parts = [p.strip() for p in text.split(",") if p.strip()]
    return FinSet(tuple(int(p) if p.lstrip("-").isdigit() else p for p in parts))


def _pairs_map(source: FinSet, target: FinSet, pairs) -> FinMap:
    mapping = {}
    for x, y in pairs:
        x = decode_element(x)
        if x in mapping:
            raise IllTypedInput(f"Map lists {x!r} twice")
        mapping[x] = decode_element(y)
    return FinMap.from_pairs(source, target, mapping)


def map_to_pairs(m: FinMap) -> list:
    return [[encode_element(x), encode_element(m(x))] for x in m.source]


# ── Builders ──


def build_lattice(doc: LatticeDocument) -> FiniteLattice:
    if doc.powerset is not None:
        return FiniteLattice.powerset(doc.powerset)
    if doc.chain is not None:
        return FiniteLattice.chain(doc.chain)
    return FiniteLattice.from_hasse(doc.elements, doc.hasse)


def build_map(doc: MapDocument, lattice: FiniteLattice | None = None) -> MonotoneMap:
    if doc.lattice is not None:
        lattice = build_lattice(doc.lattice)
    if lattice is None:
        raise IllTypedInput("Map document has no lattice; pass one with --lattice")
    return MonotoneMap.from_table(lattice, doc.table)


def build_functor(spec: FunctorSpec) -> Endofunctor:
    kind = spec.kind
    if kind == FunctorKind.CONSTANT:
        functor = Constant(build_finset(spec.value))
    elif kind == FunctorKind.IDENTITY:
        functor = Identity()
    elif kind == FunctorKind.POLYNOMIAL:
        functor = Polynomial(tuple((build_finset(t.coeff), build_finset(t.exp)) for t in spec.terms))
    elif kind == FunctorKind.SUM:
        functor = Sum(tuple(build_functor(p) for p in spec.parts))
    elif kind == FunctorKind.PRODUCT:
        functor = Product(tuple(build_functor(p) for p in spec.parts))
    elif kind == FunctorKind.COMPOSITE:
        functor = Composite(tuple(build_functor(p) for p in spec.parts))
    else:
        lattice = build_lattice(spec.lattice)
        functor = MonotoneEndofunctor(MonotoneMap.from_table(lattice, spec.table))
    if spec.preserves_colimits is not None or spec.preserves_limits is not None:
        functor = Declared(
            functor,
            functor.preserves_colimits if spec.preserves_colimits is None else spec.preserves_colimits,
            functor.preserves_limits if spec.preserves_limits is None else spec.preserves_limits,
        )
    return functor


def build_algebra(doc: AlgebraDocument, functor: Endofunctor | None = None) -> Algebra:
    F = functor or build_functor(doc.functor)
    carrier = build_finset(doc.carrier)
    return Algebra(F, carrier, _pairs_map(F.on_object(carrier), carrier, doc.action))


def build_coalgebra(doc: CoalgebraDocument, functor: Endofunctor | None = None) -> Coalgebra:
    F = functor or build_functor(doc.functor)
    carrier = build_finset(doc.carrier)
    return Coalgebra(F, carrier, _pairs_map(carrier, F.on_object(carrier), doc.coaction))


def build_lax_algebra(doc: LaxAlgebraDocument) -> LaxAlgebra:
    F = build_functor(doc.functor)
    apex, carrier = build_finset(doc.apex), build_finset(doc.carrier)
    return LaxAlgebra(
        F, apex, carrier,
        _pairs_map(apex, F.on_object(carrier), doc.resolution),
        _pairs_map(apex, carrier, doc.action),
    )


def build_hom(doc: HomDocument) -> StructureHom:
    functor = build_functor(doc.functor) if doc.functor is not None else None
    build = build_coalgebra if doc.kind == HomKind.COALGEBRA else build_algebra
    source = build(doc.source, functor)
    target = build(doc.target, functor or source.functor)
    return StructureHom(source, target, _pairs_map(source.carrier, target.carrier, doc.map))


def build_cfg(doc: CfgDocument) -> ControlFlowGraph:
    names = [n.name for n in doc.nodes]
    if doc.atoms is not None:
        cfg = gen_kill_cfg(
            doc.atoms, names, doc.edges,
            {n.name: n.gen for n in doc.nodes}, {n.name: n.kill for n in doc.nodes},
        )
        return ControlFlowGraph(cfg.lattice, cfg.nodes, cfg.transfers, cfg.edges, doc.boundary)
    lattice = build_lattice(doc.lattice)
    transfers = {n.name: MonotoneMap.from_table(lattice, n.transfer) for n in doc.nodes}
    return ControlFlowGraph(lattice, tuple(names), transfers, tuple(doc.edges), doc.boundary)


def build_sigma_morphism(doc: SigmaMorphismDoc):
    source, target = SigmaObject(tuple(doc.source)), SigmaObject(tuple(doc.target))
    components = [
        DeltaMap(len(values) - 1, target.entry(i), tuple(values)) for i, values in enumerate(doc.components)
    ]
    return sigma_normalize(components, source, target)


def build_presheaf(doc: PresheafDocument, hom_budget: int | None = None):
    bound = SigmaBound(*doc.bound)
    if doc.representable is not None:
        apex = SigmaObject(tuple(doc.representable))
        return RepresentablePresheaf(apex, bound, hom_budget) if hom_budget else RepresentablePresheaf(apex, bound)
    if doc.nerve is not None:
        return nerve_presheaf(doc.nerve.objects, dict(doc.nerve.arrows), bound)
    cells = {SigmaObject.parse(label): list(xs) for label, xs in doc.cells.items()}
    restrictions = {build_sigma_morphism(r.morphism): dict(r.table) for r in doc.restrictions}
    return TabulatedPresheaf(bound, cells, restrictions)


def _build_tree(doc: HomTreeDoc):
    if doc.point:
        return POINT
    return Node.from_dict(doc.objects, {(h.source, h.target): _build_tree(h.hom) for h in doc.homs})


def build_skeleton(doc: SkeletonDocument):
    if doc.tree is not None:
        return _build_tree(doc.tree)
    states = tuple(
        MachineState(tuple(s.objects), tuple(((h.source, h.target), h.state) for h in s.homs), s.point)
        for s in doc.states
    )
    return RationalHigherCat(states, doc.root)


# ── Writers ──


def algebra_document(alg: Algebra, spec: FunctorSpec, name: str = "") -> AlgebraDocument:
    """Inverse of build_algebra, given the functor's own spec."""
    return AlgebraDocument(
        name=name, functor=spec,
        carrier=[encode_element(x) for x in alg.carrier],
        action=map_to_pairs(alg.action),
    )


def coalgebra_document(coalg: Coalgebra, spec: FunctorSpec, name: str = "") -> CoalgebraDocument:
    return CoalgebraDocument(
        name=name, functor=spec,
        carrier=[encode_element(x) for x in coalg.carrier],
        coaction=map_to_pairs(coalg.coaction),
    )


def write_schemas(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, model in SCHEMAS.items():
        schema = model.model_json_schema()
        schema["$id"] = f"fixcat/1/{name}"
        path = directory / f"{name}.schema.json"
        path.write_text(json.dumps(schema, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
        written.append(path)
    return written
