import json

import numpy as np
import pytest

from fixcat.core.algebra import is_coalgebra_hom
from fixcat.core.category import FinSet
from fixcat.core.errors import IllTypedInput
from fixcat.core.functors import Declared, Identity, Sum
from fixcat.core.rank import POINT, RationalHigherCat, rank
from fixcat.models.algebra import AlgebraDocument, CoalgebraDocument, HomDocument, LaxAlgebraDocument
from fixcat.models.category import FunctorDocument
from fixcat.models.higher import PresheafDocument, SkeletonDocument
from fixcat.models.lattice import CfgDocument, LatticeDocument, MapDocument
from fixcat.seed_corpus import write_corpus
from fixcat.services.loader import (
    SCHEMAS,
    algebra_document,
    build_algebra,
    build_coalgebra,
    build_functor,
    build_hom,
    build_lattice,
    build_lax_algebra,
    build_map,
    build_skeleton,
    decode_element,
    load_document,
    parse_document,
    parse_elements,
    write_schemas,
)
from fixcat.services.render import dump_json, render_text, to_jsonable


def test_every_corpus_document_loads(corpus):
    kinds = {
        "two-chain": LatticeDocument, "const-top": MapDocument, "diamond-swap": MapDocument,
        "const-a": FunctorDocument, "one-plus-x": FunctorDocument, "identity": FunctorDocument,
        "x-times-bits": FunctorDocument, "lasso-coalgebra": CoalgebraDocument,
        "lasso-to-swap": HomDocument, "point-lax": LaxAlgebraDocument,
        "reaching-definitions": CfgDocument, "representable-1": PresheafDocument,
        "walking-iso": PresheafDocument, "self-loop": SkeletonDocument,
        "double-suspension": SkeletonDocument,
    }
    for name, model in kinds.items():
        load_document(corpus / f"{name}.json", model)


def test_validation_errors_point_at_the_schema():
    with pytest.raises(IllTypedInput) as err:
        parse_document({"functor": {"kind": "constant"}}, FunctorDocument)
    assert err.value.witness["schema"] == "schemas/functor.schema.json"
    assert err.value.witness["errors"]


def test_wrong_format_tag_is_rejected():
    with pytest.raises(IllTypedInput):
        parse_document({"format": "other/2", "functor": {"kind": "identity"}}, FunctorDocument)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(IllTypedInput):
        load_document(tmp_path / "absent.json", FunctorDocument)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(IllTypedInput):
        load_document(broken, FunctorDocument)


def test_elements_decode_lists_as_tuples():
    assert decode_element([0, ["a", 1]]) == (0, ("a", 1))
    assert parse_elements("x, y,3") == FinSet(("x", "y", 3))


def test_functor_flags_wrap_in_declared():
    doc = parse_document({"functor": {"kind": "identity", "preserves_colimits": False}}, FunctorDocument)
    F = build_functor(doc.functor)
    assert isinstance(F, Declared)
    assert not F.preserves_colimits
    assert F.preserves_limits


def test_sum_document_builds_a_sum(corpus):
    F = build_functor(load_document(corpus / "one-plus-x.json", FunctorDocument).functor)
    assert isinstance(F, Sum)
    assert len(F.on_object(FinSet.range(2))) == 3


def test_algebra_document_round_trip():
    doc = parse_document({
        "functor": {"kind": "constant", "value": ["a"]},
        "carrier": ["p", "q"],
        "action": [["a", "q"]],
    }, AlgebraDocument)
    alg = build_algebra(doc)
    again = build_algebra(algebra_document(alg, doc.functor))
    assert again == alg


def test_algebra_actions_must_be_total():
    doc = parse_document({"functor": {"kind": "identity"}, "carrier": [0, 1], "action": [[0, 1]]}, AlgebraDocument)
    with pytest.raises(IllTypedInput):
        build_algebra(doc)


def test_hom_document_is_a_coalgebra_hom(corpus):
    phi = build_hom(load_document(corpus / "lasso-to-swap.json", HomDocument))
    assert phi.source.functor == Identity()
    assert is_coalgebra_hom(phi.map, phi.source, phi.target)


def test_lax_document(corpus):
    lax = build_lax_algebra(load_document(corpus / "point-lax.json", LaxAlgebraDocument))
    assert len(lax.apex) == 1
    assert lax.resolution("e") == "a"


def test_map_with_embedded_lattice(corpus):
    f = build_map(load_document(corpus / "diamond-swap.json", MapDocument))
    assert f.is_monotone()
    assert len(f.lattice) == 4


def test_map_needs_a_lattice(corpus):
    with pytest.raises(IllTypedInput):
        build_map(load_document(corpus / "const-top.json", MapDocument))
    lattice = build_lattice(load_document(corpus / "two-chain.json", LatticeDocument))
    assert build_map(load_document(corpus / "const-top.json", MapDocument), lattice)("⊥") == "⊤"


def test_skeleton_documents(corpus):
    tree = build_skeleton(load_document(corpus / "double-suspension.json", SkeletonDocument))
    assert tree is not POINT
    assert rank(tree).as_int == 2
    machine = build_skeleton(load_document(corpus / "self-loop.json", SkeletonDocument))
    assert isinstance(machine, RationalHigherCat)


def test_lattice_document_needs_one_shape():
    with pytest.raises(IllTypedInput):
        parse_document({"chain": 2, "powerset": ["a"]}, LatticeDocument)


def test_schemas_cover_every_document(tmp_path):
    written = write_schemas(tmp_path)
    assert sorted(p.name for p in written) == sorted(f"{name}.schema.json" for name in SCHEMAS)
    schema = json.loads((tmp_path / "functor.schema.json").read_text(encoding="utf-8"))
    assert schema["$id"] == "fixcat/1/functor"


def test_seed_corpus_writes_loadable_documents(tmp_path):
    for path in write_corpus(tmp_path):
        load_document(path, FunctorDocument)


# ── Rendering ──


def test_json_output_is_deterministic():
    doc = {"b": FinSet((2, 1)), "a": np.int64(3), "c": {(0, "x"): np.float64("nan")}}
    first, second = dump_json(doc), dump_json(doc)
    assert first == second
    data = json.loads(first)
    assert data == {"a": 3, "b": [1, 2], "c": {'[0, "x"]': None}, "format": "fixcat/1"}


def test_text_output_has_a_table():
    text = render_text({"status": "stabilized"}, [{"stage": 0, "size": 1}, {"stage": 1, "size": 2}])
    assert text.splitlines()[0] == "status: stabilized"
    assert "stage" in text and "size" in text


def test_to_jsonable_handles_sets():
    assert to_jsonable({frozenset({"b", "a"})}) == [["a", "b"]]
