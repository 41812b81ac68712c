"""
Shipped functor corpus, used by the Lambek and free-algebra suites.
Run from project root: python -m fixcat.seed_corpus [directory]
writes one FunctorDocument per entry (default: data/corpus/functors).

Covers constants, identity, products, exponentials, sums and composites.
`initial` records whether the initial chain ∅ → F∅ → F²∅ → ... stabilizes.
"""
import json
import sys
from pathlib import Path

from fixcat import FORMAT_TAG
from fixcat.models.category import FunctorDocument

CONST_A = {"kind": "constant", "value": ["a"]}
CONST_AB = {"kind": "constant", "value": ["a", "b"]}
CONST_EMPTY = {"kind": "constant", "value": []}
ONE = {"kind": "constant", "value": ["*"]}
BITS = {"kind": "constant", "value": [0, 1]}
X = {"kind": "identity"}

FUNCTORS = [
    # ═══════════════════════════════════════════
    #  Constants: the chain stops after one step
    # ═══════════════════════════════════════════
    {"name": "const-a", "description": "A = {a}", "initial": "stabilizes", "functor": CONST_A},
    {"name": "const-ab", "description": "A = {a, b}", "initial": "stabilizes", "functor": CONST_AB},
    {"name": "const-empty", "description": "A = ∅", "initial": "stabilizes", "functor": CONST_EMPTY},
    {
        "name": "a-plus-ab",
        "description": "{a} ⊔ {a, b}, a three-element constant",
        "initial": "stabilizes",
        "functor": {"kind": "sum", "parts": [CONST_A, CONST_AB]},
    },
    {
        "name": "const-after-x",
        "description": "constant {a} composed after the identity",
        "initial": "stabilizes",
        "functor": {"kind": "composite", "parts": [CONST_A, X]},
    },
    {
        "name": "poly-constants",
        "description": "a·X⁰ + b·X⁰ written as a polynomial",
        "initial": "stabilizes",
        "functor": {"kind": "polynomial", "terms": [{"coeff": ["a"], "exp": []}, {"coeff": ["b"], "exp": []}]},
    },

    # ═══════════════════════════════════════════
    #  Functors with F∅ = ∅: initial algebra is empty
    # ═══════════════════════════════════════════
    {"name": "identity", "description": "X", "initial": "stabilizes", "functor": X},
    {
        "name": "x-times-x",
        "description": "X × X",
        "initial": "stabilizes",
        "functor": {"kind": "product", "parts": [X, X]},
    },
    {
        "name": "x-to-two",
        "description": "X^B for B = {0, 1}",
        "initial": "stabilizes",
        "functor": {"kind": "polynomial", "terms": [{"coeff": ["*"], "exp": [0, 1]}]},
    },
    {
        "name": "x-times-bits",
        "description": "X × {0, 1}, the stream functor",
        "initial": "stabilizes",
        "functor": {"kind": "product", "parts": [X, BITS]},
    },
    {
        "name": "x-times-empty",
        "description": "X × ∅",
        "initial": "stabilizes",
        "functor": {"kind": "product", "parts": [X, CONST_EMPTY]},
    },
    {
        "name": "one-plus-x-times-empty",
        "description": "1 ⊔ X × ∅, isomorphic to the constant 1",
        "initial": "stabilizes",
        "functor": {"kind": "sum", "parts": [ONE, {"kind": "product", "parts": [X, CONST_EMPTY]}]},
    },

    # ═══════════════════════════════════════════
    #  Infinite initial algebras: never stabilize
    # ═══════════════════════════════════════════
    {
        "name": "one-plus-x",
        "description": "1 ⊔ X, natural numbers",
        "initial": "not-stabilized",
        "functor": {"kind": "sum", "parts": [ONE, X]},
    },
    {
        "name": "a-plus-x-times-x",
        "description": "{a} ⊔ X × X, binary trees",
        "initial": "not-stabilized",
        "functor": {"kind": "sum", "parts": [CONST_A, {"kind": "product", "parts": [X, X]}]},
    },
    {
        "name": "one-plus-bits-times-x",
        "description": "1 + {0,1}·X as a polynomial, finite bit lists",
        "initial": "not-stabilized",
        "functor": {
            "kind": "polynomial",
            "terms": [{"coeff": ["nil"], "exp": []}, {"coeff": [0, 1], "exp": ["*"]}],
        },
    },
]

# (functor name, elements of K) whose free-algebra chain K → K ⊔ FK → ... stabilizes
FREE_PAIRS = [
    ("const-a", ["x"]),
    ("const-a", ["x", "y"]),
    ("const-ab", ["x"]),
    ("const-empty", ["x", "y"]),
    ("a-plus-ab", ["x"]),
    ("x-times-empty", ["x"]),
    ("one-plus-x-times-empty", ["x", "y"]),
]


def corpus_documents() -> dict[str, FunctorDocument]:
    return {
        entry["name"]: FunctorDocument(name=entry["name"], description=entry["description"], functor=entry["functor"])
        for entry in FUNCTORS
    }


def write_corpus(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, doc in corpus_documents().items():
        path = directory / f"{name}.json"
        data = doc.model_dump(mode="json", exclude_none=True)
        data["format"] = FORMAT_TAG
        path.write_text(json.dumps(data, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        written.append(path)
    return written


def main():
    target = sys.argv[1] if len(sys.argv) > 1 else "data/corpus/functors"
    written = write_corpus(target)
    for path in written:
        print(f"  + {path.name}")
    print(f"\nDone! Wrote {len(written)} functor documents into {target}")


if __name__ == "__main__":
    main()
