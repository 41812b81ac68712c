from pathlib import Path

import pytest

from fixcat.cli.main import dispatch
from fixcat.core.category import FinMap, FinSet, FinSetCategory
from fixcat.seed_corpus import FUNCTORS, corpus_documents
from fixcat.services.loader import build_functor

CORPUS = Path(__file__).resolve().parent.parent / "data" / "corpus"


@pytest.fixture
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def functors():
    """Shipped functor corpus, built once: name → Endofunctor."""
    return {name: build_functor(doc.functor) for name, doc in corpus_documents().items()}


@pytest.fixture(scope="session")
def stabilizing():
    return [entry["name"] for entry in FUNCTORS if entry["initial"] == "stabilizes"]


@pytest.fixture
def fs():
    return FinSetCategory(universe_bound=2)


@pytest.fixture
def finmap():
    """finmap([0, 1], ["a"], {0: "a", 1: "a"})"""

    def make(source, target, mapping):
        return FinMap.from_pairs(FinSet(tuple(source)), FinSet(tuple(target)), mapping)

    return make


@pytest.fixture
def cli(capsys):
    """Run the command line in-process; returns (exit code, stdout)."""

    def run(*argv):
        code = dispatch([str(a) for a in argv])
        return code, capsys.readouterr().out

    return run
