import pytest

from fixcat.core.dataflow import (
    ControlFlowGraph,
    dataflow_solve,
    gen_kill_cfg,
    gen_kill_transfer,
    worklist_solve,
)
from fixcat.core.errors import IllTypedInput, NonMonotoneTransfer
from fixcat.core.lattice import FiniteLattice, MonotoneMap
from fixcat.models.lattice import CfgDocument
from fixcat.services.loader import build_cfg, load_document


@pytest.fixture
def reaching(corpus):
    return build_cfg(load_document(corpus / "reaching-definitions.json", CfgDocument))


@pytest.mark.parametrize("mode", ["jacobi", "gauss-seidel"])
def test_reaching_definitions_through_a_loop(reaching, mode):
    solution = dataflow_solve(reaching, "forward", mode)
    assert solution.outputs == {
        "entry": "{}",
        "n1": "{d1}",
        "n2": "{d1,d2,d3}",
        "n3": "{d2,d3}",
    }
    assert solution.inputs["n2"] == "{d1,d2,d3}"
    assert solution.inputs["entry"] == "{}"


def test_sweep_orders_agree_with_the_worklist(reaching):
    jacobi = dataflow_solve(reaching, "forward", "jacobi")
    seidel = dataflow_solve(reaching, "forward", "gauss-seidel")
    oracle = worklist_solve(reaching, "forward")
    assert jacobi.outputs == seidel.outputs == oracle.outputs
    assert jacobi.inputs == oracle.inputs
    assert seidel.sweeps <= jacobi.sweeps


def test_backward_liveness_on_a_straight_line():
    # live variables: n1 uses x, n2 defines x and uses y
    cfg = gen_kill_cfg(["x", "y"], ["n1", "n2"], [("n1", "n2")],
                       {"n1": ["x"], "n2": ["y"]}, {"n2": ["x"]})
    solution = dataflow_solve(cfg, "backward")
    assert solution.outputs == {"n1": "{x,y}", "n2": "{y}"}
    assert solution.inputs["n1"] == "{y}"


def test_boundary_enters_at_sources():
    lattice = FiniteLattice.chain(3)
    ident = MonotoneMap.identity(lattice)
    cfg = ControlFlowGraph(lattice, ("a", "b"), {"a": ident, "b": ident}, (("a", "b"),), boundary="1")
    solution = dataflow_solve(cfg)
    assert solution.outputs == {"a": "1", "b": "1"}


def test_trace_and_frame():
    cfg = gen_kill_cfg(["d"], ["n"], [], {"n": ["d"]}, {})
    solution = dataflow_solve(cfg)
    assert solution.trace[0] == ["{}"]
    assert solution.trace[-1] == ["{d}"]
    frame = solution.to_frame()
    assert list(frame.columns) == ["node", "in", "out"]
    assert frame.loc[0, "out"] == "{d}"


def test_non_monotone_transfer_is_reported():
    lattice = FiniteLattice.chain(2)
    swap = MonotoneMap.from_table(lattice, {"0": "1", "1": "0"})
    cfg = ControlFlowGraph(lattice, ("n",), {"n": swap}, ())
    with pytest.raises(NonMonotoneTransfer) as err:
        dataflow_solve(cfg)
    assert err.value.witness["node"] == "n"


def test_bad_graphs_are_rejected():
    lattice = FiniteLattice.chain(2)
    ident = MonotoneMap.identity(lattice)
    with pytest.raises(IllTypedInput):
        ControlFlowGraph(lattice, ("a",), {"a": ident}, (("a", "ghost"),))
    with pytest.raises(IllTypedInput):
        ControlFlowGraph(lattice, ("a", "b"), {"a": ident}, ())
    with pytest.raises(IllTypedInput):
        dataflow_solve(ControlFlowGraph(lattice, ("a",), {"a": ident}, ()), "sideways")


def test_gen_kill_rejects_unknown_facts():
    lattice = FiniteLattice.powerset(["d"])
    with pytest.raises(IllTypedInput):
        gen_kill_transfer(lattice, ["d"], ["e"], [])


@pytest.mark.parametrize("mode", ["jacobi", "gauss-seidel"])
def test_boundary_enters_only_at_nodes_without_inflow(mode):
    lattice = FiniteLattice.chain(2)
    transfers = {
        "a": MonotoneMap.from_table(lattice, {"0": "0", "1": "0"}),
        "b": MonotoneMap.from_table(lattice, {"0": "0", "1": "1"}),
    }
    cfg = ControlFlowGraph(lattice, ("a", "b"), transfers, (("a", "b"),), "1")
    solution = dataflow_solve(cfg, "forward", mode)
    assert solution.inputs == {"a": "1", "b": "0"}
    assert solution.outputs == {"a": "0", "b": "0"}
    assert worklist_solve(cfg, "forward").inputs == solution.inputs
