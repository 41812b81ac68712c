"""
Toy dataflow analysis over a finite lattice.

Forward equations, for every node n:
    IN[n]  = boundary                    if n has no predecessor
    IN[n]  = ⊔{ OUT[p] : p → n }         otherwise
    OUT[n] = f_n(IN[n])
Backward problems swap predecessors and successors. The least solution is the
least fixed point of the system map on the product lattice L^nodes, computed
by Kleene iteration from ⊥ (Jacobi: all nodes from the previous sweep;
Gauss-Seidel: nodes in order, each seeing the values updated earlier in the
same sweep). A worklist solver is kept as an independent oracle.
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from fixcat.core.errors import IllTypedInput, NonMonotoneTransfer
from fixcat.core.lattice import FiniteLattice, MonotoneMap, subset_name

logger = logging.getLogger("fixcat.dataflow")

DIRECTIONS = ("forward", "backward")
MODES = ("jacobi", "gauss-seidel")


@dataclass
class ControlFlowGraph:
    lattice: FiniteLattice
    nodes: tuple
    transfers: dict
    edges: tuple
    boundary: str | None = None

    def __post_init__(self):
        self.nodes = tuple(self.nodes)
        self.edges = tuple(tuple(e) for e in self.edges)
        if len(set(self.nodes)) != len(self.nodes):
            raise IllTypedInput("CFG node names must be distinct")
        known = set(self.nodes)
        for src, dst in self.edges:
            if src not in known or dst not in known:
                raise IllTypedInput(f"Edge {src}→{dst} mentions an unknown node")
        missing = [n for n in self.nodes if n not in self.transfers]
        if missing:
            raise IllTypedInput(f"No transfer function for nodes {missing!r}")
        for n, f in self.transfers.items():
            if f.lattice != self.lattice:
                raise IllTypedInput(f"Transfer of node {n!r} is over a different lattice")
        if self.boundary is None:
            self.boundary = self.lattice.bottom
        self.lattice.idx(self.boundary)

    def predecessors(self, n) -> list:
        return [s for s, d in self.edges if d == n]

    def successors(self, n) -> list:
        return [d for s, d in self.edges if s == n]

    def inflow(self, n, direction: str) -> list:
        return self.predecessors(n) if direction == "forward" else self.successors(n)

    def outflow(self, n, direction: str) -> list:
        return self.successors(n) if direction == "forward" else self.predecessors(n)


@dataclass
class DataflowSolution:
    inputs: dict
    outputs: dict
    direction: str
    mode: str
    sweeps: int
    trace: list = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"node": list(self.outputs), "in": list(self.inputs.values()), "out": list(self.outputs.values())}
        )

    def as_dict(self) -> dict:
        return {
            "direction": self.direction,
            "mode": self.mode,
            "sweeps": self.sweeps,
            "in": self.inputs,
            "out": self.outputs,
        }


def check_transfers(cfg: ControlFlowGraph):
    for n in cfg.nodes:
        witness = cfg.transfers[n].monotonicity_witness()
        if witness is not None:
            raise NonMonotoneTransfer(
                f"Transfer of node {n!r} is not monotone on {witness[0]} ≤ {witness[1]}",
                witness={"node": n, "pair": witness},
            )


def _check_options(direction: str, mode: str):
    if direction not in DIRECTIONS:
        raise IllTypedInput(f"Unknown direction {direction!r}; expected one of {DIRECTIONS}")
    if mode not in MODES:
        raise IllTypedInput(f"Unknown mode {mode!r}; expected one of {MODES}")


def _tables(cfg: ControlFlowGraph):
    """Node positions and the transfer tables stacked row by row."""
    position = {n: k for k, n in enumerate(cfg.nodes)}
    transfer = np.zeros((len(cfg.nodes), len(cfg.lattice)), dtype=np.int64)
    for k, n in enumerate(cfg.nodes):
        transfer[k] = cfg.transfers[n].table
    return position, transfer


def _in_value(join, boundary: int, sources, out: np.ndarray) -> int:
    value = boundary
    for p in sources:
        value = join[value, out[p]]
    return int(value)


def dataflow_solve(cfg: ControlFlowGraph, direction: str = "forward", mode: str = "jacobi") -> DataflowSolution:
    _check_options(direction, mode)
    check_transfers(cfg)
    lattice = cfg.lattice
    join = lattice.join_table
    position, transfer = _tables(cfg)
    sources = [[position[p] for p in cfg.inflow(n, direction)] for n in cfg.nodes]
    boundary = lattice.idx(cfg.boundary)
    # boundary enters only where nothing flows in
    seeds = [boundary if not srcs else lattice.idx(lattice.bottom) for srcs in sources]
    count = len(cfg.nodes)

    out = np.full(count, lattice.idx(lattice.bottom), dtype=np.int64)
    trace = [out.copy()]
    # the product lattice has height ≤ count·|L|
    for sweep in range(1, count * len(lattice) + 2):
        if mode == "jacobi":
            ins = np.array([_in_value(join, seeds[k], sources[k], out) for k in range(count)], dtype=np.int64)
            new = transfer[np.arange(count), ins] if count else out
        else:
            new = out.copy()
            for k in range(count):
                new[k] = transfer[k, _in_value(join, seeds[k], sources[k], new)]
        if np.array_equal(new, out):
            break
        out = new
        trace.append(out.copy())
        logger.debug("Sweep %d (%s): %s", sweep, mode, out.tolist())
    else:
        raise NonMonotoneTransfer("Kleene iteration exceeded the product lattice height")

    ins = [_in_value(join, seeds[k], sources[k], out) for k in range(count)]
    names = lattice.elements
    solution = DataflowSolution(
        inputs={n: names[ins[k]] for k, n in enumerate(cfg.nodes)},
        outputs={n: names[out[k]] for k, n in enumerate(cfg.nodes)},
        direction=direction,
        mode=mode,
        sweeps=len(trace) - 1,
        trace=[[names[v] for v in row] for row in trace],
    )
    logger.info("Dataflow solved in %d sweeps (%s, %s)", solution.sweeps, direction, mode)
    return solution


def worklist_solve(cfg: ControlFlowGraph, direction: str = "forward") -> DataflowSolution:
    """Chaotic iteration with a FIFO worklist; reference oracle for dataflow_solve."""
    _check_options(direction, "jacobi")
    check_transfers(cfg)
    lattice = cfg.lattice
    out = {n: lattice.bottom for n in cfg.nodes}
    ins = {}

    def in_of(n):
        incoming = cfg.inflow(n, direction)
        start = cfg.boundary if not incoming else lattice.bottom
        return lattice.join_all([start] + [out[p] for p in incoming])

    queue = deque(cfg.nodes)
    steps = 0
    while queue:
        n = queue.popleft()
        steps += 1
        ins[n] = in_of(n)
        new_out = cfg.transfers[n](ins[n])
        if new_out != out[n]:
            out[n] = new_out
            queue.extend(cfg.outflow(n, direction))
    for n in cfg.nodes:
        ins[n] = in_of(n)
    return DataflowSolution({n: ins[n] for n in cfg.nodes}, out, direction, "worklist", steps)


# ── gen/kill problems ────────────────────────────────────────────────


def powerset_names(atoms) -> dict:
    """Element name → frozenset for FiniteLattice.powerset(atoms)."""
    atoms = list(atoms)
    return {
        subset_name(frozenset(c), atoms): frozenset(c)
        for r in range(len(atoms) + 1) for c in itertools.combinations(atoms, r)
    }


def gen_kill_transfer(lattice: FiniteLattice, atoms, gen, kill) -> MonotoneMap:
    """S ↦ gen ∪ (S − kill) on the powerset lattice of `atoms`."""
    atoms = list(atoms)
    unknown = (set(gen) | set(kill)) - set(atoms)
    if unknown:
        raise IllTypedInput(f"gen/kill mention unknown facts {sorted(unknown)!r}")
    sets = powerset_names(atoms)
    gen, kill = frozenset(gen), frozenset(kill)
    return MonotoneMap.from_function(lattice, lambda x: subset_name(gen | (sets[x] - kill), atoms))


def gen_kill_cfg(atoms, nodes, edges, gen: dict, kill: dict) -> ControlFlowGraph:
    lattice = FiniteLattice.powerset(atoms)
    transfers = {
        n: gen_kill_transfer(lattice, atoms, gen.get(n, ()), kill.get(n, ()))
        for n in nodes
    }
    return ControlFlowGraph(lattice, tuple(nodes), transfers, tuple(edges))
