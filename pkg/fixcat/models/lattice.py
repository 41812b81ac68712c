from pydantic import BaseModel, Field, model_validator
from typing import Literal, Optional
from enum import Enum

from fixcat import FORMAT_TAG


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class IterationMode(str, Enum):
    JACOBI = "jacobi"
    GAUSS_SEIDEL = "gauss-seidel"


class LatticeDocument(BaseModel):
    """Exactly one of: elements (+ hasse cover pairs), powerset atoms, chain length."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    elements: Optional[list[str]] = None
    hasse: list[tuple[str, str]] = []       # (lower, upper) cover pairs
    powerset: Optional[list[str]] = None
    chain: Optional[int] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _one_shape(self):
        given = [self.elements is not None, self.powerset is not None, self.chain is not None]
        if sum(given) != 1:
            raise ValueError("give exactly one of 'elements', 'powerset' or 'chain'")
        return self


class MapDocument(BaseModel):
    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    table: dict[str, str]
    lattice: Optional[LatticeDocument] = None   # when absent, --lattice supplies it


class CfgNode(BaseModel):
    name: str
    transfer: Optional[dict[str, str]] = None   # explicit table over the lattice
    gen: list[str] = []                         # gen/kill shorthand over atoms
    kill: list[str] = []


class CfgDocument(BaseModel):
    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    lattice: Optional[LatticeDocument] = None
    atoms: Optional[list[str]] = None
    nodes: list[CfgNode]
    edges: list[tuple[str, str]] = []
    boundary: Optional[str] = None
    direction: Direction = Direction.FORWARD

    @model_validator(mode="after")
    def _one_lattice(self):
        if (self.lattice is None) == (self.atoms is None):
            raise ValueError("give either 'lattice' with transfer tables or 'atoms' with gen/kill sets")
        if self.lattice is not None:
            missing = [n.name for n in self.nodes if n.transfer is None]
            if missing:
                raise ValueError(f"nodes {missing} need a 'transfer' table")
        return self
