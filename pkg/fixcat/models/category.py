from pydantic import BaseModel, model_validator
from typing import Any, Literal, Optional, Union
from enum import Enum

from fixcat import FORMAT_TAG
from fixcat.models.lattice import LatticeDocument

# JSON encoding of a finite-set element: arrays stand for tuples
Element = Union[int, str, list[Any]]


class FunctorKind(str, Enum):
    CONSTANT = "constant"
    IDENTITY = "identity"
    POLYNOMIAL = "polynomial"
    SUM = "sum"
    PRODUCT = "product"
    COMPOSITE = "composite"
    MONOTONE = "monotone"


class PolynomialTerm(BaseModel):
    coeff: list[Element]          # A_i
    exp: list[Element] = []       # B_i, the exponent X^{B_i}


class FunctorSpec(BaseModel):
    kind: FunctorKind
    name: Optional[str] = None
    value: Optional[list[Element]] = None           # constant
    terms: Optional[list[PolynomialTerm]] = None    # polynomial
    parts: Optional[list["FunctorSpec"]] = None     # sum, product, composite (outermost first)
    lattice: Optional[LatticeDocument] = None       # monotone
    table: Optional[dict[str, str]] = None          # monotone
    preserves_colimits: Optional[bool] = None
    preserves_limits: Optional[bool] = None

    @model_validator(mode="after")
    def _fields_for_kind(self):
        needed = {
            FunctorKind.CONSTANT: ["value"],
            FunctorKind.POLYNOMIAL: ["terms"],
            FunctorKind.SUM: ["parts"],
            FunctorKind.PRODUCT: ["parts"],
            FunctorKind.COMPOSITE: ["parts"],
            FunctorKind.MONOTONE: ["lattice", "table"],
        }.get(self.kind, [])
        missing = [f for f in needed if getattr(self, f) is None]
        if missing:
            raise ValueError(f"functor kind '{self.kind.value}' needs {missing}")
        return self


FunctorSpec.model_rebuild()


class FunctorDocument(BaseModel):
    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    description: str = ""
    functor: FunctorSpec


class ObjectDocument(BaseModel):
    """A finite set, e.g. the K of a free algebra."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    elements: list[Element]
