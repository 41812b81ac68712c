from pydantic import BaseModel, model_validator
from typing import Literal, Optional, Union
from enum import Enum

from fixcat import FORMAT_TAG
from fixcat.models.category import Element, FunctorSpec


class AlgebraDocument(BaseModel):
    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    functor: FunctorSpec
    carrier: list[Element]
    action: list[tuple[Element, Element]]        # (element of F(carrier), element of carrier)


class CoalgebraDocument(BaseModel):
    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    functor: FunctorSpec
    carrier: list[Element]
    coaction: list[tuple[Element, Element]]      # (element of carrier, element of F(carrier))


class LaxAlgebraDocument(BaseModel):
    """Span F(B) ← E → B: resolution E → F(B), lax action E → B."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    functor: FunctorSpec
    apex: list[Element]
    carrier: list[Element]
    resolution: list[tuple[Element, Element]]
    action: list[tuple[Element, Element]]


class HomKind(str, Enum):
    COALGEBRA = "coalgebra"
    ALGEBRA = "algebra"


class HomDocument(BaseModel):
    """A carrier map between two coalgebras (locality) or two algebras (colocality)."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    kind: HomKind = HomKind.COALGEBRA
    source: Union[CoalgebraDocument, AlgebraDocument]
    target: Union[CoalgebraDocument, AlgebraDocument]
    map: list[tuple[Element, Element]]
    functor: Optional[FunctorSpec] = None       # overrides the functor of both ends

    @model_validator(mode="after")
    def _ends_match_kind(self):
        wanted = CoalgebraDocument if self.kind == HomKind.COALGEBRA else AlgebraDocument
        for end in (self.source, self.target):
            if not isinstance(end, wanted):
                raise ValueError(f"a {self.kind.value} hom needs {self.kind.value} documents at both ends")
        return self
