from pydantic import BaseModel, Field, model_validator
from typing import Literal, Optional

from fixcat import FORMAT_TAG


# ── Σ presheaves ──


class SigmaMorphismDoc(BaseModel):
    source: list[int]
    target: list[int]
    components: list[list[int]]      # values of each Δ component, level by level


class Restriction(BaseModel):
    morphism: SigmaMorphismDoc
    table: dict[str, str]            # cell at target → cell at source


class NerveDoc(BaseModel):
    objects: list[str]
    arrows: dict[str, tuple[str, str]] = {}   # name → (source, target); identities are implicit


class PresheafDocument(BaseModel):
    """Exactly one of: representable apex, nerve of a graph, explicit cells."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    bound: tuple[int, int, int] = (2, 2, 2)  # max dim, max entry, max Segal level
    representable: Optional[list[int]] = None
    nerve: Optional[NerveDoc] = None
    cells: Optional[dict[str, list[str]]] = None  # keyed by object label, e.g. "(1,2)"
    restrictions: list[Restriction] = []

    @model_validator(mode="after")
    def _one_shape(self):
        given = [self.representable is not None, self.nerve is not None, self.cells is not None]
        if sum(given) != 1:
            raise ValueError("give exactly one of 'representable', 'nerve' or 'cells'")
        return self


# ── Hom-skeletons ──


class HomEntry(BaseModel):
    source: str
    target: str
    hom: "HomTreeDoc"


class HomTreeDoc(BaseModel):
    point: bool = False
    objects: list[str] = []
    homs: list[HomEntry] = []


HomEntry.model_rebuild()


class StateHom(BaseModel):
    source: str
    target: str
    state: int = Field(ge=0)


class MachineStateDoc(BaseModel):
    objects: list[str] = []
    homs: list[StateHom] = []
    point: bool = False


class SkeletonDocument(BaseModel):
    """A finite-depth tree or a finite-state machine of hom-skeletons."""

    format: Literal["fixcat/1"] = FORMAT_TAG
    name: str = ""
    tree: Optional[HomTreeDoc] = None
    states: Optional[list[MachineStateDoc]] = None
    root: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _one_shape(self):
        if (self.tree is None) == (self.states is None):
            raise ValueError("give exactly one of 'tree' or 'states'")
        return self
