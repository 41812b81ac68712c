from pydantic import BaseModel, Field
from enum import Enum


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"
    DOT = "dot"


class RunConfig(BaseModel):
    """Per-invocation knobs: settings defaults overridden by command-line flags."""

    budget: int = Field(default=64, gt=0)                # chain stage cap
    hom_budget: int = Field(default=1_000_000, gt=0)     # enumeration cap
    format: OutputFormat = OutputFormat.JSON
    trace: bool = False
    seed: int = 0
    probe_size: int = Field(default=2, ge=0)             # carrier bound for probe algebras
