from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import settings


class Command(str, Enum):
    VALIDATE = "validate"
    DIAMOND = "diamond"
    BASIS = "basis"
    RESOLUTION = "resolution"
    HH = "hh"
    LIFT = "lift"
    BRACKET = "bracket"
    MC_CHECK = "mc-check"
    DEFORM = "deform"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


class RunConfig(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    command: Command = Field(..., description="Subcommand to run")
    input: Path = Field(..., description="Spec document")
    max_degree: int = Field(default_factory=lambda: settings.max_degree, ge=1, description="Resolution degree N")
    field: Optional[str] = Field(None, description="Field override, 'Q' or 'Fp:p'")
    output_format: OutputFormat = Field(OutputFormat.JSON, alias="format", description="Report format")
    degree: Optional[int] = Field(None, ge=0, description="Cohomological degree for hh")
    shift: Optional[int] = Field(None, description="Internal grading shift for hh")
    cocycle: Optional[Path] = Field(None, description="Cochain document for lift and mc-check")
    left: Optional[Path] = Field(None, description="Left cochain document for bracket")
    right: Optional[Path] = Field(None, description="Right cochain document for bracket")
    crosscheck: bool = Field(False, description="Add the homotopy-lifting comparison to deform")
    recurrence: bool = Field(False, description="Add the single-scalar recurrence to lift")
    rewrite_step_cap: int = Field(default_factory=lambda: settings.rewrite_step_cap, ge=1)
    basis_cap: int = Field(default_factory=lambda: settings.basis_cap, ge=1)
    solver_size_cap: int = Field(default_factory=lambda: settings.solver_size_cap, ge=1)
