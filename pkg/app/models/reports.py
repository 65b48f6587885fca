from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = "1.0"


class Report(BaseModel):
    schema_version: str = Field(SCHEMA_VERSION, description="Report schema version")
    command: str = Field(..., description="Subcommand that produced the report")
    passed: bool = Field(True, description="Overall verdict; false makes the CLI exit with status 1")


class ErrorReport(Report):
    passed: bool = False
    error: str = Field(..., description="Error message")
    error_type: str = Field(..., description="Exception class name")
    exit_code: int = Field(..., description="Process exit status")


class ValidateReport(Report):
    field: str = Field(..., description="Ground field")
    vertices: List[str] = Field(..., description="Vertex ids")
    arrows: List[str] = Field(..., description="Arrows as 'name: origin -> terminal'")
    relations: List[str] = Field(..., description="Relations in normalised text")
    rules: List[str] = Field(..., description="Reduction rules s -> φ_s")
    quadratic: bool = Field(..., description="All relations are homogeneous of length 2")


class OverlapRow(BaseModel):
    overlap: str = Field(..., description="Overlap path p*q*r")
    left_rule: str = Field(..., description="Rule applied to p*q")
    right_rule: str = Field(..., description="Rule applied to q*r")
    left_branch: str = Field(..., description="Normal form after reducing p*q first")
    right_branch: str = Field(..., description="Normal form after reducing q*r first")
    resolvable: bool = Field(..., description="Both branches agree")


class DiamondReport(Report):
    rules: List[str] = Field(..., description="Reduction rules")
    overlaps: List[OverlapRow] = Field(default_factory=list, description="One row per overlap ambiguity")


class BasisReport(Report):
    finite: bool = Field(..., description="Irr_S is finite")
    dimension: Optional[int] = Field(None, description="dim Λ when finite")
    paths: List[str] = Field(default_factory=list, description="Irreducible paths in canonical order")


class GeneratorRow(BaseModel):
    degree: int
    index: int
    origin: str
    terminal: str
    weight: int
    tensor: Optional[str] = Field(None, description="Tensor form f̃^n_i in kQ when known")


class PropertyRow(BaseModel):
    property: str
    degree: int
    passed: bool
    mandatory: bool = True
    detail: Optional[str] = None


class ResolutionReport(Report):
    kind: str = Field(..., description="koszul, family or manual")
    max_degree: int
    generators: List[GeneratorRow] = Field(default_factory=list)
    differential: Dict[str, str] = Field(default_factory=dict, description="d(eps{n}_{i}) per generator")
    diagonal: Dict[str, str] = Field(default_factory=dict, description="Δ(eps{n}_{i}) per generator")
    checks: List[PropertyRow] = Field(default_factory=list, description="Complex verification")
    bar_checks: List[PropertyRow] = Field(default_factory=list, description="Compatibility with the bar resolution")
    manual_section: Dict[str, Any] = Field(
        default_factory=dict, description="The complex in the spec document's resolution format, ready to reload"
    )


class CohomologyReport(Report):
    degree: int
    shift: Optional[int] = Field(None, description="Internal grading shift, when restricted")
    cochain_dimension: int
    kernel_dimension: int
    image_dimension: int
    dimension: int = Field(..., description="dim HH^n (of the selected shift piece)")
    representatives: List[List[str]] = Field(default_factory=list, description="Cocycle representatives as rows")


class LiftRow(BaseModel):
    degree: int
    generator: int
    value: str = Field(..., description="ψ(eps{m}_{r})")
    verified: bool


class RecurrenceRow(BaseModel):
    degree: int
    generator: int
    target: Optional[int]
    value: str
    source: str = Field(..., description="recurrence or solver")


class LiftReport(Report):
    cochain: List[str]
    degree: int
    max_degree: int
    verified_through: int
    rows: List[LiftRow] = Field(default_factory=list)
    recurrence: List[RecurrenceRow] = Field(default_factory=list)
    recurrence_stopped_at: Optional[int] = None
    recurrence_reason: Optional[str] = None


class BracketReport(Report):
    left: List[str]
    right: List[str]
    degree: int
    sign: str
    raw: List[str] = Field(..., description="[η, θ] on each generator")
    reduced: List[str] = Field(..., description="Representative modulo coboundaries")
    coboundary: bool = Field(..., description="The bracket class vanishes")


class MaurerCartanRowModel(BaseModel):
    generator: int
    coboundary: str = Field(..., description="d*η on the generator")
    product: str = Field(..., description="ηψ_η on the generator")
    total: str


class MaurerCartanCheckReport(Report):
    cochain: List[str]
    holds: bool = Field(..., description="d*η + ηψ_η vanishes on the nose")
    class_vanishes: bool = Field(..., description="d*η + ηψ_η is a coboundary")
    lifting: List[LiftRow] = Field(default_factory=list)
    rows: List[MaurerCartanRowModel] = Field(default_factory=list)


class DirectionRow(BaseModel):
    param: str
    cochain: List[str]
    cocycle: bool
    mc_holds: bool
    class_vanishes: bool
    representative: List[str]
    passed: bool


class CrosscheckSection(BaseModel):
    passed: bool
    correspondence: List[Dict[str, str]] = Field(..., description="f2_i as combinations of rule differences")
    directions: List[DirectionRow] = Field(default_factory=list)
    eliminated: List[DirectionRow] = Field(default_factory=list)
    family_dimension: int
    cohomology_dimension: Optional[int] = None
    dimension_agrees: Optional[bool] = None


class DeformReport(Report):
    rules: List[str]
    symbolic: List[str] = Field(..., description="Symbolic φ̃ per rule")
    constraints: List[str] = Field(default_factory=list, description="Solved constraints 'param = expr'")
    free: List[str] = Field(default_factory=list, description="Free parameters of the first-order family")
    family: List[str] = Field(default_factory=list, description="φ̃ over the free parameters")
    gauge_shifts: List[str] = Field(default_factory=list, description="φ̃′(s) − φ̃(s) per rule")
    eliminated: List[str] = Field(default_factory=list, description="Directions removed by the gauge action")
    reduced: List[str] = Field(default_factory=list, description="Parameters of the reduced family")
    family_dimension: int
    crosscheck: Optional[CrosscheckSection] = None
