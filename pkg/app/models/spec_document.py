from pydantic import BaseModel, ConfigDict, Field
from typing import Dict, List, Literal, Optional, Tuple, Union


class ArrowSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    name: str = Field(..., description="Arrow id")
    source: str = Field(..., alias="from", description="Origin vertex id")
    target: str = Field(..., alias="to", description="Terminal vertex id")


class RuleSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    lhs: str = Field(..., description="Reducible path s, e.g. 'a*b'")
    rhs: str = Field(..., description="Replacement φ_s as a linear combination")


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(..., ge=0, description="Homological degree n")
    endpoints: List[Tuple[str, str]] = Field(..., description="(origin, terminal) per generator")
    weights: Optional[List[int]] = Field(None, description="Internal path-length weight per generator")


class DifferentialEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(..., ge=1, description="Degree of the source generator")
    from_index: int = Field(..., ge=0, description="Source generator index")
    to_index: int = Field(..., ge=0, description="Target generator index in degree-1")
    left: Optional[str] = Field(None, description="Left Λ-coefficient; identity when omitted")
    right: Optional[str] = Field(None, description="Right Λ-coefficient; identity when omitted")
    scalar: Union[int, str] = Field(1, description="Scalar factor")


class DiagonalEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    degree: int = Field(..., ge=0, description="Degree n of the generator")
    index: int = Field(..., ge=0, description="Generator index")
    v: int = Field(..., ge=0, description="Degree of the first tensor factor")
    p: int = Field(..., ge=0, description="Generator index of the first factor")
    q: int = Field(..., ge=0, description="Generator index of the second factor")
    scalar: Union[int, str] = Field(1, description="Scalar c_pq(n, index, v)")
    left: Optional[str] = Field(None, description="Outer left Λ-coefficient")
    middle: Optional[str] = Field(None, description="Λ-coefficient between the factors")
    right: Optional[str] = Field(None, description="Outer right Λ-coefficient")


class ResolutionSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_degree: int = Field(..., ge=1, description="Highest degree described")
    generators: List[GeneratorSpec] = Field(..., description="Generators per degree")
    differential: List[DifferentialEntry] = Field(default_factory=list, description="Differential table")
    diagonal: List[DiagonalEntry] = Field(default_factory=list, description="Diagonal table")


class QuiverSpecDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    field: Union[Literal["Q"], Dict[Literal["Fp"], int]] = Field("Q", description="Ground field")
    vertices: List[str] = Field(..., description="Vertex ids in document order")
    arrows: List[ArrowSpec] = Field(default_factory=list, description="Arrows in document order")
    relations: List[str] = Field(default_factory=list, description="Generators of the ideal I")
    reduction_rules: Optional[List[RuleSpec]] = Field(None, description="Explicit reduction system")
    resolution: Optional[ResolutionSection] = Field(None, description="Manually supplied resolution")
