from pydantic import BaseModel, ConfigDict, Field
from typing import List


class CochainDocument(BaseModel):
    """Row-vector form of a cochain: one Λ-value per generator of K_n."""

    model_config = ConfigDict(extra="forbid")

    degree: int = Field(..., ge=0, description="Cochain degree n")
    values: List[str] = Field(..., description="Value on each ε^n_i as a linear combination")
