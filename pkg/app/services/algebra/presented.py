from dataclasses import dataclass, field
from typing import Tuple

from app.core.exceptions import ValidationError
from app.services.algebra.element import PathElement
from app.services.algebra.field import Field
from app.services.algebra.quiver import Quiver


@dataclass(frozen=True)
class PresentedAlgebra:
    """Λ = kQ/I with I generated by uniform relations."""

    quiver: Quiver
    field: Field
    relations: Tuple[PathElement, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for position, relation in enumerate(self.relations):
            if not relation:
                raise ValidationError(f"relation {position} is zero")
            if not relation.is_uniform():
                raise ValidationError(f"relation {position} ({relation.text}) is not uniform")

    @property
    def quadratic(self) -> bool:
        return all(r.is_homogeneous(2) for r in self.relations)
