"""Gauge action of arrow substitutions T(x) = x + Θ(x)τ on first-order deformations.

For a rule s = s₁⋯s_m -> φ_s the corrected φ̃′ satisfies
T(φ_s) + φ̃′(s)τ = T(s₁)⋆⋯⋆T(s_m) mod τ², which gives the shift

    φ̃′(s) − φ̃(s) = Σ_k s₁⋯Θ(s_k)⋯s_m − Σ_t c_t Σ_j t₁⋯Θ(t_j)⋯t_l

for φ_s = Σ_t c_t·t, every product reduced in Λ.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

from app.core.exceptions import CharacteristicError, PreconditionError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.quiver import Path
from app.services.deformation.linear import THETA, DeformParam, FormalElement
from app.services.deformation.star import DeformationFamily
from app.services.reduction.basis import QuotientAlgebra
from app.utils import linalg

logger = get_logger(__name__)


class GaugeMap:
    """Θ on arrows, each value a formal combination of parallel irreducible paths."""

    def __init__(self, quotient: QuotientAlgebra, values: Mapping[str, FormalElement]):
        for name, value in values.items():
            arrow = quotient.quiver.arrow(name)
            for path in value.paths():
                if path.origin != arrow.origin or path.terminal != arrow.terminal:
                    raise PreconditionError(f"{path.text} in Θ({name}) is not parallel to the arrow")
        self.quotient = quotient
        self.field = quotient.field
        self.values: Dict[str, FormalElement] = dict(values)

    @classmethod
    def symbolic(cls, quotient: QuotientAlgebra) -> "GaugeMap":
        if not quotient.is_finite:
            raise PreconditionError("symbolic gauge maps need a finite-dimensional Λ")
        field_ = quotient.field
        values = {}
        for k, arrow in enumerate(quotient.quiver.arrows):
            anchor = Path.of_arrow(arrow)
            values[arrow.name] = FormalElement(
                field_,
                {
                    (path, DeformParam(THETA, anchor, path, rank=k)): field_.one
                    for path in quotient.parallel_paths(arrow.origin, arrow.terminal)
                },
            )
        return cls(quotient, values)

    @classmethod
    def zero(cls, quotient: QuotientAlgebra) -> "GaugeMap":
        return cls(quotient, {})

    def value(self, arrow_name: str) -> FormalElement:
        return self.values.get(arrow_name, FormalElement(self.field))

    def params(self) -> List[DeformParam]:
        found = {p for value in self.values.values() for p in value.params()}
        return sorted(found, key=lambda p: p.order)

    def derivation(self, path: Path) -> FormalElement:
        """Σ_k p₁⋯Θ(p_k)⋯p_l reduced in Λ; zero on trivial paths."""
        result = FormalElement(self.field)
        for k, arrow in enumerate(path.arrows):
            prefix = path.sub(0, k)
            suffix = path.sub(k + 1, path.length)
            result = result + self.value(arrow.name).multiply(self.quotient, prefix, suffix)
        return result


def gauge_shifts(quotient: QuotientAlgebra, gauge: GaugeMap) -> List[FormalElement]:
    """φ̃′(s) − φ̃(s) for each rule, in rule order."""
    shifts = []
    for rule in quotient.system.rules:
        shift = gauge.derivation(rule.lhs)
        for path, c in rule.rhs.items():
            shift = shift - gauge.derivation(path).scale(c)
        shifts.append(shift)
    return shifts


@dataclass
class GaugeReduction:
    family: DeformationFamily
    gauge: GaugeMap
    shifts: List[FormalElement]
    reduced: List[DeformParam] = field(default_factory=list)
    eliminated: List[DeformParam] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.reduced)

    def shift_table(self) -> List[str]:
        rules = self.family.symbolic.system.rules
        return [f"{rule.lhs.text}: {shift.text}" for rule, shift in zip(rules, self.shifts)]


def _shift_vectors(
    family: DeformationFamily, shifts: Sequence[FormalElement], gauge: GaugeMap
) -> List[Dict[int, Any]]:
    """One vector per gauge parameter, in the coordinates of the family's free parameters."""
    rules = family.symbolic.system.rules
    position = {(p.rank, p.path): k for k, p in enumerate(family.free)}
    vectors = []
    for theta in gauge.params():
        vector: Dict[int, Any] = {}
        for k, shift in enumerate(shifts):
            for path in shift.paths():
                c = shift.coefficient_of(path).coefficient(theta)
                if c and (k, path) in position:
                    accumulate(vector, position[(k, path)], c)
        vectors.append(vector)
    logger.debug("gauge_vectors", rules=len(rules), gauge_params=len(vectors))
    return vectors


def gauge_reduce(family: DeformationFamily, gauge: Optional[GaugeMap] = None) -> GaugeReduction:
    """Quotient the free parameters by the image of the gauge action, eliminating the latest first."""
    quotient = family.symbolic.quotient
    if quotient.field.characteristic == 2:
        raise CharacteristicError("gauge reduction divides by 2 and needs characteristic different from 2")
    gauge = gauge or GaugeMap.symbolic(quotient)
    shifts = gauge_shifts(quotient, gauge)
    vectors = _shift_vectors(family, shifts, gauge)
    _, pivots = linalg.rref(vectors, quotient.field.domain, len(family.free), prefer_last=True)
    eliminated = sorted((family.free[k] for k in pivots), key=lambda p: p.order)
    reduced = [p for p in family.free if p not in eliminated]
    logger.info("gauge_reduced", free=len(family.free), eliminated=len(eliminated), reduced=len(reduced))
    return GaugeReduction(family, gauge, shifts, reduced, eliminated)
