"""First-order combinatorial star product of a reduction system.

A deformation attaches φ̃(s) to each rule s -> φ_s and reduces with
s -> φ_s + φ̃(s)τ modulo τ².  Rightmost reductions of a path p = x·s·y give the
τ-part

    T(p) = x·φ̃(s)·y + Σ_t c_t·T(x·t·y)    (φ_s = Σ_t c_t·t)

reduced in Λ, and T(p) = 0 for irreducible p.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

from app.core.exceptions import DiamondError, PreconditionError, VerificationError
from app.core.logging import get_logger
from app.services.algebra.element import PathElement
from app.services.algebra.quiver import Path
from app.services.deformation.linear import PHI, DeformParam, FormalElement, LinearConstraintSet, LinearExpr
from app.services.reduction.basis import QuotientAlgebra
from app.services.reduction.system import RIGHTMOST, Overlap, overlaps

logger = get_logger(__name__)


@dataclass(frozen=True)
class DeformedElement:
    """lam + tau·τ, truncated at τ²."""

    lam: PathElement
    tau: FormalElement

    @classmethod
    def of_path(cls, quotient: QuotientAlgebra, path: Path) -> "DeformedElement":
        return cls(PathElement.from_path(quotient.field, path), FormalElement(quotient.field))

    def __add__(self, other: "DeformedElement") -> "DeformedElement":
        return DeformedElement(self.lam + other.lam, self.tau + other.tau)

    def __sub__(self, other: "DeformedElement") -> "DeformedElement":
        return DeformedElement(self.lam - other.lam, self.tau - other.tau)

    def scale(self, factor: Any) -> "DeformedElement":
        return DeformedElement(self.lam.scale(factor), self.tau.scale(factor))

    @property
    def text(self) -> str:
        return f"{self.lam.text} + ({self.tau.text})*tau"


class FirstOrderDeformation:
    """φ̃ on the rules of a reduction system, one formal element per rule."""

    def __init__(self, quotient: QuotientAlgebra, corrections: Sequence[FormalElement]):
        system = quotient.system
        if len(corrections) != len(system.rules):
            raise PreconditionError(
                f"a deformation needs {len(system.rules)} corrections, got {len(corrections)}"
            )
        for rule, correction in zip(system.rules, corrections):
            for path in correction.paths():
                if path.origin != rule.lhs.origin or path.terminal != rule.lhs.terminal:
                    raise PreconditionError(f"{path.text} in the correction of {rule.lhs.text} is not parallel to it")
                if not system.is_irreducible(path):
                    raise PreconditionError(f"{path.text} in the correction of {rule.lhs.text} is reducible")
        self.quotient = quotient
        self.system = system
        self.field = quotient.field
        self.corrections: List[FormalElement] = list(corrections)
        self._tau: Dict[Path, FormalElement] = {}

    @classmethod
    def symbolic(cls, quotient: QuotientAlgebra) -> "FirstOrderDeformation":
        """One fresh parameter per (rule, parallel irreducible path)."""
        if not quotient.is_finite:
            raise PreconditionError("symbolic deformations need a finite-dimensional Λ")
        field_ = quotient.field
        corrections = []
        for k, rule in enumerate(quotient.system.rules):
            terms = {}
            for path in quotient.parallel_paths(rule.lhs.origin, rule.lhs.terminal):
                terms[(path, DeformParam(PHI, rule.lhs, path, rank=k))] = field_.one
            corrections.append(FormalElement(field_, terms))
        return cls(quotient, corrections)

    @classmethod
    def zero(cls, quotient: QuotientAlgebra) -> "FirstOrderDeformation":
        return cls(quotient, [FormalElement(quotient.field) for _ in quotient.system.rules])

    @classmethod
    def from_elements(cls, quotient: QuotientAlgebra, values: Sequence[PathElement]) -> "FirstOrderDeformation":
        return cls(quotient, [FormalElement.from_element(quotient.reduce(v)) for v in values])

    def params(self) -> List[DeformParam]:
        found = {p for correction in self.corrections for p in correction.params()}
        return sorted(found, key=lambda p: p.order)

    def correction(self, rule_index: int) -> FormalElement:
        return self.corrections[rule_index]

    def substitute(self, values: Mapping[DeformParam, LinearExpr]) -> "FirstOrderDeformation":
        return FirstOrderDeformation(self.quotient, [c.substitute(values) for c in self.corrections])

    def evaluate(self, values: Mapping[DeformParam, Any]) -> List[PathElement]:
        return [c.evaluate(values) for c in self.corrections]

    def tau_part(self, path: Path) -> FormalElement:
        cached = self._tau.get(path)
        if cached is not None:
            return cached
        redex = self.system.find_redex(path, RIGHTMOST)
        if redex is None:
            result = FormalElement(self.field)
        else:
            position, rule_index = redex
            lhs = self.system.rules[rule_index].lhs
            prefix = path.sub(0, position)
            suffix = path.sub(position + lhs.length, path.length)
            result = self.corrections[rule_index].multiply(self.quotient, prefix, suffix)
            for target, c in self.system.apply_rule(path, position, rule_index):
                result = result + self.tau_part(target).scale(c)
        self._tau[path] = result
        return result

    def star_paths(self, u: Path, v: Path) -> DeformedElement:
        for factor in (u, v):
            if not self.system.is_irreducible(factor):
                raise PreconditionError(f"the star product takes irreducible paths, {factor.text} is reducible")
        product = u.compose(v)
        if product is None:
            return DeformedElement(PathElement(self.field), FormalElement(self.field))
        return DeformedElement(self.system.reduce_path(product), self.tau_part(product))

    def star(self, x: DeformedElement, y: DeformedElement) -> DeformedElement:
        """(x₀ + x₁τ)⋆(y₀ + y₁τ) = x₀⋆y₀ + (x₀·y₁ + x₁·y₀)τ."""
        result = DeformedElement(PathElement(self.field), FormalElement(self.field))
        for p, a in x.lam.items():
            for q, b in y.lam.items():
                result = result + self.star_paths(p, q).scale(a * b)
        mixed = FormalElement(self.field)
        for p, a in x.lam.items():
            mixed = mixed + y.tau.multiply(self.quotient, left=p).scale(a)
        for q, b in y.lam.items():
            mixed = mixed + x.tau.multiply(self.quotient, right=q).scale(b)
        return DeformedElement(result.lam, result.tau + mixed)

    def table(self) -> List[str]:
        return [f"{rule.lhs.text} -> {c.text}" for rule, c in zip(self.system.rules, self.corrections)]


def star_first_order(u: Path, v: Path, deformation: FirstOrderDeformation) -> DeformedElement:
    return deformation.star_paths(u, v)


@dataclass
class OverlapConstraint:
    """τ-part of (u⋆v)⋆w − u⋆(v⋆w) on one overlap."""

    overlap: Overlap
    associator: FormalElement

    @property
    def equations(self) -> List[LinearExpr]:
        return [self.associator.coefficient_of(path) for path in self.associator.paths()]


def overlap_constraint(deformation: FirstOrderDeformation, overlap: Overlap) -> OverlapConstraint:
    quotient = deformation.quotient
    u, v, w = (DeformedElement.of_path(quotient, p) for p in (overlap.p, overlap.q, overlap.r))
    left = deformation.star(deformation.star(u, v), w)
    right = deformation.star(u, deformation.star(v, w))
    difference = left - right
    if difference.lam:
        raise DiamondError(
            f"the undeformed product is not associative on {overlap.path.text}: {difference.lam.text}"
        )
    return OverlapConstraint(overlap, difference.tau)


def _constraint_set(deformation: FirstOrderDeformation, rows: List[OverlapConstraint]) -> LinearConstraintSet:
    equations = [e for row in rows for e in row.equations]
    return LinearConstraintSet(deformation.field, deformation.params(), equations)


def mc_constraints(deformation: FirstOrderDeformation) -> LinearConstraintSet:
    """Solved linear system making the star product associative mod τ² on every overlap."""
    rows = [overlap_constraint(deformation, o) for o in overlaps(deformation.system)]
    constraints = _constraint_set(deformation, rows)
    logger.debug("mc_constraints", overlaps=len(rows), equations=len(constraints.equations), rank=constraints.rank)
    return constraints


@dataclass
class DeformationFamily:
    """Solutions of the first-order Maurer-Cartan constraints."""

    symbolic: FirstOrderDeformation
    constraints: LinearConstraintSet
    solution: FirstOrderDeformation
    overlap_constraints: List[OverlapConstraint] = field(default_factory=list)

    @property
    def free(self) -> List[DeformParam]:
        return self.constraints.free

    @property
    def dimension(self) -> int:
        return len(self.constraints.free)

    def direction(self, param: DeformParam) -> List[PathElement]:
        """φ̃ with ``param`` set to one and every other free parameter to zero."""
        return self.solution.evaluate({param: self.symbolic.field.one})


def solve_mc_first_order(quotient: QuotientAlgebra, deformation: Optional[FirstOrderDeformation] = None) -> DeformationFamily:
    symbolic = deformation or FirstOrderDeformation.symbolic(quotient)
    rows = [overlap_constraint(symbolic, o) for o in overlaps(symbolic.system)]
    constraints = _constraint_set(symbolic, rows)
    if not constraints.consistent:
        raise VerificationError("the first-order Maurer-Cartan constraints are inconsistent", report=constraints)
    family = DeformationFamily(symbolic, constraints, symbolic.substitute(constraints.eliminated), rows)
    logger.info(
        "mc_family_solved",
        params=len(constraints.params),
        eliminated=constraints.rank,
        free=family.dimension,
    )
    return family
