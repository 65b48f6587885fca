"""Compare star-product Maurer-Cartan directions with homotopy-lifting ones.

Rule s -> φ_s and degree-2 generator f²_i are matched through
f̃²_i = Σ_s A_{i,s}(s − φ_s) in kQ; a deformation direction φ̃ then becomes the
cochain η(ε²_i) = Σ_s A_{i,s}·φ̃(s).
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from app.core.exceptions import CorrespondenceError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.element import PathElement
from app.services.cohomology import Cochain, cobound_reduce, cohomology_basis, is_cocycle
from app.services.deformation.gauge import GaugeReduction
from app.services.deformation.linear import DeformParam
from app.services.lifting.bracket import maurer_cartan_check
from app.services.lifting.homotopy import solve_homotopy_lifting
from app.services.resolution.complex import KComplex
from app.utils import linalg

logger = get_logger(__name__)


@dataclass(frozen=True)
class DirectionCheck:
    param: str
    cochain: List[str]
    cocycle: bool
    mc_holds: bool
    class_vanishes: bool
    representative: List[str]

    @property
    def passed(self) -> bool:
        return self.cocycle and self.mc_holds


@dataclass
class CrosscheckReport:
    correspondence: List[Dict[int, Any]]
    directions: List[DirectionCheck] = field(default_factory=list)
    eliminated: List[DirectionCheck] = field(default_factory=list)
    family_dimension: int = 0
    cohomology_dimension: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(d.passed for d in self.directions)

    @property
    def dimension_agrees(self) -> Optional[bool]:
        if self.cohomology_dimension is None:
            return None
        return self.family_dimension == self.cohomology_dimension


def rule_correspondence(K: KComplex, reduction: GaugeReduction) -> List[Dict[int, Any]]:
    """A_{i,s} for every degree-2 generator i, as sparse rows over the rules."""
    rules = reduction.family.symbolic.system.rules
    count = K.count(2)
    if len(rules) != count:
        raise CorrespondenceError(f"{len(rules)} reduction rules against {count} degree-2 generators")
    if not K.has_tensor_forms:
        raise CorrespondenceError("the complex carries no tensor forms for its degree-2 generators")
    columns = []
    for rule in rules:
        column: Dict[Any, Any] = {rule.lhs: K.field.one}
        for path, c in rule.rhs.items():
            accumulate(column, path, -c)
        columns.append(column)
    rows = []
    for g in K.generators[2]:
        solution = linalg.solve(columns, dict(g.tensor.items()), K.field.domain)
        if solution is None:
            raise CorrespondenceError(f"f2_{g.index} = {g.tensor.text} is not a combination of the rule differences")
        rows.append({s: a for s, a in enumerate(solution) if a})
    return rows


def direction_cochain(K: KComplex, values: List[PathElement], correspondence: List[Dict[int, Any]]) -> Cochain:
    cochain_values = []
    for row in correspondence:
        value = PathElement(K.field)
        for s, a in row.items():
            value = value + values[s].scale(a)
        cochain_values.append(value)
    return Cochain(K, 2, cochain_values)


def _check_direction(K: KComplex, param: DeformParam, eta: Cochain, run_mc: bool) -> DirectionCheck:
    representative = cobound_reduce(eta).row
    if eta.is_zero():
        return DirectionCheck(param.name, eta.row, True, True, True, representative)
    cocycle = is_cocycle(eta)
    mc_holds = class_vanishes = False
    if cocycle and run_mc:
        report = maurer_cartan_check(eta, solve_homotopy_lifting(eta, 3))
        mc_holds, class_vanishes = report.holds, report.class_vanishes
    return DirectionCheck(param.name, eta.row, cocycle, mc_holds, class_vanishes, representative)


def crosscheck_mc(K: KComplex, reduction: GaugeReduction) -> CrosscheckReport:
    """MC check of every reduced direction; eliminated directions are listed with their classes."""
    K.check_degree(3)
    correspondence = rule_correspondence(K, reduction)
    family = reduction.family
    report = CrosscheckReport(correspondence, family_dimension=reduction.dimension)
    for param in reduction.reduced:
        eta = direction_cochain(K, family.direction(param), correspondence)
        report.directions.append(_check_direction(K, param, eta, run_mc=True))
    for param in reduction.eliminated:
        eta = direction_cochain(K, family.direction(param), correspondence)
        report.eliminated.append(_check_direction(K, param, eta, run_mc=False))
    if K.algebra.is_finite:
        report.cohomology_dimension = cohomology_basis(K, 2).dimension
    logger.info(
        "crosscheck_completed",
        directions=len(report.directions),
        passed=report.passed,
        family_dimension=report.family_dimension,
        cohomology_dimension=report.cohomology_dimension,
    )
    return report
