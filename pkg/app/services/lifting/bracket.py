from dataclasses import dataclass, field
from typing import Any, List

from app.core.exceptions import DegreeOutOfRangeError, PreconditionError
from app.core.logging import get_logger
from app.services.cohomology import Cochain, cobound_reduce, coboundary
from app.services.lifting.homotopy import HomotopyLifting, verify_homotopy

logger = get_logger(__name__)


def compose(cochain: Cochain, lifting: HomotopyLifting, degree: int) -> Cochain:
    """The cochain ε ↦ cochain(ψ(ε)) in the given degree."""
    K = cochain.complex
    values = [cochain.evaluate(lifting.apply(K.basis_section(degree, g.index))) for g in K.generators[degree]]
    return Cochain(K, degree, values)


@dataclass
class BracketResult:
    left_degree: int
    right_degree: int
    sign: Any
    left_after_right: Cochain
    right_after_left: Cochain
    raw: Cochain
    reduced: Cochain

    @property
    def degree(self) -> int:
        return self.raw.degree


def _check_lifting(cochain: Cochain, lifting: HomotopyLifting, degree: int) -> None:
    if lifting.cochain != cochain:
        raise PreconditionError("the lifting was computed for a different cochain")
    if lifting.max_degree < degree:
        raise PreconditionError(f"the lifting of {cochain.text} is only known up to degree {lifting.max_degree}")


def bracket(eta: Cochain, theta: Cochain, psi_eta: HomotopyLifting, psi_theta: HomotopyLifting) -> BracketResult:
    """[η, θ] = η ψ_θ − (−1)^{(m−1)(n−1)} θ ψ_η on ε^{n+m−1}."""
    K = eta.complex
    n, m = eta.degree, theta.degree
    degree = n + m - 1
    if degree > K.max_degree:
        raise DegreeOutOfRangeError(f"the bracket lands in degree {degree}, above the constructed {K.max_degree}")
    _check_lifting(eta, psi_eta, degree)
    _check_lifting(theta, psi_theta, degree)
    sign = K.field.sign((m - 1) * (n - 1))
    first = compose(eta, psi_theta, degree)
    second = compose(theta, psi_eta, degree)
    raw = first - second.scale(sign)
    reduced = cobound_reduce(raw)
    return BracketResult(n, m, sign, first, second, raw, reduced)


@dataclass(frozen=True)
class MaurerCartanRow:
    generator: int
    coboundary: str
    product: str
    total: str


@dataclass
class MaurerCartanReport:
    cochain: Cochain
    holds: bool
    class_vanishes: bool
    rows: List[MaurerCartanRow] = field(default_factory=list)


def maurer_cartan_check(eta: Cochain, psi_eta: HomotopyLifting) -> MaurerCartanReport:
    """d*η + ηψ_η on every ε³_i; holds when it vanishes identically."""
    K = eta.complex
    if eta.degree != 2:
        raise PreconditionError(f"the Maurer-Cartan check takes a degree-2 cochain, got degree {eta.degree}")
    K.check_degree(3)
    _check_lifting(eta, psi_eta, 3)
    if verify_homotopy(psi_eta, 3).verified_through() < 3:
        raise PreconditionError("the supplied lifting does not satisfy the lifting relation through degree 3")

    d_eta = coboundary(eta)
    product = compose(eta, psi_eta, 3)
    total = d_eta + product
    rows = [
        MaurerCartanRow(g.index, d_eta.value(g.index).text, product.value(g.index).text, total.value(g.index).text)
        for g in K.generators[3]
    ]
    holds = total.is_zero()
    class_vanishes = holds or cobound_reduce(total).is_zero()
    logger.info("maurer_cartan_checked", cochain=eta.text, holds=holds, class_vanishes=class_vanishes)
    return MaurerCartanReport(eta, holds, class_vanishes, rows)
