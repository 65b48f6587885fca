from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import NoSolutionError, PreconditionError, SolverLimitError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.cohomology import Cochain, is_cocycle
from app.services.resolution.complex import KComplex
from app.services.resolution.sections import Section
from app.utils import linalg

logger = get_logger(__name__)


class HomotopyLifting:
    """ψ_η: K_m -> K_{m-n+1}, stored per generator for n <= m <= max_degree.

    Degrees below n map to zero; the degree-(n-1) component is fixed to zero.
    """

    def __init__(self, cochain: Cochain, max_degree: int, sections: Optional[Dict[Tuple[int, int], Section]] = None):
        self.cochain = cochain
        self.complex: KComplex = cochain.complex
        self.field = cochain.field
        self.degree = cochain.degree
        self.max_degree = max_degree
        self.sections: Dict[Tuple[int, int], Section] = dict(sections or {})

    def target_degree(self, m: int) -> int:
        return m - self.degree + 1

    def value(self, m: int, r: int) -> Section:
        if m < self.degree:
            return Section(self.field, self.target_degree(m))
        if m > self.max_degree:
            raise PreconditionError(f"the lifting is only known up to degree {self.max_degree}")
        return self.sections.get((m, r), Section(self.field, self.target_degree(m)))

    def apply(self, section: Section) -> Section:
        m = section.degree
        result = Section(self.field, self.target_degree(m))
        if m < self.degree:
            return result
        for (left, index, right), c in section.items():
            image = self.value(m, index)
            if image:
                result = result + image.sandwich(self.complex.algebra, left, right).scale(c)
        return result

    def is_zero(self) -> bool:
        return not any(self.sections.values())

    def rows(self) -> List[Tuple[int, int, str]]:
        return [
            (m, g.index, self.value(m, g.index).text)
            for m in range(self.degree, self.max_degree + 1)
            for g in self.complex.generators[m]
        ]


def eta_diagonal(cochain: Cochain, m: int, r: int) -> Section:
    """(η ⊗ 1 − 1 ⊗ η)Δ(ε^m_r) as a section of degree m − n."""
    K = cochain.complex
    algebra = K.algebra
    n = cochain.degree
    terms: Dict[Any, Any] = {}
    for (left, v, p, middle, q, right), c in K.delta(m, r).items():
        if v == n:
            value = cochain.value(p)
            for path, a in value.items():
                for first, b in algebra.multiply_paths(left, path).items():
                    for product, d in algebra.multiply_paths(first, middle).items():
                        accumulate(terms, (product, q, right), c * a * b * d)
        if m - v == n:
            sign = K.field.sign(n * v)
            value = cochain.value(q)
            for path, a in value.items():
                for first, b in algebra.multiply_paths(middle, path).items():
                    for product, d in algebra.multiply_paths(first, right).items():
                        accumulate(terms, (left, p, product), -sign * c * a * b * d)
    return Section(K.field, m - n, terms)


def homotopy_residual(lifting: HomotopyLifting, m: int, r: int) -> Section:
    """dψ(ε) − (−1)^{1−n} ψ(dε) − (η⊗1 − 1⊗η)Δ(ε); zero when the relation holds."""
    K = lifting.complex
    n = lifting.degree
    basis = K.basis_section(m, r)
    image = lifting.value(m, r)
    lhs = K.d(image) if image.degree > 0 else Section(K.field, m - n)
    if m >= 1:
        lhs = lhs - lifting.apply(K.d(basis)).scale(K.field.sign(1 - n))
    return lhs - eta_diagonal(lifting.cochain, m, r)


def _unknowns(cochain: Cochain, m: int, r: int) -> List[Tuple[int, Any, Any]]:
    K = cochain.complex
    algebra = K.algebra
    source = K.generator(m, r)
    t = m - cochain.degree + 1
    unknowns = []
    for shift in cochain.shifts():
        for g in K.generators[t]:
            total = source.weight + shift - g.weight
            if total < 0:
                continue
            for a in range(total + 1):
                for u in algebra.paths(source.origin, g.origin, a):
                    for w in algebra.paths(g.terminal, source.terminal, total - a):
                        unknowns.append((g.index, u, w))
    unique = sorted(set(unknowns), key=lambda x: (x[0], x[1].sort_key, x[2].sort_key))
    return unique


def solve_homotopy_lifting(cochain: Cochain, max_degree: Optional[int] = None) -> HomotopyLifting:
    """Solve dψ(ε^m_r) = (η⊗1 − 1⊗η)Δ(ε^m_r) + (−1)^{1−n}ψ(dε^m_r) degree by degree.

    Unknown coefficients u·ε^{m-n+1}_j·w respect the internal grading.  Among
    the solutions the one with fewest nonzero unknowns is taken, earlier
    unknowns winning ties.
    """
    K = cochain.complex
    n = cochain.degree
    top = K.max_degree if max_degree is None else max_degree
    K.check_degree(top)
    if n < 1:
        raise PreconditionError("homotopy liftings are defined for cochains of degree at least 1")
    if n + 1 <= K.max_degree and not is_cocycle(cochain):
        raise PreconditionError(f"{cochain.text} is not a cocycle")

    lifting = HomotopyLifting(cochain, top)
    if cochain.is_zero():
        return lifting
    domain = K.field.domain
    sign = K.field.sign(1 - n)
    for m in range(n, top + 1):
        for g in K.generators[m]:
            target = eta_diagonal(cochain, m, g.index)
            if m > n:
                target = target + lifting.apply(K.d(K.basis_section(m, g.index))).scale(sign)
            unknowns = _unknowns(cochain, m, g.index)
            if len(unknowns) > settings.solver_size_cap:
                raise SolverLimitError(
                    f"{len(unknowns)} unknowns for psi(eps{m}_{g.index}), above the configured cap"
                )
            t = m - n + 1
            columns = [
                dict(K.d(Section(K.field, t, {(u, j, w): K.field.one})).items()) for j, u, w in unknowns
            ]
            solution = linalg.sparsest_solution(
                columns, dict(target.items()), domain, search_cap=settings.support_search_cap
            )
            if solution is None:
                raise NoSolutionError(
                    f"no homotopy lifting value for eps{m}_{g.index}: the right-hand side is not a boundary",
                    degree=m,
                    generator=g.index,
                )
            lifting.sections[(m, g.index)] = Section(
                K.field, t, {(u, j, w): x for (j, u, w), x in zip(unknowns, solution) if x}
            )
        logger.debug("lifting_degree_solved", degree=m, cochain_degree=n)
    return lifting


@dataclass
class HomotopyCheck:
    degree: int
    generator: int
    passed: bool
    residual: str = "0"


@dataclass
class HomotopyReport:
    rows: List[HomotopyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def verified_through(self) -> int:
        """Highest degree up to which every row passes (n − 1 when the first degree fails)."""
        degrees = sorted({row.degree for row in self.rows})
        reached = degrees[0] - 1 if degrees else -1
        for m in degrees:
            if all(row.passed for row in self.rows if row.degree == m):
                reached = m
            else:
                break
        return reached


def verify_homotopy(lifting: HomotopyLifting, max_degree: Optional[int] = None) -> HomotopyReport:
    K = lifting.complex
    top = lifting.max_degree if max_degree is None else min(max_degree, lifting.max_degree)
    report = HomotopyReport()
    for m in range(lifting.degree, top + 1):
        for g in K.generators[m]:
            residual = homotopy_residual(lifting, m, g.index)
            report.rows.append(HomotopyCheck(m, g.index, not residual, residual.text))
    return report
