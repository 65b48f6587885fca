from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Optional

from app.core.logging import get_logger
from app.services.algebra.combination import Combination, accumulate
from app.services.algebra.element import PathElement, multiply
from app.services.resolution.complex import MANUAL, KComplex
from app.services.resolution.sections import Section, TensorSection

logger = get_logger(__name__)

AUGMENTATION = "augmentation"
D_SQUARED = "d_squared"
COUNIT_LEFT = "counit_left"
COUNIT_RIGHT = "counit_right"
CHAIN_MAP = "chain_map"
COASSOCIATIVITY = "coassociativity"
RECONSTRUCTION = "reconstruction"


@dataclass(frozen=True)
class PropertyCheck:
    property: str
    degree: int
    passed: bool
    mandatory: bool = True
    detail: Optional[str] = None


@dataclass
class VerificationReport:
    checks: List[PropertyCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.mandatory)

    @property
    def failures(self) -> List[PropertyCheck]:
        return [c for c in self.checks if not c.passed]

    def record(self, name: str, degree: int, residuals: Dict[int, str], mandatory: bool = True) -> None:
        """One row per (property, degree); the first nonzero residual is the detail."""
        if residuals:
            index = min(residuals)
            detail = f"generator {index}: {residuals[index]}"
            self.checks.append(PropertyCheck(name, degree, False, mandatory, detail))
        else:
            self.checks.append(PropertyCheck(name, degree, True, mandatory))


class _Triple(Combination):
    """Elements of K ⊗_Λ K ⊗_Λ K keyed (left, v1, p1, m1, v2, p2, m2, p3, right)."""

    __slots__ = ()

    @staticmethod
    def sort_key(key) -> Any:
        left, v1, p1, m1, v2, p2, m2, p3, right = key
        return (v1, v2, p1, p2, p3, left.sort_key, m1.sort_key, m2.sort_key, right.sort_key)

    @property
    def text(self) -> str:
        return " + ".join(f"{c}*{key}" for key, c in self.items()) or "0"


def _apply_d_left(K: KComplex, x: TensorSection) -> TensorSection:
    """(d ⊗ 1) on a tensor section; degree-0 first factors are killed."""
    algebra = K.algebra
    terms: Dict[Hashable, Any] = {}
    for (left, v, p, middle, q, right), c in x.items():
        if v == 0:
            continue
        for (l1, k, r1), c1 in K.differential[(v, p)].items():
            for new_left, a in algebra.multiply_paths(left, l1).items():
                for new_middle, b in algebra.multiply_paths(r1, middle).items():
                    accumulate(terms, (new_left, v - 1, k, new_middle, q, right), c * c1 * a * b)
    return TensorSection(K.field, x.degree - 1, terms)


def _apply_d_right(K: KComplex, x: TensorSection) -> TensorSection:
    """(1 ⊗ d) with the Koszul sign (−1)^v."""
    algebra = K.algebra
    terms: Dict[Hashable, Any] = {}
    for (left, v, p, middle, q, right), c in x.items():
        w = x.degree - v
        if w == 0:
            continue
        sign = K.field.sign(v)
        for (l1, k, r1), c1 in K.differential[(w, q)].items():
            for new_middle, a in algebra.multiply_paths(middle, l1).items():
                for new_right, b in algebra.multiply_paths(r1, right).items():
                    accumulate(terms, (left, v, p, new_middle, k, new_right), sign * c * c1 * a * b)
    return TensorSection(K.field, x.degree - 1, terms)


def _coassociativity_sides(K: KComplex, n: int, i: int):
    algebra = K.algebra
    first: Dict[Hashable, Any] = {}
    second: Dict[Hashable, Any] = {}
    for (left, v, p, middle, q, right), c in K.delta(n, i).items():
        for (l1, v1, p1, m1, q1, r1), c1 in K.delta(v, p).items():
            for new_left, a in algebra.multiply_paths(left, l1).items():
                for new_middle, b in algebra.multiply_paths(r1, middle).items():
                    key = (new_left, v1, p1, m1, v - v1, q1, new_middle, q, right)
                    accumulate(first, key, c * c1 * a * b)
        for (l2, v2, p2, m2, q2, r2), c2 in K.delta(n - v, q).items():
            for new_middle, a in algebra.multiply_paths(middle, l2).items():
                for new_right, b in algebra.multiply_paths(r2, right).items():
                    key = (left, v, p, new_middle, v2, p2, m2, q2, new_right)
                    accumulate(second, key, c * c2 * a * b)
    return _Triple(K.field, first), _Triple(K.field, second)


def _counit_sides(K: KComplex, n: int, i: int):
    algebra = K.algebra
    left_terms: Dict[Hashable, Any] = {}
    right_terms: Dict[Hashable, Any] = {}
    for (left, v, p, middle, q, right), c in K.delta(n, i).items():
        if v == 0:
            for product, a in algebra.multiply_paths(left, middle).items():
                accumulate(left_terms, (product, q, right), c * a)
        if v == n:
            for product, a in algebra.multiply_paths(middle, right).items():
                accumulate(right_terms, (left, p, product), c * a)
    return Section(K.field, n, left_terms), Section(K.field, n, right_terms)


def verify_complex(K: KComplex) -> VerificationReport:
    """Checks the resolution and diagonal identities degree by degree."""
    report = VerificationReport()
    field_ = K.field

    residuals: Dict[int, str] = {}
    for g in K.generators.get(1, ()):
        value = K.augmentation(K.d(K.basis_section(1, g.index)))
        if value:
            residuals[g.index] = value.text
    report.record(AUGMENTATION, 1, residuals)

    for n in range(2, K.max_degree + 1):
        residuals = {}
        for g in K.generators[n]:
            value = K.d(K.d(K.basis_section(n, g.index)))
            if value:
                residuals[g.index] = value.text
        report.record(D_SQUARED, n, residuals)

    for n in range(0, K.max_degree + 1):
        left_residuals: Dict[int, str] = {}
        right_residuals: Dict[int, str] = {}
        for g in K.generators[n]:
            expected = K.basis_section(n, g.index)
            left_side, right_side = _counit_sides(K, n, g.index)
            if left_side != expected:
                left_residuals[g.index] = (left_side - expected).text
            if right_side != expected:
                right_residuals[g.index] = (right_side - expected).text
        report.record(COUNIT_LEFT, n, left_residuals)
        report.record(COUNIT_RIGHT, n, right_residuals)

    for n in range(1, K.max_degree + 1):
        residuals = {}
        for g in K.generators[n]:
            delta = K.delta(n, g.index)
            lhs = _apply_d_left(K, delta) + _apply_d_right(K, delta)
            rhs = K.delta_section(K.d(K.basis_section(n, g.index)))
            if lhs != rhs:
                residuals[g.index] = (lhs - rhs).text
        report.record(CHAIN_MAP, n, residuals)

    for n in range(0, K.max_degree + 1):
        residuals = {}
        for g in K.generators[n]:
            first, second = _coassociativity_sides(K, n, g.index)
            if first != second:
                residuals[g.index] = (first - second).text
        report.record(COASSOCIATIVITY, n, residuals, mandatory=K.kind != MANUAL)

    if K.has_tensor_forms and K.comult is not None:
        for n in range(0, K.max_degree + 1):
            residuals = {}
            for g in K.generators[n]:
                for r in range(n + 1):
                    total = PathElement(field_)
                    for (p, q), c in K.comult.row(n, g.index, r).items():
                        product = multiply(K.generators[r][p].tensor, K.generators[n - r][q].tensor)
                        total = total + product.scale(c)
                    if total != g.tensor:
                        residuals.setdefault(g.index, f"split {r}: {(total - g.tensor).text}")
            report.record(RECONSTRUCTION, n, residuals)

    logger.info(
        "complex_verified",
        kind=K.kind,
        max_degree=K.max_degree,
        passed=report.passed,
        failures=len(report.failures),
    )
    return report
