"""Reduced bar complex in low degrees, used as an oracle for tensor-form complexes.

A bar element of degree n is Σ c · left ⊗ a_1 ⊗ ... ⊗ a_n ⊗ right with the a_k
nontrivial irreducible paths composing in sequence; the tensor product is taken
over the vertex algebra, so trivial middle factors vanish.
"""
from typing import Any, Dict, Hashable, Optional, Tuple

from app.core.exceptions import DegreeOutOfRangeError, PreconditionError
from app.services.algebra.combination import Combination, accumulate
from app.services.algebra.field import Field
from app.services.algebra.quiver import Path
from app.services.resolution.complex import KComplex
from app.services.resolution.sections import Section, TensorSection
from app.services.resolution.verify import VerificationReport

BAR_DEGREE_LIMIT = 4

BarKey = Tuple[Path, Tuple[Path, ...], Path]


class BarElement(Combination):
    __slots__ = ("degree",)

    def __init__(self, field: Field, degree: int, terms=None):
        super().__init__(field, terms)
        self.degree = degree

    @staticmethod
    def sort_key(key: BarKey) -> Any:
        left, middle, right = key
        return (left.sort_key, tuple(p.sort_key for p in middle), right.sort_key)

    def _new(self, terms) -> "BarElement":
        return BarElement(self.field, self.degree, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BarElement):
            return NotImplemented
        return self.degree == other.degree and super().__eq__(other)

    __hash__ = Combination.__hash__

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (left, middle, right), c in self.items():
            body = " (x) ".join([left.text] + [p.text for p in middle] + [right.text])
            pieces.append(body if c == self.field.one else f"{self.field.to_text(c)}*[{body}]")
        return " + ".join(pieces)


class BarTensor(Combination):
    """Elements of B ⊗_Λ B keyed (left, first middles, junction, second middles, right)."""

    __slots__ = ()

    @staticmethod
    def sort_key(key) -> Any:
        left, first, junction, second, right = key
        return (
            len(first),
            left.sort_key,
            tuple(p.sort_key for p in first),
            junction.sort_key,
            tuple(p.sort_key for p in second),
            right.sort_key,
        )

    @property
    def text(self) -> str:
        return " + ".join(f"{c}*{key}" for key, c in self.items()) or "0"


def _require_oracle(K: KComplex, n: int) -> None:
    if not K.has_tensor_forms:
        raise PreconditionError("the bar embedding needs tensor forms; manual resolutions carry none")
    if n > BAR_DEGREE_LIMIT:
        raise DegreeOutOfRangeError(f"the bar oracle covers degrees up to {BAR_DEGREE_LIMIT}, got {n}")
    K.check_degree(n)


def _letters(path: Path) -> Tuple[Path, ...]:
    return tuple(Path.of_arrow(a) for a in path.arrows)


def bar_embed(K: KComplex, n: int, i: int) -> BarElement:
    """ι(ε^n_i) = 1 ⊗ f̃^n_i ⊗ 1."""
    _require_oracle(K, n)
    g = K.generator(n, i)
    terms: Dict[BarKey, Any] = {}
    for path, c in g.tensor.items():
        accumulate(terms, (g.left_unit, _letters(path), g.right_unit), c)
    return BarElement(K.field, n, terms)


def embed_section(K: KComplex, section: Section) -> BarElement:
    terms: Dict[BarKey, Any] = {}
    for (left, index, right), c in section.items():
        for (_, middle, _), a in bar_embed(K, section.degree, index).items():
            accumulate(terms, (left, middle, right), c * a)
    return BarElement(K.field, section.degree, terms)


def embed_tensor(K: KComplex, tensor: TensorSection) -> BarTensor:
    """(ι ⊗ ι) on K ⊗_Λ K."""
    terms: Dict[Hashable, Any] = {}
    for (left, v, p, middle, q, right), c in tensor.items():
        first = bar_embed(K, v, p)
        second = bar_embed(K, tensor.degree - v, q)
        for (_, m1, _), a in first.items():
            for (_, m2, _), b in second.items():
                accumulate(terms, (left, m1, middle, m2, right), c * a * b)
    return BarTensor(K.field, terms)


def bar_differential(K: KComplex, x: BarElement) -> BarElement:
    algebra = K.algebra
    n = x.degree
    if n == 0:
        raise DegreeOutOfRangeError("B_0 has no differential inside the complex")
    terms: Dict[BarKey, Any] = {}
    for (left, middle, right), c in x.items():
        for product, a in algebra.multiply_paths(left, middle[0]).items():
            accumulate(terms, (product, middle[1:], right), c * a)
        for k in range(n - 1):
            sign = K.field.sign(k + 1)
            for product, a in algebra.multiply_paths(middle[k], middle[k + 1]).items():
                if product.is_trivial:
                    continue
                key = (left, middle[:k] + (product,) + middle[k + 2 :], right)
                accumulate(terms, key, sign * c * a)
        sign = K.field.sign(n)
        for product, a in algebra.multiply_paths(middle[-1], right).items():
            accumulate(terms, (left, middle[:-1], product), sign * c * a)
    return BarElement(K.field, n - 1, terms)


def bar_diagonal(x: BarElement) -> BarTensor:
    """Δ_B(a_0 ⊗ a_1..a_n ⊗ a_{n+1}) = Σ_j (a_0 ⊗ a_1..a_j ⊗ 1) ⊗ (1 ⊗ a_{j+1}..a_n ⊗ a_{n+1})."""
    terms: Dict[Hashable, Any] = {}
    for (left, middle, right), c in x.items():
        for j in range(len(middle) + 1):
            junction_vertex = middle[j - 1].terminal if j else left.terminal
            junction = Path.trivial(junction_vertex)
            accumulate(terms, (left, middle[:j], junction, middle[j:], right), c)
    return BarTensor(x.field, terms)


def check_bar_compatibility(K: KComplex, max_degree: Optional[int] = None) -> VerificationReport:
    """δι = ιd and (ι ⊗ ι)Δ_K = Δ_B ι, one row per property and degree."""
    top = min(K.max_degree, BAR_DEGREE_LIMIT if max_degree is None else max_degree)
    _require_oracle(K, top)
    report = VerificationReport()
    for n in range(0, top + 1):
        if n > 0:
            residuals: Dict[int, str] = {}
            for g in K.generators[n]:
                lhs = bar_differential(K, bar_embed(K, n, g.index))
                rhs = embed_section(K, K.d(K.basis_section(n, g.index)))
                if lhs != rhs:
                    residuals[g.index] = (lhs - rhs).text
            report.record("bar_differential", n, residuals)
        residuals = {}
        for g in K.generators[n]:
            lhs = embed_tensor(K, K.delta(n, g.index))
            rhs = bar_diagonal(bar_embed(K, n, g.index))
            if lhs != rhs:
                residuals[g.index] = (lhs - rhs).text
        report.record("bar_diagonal", n, residuals)
    return report