"""Elements of the free bimodules K_n and of K_v ⊗_Λ K_w.

A ``Section`` of degree n is Σ c · left·ε^n_j·right with left/right irreducible
paths; a ``TensorSection`` of total degree n is
Σ c · left·ε^v_p·middle ⊗ ε^{n-v}_q·right.
"""
from typing import Any, Dict, Tuple

from app.services.algebra.combination import Combination, accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.field import Field
from app.services.algebra.quiver import Path
from app.services.reduction.basis import QuotientAlgebra

SectionKey = Tuple[Path, int, Path]
TensorKey = Tuple[Path, int, int, Path, int, Path]


def generator_token(degree: int, index: int) -> str:
    return f"eps{degree}_{index}"


class Section(Combination):
    __slots__ = ("degree",)

    def __init__(self, field: Field, degree: int, terms=None):
        super().__init__(field, terms)
        self.degree = degree

    @staticmethod
    def sort_key(key: SectionKey) -> Any:
        left, index, right = key
        return (index, left.sort_key, right.sort_key)

    def _new(self, terms) -> "Section":
        return Section(self.field, self.degree, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Section):
            return NotImplemented
        return self.degree == other.degree and super().__eq__(other)

    __hash__ = Combination.__hash__

    @classmethod
    def basis_element(cls, field: Field, degree: int, index: int, origin: Path, terminal: Path) -> "Section":
        return cls(field, degree, {(origin, index, terminal): field.one})

    def left_multiply(self, algebra: QuotientAlgebra, x: PathElement) -> "Section":
        terms: Dict[SectionKey, Any] = {}
        for (left, index, right), c in self._terms.items():
            for path, a in x.items():
                for product, b in algebra.multiply_paths(path, left).items():
                    accumulate(terms, (product, index, right), c * a * b)
        return self._new(terms)

    def right_multiply(self, algebra: QuotientAlgebra, x: PathElement) -> "Section":
        terms: Dict[SectionKey, Any] = {}
        for (left, index, right), c in self._terms.items():
            for path, a in x.items():
                for product, b in algebra.multiply_paths(right, path).items():
                    accumulate(terms, (left, index, product), c * a * b)
        return self._new(terms)

    def sandwich(self, algebra: QuotientAlgebra, left: Path, right: Path) -> "Section":
        """left · self · right for single paths."""
        return self.left_multiply(algebra, algebra.element(left)).right_multiply(
            algebra, algebra.element(right)
        )

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (left, index, right), c in self.items():
            factors = [p.text for p in (left,) if not p.is_trivial]
            factors.append(generator_token(self.degree, index))
            factors.extend(p.text for p in (right,) if not p.is_trivial)
            body = "*".join(factors)
            negative = self.field.is_negative(c)
            magnitude = -c if negative else c
            if magnitude != self.field.one:
                body = f"{self.field.to_text(magnitude)}*{body}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)


class TensorSection(Combination):
    __slots__ = ("degree",)

    def __init__(self, field: Field, degree: int, terms=None):
        super().__init__(field, terms)
        self.degree = degree

    @staticmethod
    def sort_key(key: TensorKey) -> Any:
        left, v, p, middle, q, right = key
        return (v, p, q, left.sort_key, middle.sort_key, right.sort_key)

    def _new(self, terms) -> "TensorSection":
        return TensorSection(self.field, self.degree, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorSection):
            return NotImplemented
        return self.degree == other.degree and super().__eq__(other)

    __hash__ = Combination.__hash__

    def sandwich(self, algebra: QuotientAlgebra, outer_left: Path, outer_right: Path) -> "TensorSection":
        terms: Dict[TensorKey, Any] = {}
        for (left, v, p, middle, q, right), c in self._terms.items():
            for new_left, a in algebra.multiply_paths(outer_left, left).items():
                for new_right, b in algebra.multiply_paths(right, outer_right).items():
                    accumulate(terms, (new_left, v, p, middle, q, new_right), c * a * b)
        return self._new(terms)

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (left, v, p, middle, q, right), c in self.items():
            first = [x.text for x in (left,) if not x.is_trivial] + [generator_token(v, p)]
            first += [x.text for x in (middle,) if not x.is_trivial]
            second = [generator_token(self.degree - v, q)] + [x.text for x in (right,) if not x.is_trivial]
            body = f"{'*'.join(first)} (x) {'*'.join(second)}"
            coefficient = self.field.to_text(c)
            pieces.append(body if c == self.field.one else f"{coefficient}*{body}")
        return " + ".join(pieces)
