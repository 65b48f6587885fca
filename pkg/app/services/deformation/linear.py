"""Affine-linear expressions over deformation parameters, and their solution."""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from app.services.algebra.combination import Combination, accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.field import Field
from app.services.algebra.quiver import Path
from app.utils import linalg

PHI = "phi"
THETA = "theta"


@dataclass(frozen=True)
class DeformParam:
    """Coefficient of ``path`` in the correction attached to ``anchor``.

    ``anchor`` is a reducible path s for φ̃ parameters and an arrow for gauge
    parameters; ``path`` is an irreducible path parallel to it.
    """

    family: str
    anchor: Path
    path: Path
    rank: int = field(compare=False, default=0)

    @property
    def name(self) -> str:
        return f"{self.family}({self.anchor.text})[{self.path.text}]"

    @property
    def order(self) -> Tuple:
        return (self.family, self.rank, self.path.sort_key)


class LinearExpr(Combination):
    """Σ c_π·π + c_0 with the constant stored under the key ``None``."""

    __slots__ = ()

    @staticmethod
    def sort_key(key: Optional[DeformParam]) -> Any:
        return (0,) if key is None else (1,) + key.order

    @classmethod
    def constant(cls, field_: Field, value: Any) -> "LinearExpr":
        return cls(field_, {None: value})

    @classmethod
    def of(cls, field_: Field, param: DeformParam, coefficient: Any = None) -> "LinearExpr":
        return cls(field_, {param: field_.one if coefficient is None else coefficient})

    @property
    def constant_term(self) -> Any:
        return self.coefficient(None)

    @property
    def params(self) -> List[DeformParam]:
        return [k for k in self.keys() if k is not None]

    def substitute(self, values: Mapping[DeformParam, "LinearExpr"]) -> "LinearExpr":
        result = LinearExpr(self.field, {None: self.constant_term})
        for key, c in self.items():
            if key is None:
                continue
            replacement = values.get(key)
            result = result + (replacement.scale(c) if replacement is not None else LinearExpr.of(self.field, key, c))
        return result

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for key, c in self.items():
            negative = self.field.is_negative(c)
            magnitude = -c if negative else c
            if key is None:
                body = self.field.to_text(magnitude)
            elif magnitude == self.field.one:
                body = key.name
            else:
                body = f"{self.field.to_text(magnitude)}*{key.name}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)


class FormalElement(Combination):
    """Λ-element with affine-linear coefficients, keyed (path, parameter or None)."""

    __slots__ = ()

    @staticmethod
    def sort_key(key) -> Any:
        path, param = key
        return (path.sort_key, LinearExpr.sort_key(param))

    @classmethod
    def from_element(cls, x: PathElement, param: Optional[DeformParam] = None) -> "FormalElement":
        return cls(x.field, {(path, param): c for path, c in x.items()})

    def paths(self) -> List[Path]:
        return sorted({path for path, _ in self._terms}, key=lambda p: p.sort_key)

    def coefficient_of(self, path: Path) -> LinearExpr:
        return LinearExpr(self.field, {param: c for (p, param), c in self._terms.items() if p == path})

    def params(self) -> List[DeformParam]:
        found = {param for (_, param) in self._terms if param is not None}
        return sorted(found, key=lambda p: p.order)

    def substitute(self, values: Mapping[DeformParam, LinearExpr]) -> "FormalElement":
        terms: Dict[Tuple[Path, Optional[DeformParam]], Any] = {}
        for path in self.paths():
            for param, c in self.coefficient_of(path).substitute(values).items():
                accumulate(terms, (path, param), c)
        return FormalElement(self.field, terms)

    def evaluate(self, values: Mapping[DeformParam, Any]) -> PathElement:
        """Concrete Λ-element for given scalar values; missing parameters count as zero."""
        terms: Dict[Path, Any] = {}
        for (path, param), c in self._terms.items():
            scale = self.field.one if param is None else values.get(param, self.field.zero)
            accumulate(terms, path, c * scale)
        return PathElement(self.field, terms)

    def multiply(self, algebra, left: Optional[Path] = None, right: Optional[Path] = None) -> "FormalElement":
        """left·self·right reduced in Λ, coefficients untouched."""
        terms: Dict[Tuple[Path, Optional[DeformParam]], Any] = {}
        for (path, param), c in self._terms.items():
            first = PathElement.from_path(self.field, path)
            if left is not None:
                first = algebra.multiply_paths(left, path)
            for middle, a in first.items():
                last = PathElement.from_path(self.field, middle)
                if right is not None:
                    last = algebra.multiply_paths(middle, right)
                for product, b in last.items():
                    accumulate(terms, (product, param), c * a * b)
        return FormalElement(self.field, terms)

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for path in self.paths():
            coefficient = self.coefficient_of(path)
            if len(coefficient) == 1 and coefficient.constant_term == self.field.one:
                pieces.append(path.text)
            else:
                pieces.append(f"({coefficient.text})*{path.text}")
        return " + ".join(pieces)


@dataclass
class LinearConstraintSet:
    """Equations expr = 0 solved for the latest parameters first."""

    field: Field
    params: List[DeformParam]
    equations: List[LinearExpr]
    eliminated: Dict[DeformParam, LinearExpr] = field(default_factory=dict)
    free: List[DeformParam] = field(default_factory=list)
    contradiction: Optional[LinearExpr] = None

    def __post_init__(self) -> None:
        self.params = sorted(set(self.params), key=lambda p: p.order)
        self.equations = [e for e in self.equations if e]
        self._solve()

    def _solve(self) -> None:
        position = {p: k for k, p in enumerate(self.params)}
        constant = len(self.params)
        vectors = []
        for equation in self.equations:
            vector = {}
            for key, c in equation.items():
                vector[constant if key is None else position[key]] = c
            vectors.append(vector)
        echelon, pivots = linalg.rref(vectors, self.field.domain, constant + 1, prefer_last=True, fixed_last=1)
        self.eliminated = {}
        for row, pivot in zip(echelon, pivots):
            expr = LinearExpr(
                self.field,
                {(None if k == constant else self.params[k]): -c for k, c in row.items() if k != pivot},
            )
            if pivot == constant:
                self.contradiction = LinearExpr.constant(self.field, self.field.one)
                continue
            self.eliminated[self.params[pivot]] = expr
        self.free = [p for p in self.params if p not in self.eliminated]

    @property
    def consistent(self) -> bool:
        return self.contradiction is None

    @property
    def rank(self) -> int:
        return len(self.eliminated)

    def substitute(self, expr: LinearExpr) -> LinearExpr:
        return expr.substitute(self.eliminated)

    def solved_equations(self) -> List[Tuple[DeformParam, LinearExpr]]:
        return sorted(self.eliminated.items(), key=lambda item: item[0].order)
