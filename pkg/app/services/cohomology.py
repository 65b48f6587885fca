"""Hochschild cochains on K through Hom_{Λ^e}(K_n, Λ) ≅ ⊕_i o(f^n_i)·Λ·t(f^n_i).

A cochain of degree n stores one Λ-value per generator ε^n_i.  When Λ is
infinite-dimensional the cochain spaces are split by internal shift
(length of the value minus the weight of the generator); every piece is finite
for the graded resolutions handled here.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import PreconditionError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.quiver import Path
from app.services.resolution.complex import KComplex
from app.services.resolution.sections import Section
from app.utils import linalg

logger = get_logger(__name__)


class Cochain:
    def __init__(self, K: KComplex, degree: int, values: Sequence[PathElement]):
        K.check_degree(degree)
        generators = K.generators[degree]
        if len(values) != len(generators):
            raise PreconditionError(
                f"a degree-{degree} cochain needs {len(generators)} values, got {len(values)}"
            )
        reduced = []
        for g, value in zip(generators, values):
            for path in value.paths():
                if path.origin != g.origin or path.terminal != g.terminal:
                    raise PreconditionError(
                        f"value {value.text} of eps{degree}_{g.index} must run from "
                        f"{g.origin.idempotent_name} to {g.terminal.idempotent_name}"
                    )
            reduced.append(K.algebra.reduce(value))
        self.complex = K
        self.field = K.field
        self.degree = degree
        self.values: Tuple[PathElement, ...] = tuple(reduced)

    @classmethod
    def zero(cls, K: KComplex, degree: int) -> "Cochain":
        return cls(K, degree, [PathElement(K.field)] * K.count(degree))

    @classmethod
    def from_terms(cls, K: KComplex, degree: int, terms: Dict[Tuple[int, Path], Any]) -> "Cochain":
        values: List[Dict[Path, Any]] = [{} for _ in range(K.count(degree))]
        for (i, path), c in terms.items():
            accumulate(values[i], path, c)
        return cls(K, degree, [PathElement(K.field, v) for v in values])

    def value(self, index: int) -> PathElement:
        return self.values[index]

    def terms(self) -> Dict[Tuple[int, Path], Any]:
        return {(i, path): c for i, value in enumerate(self.values) for path, c in value.items()}

    def evaluate(self, section: Section) -> PathElement:
        """Σ c·left·value(j)·right reduced in Λ, for a section of the cochain's degree."""
        if section.degree != self.degree:
            raise PreconditionError(f"cannot apply a degree-{self.degree} cochain in degree {section.degree}")
        algebra = self.complex.algebra
        terms: Dict[Path, Any] = {}
        for (left, index, right), c in section.items():
            for path, a in self.values[index].items():
                for left_path, b in algebra.multiply_paths(left, path).items():
                    for product, d in algebra.multiply_paths(left_path, right).items():
                        accumulate(terms, product, c * a * b * d)
        return PathElement(self.field, terms)

    def shift_of(self, index: int, path: Path) -> int:
        return path.length - self.complex.generators[self.degree][index].weight

    def shifts(self) -> List[int]:
        return sorted({self.shift_of(i, path) for (i, path) in self.terms()})

    def shift_part(self, shift: int) -> "Cochain":
        kept = {(i, p): c for (i, p), c in self.terms().items() if self.shift_of(i, p) == shift}
        return Cochain.from_terms(self.complex, self.degree, kept)

    @property
    def internal_length(self) -> Optional[int]:
        """The common path length of all values, or None when mixed or zero."""
        lengths = {p.length for (_, p) in self.terms()}
        return lengths.pop() if len(lengths) == 1 else None

    def is_zero(self) -> bool:
        return not any(self.values)

    def _check(self, other: "Cochain") -> None:
        if other.degree != self.degree or other.complex is not self.complex:
            raise PreconditionError("cochains live on different complexes or degrees")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.complex, self.degree, [x + y for x, y in zip(self.values, other.values)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-self.field.one)

    def __neg__(self) -> "Cochain":
        return self.scale(-self.field.one)

    def scale(self, factor: Any) -> "Cochain":
        return Cochain(self.complex, self.degree, [x.scale(factor) for x in self.values])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.degree, self.values))

    @property
    def row(self) -> List[str]:
        return [v.text for v in self.values]

    @property
    def text(self) -> str:
        return "(" + ", ".join(self.row) + ")"

    def __repr__(self) -> str:
        return f"Cochain({self.degree}, {self.text})"


class CochainSpace:
    """Ordered basis (i, irreducible path parallel to f^n_i) of C^n, optionally one shift piece."""

    def __init__(self, K: KComplex, degree: int, shift: Optional[int] = None):
        K.check_degree(degree)
        algebra = K.algebra
        if shift is None and not algebra.is_finite:
            raise PreconditionError(
                "Λ is infinite-dimensional; cochain spaces need an internal grading shift"
            )
        self.complex = K
        self.degree = degree
        self.shift = shift
        basis: List[Tuple[int, Path]] = []
        for g in K.generators[degree]:
            if shift is None:
                paths = algebra.parallel_paths(g.origin, g.terminal)
            elif g.weight + shift < 0:
                paths = []
            else:
                paths = algebra.paths(g.origin, g.terminal, g.weight + shift)
            basis.extend((g.index, p) for p in paths)
        self.basis: Tuple[Tuple[int, Path], ...] = tuple(basis)
        self._position = {key: k for k, key in enumerate(self.basis)}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def vector(self, cochain: Cochain) -> Dict[int, Any]:
        result = {}
        for key, c in cochain.terms().items():
            if key not in self._position:
                raise PreconditionError(
                    f"term {key[1].text} of eps{self.degree}_{key[0]} lies outside the cochain space"
                )
            result[self._position[key]] = c
        return result

    def cochain(self, vector: Dict[int, Any]) -> Cochain:
        return Cochain.from_terms(self.complex, self.degree, {self.basis[k]: c for k, c in vector.items()})

    def basis_cochain(self, k: int) -> Cochain:
        return self.cochain({k: self.complex.field.one})


def cochain_space(K: KComplex, n: int, shift: Optional[int] = None) -> CochainSpace:
    return CochainSpace(K, n, shift)


def coboundary(cochain: Cochain) -> Cochain:
    """d*φ = φ∘d in degree n+1."""
    K = cochain.complex
    n = cochain.degree + 1
    K.check_degree(n)
    values = [cochain.evaluate(K.d(K.basis_section(n, g.index))) for g in K.generators[n]]
    return Cochain(K, n, values)


def is_cocycle(cochain: Cochain) -> bool:
    return coboundary(cochain).is_zero()


@dataclass
class InducedMatrix:
    """d*_{n+1}: C^n -> C^{n+1} as exact sparse columns in the target's coordinates."""

    source: CochainSpace
    target: CochainSpace
    columns: List[Dict[int, Any]]

    def rows(self) -> List[Dict[int, Any]]:
        transposed: Dict[int, Dict[int, Any]] = {}
        for k, column in enumerate(self.columns):
            for r, entry in column.items():
                transposed.setdefault(r, {})[k] = entry
        return [transposed[r] for r in sorted(transposed)]

    def dense(self) -> List[List[Any]]:
        zero = self.source.complex.field.zero
        return [
            [self.columns[k].get(r, zero) for k in range(len(self.columns))]
            for r in range(self.target.dimension)
        ]


def induced_matrix(K: KComplex, n: int, shift: Optional[int] = None) -> InducedMatrix:
    K.check_degree(n + 1)
    source = CochainSpace(K, n, shift)
    target = CochainSpace(K, n + 1, shift)
    columns = [target.vector(coboundary(source.basis_cochain(k))) for k in range(source.dimension)]
    logger.debug("induced_matrix", degree=n, shift=shift, rows=target.dimension, columns=source.dimension)
    return InducedMatrix(source, target, columns)


@dataclass
class CohomologyBasis:
    degree: int
    shift: Optional[int]
    cochain_dimension: int
    kernel_dimension: int
    image_dimension: int
    representatives: List[Cochain] = field(default_factory=list)
    image_echelon: List[Dict[int, Any]] = field(default_factory=list, repr=False)
    image_pivots: List[int] = field(default_factory=list, repr=False)

    @property
    def dimension(self) -> int:
        return self.kernel_dimension - self.image_dimension


def _image_echelon(K: KComplex, n: int, space: CochainSpace, shift: Optional[int]):
    """Echelon basis of Im d*_n inside C^n, pivots pushed to the latest coordinates."""
    if n == 0:
        return [], []
    incoming = induced_matrix(K, n - 1, shift)
    return linalg.rref(incoming.columns, K.field.domain, space.dimension, prefer_last=True)


def cohomology_basis(K: KComplex, n: int, shift: Optional[int] = None) -> CohomologyBasis:
    """Ker d*_{n+1} / Im d*_n with representatives supported on the earliest coordinates."""
    domain = K.field.domain
    outgoing = induced_matrix(K, n, shift)
    space = outgoing.source
    kernel = linalg.nullspace(outgoing.rows(), space.dimension, domain)
    image, pivots = _image_echelon(K, n, space, shift)
    remainders = [linalg.reduce_vector(v, image, pivots) for v in kernel]
    complement, _ = linalg.rref(remainders, domain, space.dimension, prefer_last=True)
    result = CohomologyBasis(
        degree=n,
        shift=shift,
        cochain_dimension=space.dimension,
        kernel_dimension=len(kernel),
        image_dimension=len(image),
        representatives=[space.cochain(v) for v in complement],
        image_echelon=image,
        image_pivots=pivots,
    )
    logger.info(
        "cohomology_computed",
        degree=n,
        shift=shift,
        cochains=space.dimension,
        kernel=result.kernel_dimension,
        image=result.image_dimension,
        dimension=result.dimension,
    )
    return result


def cobound_reduce(cochain: Cochain) -> Cochain:
    """Canonical representative of cochain modulo Im d*, one shift piece at a time."""
    K = cochain.complex
    n = cochain.degree
    shifts: List[Optional[int]] = [None] if K.algebra.is_finite else list(cochain.shifts())
    result = Cochain.zero(K, n)
    for shift in shifts:
        piece = cochain if shift is None else cochain.shift_part(shift)
        space = CochainSpace(K, n, shift)
        image, pivots = _image_echelon(K, n, space, shift)
        result = result + space.cochain(linalg.reduce_vector(space.vector(piece), image, pivots))
    return result


def is_coboundary(cochain: Cochain) -> bool:
    return cobound_reduce(cochain).is_zero()
