from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.exceptions import DegreeOutOfRangeError
from app.services.algebra.combination import accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.quiver import Path, Vertex
from app.services.reduction.basis import QuotientAlgebra
from app.services.resolution.sections import Section, TensorKey, TensorSection

KOSZUL = "koszul"
FAMILY = "family"
MANUAL = "manual"


@dataclass(frozen=True)
class Generator:
    """Free generator ε^n_i of K_n, with its tensor form f̃^n_i when known."""

    degree: int
    index: int
    origin: Vertex
    terminal: Vertex
    weight: int
    tensor: Optional[PathElement] = None

    @property
    def left_unit(self) -> Path:
        return Path.trivial(self.origin)

    @property
    def right_unit(self) -> Path:
        return Path.trivial(self.terminal)


class ComultTable:
    """Sparse scalars c_pq(n, i, r) with f̃^n_i = Σ c_pq(n,i,r) f̃^r_p ⊗ f̃^{n-r}_q."""

    def __init__(self, entries: Optional[Mapping[Tuple[int, int, int], Mapping[Tuple[int, int], Any]]] = None):
        self._entries: Dict[Tuple[int, int, int], Dict[Tuple[int, int], Any]] = {
            key: {pq: c for pq, c in row.items() if c} for key, row in (entries or {}).items()
        }

    def set(self, n: int, i: int, r: int, row: Mapping[Tuple[int, int], Any]) -> None:
        self._entries[(n, i, r)] = {pq: c for pq, c in row.items() if c}

    def row(self, n: int, i: int, r: int) -> Dict[Tuple[int, int], Any]:
        return dict(self._entries.get((n, i, r), {}))

    def scalar(self, n: int, i: int, r: int, p: int, q: int, zero: Any = 0) -> Any:
        return self._entries.get((n, i, r), {}).get((p, q), zero)

    def keys(self) -> List[Tuple[int, int, int]]:
        return sorted(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ComultTable):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(tuple(self.keys()))


@dataclass(frozen=True)
class DiagonalTerm:
    """scalar · left·ε^v_p·middle ⊗ ε^{n-v}_q·right inside Δ(ε^n_i)."""

    v: int
    p: int
    q: int
    scalar: Any
    left: Path
    middle: Path
    right: Path

    @property
    def key(self) -> TensorKey:
        return (self.left, self.v, self.p, self.middle, self.q, self.right)

    @property
    def is_plain(self) -> bool:
        return self.left.is_trivial and self.middle.is_trivial and self.right.is_trivial


class KComplex:
    """A projective bimodule resolution with differential and diagonal tables.

    ``differential[(n, i)]`` is d(ε^n_i) as a Section of degree n-1 and
    ``diagonal[(n, i)]`` is Δ(ε^n_i) as a TensorSection of degree n.
    """

    def __init__(
        self,
        algebra: QuotientAlgebra,
        generators: Mapping[int, Sequence[Generator]],
        differential: Mapping[Tuple[int, int], Section],
        diagonal: Mapping[Tuple[int, int], TensorSection],
        max_degree: int,
        kind: str,
        comult: Optional[ComultTable] = None,
    ):
        self.algebra = algebra
        self.field = algebra.field
        self.generators: Dict[int, Tuple[Generator, ...]] = {n: tuple(g) for n, g in generators.items()}
        self.differential: Dict[Tuple[int, int], Section] = dict(differential)
        self.diagonal: Dict[Tuple[int, int], TensorSection] = dict(diagonal)
        self.max_degree = max_degree
        self.kind = kind
        self.comult = comult

    @property
    def has_tensor_forms(self) -> bool:
        return self.kind != MANUAL

    def check_degree(self, n: int) -> None:
        if n < 0 or n > self.max_degree:
            raise DegreeOutOfRangeError(f"degree {n} outside the constructed range 0..{self.max_degree}")

    def count(self, n: int) -> int:
        self.check_degree(n)
        return len(self.generators[n])

    def generator(self, n: int, i: int) -> Generator:
        self.check_degree(n)
        return self.generators[n][i]

    def basis_section(self, n: int, i: int) -> Section:
        g = self.generator(n, i)
        return Section.basis_element(self.field, n, i, g.left_unit, g.right_unit)

    def zero_section(self, n: int) -> Section:
        return Section(self.field, n)

    def d(self, section: Section) -> Section:
        return differential_apply(self, section.degree, section)

    def delta(self, n: int, i: int) -> TensorSection:
        self.check_degree(n)
        return self.diagonal[(n, i)]

    def delta_section(self, section: Section) -> TensorSection:
        self.check_degree(section.degree)
        result = TensorSection(self.field, section.degree)
        for (left, index, right), c in section.items():
            result = result + self.diagonal[(section.degree, index)].sandwich(self.algebra, left, right).scale(c)
        return result

    def augmentation(self, section: Section) -> PathElement:
        """μ: K_0 -> Λ, left·ε^0_v·right -> left·right."""
        terms: Dict[Path, Any] = {}
        for (left, _, right), c in section.items():
            for path, a in self.algebra.multiply_paths(left, right).items():
                accumulate(terms, path, c * a)
        return PathElement(self.field, terms)


def differential_apply(K: KComplex, n: int, section: Section) -> Section:
    """Bilinear extension of d_n with Λ-coefficients reduced to normal form."""
    K.check_degree(n)
    if n == 0:
        raise DegreeOutOfRangeError("K_0 has no differential inside the complex")
    result = Section(K.field, n - 1)
    for (left, index, right), c in section.items():
        image = K.differential[(n, index)]
        result = result + image.sandwich(K.algebra, left, right).scale(c)
    return result


def diagonal_apply(K: KComplex, n: int, i: int) -> List[Tuple[int, int, int, Any]]:
    """(v, p, q, scalar) entries of Δ(ε^n_i); coefficient paths are dropped."""
    return [(v, p, q, c) for (left, v, p, middle, q, right), c in K.delta(n, i).items()]


def diagonal_terms(K: KComplex, n: int, i: int) -> List[DiagonalTerm]:
    return [
        DiagonalTerm(v, p, q, c, left, middle, right)
        for (left, v, p, middle, q, right), c in K.delta(n, i).items()
    ]


def assemble_from_comult(
    algebra: QuotientAlgebra,
    generators: Mapping[int, Sequence[Generator]],
    comult: ComultTable,
    max_degree: int,
    kind: str,
) -> KComplex:
    """Differential and diagonal determined by the comultiplicative scalars.

    d(ε^n_i) = Σ c_pj(n,i,1) f^1_p ε^{n-1}_j + (-1)^n Σ c_jq(n,i,n-1) ε^{n-1}_j f^1_q
    Δ(ε^n_i) = Σ_v Σ_pq c_pq(n,i,v) ε^v_p ⊗ ε^{n-v}_q
    """
    field = algebra.field
    differential: Dict[Tuple[int, int], Section] = {}
    diagonal: Dict[Tuple[int, int], TensorSection] = {}
    arrows = generators[1] if 1 in generators else ()
    for n in range(0, max_degree + 1):
        for g in generators[n]:
            tensor_terms: Dict[TensorKey, Any] = {}
            for v in range(0, n + 1):
                for (p, q), c in comult.row(n, g.index, v).items():
                    first = generators[v][p]
                    key = (g.left_unit, v, p, first.right_unit, q, g.right_unit)
                    accumulate(tensor_terms, key, c)
            diagonal[(n, g.index)] = TensorSection(field, n, tensor_terms)
            if n == 0:
                continue
            terms: Dict[Tuple[Path, int, Path], Any] = {}
            for (p, j), c in comult.row(n, g.index, 1).items():
                arrow_path = _arrow_path(arrows[p])
                accumulate(terms, (arrow_path, j, generators[n - 1][j].right_unit), c)
            sign = field.sign(n)
            for (j, q), c in comult.row(n, g.index, n - 1).items():
                arrow_path = _arrow_path(arrows[q])
                accumulate(terms, (generators[n - 1][j].left_unit, j, arrow_path), sign * c)
            differential[(n, g.index)] = Section(field, n - 1, terms)
    return KComplex(algebra, generators, differential, diagonal, max_degree, kind, comult)


def _arrow_path(generator: Generator) -> Path:
    (path, _), = generator.tensor.items()
    return path
