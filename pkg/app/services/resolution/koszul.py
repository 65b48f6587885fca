from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import NonQuadraticError, SolverLimitError, ValidationError
from app.core.logging import get_logger
from app.services.algebra.element import PathElement
from app.services.algebra.presented import PresentedAlgebra
from app.services.algebra.quiver import Path
from app.services.reduction.basis import QuotientAlgebra
from app.services.resolution.base import ResolutionBuilder, solve_comult
from app.services.resolution.complex import KOSZUL, ComultTable, Generator, KComplex
from app.utils import linalg

logger = get_logger(__name__)


class KoszulBuilder(ResolutionBuilder):
    """K_n = ⋂_j V^j ⊗ R ⊗ V^{n-2-j}, with a row-echelon basis per (origin, terminal)."""

    kind = KOSZUL

    def __init__(
        self,
        algebra: PresentedAlgebra,
        quotient: QuotientAlgebra,
        max_degree: int,
        overrides: Optional[Mapping[int, Sequence[PathElement]]] = None,
    ):
        if not algebra.quadratic:
            raise NonQuadraticError("the Koszul construction needs homogeneous quadratic relations")
        super().__init__(algebra, quotient, max_degree)
        self.overrides = dict(overrides or {})
        self._functionals = self._relation_annihilator()

    def _relation_annihilator(self) -> List[Dict[Path, Any]]:
        """Functionals on V⊗V vanishing on the relation space R."""
        columns = list(self.algebra.quiver.paths(2))
        position = {p: i for i, p in enumerate(columns)}
        rows = [{position[p]: c for p, c in r.items()} for r in self.algebra.relations]
        kernel = linalg.nullspace(rows, len(columns), self.field.domain)
        return [{columns[i]: c for i, c in vector.items()} for vector in kernel]

    def _intersection(self, n: int) -> List[PathElement]:
        quiver = self.algebra.quiver
        basis: List[PathElement] = []
        for origin in quiver.vertices:
            for terminal in quiver.vertices:
                columns = quiver.paths_between(origin, terminal, n)
                if not columns:
                    continue
                if len(columns) > settings.intersection_size_cap:
                    raise SolverLimitError(
                        f"degree {n} intersection has {len(columns)} columns, above the configured cap"
                    )
                rows: Dict[Tuple, Dict[int, Any]] = {}
                for c, path in enumerate(columns):
                    for j in range(n - 1):
                        middle = path.sub(j, j + 2)
                        for k, functional in enumerate(self._functionals):
                            value = functional.get(middle)
                            if value:
                                key = (j, k, path.sub(0, j), path.sub(j + 2, n))
                                rows.setdefault(key, {})[c] = value
                kernel = linalg.nullspace(list(rows.values()), len(columns), self.field.domain)
                echelon, _ = linalg.rref(kernel, self.field.domain, len(columns))
                for vector in echelon:
                    basis.append(PathElement(self.field, {columns[c]: x for c, x in vector.items()}))
        return basis

    def _check_override(self, n: int, supplied: Sequence[PathElement], computed: List[PathElement]) -> None:
        index: Dict[Path, int] = {}

        def vector(x: PathElement) -> Dict[int, Any]:
            return {index.setdefault(p, len(index)): c for p, c in x.items()}

        computed_vectors = [vector(x) for x in computed]
        supplied_vectors = [vector(x) for x in supplied]
        domain = self.field.domain
        for x in supplied:
            if not x.is_uniform() or not x.is_homogeneous(n):
                raise ValidationError(f"override generator {x.text} is not uniform of length {n}")
        if (
            linalg.rank(supplied_vectors, domain) != len(supplied)
            or len(supplied) != len(computed)
            or linalg.rank(computed_vectors + supplied_vectors, domain) != len(computed)
        ):
            raise ValidationError(f"override generators in degree {n} do not form a basis of K_{n}")

    def generators(self) -> Dict[int, List[Generator]]:
        quiver = self.algebra.quiver
        field = self.field
        result: Dict[int, List[Generator]] = {
            0: [Generator(0, v.index, v, v, 0, PathElement.from_path(field, Path.trivial(v))) for v in quiver.vertices],
            1: [
                Generator(1, a.index, a.origin, a.terminal, 1, PathElement.from_path(field, Path.of_arrow(a)))
                for a in quiver.arrows
            ],
        }
        for n in range(2, self.max_degree + 1):
            computed = self._intersection(n)
            elements = computed
            if n in self.overrides:
                self._check_override(n, self.overrides[n], computed)
                elements = list(self.overrides[n])
            generators = []
            for i, tensor in enumerate(elements):
                path = tensor.paths()[0]
                generators.append(Generator(n, i, path.origin, path.terminal, n, tensor))
            result[n] = generators
            logger.debug("koszul_degree", degree=n, generators=len(generators))
        return result

    def comult(self, generators: Dict[int, List[Generator]]) -> ComultTable:
        return solve_comult(self.field, generators, self.max_degree)


def build_koszul(
    algebra: PresentedAlgebra,
    quotient: QuotientAlgebra,
    max_degree: Optional[int] = None,
    generators: Optional[Mapping[int, Sequence[PathElement]]] = None,
) -> KComplex:
    return KoszulBuilder(algebra, quotient, max_degree or settings.max_degree, generators).build()
