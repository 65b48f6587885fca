from abc import ABC, abstractmethod
from typing import Dict, List

from app.core.exceptions import DegreeOutOfRangeError, VerificationError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.element import multiply
from app.services.algebra.presented import PresentedAlgebra
from app.services.reduction.basis import QuotientAlgebra
from app.services.resolution.complex import ComultTable, Generator, KComplex, assemble_from_comult
from app.utils import linalg

logger = get_logger(__name__)


class ResolutionBuilder(ABC):
    """Builds K from tensor-form generators and their comultiplicative scalars."""

    kind: str = ""

    def __init__(self, algebra: PresentedAlgebra, quotient: QuotientAlgebra, max_degree: int):
        if max_degree < 2:
            raise DegreeOutOfRangeError(f"max degree must be at least 2, got {max_degree}")
        self.algebra = algebra
        self.quotient = quotient
        self.field = algebra.field
        self.max_degree = max_degree

    @abstractmethod
    def generators(self) -> Dict[int, List[Generator]]:
        """Generators f̃^n_i for 0 <= n <= max_degree"""
        pass

    @abstractmethod
    def comult(self, generators: Dict[int, List[Generator]]) -> ComultTable:
        """Scalars c_pq(n, i, r) for every constructed generator"""
        pass

    def build(self) -> KComplex:
        generators = self.generators()
        table = self.comult(generators)
        complex_ = assemble_from_comult(self.quotient, generators, table, self.max_degree, self.kind)
        logger.info(
            "resolution_built",
            kind=self.kind,
            max_degree=self.max_degree,
            counts=[len(generators[n]) for n in range(self.max_degree + 1)],
        )
        return complex_


def solve_comult(field, generators: Dict[int, List[Generator]], max_degree: int) -> ComultTable:
    """Express each f̃^n_i inside f̃^r ⊗ f̃^{n-r} for every split point r.

    Tensors of arrows are stored as paths of kQ, where concatenation of a
    length-r and a length-(n-r) path is injective, so the solution is unique.
    """
    table = ComultTable()
    for n in range(max_degree + 1):
        for g in generators[n]:
            for r in range(n + 1):
                unknowns = [
                    (p, q)
                    for p in generators[r]
                    if p.origin == g.origin
                    for q in generators[n - r]
                    if q.origin == p.terminal and q.terminal == g.terminal
                ]
                columns = []
                for p, q in unknowns:
                    column: Dict = {}
                    for path, c in multiply(p.tensor, q.tensor).items():
                        accumulate(column, path, c)
                    columns.append(column)
                target = dict(g.tensor.items())
                solution = linalg.solve(columns, target, field.domain)
                if solution is None:
                    raise VerificationError(
                        f"f^{n}_{g.index} does not lie in the span of f^{r} (x) f^{n - r}"
                    )
                table.set(
                    n,
                    g.index,
                    r,
                    {(p.index, q.index): x for (p, q), x in zip(unknowns, solution) if x},
                )
    return table
