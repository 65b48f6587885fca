"""Closed forms for the family A_q = kQ/⟨a², b², ab − q·ba, ac⟩.

Q has vertices 1, 2, loops a, b at 1 and c: 1 -> 2.  In degree n the
generators are f^n_0 = a^n, f^n_s = f^{n-1}_{s-1}·b + (−q)^s f^{n-1}_s·a,
f^n_n = b^n and f^n_{n+1} = a^{n-1}·c.
"""
from typing import Any, Dict, List, Optional

from app.services.algebra.element import PathElement, multiply
from app.services.algebra.field import Field
from app.services.algebra.presented import PresentedAlgebra
from app.services.algebra.quiver import Path, Quiver
from app.services.reduction.basis import QuotientAlgebra
from app.services.reduction.system import default_reduction_system
from app.services.resolution.base import ResolutionBuilder
from app.services.resolution.complex import FAMILY, ComultTable, Generator, KComplex


def family_algebra(q: Any = None, field: Optional[Field] = None) -> PresentedAlgebra:
    field = field or Field.rationals()
    q = field.one if q is None else field(q)
    quiver = Quiver(["1", "2"], [("a", "1", "1"), ("b", "1", "1"), ("c", "1", "2")])
    a, b, c = (Path.of_arrow(x) for x in quiver.arrows)

    def word(*paths: Path) -> PathElement:
        path = paths[0]
        for other in paths[1:]:
            path = path.compose(other)
        return PathElement.from_path(field, path)

    relations = (
        word(a, a),
        word(b, b),
        word(a, b) - word(b, a).scale(q),
        word(a, c),
    )
    return PresentedAlgebra(quiver, field, relations)


def family_generators(algebra: PresentedAlgebra, q: Any, max_degree: int) -> Dict[int, List[Generator]]:
    field = algebra.field
    q = field(q)
    quiver = algebra.quiver
    v1, v2 = quiver.vertices
    a, b, c = (PathElement.from_path(field, Path.of_arrow(x)) for x in quiver.arrows)
    e1 = PathElement.from_path(field, Path.trivial(v1))

    result: Dict[int, List[Generator]] = {
        0: [
            Generator(0, 0, v1, v1, 0, e1),
            Generator(0, 1, v2, v2, 0, PathElement.from_path(field, Path.trivial(v2))),
        ]
    }
    previous: List[PathElement] = [e1]
    for n in range(1, max_degree + 1):
        loops: List[PathElement] = []
        for s in range(n + 1):
            if s == 0:
                loops.append(multiply(previous[0], a))
            elif s == n:
                loops.append(multiply(previous[n - 1], b))
            else:
                twisted = multiply(previous[s], a).scale(field.power(-q, s))
                loops.append(multiply(previous[s - 1], b) + twisted)
        tail = multiply(previous[0], c)
        result[n] = [Generator(n, s, v1, v1, n, loop) for s, loop in enumerate(loops)]
        result[n].append(Generator(n, n + 1, v1, v2, n, tail))
        previous = loops
    return result


def family_comult(field: Field, q: Any, max_degree: int) -> ComultTable:
    """Closed-form diagonal scalars; the a/b part carries (−q)^{j(n−s+j−w)}."""
    q = field(q)
    table = ComultTable()
    table.set(0, 0, 0, {(0, 0): field.one})
    table.set(0, 1, 0, {(1, 1): field.one})
    for n in range(1, max_degree + 1):
        for s in range(n + 1):
            for w in range(n + 1):
                row = {}
                for j in range(max(0, s - (n - w)), min(w, s) + 1):
                    row[(j, s - j)] = field.power(-q, j * (n - s + j - w))
                table.set(n, s, w, row)
        table.set(n, n + 1, 0, {(0, n + 1): field.one})
        for t in range(1, n):
            table.set(n, n + 1, t, {(0, n - t + 1): field.one})
        table.set(n, n + 1, n, {(n + 1, 1): field.one})
    return table


class FamilyBuilder(ResolutionBuilder):
    kind = FAMILY

    def __init__(self, algebra: PresentedAlgebra, quotient: QuotientAlgebra, max_degree: int, q: Any):
        super().__init__(algebra, quotient, max_degree)
        self.q = q

    def generators(self) -> Dict[int, List[Generator]]:
        return family_generators(self.algebra, self.q, self.max_degree)

    def comult(self, generators: Dict[int, List[Generator]]) -> ComultTable:
        return family_comult(self.field, self.q, self.max_degree)


def family_complex(q: Any = None, max_degree: int = 5, field: Optional[Field] = None) -> KComplex:
    algebra = family_algebra(q, field)
    q = algebra.field.one if q is None else algebra.field(q)
    quotient = QuotientAlgebra(default_reduction_system(algebra))
    return FamilyBuilder(algebra, quotient, max_degree, q).build()
