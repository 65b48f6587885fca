"""Exact sparse linear algebra on dict vectors, backed by sympy's SDM.

A vector is a ``Dict[int, element]`` holding only nonzero entries of a sympy
field domain.  ``prefer_last`` reverses the column order before elimination so
that pivots land on the latest columns; callers use it when they want the
earliest coordinates to survive as free parameters.
"""
from itertools import combinations
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.matrices.sdm import SDM

from app.core.logging import get_logger

logger = get_logger(__name__)

Vector = Dict[int, Any]


def _width(vectors: Sequence[Mapping[int, Any]], ncols: Optional[int]) -> int:
    if ncols is not None:
        return ncols
    return max((max(v) for v in vectors if v), default=-1) + 1


def rref(
    vectors: Sequence[Mapping[int, Any]],
    domain: Any,
    ncols: Optional[int] = None,
    prefer_last: bool = False,
    fixed_last: int = 0,
) -> Tuple[List[Vector], List[int]]:
    """Reduced row echelon form of the row space spanned by ``vectors``.

    Returns the nonzero rows and their pivot columns, in pivot order (latest
    pivot first when ``prefer_last``).  The final ``fixed_last`` columns keep
    their position under ``prefer_last`` so augmented columns stay last.
    """
    n = _width(vectors, ncols)
    if prefer_last:
        movable = n - fixed_last

        def perm(c: int) -> int:
            return movable - 1 - c if c < movable else c

    else:

        def perm(c: int) -> int:
            return c

    rows = {}
    for vector in vectors:
        entries = {perm(c): x for c, x in vector.items() if x}
        if entries:
            rows[len(rows)] = entries
    if not rows:
        return [], []

    # fraction-free elimination; every pivot equals den
    reduced, den, pivots = SDM(rows, (len(rows), n), domain).rref_den()
    ordered = sorted(reduced.values(), key=min)
    result = [{perm(c): domain.quo(x, den) for c, x in row.items()} for row in ordered]
    return result, [perm(p) for p in sorted(pivots)]


def rank(vectors: Sequence[Mapping[int, Any]], domain: Any, ncols: Optional[int] = None) -> int:
    return len(rref(vectors, domain, ncols)[0])


def nullspace(
    rows: Sequence[Mapping[int, Any]],
    ncols: int,
    domain: Any,
    prefer_last: bool = False,
) -> List[Vector]:
    """Basis of {x : row·x = 0 for every row}, one vector per free column."""
    reduced, pivots = rref(rows, domain, ncols, prefer_last)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vector = {free: domain.one}
        for row, pivot in zip(reduced, pivots):
            entry = row.get(free)
            if entry:
                vector[pivot] = -entry
        basis.append(vector)
    return basis


def reduce_vector(vector: Mapping[int, Any], echelon: Sequence[Vector], pivots: Sequence[int]) -> Vector:
    """Remainder of ``vector`` modulo the span of a reduced echelon basis."""
    result = dict(vector)
    for row, pivot in zip(echelon, pivots):
        factor = result.get(pivot)
        if not factor:
            continue
        for col, entry in row.items():
            value = result.get(col, 0) - factor * entry
            if value:
                result[col] = value
            else:
                result.pop(col, None)
    return result


class KeyIndex:
    """Assigns consecutive integer positions to hashable keys."""

    def __init__(self) -> None:
        self.positions: Dict[Hashable, int] = {}

    def __call__(self, key: Hashable) -> int:
        position = self.positions.get(key)
        if position is None:
            position = self.positions[key] = len(self.positions)
        return position

    def __len__(self) -> int:
        return len(self.positions)


def solve(
    columns: Sequence[Mapping[Hashable, Any]],
    target: Mapping[Hashable, Any],
    domain: Any,
    prefer_last: bool = False,
) -> Optional[List[Any]]:
    """Solve Σ x_k·columns[k] = target; ``None`` when inconsistent.

    Among all solutions the basic one is returned: every non-pivot unknown is
    set to zero.
    """
    index = KeyIndex()
    rows: Dict[int, Vector] = {}
    for k, column in enumerate(columns):
        for key, entry in column.items():
            if entry:
                rows.setdefault(index(key), {})[k] = entry
    augmented = len(columns)
    for key, entry in target.items():
        if entry:
            rows.setdefault(index(key), {})[augmented] = entry

    reduced, pivots = rref(list(rows.values()), domain, augmented + 1, prefer_last, fixed_last=1)
    solution = [domain.zero] * len(columns)
    for row, pivot in zip(reduced, pivots):
        if pivot == augmented:
            return None
        solution[pivot] = row.get(augmented, domain.zero)
    return solution


def sparsest_solution(
    columns: Sequence[Mapping[Hashable, Any]],
    target: Mapping[Hashable, Any],
    domain: Any,
    search_cap: Optional[int] = None,
) -> Optional[List[Any]]:
    """Solution of Σ x_k·columns[k] = target with the fewest nonzero unknowns.

    Supports are tried by size, then lexicographically on column positions, so
    earlier columns win ties.  The first consistent support has independent
    columns and hence a unique solution on it.  Once ``search_cap`` candidate
    supports have been tried the basic solution from :func:`solve` is kept.
    """
    basic = solve(columns, target, domain)
    if basic is None:
        return None
    support = tuple(k for k, x in enumerate(basic) if x)
    tried = 0
    for size in range(len(support) + 1):
        for candidate in combinations(range(len(columns)), size):
            if candidate == support:
                return basic
            if search_cap is not None and tried >= search_cap:
                logger.warning("support_search_capped", candidates=tried, basic_support=len(support))
                return basic
            tried += 1
            restricted = solve([columns[k] for k in candidate], target, domain)
            if restricted is None:
                continue
            solution = [domain.zero] * len(columns)
            for k, x in zip(candidate, restricted):
                solution[k] = x
            return solution
    return basic
