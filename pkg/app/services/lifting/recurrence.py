"""Single-scalar recurrences for homotopy liftings of arrow-valued cocycles.

When η sends one generator ε^n_i to κ·w for an arrow w and vanishes elsewhere,
ψ_η(ε^m_r) = b·ε^{m-n+1}_{r'} with trivial coefficients.  Comparing the
coefficients of f_p·ε^{m-n}_{r''} and ε^{m-n}_{r''}·f_q on both sides of the
lifting relation gives, with D^L and D^R the arrow-left and arrow-right parts
of the differential table:

  b·D^L_{p,r''}(m-n+1, r') = (−1)^{1-n} Σ b_prev(r̄)·D^L_{p,r̄}(m, r) + [p = w]·κ·c_{i,r''}(m, r, n)
  b·D^R_{r'',q}(m-n+1, r') = (−1)^{1-n} Σ b_prev(r̄)·D^R_{r̄,q}(m, r) − [q = w]·κ·(−1)^{n(m-n)}·c_{r'',i}(m, r, m-n)
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from app.core.exceptions import RecurrenceInapplicableError, RecurrenceInconsistencyError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.quiver import Path
from app.services.cohomology import Cochain
from app.services.lifting.homotopy import HomotopyLifting
from app.services.resolution.complex import KComplex

logger = get_logger(__name__)

LEFT = "left"
RIGHT = "right"

# source index -> (target index, scalar)
ScalarTable = Dict[int, Tuple[int, Any]]


@dataclass(frozen=True)
class RecurrenceEquation:
    side: str
    arrow: str
    index: int
    coefficient: Any
    previous: Any
    comult: Any
    rhs: Any


@dataclass
class RecurrenceWitness:
    degree: int
    generator: int
    target: Optional[int]
    value: Any
    equations: List[RecurrenceEquation] = field(default_factory=list)

    def holds(self) -> bool:
        return all(e.coefficient * self.value == e.rhs for e in self.equations)


@dataclass
class RecurrenceRun:
    cochain: Cochain
    tables: Dict[int, ScalarTable] = field(default_factory=dict)
    witnesses: List[RecurrenceWitness] = field(default_factory=list)
    sources: Dict[int, str] = field(default_factory=dict)
    stopped_at: Optional[int] = None
    reason: Optional[str] = None


def _arrow_value(cochain: Cochain) -> Tuple[int, Path, Any]:
    support = [(i, v) for i, v in enumerate(cochain.values) if v]
    if len(support) != 1 or len(support[0][1]) != 1:
        raise RecurrenceInapplicableError("the recurrence needs a cocycle with a single arrow-valued entry")
    index, value = support[0]
    (path, scalar), = value.items()
    if path.length != 1:
        raise RecurrenceInapplicableError("the recurrence needs a cocycle with a single arrow-valued entry")
    return index, path, scalar


def _split_differential(K: KComplex, m: int, r: int) -> Tuple[Dict, Dict]:
    """Arrow-left and arrow-right parts of d(ε^m_r); any other term makes the ansatz void."""
    left_part: Dict[Tuple[Path, int], Any] = {}
    right_part: Dict[Tuple[int, Path], Any] = {}
    for (left, j, right), c in K.differential[(m, r)].items():
        if left.length == 1 and right.is_trivial:
            left_part[(left, j)] = c
        elif left.is_trivial and right.length == 1:
            right_part[(j, right)] = c
        else:
            raise RecurrenceInapplicableError(
                f"d(eps{m}_{r}) has the term {left.text}*eps{m - 1}_{j}*{right.text} outside the single-scalar shape"
            )
    return left_part, right_part


def _plain_scalars(K: KComplex, m: int, r: int, v: int) -> Dict[Tuple[int, int], Any]:
    scalars: Dict[Tuple[int, int], Any] = {}
    for (left, split, p, middle, q, right), c in K.delta(m, r).items():
        if split != v:
            continue
        if not (left.is_trivial and middle.is_trivial and right.is_trivial):
            raise RecurrenceInapplicableError(
                f"the diagonal of eps{m}_{r} has non-scalar terms in split {v}"
            )
        scalars[(p, q)] = c
    return scalars


def recurrence_step(
    K: KComplex, cochain: Cochain, m: int, b_prev: ScalarTable
) -> Tuple[ScalarTable, List[RecurrenceWitness]]:
    """b-scalars in degree m from those in degree m − 1, one witness per generator."""
    n = cochain.degree
    field_ = K.field
    i, w, kappa = _arrow_value(cochain)
    K.check_degree(m)
    t = m - n + 1
    sign = field_.sign(1 - n)
    outer_sign = field_.sign(n * (m - n))

    table: ScalarTable = {}
    witnesses: List[RecurrenceWitness] = []
    for g in K.generators[m]:
        if m > n:
            source_left, source_right = _split_differential(K, m, g.index)
        else:
            source_left, source_right = {}, {}
        first_split = _plain_scalars(K, m, g.index, n)
        last_split = _plain_scalars(K, m, g.index, m - n)

        left_rhs: Dict[Tuple[Path, int], Any] = {}
        left_prev: Dict[Tuple[Path, int], Any] = {}
        left_comult: Dict[Tuple[Path, int], Any] = {}
        for (p, j), c in source_left.items():
            if j in b_prev:
                target, b = b_prev[j]
                accumulate(left_prev, (p, target), sign * b * c)
                accumulate(left_rhs, (p, target), sign * b * c)
        for (first, r2), c in first_split.items():
            if first == i:
                accumulate(left_comult, (w, r2), kappa * c)
                accumulate(left_rhs, (w, r2), kappa * c)

        right_rhs: Dict[Tuple[int, Path], Any] = {}
        right_prev: Dict[Tuple[int, Path], Any] = {}
        right_comult: Dict[Tuple[int, Path], Any] = {}
        for (j, q), c in source_right.items():
            if j in b_prev:
                target, b = b_prev[j]
                accumulate(right_prev, (target, q), sign * b * c)
                accumulate(right_rhs, (target, q), sign * b * c)
        for (r2, second), c in last_split.items():
            if second == i:
                accumulate(right_comult, (r2, w), -outer_sign * kappa * c)
                accumulate(right_rhs, (r2, w), -outer_sign * kappa * c)

        if not left_rhs and not right_rhs:
            witnesses.append(RecurrenceWitness(m, g.index, None, field_.zero))
            continue

        disagreement = None
        accepted = None
        for candidate in K.generators[t]:
            if candidate.origin != g.origin or candidate.terminal != g.terminal:
                continue
            target_left, target_right = _split_differential(K, t, candidate.index)
            equations: List[RecurrenceEquation] = []
            for side, rhs, prev, comult, coefficients in (
                (LEFT, left_rhs, left_prev, left_comult, target_left),
                (RIGHT, right_rhs, right_prev, right_comult, target_right),
            ):
                for key in sorted(set(rhs) | set(coefficients), key=_equation_order):
                    arrow, index = (key[0], key[1]) if side == LEFT else (key[1], key[0])
                    equations.append(
                        RecurrenceEquation(
                            side,
                            arrow.text,
                            index,
                            coefficients.get(key, field_.zero),
                            prev.get(key, field_.zero),
                            comult.get(key, field_.zero),
                            rhs.get(key, field_.zero),
                        )
                    )
            value = None
            consistent = True
            for eq in equations:
                if not eq.coefficient:
                    if eq.rhs:
                        consistent = False
                        break
                    continue
                candidate_value = eq.rhs / eq.coefficient
                if value is None:
                    value = candidate_value
                elif value != candidate_value:
                    consistent = False
                    disagreement = (candidate.index, value, candidate_value)
                    break
            if consistent and value is not None:
                accepted = RecurrenceWitness(m, g.index, candidate.index, value, equations)
                break

        if accepted is None:
            if disagreement is not None:
                target, first, second = disagreement
                raise RecurrenceInconsistencyError(
                    f"eps{m}_{g.index} -> eps{t}_{target}: the arrow-left and arrow-right relations give "
                    f"{field_.to_text(first)} and {field_.to_text(second)}"
                )
            raise RecurrenceInapplicableError(f"no single generator of degree {t} carries psi(eps{m}_{g.index})")
        table[g.index] = (accepted.target, accepted.value)
        witnesses.append(accepted)
    return table, witnesses


def _equation_order(key) -> Any:
    return tuple(part.sort_key if isinstance(part, Path) else (part,) for part in key)


def single_scalar_table(lifting: HomotopyLifting, m: int) -> ScalarTable:
    """Read b-scalars off a solved lifting in degree m."""
    table: ScalarTable = {}
    for g in lifting.complex.generators[m]:
        image = lifting.value(m, g.index)
        if not image:
            continue
        if len(image) != 1:
            raise RecurrenceInapplicableError(f"psi(eps{m}_{g.index}) = {image.text} has several terms")
        (left, j, right), c = image.items()[0]
        if not (left.is_trivial and right.is_trivial):
            raise RecurrenceInapplicableError(f"psi(eps{m}_{g.index}) = {image.text} has path coefficients")
        table[g.index] = (j, c)
    return table


def recurrence_sequence(
    K: KComplex,
    cochain: Cochain,
    max_degree: Optional[int] = None,
    fallback: Optional[HomotopyLifting] = None,
) -> RecurrenceRun:
    """Iterate recurrence_step from degree n with ψ(K_{n−1}) = 0.

    An inapplicable step is taken from ``fallback`` when one is supplied;
    otherwise the run stops there.
    """
    top = K.max_degree if max_degree is None else max_degree
    run = RecurrenceRun(cochain)
    b_prev: ScalarTable = {}
    for m in range(cochain.degree, top + 1):
        try:
            table, witnesses = recurrence_step(K, cochain, m, b_prev)
            run.witnesses.extend(witnesses)
            run.sources[m] = "recurrence"
        except RecurrenceInapplicableError as exc:
            reason, table = exc.message, None
            if fallback is not None and m <= fallback.max_degree:
                try:
                    table = single_scalar_table(fallback, m)
                    run.sources[m] = "solver"
                except RecurrenceInapplicableError as fallback_exc:
                    reason = fallback_exc.message
            if table is None:
                run.stopped_at = m
                run.reason = reason
                logger.info("recurrence_stopped", degree=m, reason=reason)
                break
        run.tables[m] = table
        b_prev = table
    return run
