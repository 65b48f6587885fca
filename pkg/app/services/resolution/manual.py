"""User-supplied resolutions: loading, mandatory verification and export.

A manual resolution carries no tensor forms, so only the complex and diagonal
identities can be checked; the bar oracle and reconstruction do not apply.
"""
from typing import Any, Dict, List, Optional, Tuple

from app.core.exceptions import ManualResolutionError, SpecParseError, ValidationError, VerificationError
from app.core.logging import get_logger
from app.models.spec_document import DiagonalEntry, DifferentialEntry, GeneratorSpec, ResolutionSection
from app.services.algebra.combination import accumulate
from app.services.algebra.parser import parse_path, scalar_value
from app.services.algebra.quiver import Path
from app.services.reduction.basis import QuotientAlgebra
from app.services.resolution.complex import MANUAL, Generator, KComplex
from app.services.resolution.sections import Section, TensorSection
from app.services.resolution.verify import verify_complex

logger = get_logger(__name__)


def _path(text: Optional[str], default: Path, quotient: QuotientAlgebra, location: str) -> Path:
    if text is None:
        return default
    try:
        return parse_path(text, quotient.quiver, location)
    except SpecParseError as exc:
        raise ManualResolutionError(exc.message)


def _generators(section: ResolutionSection, quotient: QuotientAlgebra, max_degree: int) -> Dict[int, List[Tuple]]:
    by_degree: Dict[int, GeneratorSpec] = {}
    for spec in section.generators:
        if spec.degree in by_degree:
            raise ManualResolutionError(f"generators of degree {spec.degree} listed twice")
        by_degree[spec.degree] = spec
    raw: Dict[int, List[Tuple]] = {}
    for n in range(max_degree + 1):
        if n not in by_degree:
            raise ManualResolutionError(f"no generators given for degree {n}")
        spec = by_degree[n]
        if spec.weights is not None and len(spec.weights) != len(spec.endpoints):
            raise ManualResolutionError(f"degree {n}: {len(spec.weights)} weights for {len(spec.endpoints)} generators")
        try:
            raw[n] = [
                (quotient.quiver.vertex(o), quotient.quiver.vertex(t), spec.weights[i] if spec.weights else None)
                for i, (o, t) in enumerate(spec.endpoints)
            ]
        except ValidationError as exc:
            raise ManualResolutionError(f"degree {n}: {exc.message}")
    return raw


def _differential(
    entries: List[DifferentialEntry],
    generators: Dict[int, List[Generator]],
    quotient: QuotientAlgebra,
    max_degree: int,
) -> Dict[Tuple[int, int], Section]:
    field = quotient.field
    tables: Dict[Tuple[int, int], Dict[Any, Any]] = {
        (n, g.index): {} for n in range(1, max_degree + 1) for g in generators[n]
    }
    for position, entry in enumerate(entries):
        location = f"resolution.differential[{position}]"
        if entry.degree > max_degree:
            continue
        source_list, target_list = generators[entry.degree], generators[entry.degree - 1]
        if entry.from_index >= len(source_list) or entry.to_index >= len(target_list):
            raise ManualResolutionError(f"{location}: generator index out of range")
        source, target = source_list[entry.from_index], target_list[entry.to_index]
        left = _path(entry.left, source.left_unit, quotient, f"{location}.left")
        right = _path(entry.right, source.right_unit, quotient, f"{location}.right")
        if left.origin != source.origin or left.terminal != target.origin:
            raise ManualResolutionError(f"{location}: left coefficient {left.text} does not fit the generators")
        if right.origin != target.terminal or right.terminal != source.terminal:
            raise ManualResolutionError(f"{location}: right coefficient {right.text} does not fit the generators")
        scalar = scalar_value(entry.scalar, field, f"{location}.scalar")
        terms = tables[(entry.degree, entry.from_index)]
        for new_left, a in quotient.system.reduce_path(left).items():
            for new_right, b in quotient.system.reduce_path(right).items():
                accumulate(terms, (new_left, entry.to_index, new_right), scalar * a * b)
    return {(n, i): Section(field, n - 1, terms) for (n, i), terms in tables.items()}


def _diagonal(
    entries: List[DiagonalEntry],
    generators: Dict[int, List[Generator]],
    quotient: QuotientAlgebra,
    max_degree: int,
) -> Dict[Tuple[int, int], TensorSection]:
    field = quotient.field
    tables: Dict[Tuple[int, int], Dict[Any, Any]] = {
        (n, g.index): {} for n in range(max_degree + 1) for g in generators[n]
    }
    for position, entry in enumerate(entries):
        location = f"resolution.diagonal[{position}]"
        if entry.degree > max_degree:
            continue
        n = entry.degree
        if entry.index >= len(generators[n]) or entry.v > n:
            raise ManualResolutionError(f"{location}: generator index or split out of range")
        if entry.p >= len(generators[entry.v]) or entry.q >= len(generators[n - entry.v]):
            raise ManualResolutionError(f"{location}: factor index out of range")
        source = generators[n][entry.index]
        first, second = generators[entry.v][entry.p], generators[n - entry.v][entry.q]
        left = _path(entry.left, source.left_unit, quotient, f"{location}.left")
        middle = _path(entry.middle, first.right_unit, quotient, f"{location}.middle")
        right = _path(entry.right, source.right_unit, quotient, f"{location}.right")
        if (
            left.origin != source.origin
            or left.terminal != first.origin
            or middle.origin != first.terminal
            or middle.terminal != second.origin
            or right.origin != second.terminal
            or right.terminal != source.terminal
        ):
            raise ManualResolutionError(f"{location}: coefficients do not fit the generators")
        scalar = scalar_value(entry.scalar, field, f"{location}.scalar")
        terms = tables[(n, entry.index)]
        for new_left, a in quotient.system.reduce_path(left).items():
            for new_middle, b in quotient.system.reduce_path(middle).items():
                for new_right, c in quotient.system.reduce_path(right).items():
                    key = (new_left, entry.v, entry.p, new_middle, entry.q, new_right)
                    accumulate(terms, key, scalar * a * b * c)
    for g in generators[0]:
        # degree 0 is forced by the counit
        if not tables[(0, g.index)]:
            tables[(0, g.index)] = {(g.left_unit, 0, g.index, g.right_unit, g.index, g.right_unit): field.one}
    return {(n, i): TensorSection(field, n, terms) for (n, i), terms in tables.items()}


def _infer_weight(n: int, index: int, differential: Dict[Tuple[int, int], Section], weights: Dict) -> int:
    """Internal degree from the first differential term: weight(ε^{n-1}_j) + |left| + |right|."""
    image = differential[(n, index)]
    if not image:
        raise ManualResolutionError(f"cannot infer the weight of eps{n}_{index}: its differential is zero")
    (left, j, right), _ = image.items()[0]
    return weights[(n - 1, j)] + left.length + right.length


def load_manual_resolution(
    section: ResolutionSection,
    quotient: QuotientAlgebra,
    max_degree: Optional[int] = None,
) -> KComplex:
    top = section.max_degree if max_degree is None else min(max_degree, section.max_degree)
    raw = _generators(section, quotient, top)

    generators: Dict[int, List[Generator]] = {
        n: [Generator(n, i, o, t, w if w is not None else 0) for i, (o, t, w) in enumerate(rows)]
        for n, rows in raw.items()
    }
    differential = _differential(section.differential, generators, quotient, top)
    diagonal = _diagonal(section.diagonal, generators, quotient, top)

    weights: Dict[Tuple[int, int], int] = {}
    for n in range(top + 1):
        for i, (o, t, w) in enumerate(raw[n]):
            if w is not None:
                weights[(n, i)] = w
            elif n == 0:
                weights[(n, i)] = 0
            else:
                weights[(n, i)] = _infer_weight(n, i, differential, weights)
    generators = {
        n: [Generator(n, g.index, g.origin, g.terminal, weights[(n, g.index)]) for g in gs]
        for n, gs in generators.items()
    }

    complex_ = KComplex(quotient, generators, differential, diagonal, top, MANUAL)
    report = verify_complex(complex_)
    if not report.passed:
        first = next(c for c in report.failures if c.mandatory)
        raise VerificationError(
            f"manual resolution fails {first.property} in degree {first.degree}: {first.detail}", report
        )
    logger.info("manual_resolution_loaded", max_degree=top, counts=[len(generators[n]) for n in range(top + 1)])
    return complex_


def export_resolution(K: KComplex) -> ResolutionSection:
    """The manual-section form of K; loading it back reproduces the tables."""
    field = K.field

    def optional(path: Path) -> Optional[str]:
        return None if path.is_trivial else path.text

    generators = [
        GeneratorSpec(
            degree=n,
            endpoints=[(g.origin.name, g.terminal.name) for g in K.generators[n]],
            weights=[g.weight for g in K.generators[n]],
        )
        for n in range(K.max_degree + 1)
    ]
    differential = [
        DifferentialEntry(
            degree=n,
            from_index=i,
            to_index=j,
            left=optional(left),
            right=optional(right),
            scalar=field.to_text(c),
        )
        for (n, i), image in sorted(K.differential.items())
        for (left, j, right), c in image.items()
    ]
    diagonal = [
        DiagonalEntry(
            degree=n,
            index=i,
            v=v,
            p=p,
            q=q,
            scalar=field.to_text(c),
            left=optional(left),
            middle=optional(middle),
            right=optional(right),
        )
        for (n, i), image in sorted(K.diagonal.items())
        for (left, v, p, middle, q, right), c in image.items()
    ]
    return ResolutionSection(
        max_degree=K.max_degree, generators=generators, differential=differential, diagonal=diagonal
    )
