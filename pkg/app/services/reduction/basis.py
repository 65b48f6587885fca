from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import BasisLimitError
from app.core.logging import get_logger
from app.services.algebra.combination import accumulate
from app.services.algebra.element import PathElement
from app.services.algebra.quiver import Path, Vertex
from app.services.reduction.system import ReductionSystem
from app.utils.cache import CacheManager

logger = get_logger(__name__)


@dataclass(frozen=True)
class IrreducibleBasis:
    paths: Tuple[Path, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.paths)})

    def index(self, path: Path) -> int:
        return self._index[path]  # type: ignore[attr-defined]

    def __contains__(self, path: Path) -> bool:
        return path in self._index  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def dimension(self) -> int:
        return len(self.paths)

    def parallel(self, origin: Vertex, terminal: Vertex) -> List[Path]:
        return [p for p in self.paths if p.origin == origin and p.terminal == terminal]


def _extends_irreducibly(system: ReductionSystem, path: Path) -> bool:
    """An irreducible path extended by one arrow stays irreducible unless a lhs is a suffix."""
    for s in system.lhs_paths:
        if s.length <= path.length and path.arrows[path.length - s.length :] == s.arrows:
            return False
    return True


def irr_basis(system: ReductionSystem, cap: Optional[int] = None) -> IrreducibleBasis:
    """Breadth-first enumeration of Irr_S; fails when Λ looks infinite."""
    cap = cap or settings.basis_cap
    layer = [Path.trivial(v) for v in system.quiver.vertices]
    found = list(layer)
    while layer:
        next_layer = []
        for path in layer:
            for arrow in system.quiver.arrows:
                if arrow.origin != path.terminal:
                    continue
                extended = path.compose(Path.of_arrow(arrow))
                if _extends_irreducibly(system, extended):
                    next_layer.append(extended)
        found.extend(next_layer)
        if len(found) > cap:
            raise BasisLimitError(f"more than {cap} irreducible paths; Λ may be infinite-dimensional")
        layer = next_layer
    ordered = tuple(sorted(found, key=lambda p: p.sort_key))
    logger.debug("irreducible_basis", dimension=len(ordered))
    return IrreducibleBasis(ordered)


class QuotientAlgebra:
    """Λ = kQ/I realised on irreducible paths, multiplication followed by reduction."""

    def __init__(self, system: ReductionSystem, cache: Optional[CacheManager] = None):
        self.system = system
        self.quiver = system.quiver
        self.field = system.field
        self._cache = cache or CacheManager()
        self._basis: Optional[IrreducibleBasis] = None
        self._finite: Optional[bool] = None

    def basis(self) -> IrreducibleBasis:
        if self._basis is None:
            self._basis = irr_basis(self.system)
        return self._basis

    @property
    def is_finite(self) -> bool:
        if self._finite is None:
            try:
                self.basis()
                self._finite = True
            except BasisLimitError:
                self._finite = False
        return self._finite

    def reduce(self, x: PathElement) -> PathElement:
        return self.system.normal_form(x)

    def element(self, path: Path, coefficient: Any = None) -> PathElement:
        return PathElement.from_path(self.field, path, coefficient)

    def multiply_paths(self, left: Path, right: Path) -> PathElement:
        key = self._cache.generate_key("mul", left, right)

        def compute() -> PathElement:
            product = left.compose(right)
            if product is None:
                return PathElement(self.field)
            return self.system.reduce_path(product)

        return self._cache.get_or_compute(key, compute)

    def multiply(self, *factors: PathElement) -> PathElement:
        result = factors[0]
        for factor in factors[1:]:
            terms: Dict[Path, Any] = {}
            for p, a in result.items():
                for q, b in factor.items():
                    for r, c in self.multiply_paths(p, q).items():
                        accumulate(terms, r, a * b * c)
            result = PathElement(self.field, terms)
        return result

    def paths(self, origin: Vertex, terminal: Vertex, length: int) -> List[Path]:
        """Irreducible paths of one length between two vertices (works when Λ is infinite)."""
        key = self._cache.generate_key("paths", origin, terminal, length)
        return self._cache.get_or_compute(
            key, lambda: [p for p in self._irreducible_from(origin, length) if p.terminal == terminal]
        )

    def _irreducible_from(self, origin: Vertex, length: int) -> List[Path]:
        key = self._cache.generate_key("from", origin, length)

        def compute() -> List[Path]:
            if length == 0:
                return [Path.trivial(origin)]
            extended = []
            for path in self._irreducible_from(origin, length - 1):
                for arrow in self.quiver.arrows:
                    if arrow.origin == path.terminal:
                        candidate = path.compose(Path.of_arrow(arrow))
                        if _extends_irreducibly(self.system, candidate):
                            extended.append(candidate)
            return sorted(extended, key=lambda p: p.sort_key)

        return self._cache.get_or_compute(key, compute)

    def parallel_paths(self, origin: Vertex, terminal: Vertex) -> List[Path]:
        return self.basis().parallel(origin, terminal)
