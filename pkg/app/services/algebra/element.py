from typing import Any, Dict, List, Optional, Tuple

from app.services.algebra.combination import Combination, accumulate
from app.services.algebra.field import Field
from app.services.algebra.quiver import Path, Vertex


class PathElement(Combination):
    """Exact linear combination of paths; an element of kQ or, once reduced, of Λ."""

    @staticmethod
    def sort_key(key: Path) -> Any:
        return key.sort_key

    @classmethod
    def from_path(cls, field: Field, path: Path, coefficient: Any = None) -> "PathElement":
        return cls(field, {path: field.one if coefficient is None else coefficient})

    def paths(self) -> List[Path]:
        return self.keys()

    @property
    def lengths(self) -> List[int]:
        return sorted({p.length for p in self._terms})

    @property
    def endpoints(self) -> List[Tuple[Vertex, Vertex]]:
        return sorted({(p.origin, p.terminal) for p in self._terms}, key=lambda e: (e[0].index, e[1].index))

    def is_uniform(self) -> bool:
        """All constituent paths are parallel."""
        return len(self.endpoints) <= 1

    def is_homogeneous(self, length: Optional[int] = None) -> bool:
        lengths = self.lengths
        if length is None:
            return len(lengths) <= 1
        return lengths in ([], [length])

    def leading_term(self) -> Tuple[Path, Any]:
        """Longest path, ties broken so that an earlier arrow counts as larger."""
        path = max(self._terms, key=lambda p: (p.length, tuple(-i for i in p.indices)))
        return path, self._terms[path]

    def homogeneous_part(self, length: int) -> "PathElement":
        return self._new({p: c for p, c in self._terms.items() if p.length == length})

    @property
    def text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for path, c in self.items():
            negative = self.field.is_negative(c)
            magnitude = -c if negative else c
            body = path.text if magnitude == self.field.one else f"{self.field.to_text(magnitude)}*{path.text}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __mul__(self, other: "PathElement") -> "PathElement":
        return multiply(self, other)


def multiply(x: PathElement, y: PathElement) -> PathElement:
    """Product in the path algebra kQ: bilinear concatenation."""
    x._check(y)
    terms: Dict[Path, Any] = {}
    for p, a in x._terms.items():
        for q, b in y._terms.items():
            product = p.compose(q)
            if product is not None:
                accumulate(terms, product, a * b)
    return PathElement(x.field, terms)


def uniform_parts(x: PathElement) -> List[Tuple[Vertex, Vertex, PathElement]]:
    """Split x into maximal uniform summands grouped by (origin, terminal, length)."""
    groups: Dict[Tuple[int, int, int], Dict[Path, Any]] = {}
    for path, c in x.items():
        groups.setdefault((path.origin.index, path.terminal.index, path.length), {})[path] = c
    parts = []
    for key in sorted(groups):
        terms = groups[key]
        sample = next(iter(terms))
        parts.append((sample.origin, sample.terminal, PathElement(x.field, terms)))
    return parts
