from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.core.exceptions import ValidationError


@dataclass(frozen=True)
class Vertex:
    name: str
    index: int

    @property
    def idempotent_name(self) -> str:
        return f"e{self.name}"


@dataclass(frozen=True)
class Arrow:
    name: str
    index: int
    origin: Vertex
    terminal: Vertex


@dataclass(frozen=True)
class Path:
    """A path in the quiver, concatenated left to right.

    The empty arrow tuple is the trivial path (idempotent) at ``origin``.
    """

    origin: Vertex
    terminal: Vertex
    arrows: Tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        if not self.arrows:
            if self.origin != self.terminal:
                raise ValidationError("a trivial path must start and end at the same vertex")
            return
        if self.arrows[0].origin != self.origin or self.arrows[-1].terminal != self.terminal:
            raise ValidationError("path endpoints do not match its arrows")
        for left, right in zip(self.arrows, self.arrows[1:]):
            if left.terminal != right.origin:
                raise ValidationError(f"arrows {left.name} and {right.name} do not compose")

    @classmethod
    def trivial(cls, vertex: Vertex) -> "Path":
        return cls(vertex, vertex)

    @classmethod
    def of_arrow(cls, arrow: Arrow) -> "Path":
        return cls(arrow.origin, arrow.terminal, (arrow,))

    @classmethod
    def from_arrows(cls, arrows: Sequence[Arrow]) -> "Path":
        return cls(arrows[0].origin, arrows[-1].terminal, tuple(arrows))

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Canonical order: length first, then arrow indices lexicographically."""
        if not self.arrows:
            return (0, (self.origin.index,))
        return (len(self.arrows), tuple(a.index for a in self.arrows))

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(a.index for a in self.arrows)

    @property
    def text(self) -> str:
        if not self.arrows:
            return self.origin.idempotent_name
        return "*".join(a.name for a in self.arrows)

    def vertex_at(self, position: int) -> Vertex:
        if position == 0:
            return self.origin
        return self.arrows[position - 1].terminal

    def sub(self, start: int, stop: int) -> "Path":
        """The subpath covering arrows[start:stop]."""
        if start == stop:
            return Path.trivial(self.vertex_at(start))
        return Path.from_arrows(self.arrows[start:stop])

    def compose(self, other: "Path") -> Optional["Path"]:
        """Concatenation, or ``None`` when t(self) != o(other)."""
        if self.terminal != other.origin:
            return None
        if not self.arrows:
            return other
        if not other.arrows:
            return self
        return Path(self.origin, other.terminal, self.arrows + other.arrows)

    def occurrences(self, pattern: "Path") -> List[int]:
        """Start positions of ``pattern`` as a subpath (pattern of length >= 1)."""
        width = pattern.length
        return [
            i
            for i in range(self.length - width + 1)
            if self.arrows[i : i + width] == pattern.arrows
        ]

    def contains(self, pattern: "Path") -> bool:
        if pattern.is_trivial:
            return pattern.origin in {self.vertex_at(i) for i in range(self.length + 1)}
        return bool(self.occurrences(pattern))

    def __repr__(self) -> str:
        return f"Path({self.text})"


class Quiver:
    def __init__(self, vertex_names: Sequence[str], arrow_specs: Sequence[Tuple[str, str, str]]):
        if len(set(vertex_names)) != len(vertex_names):
            raise ValidationError("vertex ids must be unique")
        self.vertices: Tuple[Vertex, ...] = tuple(Vertex(name, i) for i, name in enumerate(vertex_names))
        self._vertex_by_name: Dict[str, Vertex] = {v.name: v for v in self.vertices}

        arrows = []
        for i, (name, source, target) in enumerate(arrow_specs):
            if source not in self._vertex_by_name or target not in self._vertex_by_name:
                raise ValidationError(f"arrow {name} references an unknown vertex")
            arrows.append(Arrow(name, i, self._vertex_by_name[source], self._vertex_by_name[target]))
        self.arrows: Tuple[Arrow, ...] = tuple(arrows)
        self._arrow_by_name: Dict[str, Arrow] = {a.name: a for a in self.arrows}
        if len(self._arrow_by_name) != len(self.arrows):
            raise ValidationError("arrow ids must be unique")

    def vertex(self, name: str) -> Vertex:
        if name not in self._vertex_by_name:
            raise ValidationError(f"unknown vertex {name!r}")
        return self._vertex_by_name[name]

    def arrow(self, name: str) -> Arrow:
        if name not in self._arrow_by_name:
            raise ValidationError(f"unknown arrow {name!r}")
        return self._arrow_by_name[name]

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_by_name

    def idempotent(self, vertex: Vertex) -> Path:
        return Path.trivial(vertex)

    def resolve_token(self, token: str) -> Optional[Path]:
        """An arrow name, or ``e<vertex>`` for an idempotent; arrows win ties."""
        if token in self._arrow_by_name:
            return Path.of_arrow(self._arrow_by_name[token])
        if token.startswith("e") and token[1:] in self._vertex_by_name:
            return Path.trivial(self._vertex_by_name[token[1:]])
        return None

    def paths(self, length: int, origin: Optional[Vertex] = None) -> Iterator[Path]:
        """All paths of a given length, in canonical order."""
        if length == 0:
            for v in self.vertices:
                if origin is None or v == origin:
                    yield Path.trivial(v)
            return
        frontier = [Path.of_arrow(a) for a in self.arrows if origin is None or a.origin == origin]
        for _ in range(length - 1):
            frontier = [
                Path(p.origin, a.terminal, p.arrows + (a,))
                for p in frontier
                for a in self.arrows
                if a.origin == p.terminal
            ]
        yield from sorted(frontier, key=lambda p: p.sort_key)

    def paths_between(self, origin: Vertex, terminal: Vertex, length: int) -> List[Path]:
        return [p for p in self.paths(length, origin) if p.terminal == terminal]
