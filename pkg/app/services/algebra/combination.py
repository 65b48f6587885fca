from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple, TypeVar

from app.core.exceptions import FieldMismatchError
from app.services.algebra.field import Field

C = TypeVar("C", bound="Combination")


class Combination:
    """Immutable finite linear combination of hashable keys over an exact field.

    Zero coefficients are never stored, so equality is structural.  Subclasses
    fix the key type and its canonical order through ``sort_key``.
    """

    __slots__ = ("field", "_terms")

    def __init__(self, field: Field, terms: Optional[Mapping[Hashable, Any]] = None):
        self.field = field
        self._terms: Dict[Hashable, Any] = {k: c for k, c in (terms or {}).items() if c}

    @staticmethod
    def sort_key(key: Hashable) -> Any:
        return key

    @classmethod
    def zero(cls: type, field: Field) -> "Combination":
        return cls(field)

    @classmethod
    def from_pairs(cls: type, field: Field, pairs: Iterable[Tuple[Hashable, Any]]) -> "Combination":
        terms: Dict[Hashable, Any] = {}
        for key, coefficient in pairs:
            terms[key] = terms.get(key, field.zero) + coefficient
        return cls(field, terms)

    def _new(self: C, terms: Mapping[Hashable, Any]) -> C:
        return type(self)(self.field, terms)

    def _check(self, other: "Combination") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"cannot combine elements over {self.field!r} and {other.field!r}")

    def items(self) -> List[Tuple[Hashable, Any]]:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda item: self.sort_key(item[0]))

    def keys(self) -> List[Hashable]:
        return [k for k, _ in self.items()]

    def coefficient(self, key: Hashable) -> Any:
        return self._terms.get(key, self.field.zero)

    def map_keys(self: C, mapping: Callable[[Hashable], Hashable]) -> C:
        terms: Dict[Hashable, Any] = {}
        for key, c in self._terms.items():
            new_key = mapping(key)
            terms[new_key] = terms.get(new_key, self.field.zero) + c
        return self._new(terms)

    def scale(self: C, factor: Any) -> C:
        if not factor:
            return self._new({})
        return self._new({k: c * factor for k, c in self._terms.items()})

    def __add__(self: C, other: C) -> C:
        self._check(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, self.field.zero) + c
        return self._new(terms)

    def __sub__(self: C, other: C) -> C:
        return self + (-other)

    def __neg__(self: C) -> C:
        return self._new({k: -c for k, c in self._terms.items()})

    def __iter__(self) -> Iterator[Tuple[Hashable, Any]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Combination):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.items()!r})"


def accumulate(target: Dict[Hashable, Any], key: Hashable, coefficient: Any) -> None:
    """In-place ``target[key] += coefficient`` dropping zeros."""
    value = target.get(key)
    value = coefficient if value is None else value + coefficient
    if value:
        target[key] = value
    else:
        target.pop(key, None)
