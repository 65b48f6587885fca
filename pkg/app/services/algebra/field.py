from fractions import Fraction
from typing import Any, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from app.core.exceptions import SpecParseError, ValidationError

FieldDescriptor = Union[str, dict]


class Field:
    """Exact ground field: the rationals or a prime field F_p.

    Scalars are sympy domain elements; rationals are kept in lowest terms with a
    positive denominator and F_p elements are printed as their representative in
    [0, p-1].
    """

    def __init__(self, domain: Any, characteristic: int):
        self.domain = domain
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "Field":
        return cls(QQ, 0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise ValidationError(f"field modulus {p!r} is not prime")
        return cls(GF(p, symmetric=False), p)

    @classmethod
    def from_descriptor(cls, descriptor: FieldDescriptor) -> "Field":
        """Accepts "Q", {"Fp": p} or the CLI form "Fp:p"."""
        if isinstance(descriptor, dict):
            if set(descriptor) != {"Fp"}:
                raise ValidationError(f"unknown field descriptor {descriptor!r}")
            return cls.prime(descriptor["Fp"])
        text = str(descriptor).strip()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError:
                raise ValidationError(f"unknown field descriptor {descriptor!r}")
        raise ValidationError(f"unknown field descriptor {descriptor!r}")

    @property
    def descriptor(self) -> FieldDescriptor:
        return "Q" if self.characteristic == 0 else {"Fp": self.characteristic}

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def __call__(self, value: Any) -> Any:
        if isinstance(value, Fraction):
            return self.from_fraction(value.numerator, value.denominator)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def from_fraction(self, numerator: int, denominator: int) -> Any:
        if denominator == 0:
            raise SpecParseError("division by zero in scalar literal")
        if self.characteristic and denominator % self.characteristic == 0:
            raise SpecParseError(
                f"denominator {denominator} vanishes in F_{self.characteristic}"
            )
        if self.characteristic == 0:
            return QQ(numerator, denominator)
        return self.domain(numerator) / self.domain(denominator)

    def parse(self, text: str) -> Any:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise SpecParseError(f"invalid scalar literal {text!r}")
        return self.from_fraction(value.numerator, value.denominator)

    def to_text(self, value: Any) -> str:
        if self.characteristic:
            return str(int(value) % self.characteristic)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def is_negative(self, value: Any) -> bool:
        return self.characteristic == 0 and value < 0

    def sign(self, exponent: int) -> Any:
        """(-1)^exponent as a field element."""
        return self.one if exponent % 2 == 0 else -self.one

    def power(self, base: Any, exponent: int) -> Any:
        """base^exponent; negative exponents invert a nonzero base."""
        return self.domain.pow(base, exponent)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("field", self.characteristic))

    def __repr__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"
