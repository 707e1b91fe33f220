"""
Exact scalar arithmetic over the rationals and real quadratic fields Q(sqrt(m)).

Rationals are plain ``fractions.Fraction`` values. Elements of Q(sqrt(m)) are
``QuadraticNumber`` pairs (p, q) standing for p + q*sqrt(m). Both are immutable
and hashable, so they can be shared between worker processes and used inside
dictionary keys. A ``Field`` object owns parsing, rendering and coercion.

Counters (Whitney numbers, multiplicities) are Python integers, which never
overflow.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Optional, Union

from sympy import factorint


LOGGER = logging.getLogger(__name__)

Count = int

_RATIONAL = r"[+-]?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^\s*(?P<value>{_RATIONAL})\s*$")
# a*sqrt(m), sqrt(m), -sqrt(m)
_PURE_SURD_RE = re.compile(
    rf"^\s*(?:(?P<q>{_RATIONAL})\s*\*\s*|(?P<sign>[+-])\s*)?"
    r"sqrt\(\s*(?P<m>\d+)\s*\)\s*$"
)
# p + q*sqrt(m), p - sqrt(m), ...
_QUADRATIC_RE = re.compile(
    rf"^\s*(?P<p>{_RATIONAL})\s*(?P<sign>[+-])\s*"
    rf"(?:(?P<q>{_RATIONAL})\s*\*\s*)?sqrt\(\s*(?P<m>\d+)\s*\)\s*$"
)


class FieldMismatchError(TypeError):
    """Raised when scalars from different fields are combined."""


class ScalarParseError(ValueError):
    """Raised when a scalar literal does not follow the textual grammar."""

    def __init__(self, text: str, reason: str) -> None:
        super().__init__(f"Cannot parse scalar {text!r}: {reason}")
        self.text = text
        self.reason = reason


class ZeroTest(Enum):
    ZERO = "zero"
    NONZERO = "nonzero"


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class QuadraticNumber:
    """The number p + q*sqrt(m) with p, q rational and m squarefree."""

    __slots__ = ("p", "q", "m")

    def __init__(self, p: Any, q: Any, m: int) -> None:
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.m = m

    def _coerce(self, other: Any) -> Optional["QuadraticNumber"]:
        if isinstance(other, QuadraticNumber):
            if other.m != self.m:
                raise FieldMismatchError(
                    f"Cannot combine elements of Q(sqrt({self.m})) and Q(sqrt({other.m}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.m)
        return None

    def __add__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadraticNumber(self.p + other.p, self.q + other.q, self.m)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadraticNumber(self.p - other.p, self.q - other.q, self.m)

    def __rsub__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuadraticNumber(
            self.p * other.p + self.m * self.q * other.q,
            self.p * other.q + self.q * other.p,
            self.m,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        norm = self.p * self.p - self.m * self.q * self.q
        if norm == 0:
            # sqrt(m) is irrational, so the norm vanishes only at zero.
            raise ZeroDivisionError("division by zero in Q(sqrt(%d))" % self.m)
        return QuadraticNumber(self.p / norm, -self.q / norm, self.m)

    def __truediv__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "QuadraticNumber":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(-self.p, -self.q, self.m)

    def __pos__(self) -> "QuadraticNumber":
        return self

    def __abs__(self) -> "QuadraticNumber":
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return bool(self.p) or bool(self.q)

    def sign(self) -> int:
        """Sign of the real number p + q*sqrt(m)."""
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0 or sp == sq:
            return sp if sp else sq
        if sp == 0:
            return sq
        return sp if self.p * self.p > self.m * self.q * self.q else sq

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, QuadraticNumber):
            return (self.p, self.q, self.m) == (other.p, other.q, other.m)
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.m))

    def __lt__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() >= 0

    def __reduce__(self):
        return (QuadraticNumber, (self.p, self.q, self.m))

    def __repr__(self) -> str:
        return f"QuadraticNumber({self.p!s}, {self.q!s}, {self.m})"

    def __str__(self) -> str:
        return render_scalar(self)


Scalar = Union[Fraction, QuadraticNumber]


def render_scalar(value: Scalar) -> str:
    """Canonical text: ``num/den`` for rationals, ``p+q*sqrt(m)`` otherwise."""
    if isinstance(value, QuadraticNumber):
        if value.q == 0:
            return str(value.p)
        magnitude = abs(value.q)
        surd = f"sqrt({value.m})" if magnitude == 1 else f"{magnitude}*sqrt({value.m})"
        if value.p == 0:
            return surd if value.q > 0 else f"-{surd}"
        return f"{value.p}{'+' if value.q > 0 else '-'}{surd}"
    return str(Fraction(value))


def _is_squarefree(m: int) -> bool:
    return all(exponent == 1 for exponent in factorint(m).values())


@dataclass(frozen=True)
class Field:
    """Q when ``sqrt`` is None, otherwise the real quadratic field Q(sqrt(sqrt))."""

    sqrt: Optional[int] = None

    def __post_init__(self) -> None:
        if self.sqrt is None:
            return
        if not isinstance(self.sqrt, int) or self.sqrt < 2 or not _is_squarefree(self.sqrt):
            raise ValueError(
                f"Quadratic fields need a squarefree integer m >= 2, got {self.sqrt!r}"
            )

    @property
    def is_rational(self) -> bool:
        return self.sqrt is None

    @property
    def tag(self) -> str:
        return "Q" if self.sqrt is None else f"Q(sqrt({self.sqrt}))"

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def generator(self) -> QuadraticNumber:
        """The element sqrt(m)."""
        if self.sqrt is None:
            raise FieldMismatchError("Q has no square-root generator")
        return QuadraticNumber(0, 1, self.sqrt)

    def contains(self, value: Any) -> bool:
        if isinstance(value, QuadraticNumber):
            return value.m == self.sqrt
        return isinstance(value, (int, Fraction))

    def __call__(self, value: Any) -> Scalar:
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or isinstance(value, float):
            raise TypeError(f"Refusing inexact value {value!r}; use int, Fraction or text")
        if isinstance(value, QuadraticNumber):
            if self.sqrt is None:
                if value.q != 0:
                    raise FieldMismatchError(f"{value} is not rational")
                return value.p
            if value.m != self.sqrt:
                raise FieldMismatchError(f"{value} does not lie in {self.tag}")
            return value
        if isinstance(value, (int, Fraction)):
            if self.sqrt is None:
                return Fraction(value)
            return QuadraticNumber(value, 0, self.sqrt)
        raise TypeError(f"Cannot coerce {type(value).__name__} into {self.tag}")

    def parse(self, text: str) -> Scalar:
        """Parse an integer, ``a/b`` or ``a+b*sqrt(m)`` literal."""
        if not isinstance(text, str):
            return self(text)
        match = _RATIONAL_RE.match(text)
        if match:
            try:
                return self(Fraction(match.group("value")))
            except ZeroDivisionError as exc:
                raise ScalarParseError(text, "zero denominator") from exc

        p, q, m = Fraction(0), None, None
        match = _QUADRATIC_RE.match(text)
        if match:
            p = Fraction(match.group("p"))
            q = Fraction(match.group("q")) if match.group("q") else Fraction(1)
            if match.group("sign") == "-":
                q = -q
            m = int(match.group("m"))
        else:
            match = _PURE_SURD_RE.match(text)
            if not match:
                raise ScalarParseError(text, "expected an integer, a/b or a+b*sqrt(m)")
            if match.group("q"):
                q = Fraction(match.group("q"))
            else:
                q = Fraction(-1 if match.group("sign") == "-" else 1)
            m = int(match.group("m"))

        if self.sqrt is None:
            raise ScalarParseError(text, "square roots are not allowed over Q")
        if m != self.sqrt:
            raise ScalarParseError(text, f"sqrt({m}) does not belong to {self.tag}")
        return QuadraticNumber(p, q, m)

    def render(self, value: Scalar) -> str:
        return render_scalar(self(value))

    def to_json(self) -> Union[str, dict]:
        return "Q" if self.sqrt is None else {"sqrt": self.sqrt}

    @classmethod
    def from_json(cls, payload: Any) -> "Field":
        if payload in (None, "Q", "QQ"):
            return RATIONALS
        if isinstance(payload, dict) and "sqrt" in payload:
            return cls(int(payload["sqrt"]))
        raise ValueError(f"Unknown field description: {payload!r}")


RATIONALS = Field()


def quadratic_field(m: int) -> Field:
    return Field(m)


def field_of(values: Iterable[Any]) -> Field:
    """Smallest supported field containing every value."""
    found: Optional[int] = None
    for value in values:
        if isinstance(value, QuadraticNumber):
            if found is not None and found != value.m:
                raise FieldMismatchError(f"Mixed fields Q(sqrt({found})) and Q(sqrt({value.m}))")
            found = value.m
    return RATIONALS if found is None else Field(found)


def _check_pair(a: Scalar, b: Scalar) -> None:
    if isinstance(a, QuadraticNumber) and isinstance(b, QuadraticNumber) and a.m != b.m:
        raise FieldMismatchError(f"Q(sqrt({a.m})) and Q(sqrt({b.m})) differ")


def add(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    _check_pair(a, b)
    if not b:
        raise ZeroDivisionError(f"division of {render_scalar(a)} by zero")
    return a / b


def compare_zero(value: Scalar) -> ZeroTest:
    return ZeroTest.NONZERO if value else ZeroTest.ZERO


__all__ = [
    "Count",
    "Field",
    "FieldMismatchError",
    "QuadraticNumber",
    "RATIONALS",
    "Scalar",
    "ScalarParseError",
    "ZeroTest",
    "add",
    "compare_zero",
    "div",
    "field_of",
    "mul",
    "quadratic_field",
    "render_scalar",
    "sub",
]
