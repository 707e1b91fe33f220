"""
Whitney numbers and characteristic polynomials.

chi(t) = sum_i (-1)^i b_i t^(d-i); the number of chambers of a real
arrangement is sum_i b_i = (-1)^d chi(-1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

import sympy

from src.exact import Count


LOGGER = logging.getLogger(__name__)

_T = sympy.Symbol("t")


@dataclass(frozen=True)
class WhitneyVector:
    """Unsigned Whitney numbers (b_0, ..., b_d) of the first kind."""

    b: Tuple[Count, ...]

    def __post_init__(self) -> None:
        if not self.b:
            raise ValueError("A Whitney vector has at least the entry b_0")
        if any(value < 0 for value in self.b):
            raise ValueError(f"Whitney numbers are non-negative, got {self.b}")

    @classmethod
    def zero(cls, dim: int) -> "WhitneyVector":
        return cls((0,) * (dim + 1))

    @classmethod
    def of(cls, values: Iterable[int]) -> "WhitneyVector":
        return cls(tuple(int(value) for value in values))

    @property
    def dim(self) -> int:
        return len(self.b) - 1

    @property
    def rank(self) -> int:
        return max(i for i, value in enumerate(self.b) if value) if any(self.b) else 0

    def __iter__(self) -> Iterator[Count]:
        return iter(self.b)

    def __len__(self) -> int:
        return len(self.b)

    def __getitem__(self, index: int) -> Count:
        return self.b[index]

    def __add__(self, other: "WhitneyVector") -> "WhitneyVector":
        if len(other) != len(self):
            raise ValueError(f"Cannot add Whitney vectors of lengths {len(self)} and {len(other)}")
        return WhitneyVector(tuple(a + b for a, b in zip(self.b, other.b)))

    def shifted(self) -> "WhitneyVector":
        """Prepend a zero: the contribution of a restriction to the parent."""
        return WhitneyVector((0,) + self.b)

    def chambers(self) -> Count:
        return sum(self.b)

    def bounded_chambers(self) -> Count:
        """Chambers bounded relative to the span of the normals, (-1)^rank chi(1)."""
        return abs(sum((-1) ** i * value for i, value in enumerate(self.b)))

    def charpoly(self) -> "CharPoly":
        return CharPoly.from_whitney(self)

    def to_list(self) -> List[Count]:
        return list(self.b)

    def __str__(self) -> str:
        return " ".join(str(value) for value in self.b)


@dataclass(frozen=True)
class CharPoly:
    """Coefficients of chi(t), leading coefficient first."""

    coefficients: Tuple[int, ...]

    @classmethod
    def from_whitney(cls, whitney: WhitneyVector) -> "CharPoly":
        return cls(tuple((-1) ** i * value for i, value in enumerate(whitney.b)))

    @classmethod
    def from_sympy(cls, expression: sympy.Expr, degree: int | None = None) -> "CharPoly":
        poly = sympy.Poly(expression, _T)
        coefficients = [int(c) for c in poly.all_coeffs()]
        if degree is not None:
            if poly.degree() > degree:
                raise ValueError(f"{expression} has degree above {degree}")
            coefficients = [0] * (degree - poly.degree()) + coefficients
        return cls(tuple(coefficients))

    @classmethod
    def parse(cls, text: str) -> "CharPoly":
        """Read the display form ``t^2 - 4*t + 5``."""
        try:
            expression = sympy.sympify(text.replace("^", "**"), locals={"t": _T})
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise ValueError(f"Cannot parse characteristic polynomial {text!r}") from exc
        if expression.free_symbols - {_T}:
            raise ValueError(f"{text!r} uses variables other than t")
        return cls.from_sympy(expression)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_sympy(self) -> sympy.Expr:
        return sum(
            (c * _T ** (self.degree - i) for i, c in enumerate(self.coefficients)),
            sympy.Integer(0),
        )

    def evaluate(self, t: int) -> int:
        value = 0
        for coefficient in self.coefficients:
            value = value * t + coefficient
        return value

    def to_whitney(self) -> WhitneyVector:
        values = [(-1) ** i * c for i, c in enumerate(self.coefficients)]
        if any(value < 0 for value in values):
            raise ValueError(f"{self} does not alternate in sign")
        return WhitneyVector(tuple(values))

    def chambers(self) -> int:
        return (-1) ** self.degree * self.evaluate(-1)

    def __str__(self) -> str:
        return str(self.to_sympy()).replace("**", "^")


__all__ = ["CharPoly", "WhitneyVector"]
