"""
Reference computations that share no code with the counting engines beyond
flat bases: subset enumeration of the characteristic polynomial and
finite-field point counts (chi(q) = number of points of F_q^d on no
hyperplane, for good primes q).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
import sympy
from tqdm import tqdm

from src.arrangement import Arrangement, FlatBasis
from src.polynomial import CharPoly, WhitneyVector
from src.settings import BRUTEFORCE_LIMIT


LOGGER = logging.getLogger(__name__)

MAX_POINT_COUNT_DIM = 3
_T = sympy.Symbol("t")


class OracleError(RuntimeError):
    """Raised when a reference computation is out of bounds or its primes are unusable."""


def whitney_bruteforce(arrangement: Arrangement, limit: int = BRUTEFORCE_LIMIT) -> WhitneyVector:
    """
    Evaluate chi(t) = sum over I with nonempty L_I of (-1)^|I| t^(d - rank I)
    by enumerating subsets; supersets of inconsistent sets are skipped.
    """
    if arrangement.n > limit:
        raise OracleError(f"Subset enumeration is limited to {limit} hyperplanes, got {arrangement.n}")
    rows = arrangement.rows
    signed = [0] * (arrangement.dim + 1)
    stack: List[Tuple[int, int, FlatBasis]] = [(0, 0, FlatBasis(arrangement.dim))]
    while stack:
        start, size, basis = stack.pop()
        signed[basis.rank] += -1 if size % 2 else 1
        for index in range(start, arrangement.n):
            extended = basis.extend(rows[index])
            if extended.consistent:
                stack.append((index + 1, size + 1, extended))
    return WhitneyVector(tuple((-1) ** k * value for k, value in enumerate(signed)))


def _reduce_mod(value: Fraction, p: int) -> int:
    if value.denominator % p == 0:
        raise OracleError(f"Prime {p} divides the denominator of {value}; the prime is too small")
    return value.numerator * pow(value.denominator, -1, p) % p


def _require_rational(arrangement: Arrangement) -> None:
    if not arrangement.field.is_rational:
        raise OracleError(f"Finite-field counts need a rational arrangement, not {arrangement.field.tag}")
    if arrangement.dim > MAX_POINT_COUNT_DIM:
        raise OracleError(
            f"Point counts scan p^d points and are limited to d <= {MAX_POINT_COUNT_DIM}, got {arrangement.dim}"
        )


def count_points_mod_p(arrangement: Arrangement, p: int, progress: bool = False) -> int:
    """Points of F_p^d lying on none of the reduced hyperplanes."""
    _require_rational(arrangement)
    if not sympy.isprime(p):
        raise OracleError(f"{p} is not prime")
    dim = arrangement.dim
    if dim == 0:
        return 1
    grid = np.indices((p,) * dim, dtype=np.int64).reshape(dim, -1)
    covered = np.zeros(grid.shape[1], dtype=bool)
    for index, row in enumerate(tqdm(arrangement.rows, desc=f"Scanning F_{p}^{dim}", disable=not progress)):
        coefficients = np.array([_reduce_mod(Fraction(v), p) for v in row[:dim]], dtype=np.int64)
        if not coefficients.any():
            raise OracleError(f"Hyperplane {index + 1} degenerates modulo {p}; the prime is too small")
        constant = _reduce_mod(Fraction(row[dim]), p)
        covered |= (coefficients @ grid - constant) % p == 0
    return int((~covered).sum())


def _starting_prime(arrangement: Arrangement) -> int:
    bound = max(arrangement.n, 10)
    for row in arrangement.rows:
        for value in row:
            value = Fraction(value)
            bound = max(bound, abs(value.numerator), value.denominator)
    return int(sympy.nextprime(bound))


def charpoly_by_interpolation(
    arrangement: Arrangement,
    start: Optional[int] = None,
    attempts: int = 4,
) -> CharPoly:
    """
    Interpolate chi from point counts at d + 1 primes and check one more prime.
    On disagreement the primes are moved up and the computation repeated.
    """
    _require_rational(arrangement)
    dim = arrangement.dim
    if dim == 0:
        return CharPoly((1,))
    prime = start or _starting_prime(arrangement)
    for attempt in range(attempts):
        samples = []
        while len(samples) < dim + 2:
            try:
                samples.append((prime, count_points_mod_p(arrangement, prime)))
            except OracleError as exc:
                LOGGER.debug("Skipping prime %d: %s", prime, exc)
            prime = int(sympy.nextprime(prime))
        *fit, (check_prime, check_count) = samples
        expression = sympy.expand(sympy.interpolate(fit, _T))
        poly = sympy.Poly(expression, _T)
        integral = all(c.is_integer for c in poly.all_coeffs())
        if integral and poly.degree() <= dim and poly.eval(check_prime) == check_count:
            return CharPoly.from_sympy(expression, degree=dim)
        LOGGER.warning(
            "Point counts at primes %s do not fit a polynomial of degree %d (attempt %d); retrying with larger primes",
            [p for p, _ in samples],
            dim,
            attempt + 1,
        )
        prime = int(sympy.nextprime(prime * 10))
    raise OracleError("Primes too small: interpolation never verified; increase the starting prime")


__all__ = [
    "OracleError",
    "charpoly_by_interpolation",
    "count_points_mod_p",
    "whitney_bruteforce",
]
