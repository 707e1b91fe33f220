"""
Exact representation of affine hyperplane arrangements.

A hyperplane is stored as an augmented row ``(a_1, ..., a_d | c)`` for the
equation ``a . x = c``. Flats L_I are handled through canonical reduced row
echelon forms of the augmented rows indexed by I, so that emptiness of L_I is
plain inconsistency of the linear system and equal flats give equal bases.

Hyperplane indices are 0-based throughout the library.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from src.exact import RATIONALS, Field, Scalar, field_of


LOGGER = logging.getLogger(__name__)

Row = Tuple[Scalar, ...]
IndexSet = Tuple[int, ...]


class ArrangementError(ValueError):
    """Raised for malformed arrangements and invalid deletion/restriction steps."""


def normalize_row(row: Sequence[Scalar], dim: int) -> Row:
    """Scale ``row`` so that its first nonzero coefficient is 1."""
    for value in row[:dim]:
        if value:
            if value == 1:
                return tuple(row)
            return tuple(x / value for x in row)
    raise ArrangementError("A hyperplane needs a nonzero normal vector")


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane {x : coeffs . x = constant}."""

    coeffs: Row
    constant: Scalar

    def __post_init__(self) -> None:
        if not any(self.coeffs):
            raise ArrangementError(
                "Zero normal vector: the equation describes the empty set or the whole space"
            )

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def row(self) -> Row:
        return tuple(self.coeffs) + (self.constant,)

    def normalized_row(self) -> Row:
        return normalize_row(self.row, self.dim)

    def contains_origin(self) -> bool:
        return not self.constant


@dataclass(frozen=True)
class FlatBasis:
    """Canonical reduced row echelon basis of the rows {(a_i | c_i) : i in I}."""

    dim: int
    rows: Tuple[Row, ...] = ()
    pivots: Tuple[int, ...] = ()
    consistent: bool = True

    @property
    def rank(self) -> int:
        return sum(1 for pivot in self.pivots if pivot < self.dim)

    def reduce(self, row: Sequence[Scalar]) -> List[Scalar]:
        reduced = list(row)
        for pivot, basis_row in zip(self.pivots, self.rows):
            factor = reduced[pivot]
            if factor:
                reduced = [a - factor * b for a, b in zip(reduced, basis_row)]
        return reduced

    def extend(self, row: Sequence[Scalar]) -> "FlatBasis":
        """Basis of the flat cut out by one more equation."""
        if not self.consistent:
            return self
        reduced = self.reduce(row)
        column = next((c for c, value in enumerate(reduced) if value), None)
        if column is None:
            return self
        if column == self.dim:
            return FlatBasis(self.dim, self.rows, self.pivots, consistent=False)

        lead = reduced[column]
        if lead != 1:
            reduced = [value / lead for value in reduced]
        new_row = tuple(reduced)

        rows: List[Row] = []
        pivots: List[int] = []
        inserted = False
        for pivot, basis_row in zip(self.pivots, self.rows):
            factor = basis_row[column]
            if factor:
                basis_row = tuple(a - factor * b for a, b in zip(basis_row, new_row))
            if not inserted and pivot > column:
                rows.append(new_row)
                pivots.append(column)
                inserted = True
            rows.append(basis_row)
            pivots.append(pivot)
        if not inserted:
            rows.append(new_row)
            pivots.append(column)
        return FlatBasis(self.dim, tuple(rows), tuple(pivots), True)


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of affine hyperplanes in K^dim."""

    hyperplanes: Tuple[Hyperplane, ...]
    dim: int
    field: Field = RATIONALS

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ArrangementError(f"Negative ambient dimension {self.dim}")
        for index, hyperplane in enumerate(self.hyperplanes):
            if hyperplane.dim != self.dim:
                raise ArrangementError(
                    f"Hyperplane {index + 1} has {hyperplane.dim} coefficients, "
                    f"expected {self.dim}"
                )
            for value in hyperplane.row:
                if not self.field.contains(value):
                    raise ArrangementError(
                        f"Hyperplane {index + 1} has coefficient {value} outside {self.field.tag}"
                    )

    @classmethod
    def from_rows(
        cls,
        coefficients: Iterable[Sequence[Any]],
        constants: Optional[Sequence[Any]] = None,
        field: Optional[Field] = None,
        dim: Optional[int] = None,
    ) -> "Arrangement":
        """
        Build an arrangement from coefficient rows and optional constants.

        Values may be ints, Fractions, QuadraticNumbers or scalar literals.
        When ``field`` is omitted it is inferred from the values.
        """
        coefficients = [list(row) for row in coefficients]
        if constants is None:
            constants = [0] * len(coefficients)
        if len(constants) != len(coefficients):
            raise ArrangementError(
                f"{len(coefficients)} hyperplanes but {len(constants)} constant terms"
            )
        if dim is None:
            if not coefficients:
                raise ArrangementError("The dimension of an empty arrangement must be given")
            dim = len(coefficients[0])
        if field is None:
            field = field_of(value for row in coefficients for value in row)
        hyperplanes = tuple(
            Hyperplane(tuple(field(value) for value in row), field(constant))
            for row, constant in zip(coefficients, constants)
        )
        return cls(hyperplanes, dim, field)

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence[Any]],
        constants: Optional[Sequence[Any]] = None,
        field: Optional[Field] = None,
    ) -> "Arrangement":
        """A d x n matrix whose columns are the normal vectors."""
        if not matrix:
            raise ArrangementError("Empty coefficient matrix")
        widths = {len(row) for row in matrix}
        if len(widths) != 1:
            raise ArrangementError("Matrix rows have different lengths")
        columns = [list(column) for column in zip(*matrix)]
        return cls.from_rows(columns, constants, field=field, dim=len(matrix))

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @cached_property
    def rows(self) -> Tuple[Row, ...]:
        return tuple(hyperplane.row for hyperplane in self.hyperplanes)

    def duplicates(self) -> List[Tuple[int, int]]:
        """Pairs (i, j), i < j, of hyperplanes that coincide."""
        first_seen: dict = {}
        pairs = []
        for index, hyperplane in enumerate(self.hyperplanes):
            key = hyperplane.normalized_row()
            if key in first_seen:
                pairs.append((first_seen[key], index))
            else:
                first_seen[key] = index
        return pairs

    def without_duplicates(self) -> "Arrangement":
        dropped = {j for _, j in self.duplicates()}
        if not dropped:
            return self
        kept = tuple(h for index, h in enumerate(self.hyperplanes) if index not in dropped)
        return Arrangement(kept, self.dim, self.field)

    def deletion(self, index: int) -> "Arrangement":
        kept = self.hyperplanes[:index] + self.hyperplanes[index + 1:]
        return Arrangement(kept, self.dim, self.field)

    @cached_property
    def central(self) -> bool:
        """True when all hyperplanes share a point."""
        return flat_basis(self, range(self.n)).consistent

    def is_central(self) -> bool:
        return self.central


def flat_basis(arrangement: Arrangement, indices: Iterable[int]) -> FlatBasis:
    basis = FlatBasis(arrangement.dim)
    rows = arrangement.rows
    for index in sorted(indices):
        basis = basis.extend(rows[index])
        if not basis.consistent:
            break
    return basis


class Status(Enum):
    PROPER = "proper"
    REDUNDANT = "redundant"
    EMPTY = "empty"


@dataclass(frozen=True)
class Classification:
    """
    Status of each hyperplane ``start, ..., n-1`` relative to a flat L_I.

    ``branching`` lists the indices j whose restriction H_j ∩ L_I is a proper
    hyperplane of L_I that does not occur again at a later index.
    """

    start: int
    statuses: Tuple[Status, ...]
    rows: Tuple[Optional[Row], ...]
    branching: Tuple[int, ...]

    @property
    def j_min(self) -> Optional[int]:
        return self.branching[0] if self.branching else None

    def status(self, index: int) -> Status:
        return self.statuses[index - self.start]

    def row(self, index: int) -> Optional[Row]:
        return self.rows[index - self.start]

    def is_branching(self, index: int) -> bool:
        return index in self.branching


def classify_against(
    arrangement: Arrangement, basis: FlatBasis, start: int
) -> Classification:
    if not basis.consistent:
        raise ArrangementError("Cannot classify hyperplanes against an empty flat")
    dim = arrangement.dim
    statuses: List[Status] = []
    rows: List[Optional[Row]] = []
    for row in arrangement.rows[start:]:
        reduced = basis.reduce(row)
        if any(reduced[:dim]):
            statuses.append(Status.PROPER)
            rows.append(normalize_row(reduced, dim))
        else:
            statuses.append(Status.EMPTY if reduced[dim] else Status.REDUNDANT)
            rows.append(None)

    seen = set()
    branching = []
    for offset in range(len(rows) - 1, -1, -1):
        row = rows[offset]
        if row is None:
            continue
        if row not in seen:
            branching.append(start + offset)
            seen.add(row)
    branching.reverse()
    return Classification(start, tuple(statuses), tuple(rows), tuple(branching))


def classify(arrangement: Arrangement, indices: Iterable[int], start: int) -> Classification:
    """Classify hyperplanes ``start, ..., n-1`` against the flat L_indices."""
    return classify_against(arrangement, flat_basis(arrangement, indices), start)


@dataclass(frozen=True)
class RestrictionRep:
    """
    The pair (H_I, H_J) with J = {level, ..., n-1}, carrying a multiplicity.

    ``indices`` is the sorted tuple I of restricted hyperplanes, all < level.
    """

    indices: IndexSet
    level: int
    multiplicity: int = 1

    def __post_init__(self) -> None:
        if self.multiplicity < 1:
            raise ArrangementError(f"Multiplicity must be positive, got {self.multiplicity}")
        if any(index >= self.level for index in self.indices):
            raise ArrangementError(
                f"Restricted indices {self.indices} must precede level {self.level}"
            )


def delete(rep: RestrictionRep) -> RestrictionRep:
    """Drop hyperplane ``rep.level`` from the pending set."""
    return RestrictionRep(rep.indices, rep.level + 1, rep.multiplicity)


def restrict(
    rep: RestrictionRep,
    arrangement: Arrangement,
    classification: Optional[Classification] = None,
) -> RestrictionRep:
    """Restrict to hyperplane ``rep.level``; it has to be a branching index."""
    if rep.level >= arrangement.n:
        raise ArrangementError("No pending hyperplane left to restrict to")
    if classification is None or classification.start > rep.level:
        classification = classify(arrangement, rep.indices, rep.level)
    if not classification.is_branching(rep.level):
        status = classification.status(rep.level)
        raise ArrangementError(
            f"Hyperplane {rep.level + 1} is {status.value} or repeated on the flat "
            f"of {[i + 1 for i in rep.indices]}; restriction is not allowed"
        )
    return RestrictionRep(rep.indices + (rep.level,), rep.level + 1, rep.multiplicity)


def restriction_arrangement(arrangement: Arrangement, index: int) -> Arrangement:
    """
    The arrangement A^H in H = H_index, written in coordinates of H.

    H is parametrised by eliminating its first nonzero coordinate. Restrictions
    that are empty or all of H are dropped and repeated hyperplanes are merged.
    """
    dim = arrangement.dim
    pivot_row = normalize_row(arrangement.rows[index], dim)
    column = next(c for c in range(dim) if pivot_row[c])

    seen = set()
    hyperplanes = []
    for other, row in enumerate(arrangement.rows):
        if other == index:
            continue
        factor = row[column]
        reduced = [a - factor * b for a, b in zip(row, pivot_row)] if factor else list(row)
        del reduced[column]
        if not any(reduced[: dim - 1]):
            continue
        key = normalize_row(reduced, dim - 1)
        if key in seen:
            continue
        seen.add(key)
        hyperplanes.append(Hyperplane(key[:-1], key[-1]))
    return Arrangement(tuple(hyperplanes), dim - 1, arrangement.field)


__all__ = [
    "Arrangement",
    "ArrangementError",
    "Classification",
    "FlatBasis",
    "Hyperplane",
    "RestrictionRep",
    "Status",
    "classify",
    "classify_against",
    "delete",
    "flat_basis",
    "normalize_row",
    "restrict",
    "restriction_arrangement",
]
