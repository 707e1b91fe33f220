"""
Checks that a permutation group acts by automorphisms of an arrangement.

g is an automorphism when, for every I, L_I is empty exactly when L_{gI} is and
both flats have the same rank otherwise. It suffices to test subsets with at
most rank + 1 elements: minimal inconsistent systems have at most rank + 1
rows and the rank of a consistent set is the size of its largest independent
subset.
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple

import numpy as np
from tqdm import tqdm

from src.arrangement import Arrangement, FlatBasis, flat_basis
from src.permgroup import GroupError, PermGroup, apply_to_set
from src.settings import DEFAULT_SEED, EXHAUSTIVE_LIMIT, SAMPLED_SUBSETS


LOGGER = logging.getLogger(__name__)

Signature = Tuple[bool, Optional[int]]


class ValidationError(ValueError):
    """Raised when a requested validation mode cannot run on the input."""


class ValidationMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


def _signature(basis: FlatBasis) -> Signature:
    return (True, basis.rank) if basis.consistent else (False, None)


def arrangement_rank(arrangement: Arrangement) -> int:
    """Largest rank of a nonempty flat, i.e. the rank of the normal vectors."""
    linear = FlatBasis(arrangement.dim)
    for row in arrangement.rows:
        linear = linear.extend(tuple(row[:-1]) + (arrangement.field.zero,))
    return linear.rank


def _small_subsets(arrangement: Arrangement, max_size: int) -> Iterator[Tuple[Tuple[int, ...], Signature]]:
    """Depth-first walk over all I with |I| <= max_size, extending bases incrementally."""
    rows = arrangement.rows
    stack = [((), FlatBasis(arrangement.dim))]
    while stack:
        indices, basis = stack.pop()
        yield indices, _signature(basis)
        if len(indices) == max_size:
            continue
        start = indices[-1] + 1 if indices else 0
        for index in range(arrangement.n - 1, start - 1, -1):
            stack.append((indices + (index,), basis.extend(rows[index])))


def _check_degree(group: PermGroup, arrangement: Arrangement) -> None:
    if group.degree != arrangement.n:
        raise GroupError(
            f"Group acts on {group.degree} points but the arrangement has {arrangement.n} hyperplanes"
        )


def _validate_exhaustive(group: PermGroup, arrangement: Arrangement, progress: bool) -> bool:
    if arrangement.n > EXHAUSTIVE_LIMIT:
        raise ValidationError(
            f"Exhaustive validation is limited to {EXHAUSTIVE_LIMIT} hyperplanes, got {arrangement.n}; "
            "use the sampled mode"
        )
    max_size = min(arrangement.n, arrangement_rank(arrangement) + 1)
    table: Dict[Tuple[int, ...], Signature] = dict(_small_subsets(arrangement, max_size))
    for indices, signature in tqdm(
        sorted(table.items()), desc="Validating subsets", disable=not progress
    ):
        for generator in group.generators:
            image = apply_to_set(generator, indices)
            if table[image] != signature:
                LOGGER.warning(
                    "Generator %s maps %s (%s) to %s (%s)",
                    [p + 1 for p in generator],
                    [i + 1 for i in indices],
                    signature,
                    [i + 1 for i in image],
                    table[image],
                )
                return False
    return True


def _validate_sampled(
    group: PermGroup, arrangement: Arrangement, samples: int, seed: int, progress: bool
) -> bool:
    if arrangement.n == 0:
        return True
    rng = np.random.default_rng(seed)
    max_size = min(arrangement.n, arrangement_rank(arrangement) + 1)
    for _ in tqdm(range(samples), desc="Sampling subsets", disable=not progress):
        size = int(rng.integers(1, max_size + 1))
        indices = tuple(sorted(int(i) for i in rng.choice(arrangement.n, size=size, replace=False)))
        signature = _signature(flat_basis(arrangement, indices))
        for generator in group.generators:
            image = apply_to_set(generator, indices)
            if _signature(flat_basis(arrangement, image)) != signature:
                LOGGER.warning(
                    "Generator %s breaks the flat of %s",
                    [p + 1 for p in generator],
                    [i + 1 for i in indices],
                )
                return False
    return True


def validate_subgroup_of_aut(
    group: PermGroup,
    arrangement: Arrangement,
    mode: ValidationMode | str | None = None,
    samples: int = SAMPLED_SUBSETS,
    seed: int = DEFAULT_SEED,
    progress: bool = False,
) -> bool:
    """
    Return True when every generator of ``group`` preserves emptiness and rank of flats.

    ``mode=None`` picks the exhaustive check up to the configured size bound and
    the sampled one above it.
    """
    _check_degree(group, arrangement)
    if group.is_trivial:
        return True
    if mode is None:
        mode = ValidationMode.EXHAUSTIVE if arrangement.n <= EXHAUSTIVE_LIMIT else ValidationMode.SAMPLED
    mode = ValidationMode(mode)
    if mode is ValidationMode.EXHAUSTIVE:
        valid = _validate_exhaustive(group, arrangement, progress)
    else:
        valid = _validate_sampled(group, arrangement, samples, seed, progress)
    LOGGER.info(
        "%s validation of %d generators on %d hyperplanes: %s",
        mode.value,
        len(group.generators),
        arrangement.n,
        "ok" if valid else "failed",
    )
    return valid


__all__ = [
    "ValidationError",
    "ValidationMode",
    "arrangement_rank",
    "validate_subgroup_of_aut",
]
