"""
Whitney numbers by deletion and restriction.

``whitney_simple`` rewrites the arrangement explicitly:
b(A) = b(A minus H) + (0 | b(A^H)) for the last hyperplane H.

``whitney_extended`` never rewrites hyperplanes. It walks pairs (H_I, H_J) of
restricted and pending hyperplanes: every node contributes one leaf for
"delete everything pending" and one restriction child per branching index.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Tuple

from src.arrangement import (
    Arrangement,
    FlatBasis,
    classify_against,
    restriction_arrangement,
)
from src.polynomial import WhitneyVector


LOGGER = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _simple(arrangement: Arrangement) -> WhitneyVector:
    if arrangement.n == 0:
        return WhitneyVector((1,) + (0,) * arrangement.dim)
    last = arrangement.n - 1
    deleted = _simple(arrangement.deletion(last))
    restricted = _simple(restriction_arrangement(arrangement, last))
    return deleted + restricted.shifted()


def whitney_simple(arrangement: Arrangement) -> WhitneyVector:
    """Recursive deletion-restriction on explicit arrangements."""
    reduced = arrangement.without_duplicates()
    if reduced.n != arrangement.n:
        LOGGER.info("Merged %d repeated hyperplanes", arrangement.n - reduced.n)
    try:
        result = _simple(reduced)
    finally:
        _simple.cache_clear()
    LOGGER.info("Simple deletion-restriction on %d hyperplanes: %s", arrangement.n, result)
    return result


def whitney_extended(arrangement: Arrangement) -> WhitneyVector:
    """Deletion-restriction over index pairs, starting from (empty set, all hyperplanes)."""
    rows = arrangement.rows
    counts: List[int] = [0] * (arrangement.dim + 1)
    stack: List[Tuple[int, FlatBasis, int]] = [(0, FlatBasis(arrangement.dim), 0)]
    nodes = 0
    while stack:
        size, basis, level = stack.pop()
        nodes += 1
        counts[size] += 1
        if level == arrangement.n:
            continue
        classification = classify_against(arrangement, basis, level)
        for index in classification.branching:
            stack.append((size + 1, basis.extend(rows[index]), index + 1))
    result = WhitneyVector(tuple(counts))
    LOGGER.info(
        "Extended deletion-restriction on %d hyperplanes visited %d nodes: %s",
        arrangement.n,
        nodes,
        result,
    )
    return result


__all__ = ["whitney_extended", "whitney_simple"]
