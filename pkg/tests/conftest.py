from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, List, Optional, Tuple

import numpy as np
import pytest

from src.arrangement import Arrangement, classify, flat_basis
from src.automorphisms import arrangement_rank
from src.permgroup import PermGroup, apply_to_set


RUNNING_COEFFS = [[-1, 1], [1, 0], [1, 1], [0, 1]]
RUNNING_CONSTANTS = [1, 0, 1, 0]
RUNNING_GROUP = [[2, 3, 1, 4], [2, 1, 3, 4]]


def running_arrangement() -> Arrangement:
    """-x+y=1, x=0, x+y=1, y=0: the first three meet at (0, 1)."""
    return Arrangement.from_rows(RUNNING_COEFFS, RUNNING_CONSTANTS)


def boolean_arrangement(d: int) -> Arrangement:
    return Arrangement.from_rows([[1 if i == j else 0 for j in range(d)] for i in range(d)])


def random_arrangements(count: int, seed: int = 7, max_n: int = 8, max_d: int = 3) -> List[Arrangement]:
    """Small integer arrangements, with repeated and parallel hyperplanes mixed in."""
    rng = np.random.default_rng(seed)
    arrangements = []
    while len(arrangements) < count:
        d = int(rng.integers(1, max_d + 1))
        n = int(rng.integers(0, max_n + 1))
        rows, constants = [], []
        for _ in range(n):
            if rows and rng.random() < 0.2:
                pick = int(rng.integers(len(rows)))
                rows.append(list(rows[pick]))
                shift = int(rng.integers(-1, 2)) if rng.random() < 0.5 else 0
                constants.append(constants[pick] + shift)
                continue
            row = [int(v) for v in rng.integers(-2, 3, size=d)]
            if not any(row):
                row[0] = 1
            rows.append(row)
            constants.append(int(rng.integers(-2, 3)) if rng.random() < 0.7 else 0)
        arrangements.append(Arrangement.from_rows(rows, constants, dim=d))
    return arrangements


@pytest.fixture
def running() -> Arrangement:
    return running_arrangement()


@pytest.fixture
def running_group() -> PermGroup:
    return PermGroup.from_one_line(RUNNING_GROUP, 4)


def _signatures(arrangement: Arrangement) -> Dict[Tuple[int, ...], Tuple[bool, Optional[int]]]:
    """Emptiness and rank of every flat L_I with |I| <= rank + 1."""
    max_size = min(arrangement.n, arrangement_rank(arrangement) + 1)
    table = {}
    for size in range(max_size + 1):
        for indices in combinations(range(arrangement.n), size):
            basis = flat_basis(arrangement, indices)
            table[indices] = (True, basis.rank) if basis.consistent else (False, None)
    return table


def automorphism_group(arrangement: Arrangement, full_up_to: int = 6) -> PermGroup:
    """
    All automorphisms for n <= ``full_up_to``; above that, the subgroup
    generated by the transpositions that are automorphisms.
    """
    n = arrangement.n
    table = _signatures(arrangement)
    if n <= full_up_to:
        candidates = permutations(range(n))
    else:
        candidates = []
        for i, j in combinations(range(n), 2):
            swap = list(range(n))
            swap[i], swap[j] = j, i
            candidates.append(tuple(swap))
    group = PermGroup.trivial(n)
    for perm in candidates:
        if all(table[apply_to_set(perm, indices)] == signature for indices, signature in table.items()):
            if not group.contains(perm):
                group = PermGroup(n, group.generators + (tuple(perm),))
    return group


def planted_symmetric_arrangements(
    count: int, seed: int = 11, max_orbits: int = 3
) -> List[Tuple[Arrangement, PermGroup]]:
    """
    Closures of random hyperplanes under coordinate reversal and x -> -x,
    with the two induced involutions as generators.
    """
    rng = np.random.default_rng(seed)
    cases = []
    while len(cases) < count:
        d = int(rng.integers(2, 5))
        orbits = int(rng.integers(1, max_orbits + 1))
        rows, constants = [], []
        for _ in range(orbits):
            row = [int(v) for v in rng.integers(-2, 3, size=d)]
            if not any(row):
                row[0] = 1
            constant = int(rng.integers(-2, 3))
            for image_row, image_constant in (
                (row, constant),
                (row[::-1], constant),
                (row, -constant),
                (row[::-1], -constant),
            ):
                rows.append(list(image_row))
                constants.append(image_constant)
        n = len(rows)
        reversal, negation = list(range(n)), list(range(n))
        for base in range(0, n, 4):
            reversal[base], reversal[base + 1] = base + 1, base
            reversal[base + 2], reversal[base + 3] = base + 3, base + 2
            negation[base], negation[base + 2] = base + 2, base
            negation[base + 1], negation[base + 3] = base + 3, base + 1
        cases.append((Arrangement.from_rows(rows, constants, dim=d), PermGroup(n, [reversal, negation])))
    return cases


def frontier_whitney(arrangement: Arrangement, indices: Tuple[int, ...], level: int) -> List[int]:
    """
    Whitney numbers of the restriction of H_level, ..., H_{n-1} to L_indices,
    shifted by |indices|: what a literal-mode node still contributes to b(A).
    """
    branching = classify(arrangement, indices, level).branching
    counts = [0] * (arrangement.dim + 1)
    for size in range(len(branching) + 1):
        for subset in combinations(branching, size):
            basis = flat_basis(arrangement, indices + subset)
            if basis.consistent:
                counts[basis.rank] += (-1) ** (size + basis.rank - len(indices))
    return counts
