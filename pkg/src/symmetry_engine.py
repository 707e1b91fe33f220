"""
Breadth-first Whitney-number computation that merges symmetric nodes.

A node is a pair (H_I, H_J) with J = {level, ..., n-1}. Nodes waiting at a
level live in a ``LevelMap`` keyed by an orbit key of I under G_level, the
subgroup of G that maps {level, ..., n-1} onto itself. Equal keys mean
isomorphic pairs, so only the multiplicity is stored.

With level skipping (the default) a node is handled as follows:

* no branching index left: fold the multiplicity into b_|I|;
* first branching index j > level: re-park the node at level j;
* level itself is branching: the restriction child I + {level} moves to the
  next level, the deletion child is parked at the next branching index or
  folded when none is left.

Without level skipping every node advances exactly one level and the last
dictionary is folded at the end.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src.arrangement import Arrangement, classify_against, flat_basis
from src.permgroup import (
    GroupError,
    Perm,
    PermGroup,
    minimal_image_from_generators,
    pseudo_minimal_image,
)
from src.polynomial import WhitneyVector
from src.report import LevelStats
from src.settings import DEFAULT_SEED, DEFAULT_WORKERS, MINIMAL_IMAGE_BUDGET


LOGGER = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]
Node = Tuple[IndexSet, int]


class OrbitIdentification(str, Enum):
    PSEUDO = "pseudo"
    EXACT = "exact"
    NONE = "none"


@dataclass(frozen=True)
class EngineOptions:
    orbit_identification: OrbitIdentification = OrbitIdentification.PSEUDO
    seed: int = DEFAULT_SEED
    workers: int = DEFAULT_WORKERS
    skip_levels: bool = True
    central_shortcut: bool = True
    # Random elements per level for pseudo-minimal images; None means n.
    pool_size: Optional[int] = None
    minimal_image_budget: int = MINIMAL_IMAGE_BUDGET
    stabilizer_method: str = "backtrack"
    chunk_size: int = 1024
    progress: bool = False
    record_levels: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "orbit_identification", OrbitIdentification(self.orbit_identification)
        )
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if self.pool_size is not None and self.pool_size < 0:
            raise ValueError(f"pool_size must be non-negative, got {self.pool_size}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be positive, got {self.chunk_size}")


class LevelMap:
    """Orbit-node dictionary of one level: orbit key -> multiplicity."""

    __slots__ = ("level", "identifications", "_nodes")

    def __init__(self, level: int) -> None:
        self.level = level
        self.identifications = 0
        self._nodes: Dict[IndexSet, int] = {}

    def add(self, key: IndexSet, multiplicity: int) -> None:
        if key in self._nodes:
            self._nodes[key] += multiplicity
            self.identifications += 1
        else:
            self._nodes[key] = multiplicity

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, key: IndexSet) -> bool:
        return key in self._nodes

    def multiplicity(self, key: IndexSet) -> int:
        return self._nodes.get(key, 0)

    def total(self) -> int:
        return sum(self._nodes.values())

    def items(self) -> List[Node]:
        """Nodes in canonical key order."""
        return sorted(self._nodes.items())

    def as_dict(self) -> Dict[IndexSet, int]:
        return dict(self._nodes)


@dataclass
class EngineRun:
    whitney: WhitneyVector
    levels: List[LevelStats]
    group_order: int
    snapshots: Optional[List[Dict[IndexSet, int]]] = None


def level_stabilizers(group: PermGroup, method: str = "backtrack") -> List[PermGroup]:
    """G_t = {g : g{t, ..., n-1} = {t, ..., n-1}} for t = 0, ..., n."""
    n = group.degree
    stabilizers: List[Optional[PermGroup]] = [None] * (n + 1)
    stabilizers[0] = group
    stabilizers[n] = group
    if group.is_trivial:
        return [group] * (n + 1)
    for t in range(n - 1, 0, -1):
        previous = stabilizers[t + 1]
        init = previous.point_stabilizer(t) if method == "backtrack" else None
        stabilizers[t] = group.setwise_stabilizer(range(t, n), method=method, init_subgroup=init)
        LOGGER.debug("|G_%d| = %d", t, stabilizers[t].order())
    return stabilizers


@dataclass(frozen=True)
class _Context:
    arrangement: Arrangement
    identification: OrbitIdentification
    pools: Tuple[Tuple[Perm, ...], ...]
    skip_levels: bool
    central_shortcut: bool
    central: bool
    budget: int

    def key(self, indices: IndexSet, level: int) -> IndexSet:
        pool = self.pools[level]
        if not pool:
            return indices
        if self.identification is OrbitIdentification.PSEUDO:
            return pseudo_minimal_image(indices, pool)
        return minimal_image_from_generators(indices, pool, self.budget)


@dataclass
class _ChunkResult:
    inserts: List[Tuple[int, IndexSet, int]] = field(default_factory=list)
    folds: List[Tuple[int, int]] = field(default_factory=list)


def _expand(context: _Context, indices: IndexSet, level: int, multiplicity: int, out: _ChunkResult) -> None:
    arrangement = context.arrangement
    n = arrangement.n
    classification = classify_against(arrangement, flat_basis(arrangement, indices), level)
    branching = classification.branching

    if not context.skip_levels:
        children = [indices]
        if branching and branching[0] == level:
            children.append(indices + (level,))
        for child in children:
            out.inserts.append((level + 1, context.key(child, level + 1), multiplicity))
        return

    if not branching:
        out.folds.append((len(indices), multiplicity))
        return
    if branching[0] > level:
        target = branching[0]
        out.inserts.append((target, context.key(indices, target), multiplicity))
        return

    child = indices + (level,)
    if level + 1 == n:
        out.folds.append((len(child), multiplicity))
    else:
        out.inserts.append((level + 1, context.key(child, level + 1), multiplicity))

    rest = branching[1:]
    if not rest:
        out.folds.append((len(indices), multiplicity))
    elif context.central_shortcut and context.central and len(rest) == 1:
        out.folds.append((len(indices), multiplicity))
        out.folds.append((len(indices) + 1, multiplicity))
    else:
        target = rest[0]
        out.inserts.append((target, context.key(indices, target), multiplicity))


def _process_chunk(chunk: Sequence[Node], level: int, context: _Context) -> _ChunkResult:
    out = _ChunkResult()
    for indices, multiplicity in chunk:
        _expand(context, indices, level, multiplicity, out)
    return out


_WORKER_CONTEXT: Optional[_Context] = None


def _init_worker(context: _Context) -> None:
    global _WORKER_CONTEXT
    _WORKER_CONTEXT = context


def _process_chunk_in_worker(chunk: Sequence[Node], level: int) -> _ChunkResult:
    if _WORKER_CONTEXT is None:
        raise RuntimeError("Worker context was not initialised")
    return _process_chunk(chunk, level, _WORKER_CONTEXT)


def _chunks(items: Sequence[Node], size: int) -> List[Sequence[Node]]:
    return [items[start:start + size] for start in range(0, len(items), size)]


def _map_phase(
    items: Sequence[Node],
    level: int,
    context: _Context,
    executor: Optional[Executor],
    chunk_size: int,
) -> Iterator[_ChunkResult]:
    chunks = _chunks(items, chunk_size)
    if executor is None or len(chunks) < 2:
        return (_process_chunk(chunk, level, context) for chunk in chunks)
    return executor.map(_process_chunk_in_worker, chunks, itertools.repeat(level))


def _element_pools(
    stabilizers: Sequence[PermGroup], options: EngineOptions, n: int
) -> Tuple[Tuple[Perm, ...], ...]:
    identification = options.orbit_identification
    if identification is OrbitIdentification.NONE:
        return ((),) * (n + 1)
    pools = []
    for level, group in enumerate(stabilizers):
        if group.is_trivial:
            pools.append(())
        elif identification is OrbitIdentification.EXACT:
            pools.append(group.generators)
        else:
            size = n if options.pool_size is None else options.pool_size
            pools.append(tuple(group.random_elements(size, seed=[options.seed, level])))
        LOGGER.debug("Level %d: element pool of size %d", level, len(pools[-1]))
    return tuple(pools)


def run_symmetry(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
) -> EngineRun:
    """Whitney numbers with per-level statistics."""
    options = options or EngineOptions()
    n = arrangement.n
    group = group if group is not None else PermGroup.trivial(n)
    if group.degree != n:
        raise GroupError(
            f"Group acts on {group.degree} points but the arrangement has {n} hyperplanes"
        )

    if options.orbit_identification is OrbitIdentification.NONE:
        stabilizers = [group] * (n + 1)
    else:
        stabilizers = level_stabilizers(group, options.stabilizer_method)
    context = _Context(
        arrangement=arrangement,
        identification=options.orbit_identification,
        pools=_element_pools(stabilizers, options, n),
        skip_levels=options.skip_levels,
        central_shortcut=options.central_shortcut,
        central=arrangement.is_central(),
        budget=options.minimal_image_budget,
    )

    maps: List[Optional[LevelMap]] = [LevelMap(level) for level in range(n + 1)]
    maps[0].add((), 1)
    counts = [0] * (arrangement.dim + 1)
    stats = [LevelStats(level) for level in range(n + 1)]
    snapshots: Optional[List[Dict[IndexSet, int]]] = [] if options.record_levels else None

    executor: Optional[Executor] = None
    if options.workers > 1:
        executor = ProcessPoolExecutor(
            max_workers=options.workers, initializer=_init_worker, initargs=(context,)
        )
    try:
        for level in tqdm(range(n), desc="Levels", disable=not options.progress):
            started = time.perf_counter()
            current = maps[level]
            maps[level] = None
            items = current.items()
            stats[level].nodes = len(items)
            stats[level].identifications = current.identifications
            if snapshots is not None:
                snapshots.append(current.as_dict())
            for result in _map_phase(items, level, context, executor, options.chunk_size):
                for target, key, multiplicity in result.inserts:
                    maps[target].add(key, multiplicity)
                for size, multiplicity in result.folds:
                    counts[size] += multiplicity
                stats[level].folded += len(result.folds)
            stats[level].seconds = time.perf_counter() - started
            LOGGER.info(
                "Level %d: %d nodes, %d identifications, %d folded (%.3fs)",
                level,
                stats[level].nodes,
                stats[level].identifications,
                stats[level].folded,
                stats[level].seconds,
            )
    finally:
        if executor is not None:
            executor.shutdown()

    last = maps[n]
    stats[n].nodes = len(last)
    stats[n].identifications = last.identifications
    stats[n].folded = len(last)
    if snapshots is not None:
        snapshots.append(last.as_dict())
    for indices, multiplicity in last.items():
        counts[len(indices)] += multiplicity

    return EngineRun(WhitneyVector(tuple(counts)), stats, group.order(), snapshots)


def whitney_symmetry(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
) -> WhitneyVector:
    run = run_symmetry(arrangement, group, options)
    LOGGER.info(
        "Symmetry engine on %d hyperplanes, |G| = %d: %s", arrangement.n, run.group_order, run.whitney
    )
    return run.whitney


__all__ = [
    "EngineOptions",
    "EngineRun",
    "LevelMap",
    "OrbitIdentification",
    "level_stabilizers",
    "run_symmetry",
    "whitney_symmetry",
]
