"""
Engine dispatch: Whitney numbers, characteristic polynomials, chamber counts
and run reports for any of the three engines.
"""

from __future__ import annotations

import logging
import time
from enum import Enum
from typing import Optional

from src.arrangement import Arrangement
from src.deletion_restriction import whitney_extended, whitney_simple
from src.polynomial import CharPoly, WhitneyVector
from src.permgroup import PermGroup
from src.report import RunReport
from src.symmetry_engine import EngineOptions, run_symmetry


LOGGER = logging.getLogger(__name__)


class Engine(str, Enum):
    SIMPLE = "simple"
    EXTENDED = "extended"
    SYMMETRY = "symmetry"


def _resolve(engine: Engine | str, group: Optional[PermGroup]) -> Engine:
    engine = Engine(engine)
    if group is not None and not group.is_trivial and engine is not Engine.SYMMETRY:
        LOGGER.info("A symmetry group is only used by the symmetry engine; %s ignores it", engine.value)
    return engine


def run_report(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
    engine: Engine | str = Engine.SYMMETRY,
    label: str = "",
) -> RunReport:
    """Compute the Whitney numbers and record per-level node counts and timings."""
    engine = _resolve(engine, group)
    options = options or EngineOptions()
    started = time.perf_counter()
    if engine is Engine.SYMMETRY:
        run = run_symmetry(arrangement, group, options)
        whitney, levels, order = run.whitney, run.levels, run.group_order
        identification = options.orbit_identification.value
    else:
        whitney = whitney_simple(arrangement) if engine is Engine.SIMPLE else whitney_extended(arrangement)
        levels, order, identification = [], 1, "none"
    report = RunReport(
        engine=engine.value,
        orbit_identification=identification,
        n=arrangement.n,
        dim=arrangement.dim,
        group_order=order,
        whitney=tuple(whitney),
        levels=levels,
        seconds=time.perf_counter() - started,
        label=label,
    )
    LOGGER.info(
        "%s engine: n=%d d=%d |G|=%d b=%s (%.3fs)",
        engine.value,
        report.n,
        report.dim,
        report.group_order,
        whitney,
        report.seconds,
    )
    return report


def whitney_numbers(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
    engine: Engine | str = Engine.SYMMETRY,
) -> WhitneyVector:
    return WhitneyVector(run_report(arrangement, group, options, engine).whitney)


def characteristic_polynomial(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
    engine: Engine | str = Engine.SYMMETRY,
) -> CharPoly:
    return whitney_numbers(arrangement, group, options, engine).charpoly()


def number_of_chambers(
    arrangement: Arrangement,
    group: Optional[PermGroup] = None,
    options: Optional[EngineOptions] = None,
    engine: Engine | str = Engine.SYMMETRY,
) -> int:
    """Chambers of a real arrangement (Zaslavsky): the sum of the Whitney numbers."""
    return whitney_numbers(arrangement, group, options, engine).chambers()


__all__ = [
    "Engine",
    "characteristic_polynomial",
    "number_of_chambers",
    "run_report",
    "whitney_numbers",
]
