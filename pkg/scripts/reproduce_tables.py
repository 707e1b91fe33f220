"""
Recompute the Whitney-number tables of the arrangement families.

Run from the repository root:

    python -m scripts.reproduce_tables --families resonance threshold --max-d 5

Writes one CSV per family and a level-profile figure for resonance(6) to
``output/``.
"""

from __future__ import annotations

import argparse
import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, Tuple

import pandas as pd
from tqdm import tqdm

from src.arrangement import Arrangement
from src.counting import run_report
from src.families import crosspolytope, demicube, permutohedron, platonic, resonance, threshold
from src.permgroup import PermGroup
from src.report import generate_report
from src.settings import OUTPUT_DIR
from src.symmetry_engine import EngineOptions, OrbitIdentification
from src.utils import configure_logging
from src.visualization import plot_level_profile


LOGGER = logging.getLogger("reproduce-tables")

# Largest parameter reproduced at desk scale for each family.
DESK_LIMITS: Dict[str, int] = {
    "resonance": 6,
    "threshold": 5,
    "demicube": 6,
    "permutohedron": 4,
    "crosspolytope": 12,
}
FIRST_PARAMETER = {"demicube": 2}
BUILDERS: Dict[str, Callable[[int], Tuple[Arrangement, PermGroup]]] = {
    "resonance": resonance,
    "threshold": threshold,
    "demicube": demicube,
    "permutohedron": permutohedron,
    "crosspolytope": crosspolytope,
}


def family_table(name: str, max_d: int, options: EngineOptions) -> pd.DataFrame:
    rows: List[dict] = []
    first = FIRST_PARAMETER.get(name, 1)
    for d in tqdm(range(first, min(max_d, DESK_LIMITS[name]) + 1), desc=name):
        arrangement, group = BUILDERS[name](d)
        report = run_report(arrangement, group, options, label=f"{name}({d})")
        rows.append(
            {
                "family": name,
                "d": d,
                "n": arrangement.n,
                "|G|": report.group_order,
                "whitney": " ".join(map(str, report.whitney)),
                "chambers": report.chambers,
                "nodes": report.total_nodes,
                "seconds": round(report.seconds, 3),
            }
        )
    return pd.DataFrame(rows)


def platonic_table(options: EngineOptions) -> pd.DataFrame:
    rows = []
    for name in tqdm(("icosahedron", "dodecahedron", "cell24"), desc="platonic"):
        arrangement, group = platonic(name)
        report = run_report(arrangement, group, options, label=name)
        rows.append(
            {
                "family": "platonic",
                "name": name,
                "n": arrangement.n,
                "|G|": report.group_order,
                "whitney": " ".join(map(str, report.whitney)),
                "chambers": report.chambers,
                "seconds": round(report.seconds, 3),
            }
        )
    return pd.DataFrame(rows)


def level_profile(output_dir: Path, seed: int, workers: int) -> None:
    arrangement, group = resonance(6)
    reports = []
    for identification in OrbitIdentification:
        options = EngineOptions(orbit_identification=identification, seed=seed, workers=workers)
        reports.append(run_report(arrangement, group, options, label=identification.value))
    figure = plot_level_profile(reports, output_dir / "figures" / "resonance6_levels.png", "resonance(6)")
    generate_report(reports, output_dir / "resonance6_report.html", figure_path=figure)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Recompute the family tables.")
    parser.add_argument(
        "--families",
        nargs="+",
        default=list(BUILDERS) + ["platonic"],
        choices=list(BUILDERS) + ["platonic"],
    )
    parser.add_argument("--max-d", type=int, default=12)
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output-dir", type=Path, default=OUTPUT_DIR)
    parser.add_argument("--skip-profile", action="store_true", help="Do not run the resonance(6) comparison.")
    parser.add_argument("--log-level", default="INFO", help="Python logging level (default: INFO).")
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    configure_logging(args.log_level)
    args.output_dir.mkdir(parents=True, exist_ok=True)
    options = EngineOptions(seed=args.seed, workers=args.threads)
    started = time.perf_counter()
    for name in args.families:
        table = platonic_table(options) if name == "platonic" else family_table(name, args.max_d, options)
        path = args.output_dir / f"{name}.csv"
        table.to_csv(path, index=False)
        LOGGER.info("Wrote %s\n%s", path, table.to_string(index=False))
    if not args.skip_profile:
        level_profile(args.output_dir, args.seed, args.threads)
    LOGGER.info("All tables done in %.1fs", time.perf_counter() - started)


if __name__ == "__main__":
    main()
