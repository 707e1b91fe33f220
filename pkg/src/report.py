"""
Run reports for the Whitney-number engines and their HTML rendering.
"""

from __future__ import annotations

import datetime as dt
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from src.settings import OUTPUT_DIR


LOGGER = logging.getLogger(__name__)
REPORT_PATH = OUTPUT_DIR / "report.html"

pd.set_option("display.max_colwidth", 100)


@dataclass
class LevelStats:
    """What happened while processing one orbit-node dictionary."""

    level: int
    nodes: int = 0
    identifications: int = 0
    folded: int = 0
    seconds: float = 0.0


@dataclass
class RunReport:
    engine: str
    orbit_identification: str
    n: int
    dim: int
    group_order: int
    whitney: Tuple[int, ...]
    levels: List[LevelStats] = field(default_factory=list)
    seconds: float = 0.0
    label: str = ""

    @property
    def chambers(self) -> int:
        return sum(self.whitney)

    @property
    def total_nodes(self) -> int:
        return sum(level.nodes for level in self.levels)

    @property
    def peak_nodes(self) -> int:
        return max((level.nodes for level in self.levels), default=0)

    def counts(self) -> Tuple[Any, ...]:
        """Everything except timings; equal for equal inputs, seeds and options."""
        return (
            self.engine,
            self.orbit_identification,
            self.n,
            self.dim,
            self.group_order,
            self.whitney,
            tuple((s.level, s.nodes, s.identifications, s.folded) for s in self.levels),
        )

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(level) for level in self.levels])
        if frame.empty:
            frame = pd.DataFrame(columns=["level", "nodes", "identifications", "folded", "seconds"])
        frame.insert(0, "run", self.label or self.orbit_identification)
        return frame

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["whitney"] = list(self.whitney)
        payload["chambers"] = self.chambers
        return payload


def reports_frame(reports: Sequence[RunReport]) -> pd.DataFrame:
    frames = [report.to_frame() for report in reports]
    return pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()


def summary_frame(reports: Sequence[RunReport]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "run": report.label or report.orbit_identification,
                "engine": report.engine,
                "n": report.n,
                "d": report.dim,
                "|G|": report.group_order,
                "whitney": " ".join(map(str, report.whitney)),
                "chambers": report.chambers,
                "nodes": report.total_nodes,
                "peak level": report.peak_nodes,
                "seconds": round(report.seconds, 3),
            }
            for report in reports
        ]
    )


def render_table(df: pd.DataFrame, title: str) -> str:
    if df.empty:
        table_html = "<p>No data available.</p>"
    else:
        table_html = df.to_html(
            classes="table table-striped table-sm",
            index=False,
            justify="left",
            float_format=lambda value: f"{value:.4f}",
        )
    return f"""
    <h3>{title}</h3>
    <div style="max-height:500px; overflow:auto; border:1px solid #ccc; padding:0.5rem; margin-bottom:1rem;">
        {table_html}
    </div>
    """


def generate_report(
    reports: Sequence[RunReport],
    output_path: Path | str = REPORT_PATH,
    figure_path: Optional[Path | str] = None,
    title: str = "Whitney numbers run report",
) -> Path:
    """
    Write an HTML page with one summary table, one per-level table per run and
    an optional level-profile figure.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    timestamp = dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%d %H:%M UTC")

    html = f"""<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="utf-8">
    <title>{title}</title>
    <style>
        body {{ margin: 2rem; font-family: sans-serif; }}
        h1, h2, h3 {{ margin-top: 2rem; }}
        img.figure {{ max-width: 100%; height: auto; margin-bottom: 1.5rem; }}
        .table-sm td, .table-sm th {{ padding: 0.35rem; }}
    </style>
</head>
<body>
    <h1>{title}</h1>
    <p>Generated {timestamp}</p>
"""
    html += render_table(summary_frame(reports), "Summary")
    for report in reports:
        html += render_table(report.to_frame(), f"Levels: {report.label or report.orbit_identification}")

    if figure_path is not None:
        figure_path = Path(figure_path)
        try:
            source = figure_path.relative_to(output_path.parent)
        except ValueError:
            source = figure_path.resolve()
        html += f"""
    <h2>Level profile</h2>
    <div>
        <img class="figure" src="{source.as_posix()}" alt="Nodes and time per level">
    </div>
"""
    html += """
</body>
</html>
"""
    output_path.write_text(html, encoding="utf-8")
    LOGGER.info("Report written to %s", output_path)
    return output_path


__all__ = [
    "LevelStats",
    "RunReport",
    "generate_report",
    "render_table",
    "reports_frame",
    "summary_frame",
]
