"""
Level profiles of symmetry-engine runs: nodes and seconds per level.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import seaborn as sns

from src.report import RunReport, reports_frame
from src.settings import OUTPUT_DIR


LOGGER = logging.getLogger(__name__)
FIGURES_DIR = OUTPUT_DIR / "figures"


def _save_figure(fig: plt.Figure, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    LOGGER.info("Saved figure: %s", path)


def plot_level_profile(
    reports: Sequence[RunReport],
    output_path: Path | str = FIGURES_DIR / "level_profile.png",
    title: str = "",
) -> Path:
    """Two panels, nodes per level and time per level, one line per run."""
    output_path = Path(output_path)
    frame = reports_frame(reports)
    fig, (ax_nodes, ax_time) = plt.subplots(1, 2, figsize=(12, 4))
    if frame.empty:
        LOGGER.warning("No level statistics to plot.")
    else:
        sns.lineplot(data=frame, x="level", y="nodes", hue="run", marker="o", ax=ax_nodes)
        sns.lineplot(data=frame, x="level", y="seconds", hue="run", marker="o", ax=ax_time)
    ax_nodes.set_title("Nodes per level")
    ax_nodes.set_yscale("symlog")
    ax_time.set_title("Time per level")
    ax_time.set_ylabel("seconds")
    for ax in (ax_nodes, ax_time):
        ax.set_xlabel("level")
        ax.grid(True, linestyle="--", alpha=0.4)
    if title:
        fig.suptitle(title)
    _save_figure(fig, output_path)
    return output_path


__all__ = ["plot_level_profile"]
