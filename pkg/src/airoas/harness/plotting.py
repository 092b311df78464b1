import logging
from pathlib import Path
from typing import Union

import pandas as pd
from matplotlib.figure import Figure

logger = logging.getLogger(__name__)


def plot_ablation(table: pd.DataFrame, path: Union[str, Path]) -> Path:
    """
    Mean discounted return against particle count, one line per solver.

    Error bars are one standard error of the mean.

    Args:
        table (pd.DataFrame): Summary rows with ``solver``, ``particles``,
            ``mean_return`` and ``sem`` columns.
        path (str or Path): Image file to write; the format follows the suffix.

    Returns:
        Path: The written file.
    """
    path = Path(path)
    figure = Figure(figsize=(6, 4))
    axes = figure.add_subplot()
    for solver, rows in table.sort_values("particles").groupby("solver", sort=True):
        axes.errorbar(
            rows["particles"],
            rows["mean_return"],
            yerr=rows["sem"],
            marker="o",
            capsize=3,
            label=str(solver),
        )
    axes.set_xscale("log")
    axes.set_xlabel("particles")
    axes.set_ylabel("mean discounted return")
    domains = sorted(table["domain"].astype(str).unique()) if "domain" in table else []
    axes.set_title(", ".join(domains))
    axes.legend()
    axes.grid(True, alpha=0.3)
    figure.tight_layout()
    figure.savefig(path)
    logger.info(f"Wrote ablation chart to {path}")
    return path
