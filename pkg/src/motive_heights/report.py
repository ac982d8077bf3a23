"""Report rendering: convergence figures written next to the delimited output.

Only the `report` CLI path draws; the data subcommands stay figure-free.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["render_ratio_figure"]


def render_ratio_figure(
    bounds: Sequence[float],
    ratios: Sequence[float],
    path: str | Path,
    *,
    reference: float = 1.0,
    title: str = "convergence",
    reference_label: str = "predicted limit",
) -> Path:
    """Ratio-versus-ln(B) convergence plot with the predicted limit marked."""
    path = Path(path)
    xs = [math.log(b) for b in bounds]
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(xs, list(ratios), marker="o", ms=4, lw=1.2, color="#2c5282")
    ax.axhline(reference, color="#b83232", ls="--", lw=1.0, label=reference_label)
    ax.set_xlabel("ln B")
    ax.set_ylabel("ratio")
    ax.set_title(title)
    ax.grid(True, ls=":", alpha=0.4)
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
