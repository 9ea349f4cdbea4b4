"""Matplotlib figure rendering for family sweeps.

Companion to the CSV sweep output: stacks one panel per metric against
the family parameter and marks each panel's extremizer, so the
eccentricity/area/arc-length behavior of a family can be eyeballed next
to the raw numbers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = ["render_sweep_figure"]

_PANELS = (
    ("e2", "1 - b^2/a^2", "min"),
    ("area", "area", "max"),
    ("arc_length", "arc length", "max"),
)


def render_sweep_figure(rows: list[dict[str, float]], path: str) -> None:
    """Write a stacked-panel figure of the sweep metrics to ``path``."""
    if not rows:
        raise ValueError("no sweep rows to plot")
    vs = [row["v"] for row in rows]
    panels = [(key, label, kind) for key, label, kind in _PANELS if key in rows[0]]
    if not panels:
        raise ValueError("sweep rows carry no plottable metric")

    fig, axes = plt.subplots(len(panels), 1, sharex=True, figsize=(6.4, 2.2 * len(panels)))
    if len(panels) == 1:
        axes = [axes]
    for ax, (key, label, kind) in zip(axes, panels):
        ys = [row[key] for row in rows]
        ax.plot(vs, ys, lw=1.2)
        pick = min(range(len(ys)), key=ys.__getitem__) if kind == "min" else max(
            range(len(ys)), key=ys.__getitem__
        )
        ax.axvline(vs[pick], color="0.6", lw=0.8, ls="--")
        ax.set_ylabel(label)
    axes[-1].set_xlabel("v")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
