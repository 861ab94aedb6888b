"""Scatter plots of generated-clause counts, written as standalone SVG."""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .experiment import DEFAULT_FLOWS, AreaLabel, FlowConfig, RunRecord, by_board, classify  # noqa: E402

POINTS_GID = "points"
AXES_GID = "plot-area"

AREA_COLORS = {
    AreaLabel.A: "#1f77b4",
    AreaLabel.B: "#d62728",
    AreaLabel.C: "#2ca02c",
    AreaLabel.D: "#7f7f7f",
}
PLAIN_COLOR = "#1f77b4"

_RC = {
    "svg.hashsalt": "heatflow",
    "svg.fonttype": "none",
    "path.simplify": False,
}


@dataclass(frozen=True)
class PlotSummary:
    points: int
    skipped: int
    x_range: Tuple[float, float]
    y_range: Tuple[float, float]


def _limits(values, log: bool) -> Tuple[float, float]:
    if not values:
        return (1.0, 10.0) if log else (0.0, 1.0)
    lo, hi = min(values), max(values)
    if lo == hi:
        # a single value has no extent; widen symmetrically
        if log:
            return lo / 2, hi * 2
        pad = abs(lo) * 0.05 or 1.0
        return lo - pad, hi + pad
    return float(lo), float(hi)


def emit_scatter_svg(records: Iterable[RunRecord], path, x_flow: FlowConfig = FlowConfig.VERTICAL,
                     y_flow: FlowConfig = FlowConfig.HORIZONTAL, log_axes: bool = False,
                     theta: Optional[float] = None, title: Optional[str] = None) -> PlotSummary:
    """One point per board at (generated under ``x_flow``, under ``y_flow``).

    Axis limits are the data extrema, so the outermost points sit on the
    frame. With ``theta`` set, points are colored by area; that needs the
    baseline run as well. Boards missing a flow are skipped and counted.
    """
    xs, ys, colors = [], [], []
    skipped = 0
    for board_id, flows in sorted(by_board(records).items()):
        if x_flow not in flows or y_flow not in flows:
            skipped += 1
            continue
        x, y = flows[x_flow].generated, flows[y_flow].generated
        if log_axes and (x <= 0 or y <= 0):
            skipped += 1
            continue
        color = PLAIN_COLOR
        if theta is not None:
            if all(f in flows for f in DEFAULT_FLOWS):
                color = AREA_COLORS[classify(*(flows[f] for f in DEFAULT_FLOWS), theta=theta)]
        xs.append(x)
        ys.append(y)
        colors.append(color)
    if skipped:
        warnings.warn(f"{skipped} board(s) skipped: missing {x_flow.value} or {y_flow.value} data",
                      stacklevel=2)

    x_range = _limits(xs, log_axes)
    y_range = _limits(ys, log_axes)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6.4, 6.0))
        try:
            ax.patch.set_gid(AXES_GID)
            if log_axes:
                ax.set_xscale("log")
                ax.set_yscale("log")
            ax.set_xlim(*x_range)
            ax.set_ylim(*y_range)
            ax.margins(0)
            if xs:
                pts = ax.scatter(xs, ys, s=12, c=colors, linewidths=0, clip_on=False, zorder=3)
                pts.set_gid(POINTS_GID)
            ax.set_xlabel(f"generated clauses, {x_flow.value} heat flow")
            ax.set_ylabel(f"generated clauses, {y_flow.value} heat flow")
            if title:
                ax.set_title(title)
            if theta is not None and xs:
                for label, color in AREA_COLORS.items():
                    ax.scatter([], [], s=12, c=color, label=f"area {label.value}")
                ax.legend(loc="upper left", frameon=False, fontsize="small")
            ax.grid(True, linewidth=0.3, alpha=0.5)
            description = (f"points={len(xs)} skipped={skipped} "
                           f"x={x_range[0]!r}..{x_range[1]!r} y={y_range[0]!r}..{y_range[1]!r}")
            fig.savefig(os.fspath(path), format="svg",
                        metadata={"Date": None, "Description": description})
        finally:
            plt.close(fig)
    return PlotSummary(len(xs), skipped, x_range, y_range)
