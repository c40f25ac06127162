"""The three figure renderers.

fig1: paired box plots of the empirical biases B_prop and B_SYS over all
configurations of a Type I error reproduction CSV, with a red zero
reference line.

fig2: line graph of the biases against the total dimension p for the
N1 = N2 = 200 configurations, one line per (method, nominal level).
When several p1/p2 splits share the same p, the most balanced split
(smallest |p1 - p2|) represents that dimension.

bounds-vs-m: the four error bounds of a bound-table CSV against the
scale parameter m, log vertical axis.

Rendering is a pure function of the input rows: a fixed style, no
timestamps, and a fixed SVG hash salt, so re-rendering the same CSV
produces an identical file.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .data import column, load_rows, require_columns  # noqa: E402
from .errors import FigureError  # noqa: E402

FIGURE_IDS = ("fig1", "fig2", "bounds-vs-m")

_SAVEFIG_KWARGS = {"metadata": {"Date": None}}


@dataclass(frozen=True)
class FigureSpec:
    """One rendering request: input CSVs, figure id, output image path."""

    inputs: tuple[str, ...]
    figure_id: str
    output: str
    title: str | None = None
    dpi: int = 150

    def __post_init__(self) -> None:
        if self.figure_id not in FIGURE_IDS:
            raise FigureError(
                f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}"
            )
        if not self.inputs:
            raise FigureError("at least one input CSV is required")


def render(spec: FigureSpec) -> None:
    """Read the input CSVs and write the requested figure."""
    plt.rcParams["svg.hashsalt"] = "figures"
    rows = load_rows(list(spec.inputs))
    fig = {"fig1": _fig1, "fig2": _fig2, "bounds-vs-m": _bounds_vs_m}[spec.figure_id](
        rows, spec)
    try:
        fig.savefig(spec.output, dpi=spec.dpi, **_SAVEFIG_KWARGS)
    finally:
        plt.close(fig)


def _fig1(rows, spec: FigureSpec):
    require_columns(rows, ("B_prop", "B_SYS"))
    b_prop = column(rows, "B_prop")
    b_sys = column(rows, "B_SYS")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.boxplot([b_prop, b_sys], tick_labels=["B_prop", "B_SYS"], widths=0.5)
    ax.axhline(0.0, color="red", linestyle=(0, (4, 2)), linewidth=1.2, zorder=0)
    ax.set_ylabel("bias")
    ax.set_title(spec.title or "Empirical bias of the Type I error approximations")
    fig.tight_layout()
    return fig


def _fig2(rows, spec: FigureSpec):
    require_columns(rows, ("N1", "N2", "p1", "p2", "alpha", "B_prop", "B_SYS"))
    series: dict[tuple[str, float], dict[int, tuple[int, float]]] = {}
    for i, row in enumerate(rows, start=2):
        try:
            if int(row["N1"]) != 200 or int(row["N2"]) != 200:
                continue
            p1, p2 = int(row["p1"]), int(row["p2"])
            alpha = float(row["alpha"])
            vals = (float(row["B_prop"]), float(row["B_SYS"]))
        except (TypeError, ValueError):
            raise FigureError(f"row {i}: non-numeric cell in fig2 input") from None
        for method, v in zip(("B_prop", "B_SYS"), vals):
            pts = series.setdefault((method, alpha), {})
            prev = pts.get(p1 + p2)
            if prev is None or abs(p1 - p2) < prev[0]:
                pts[p1 + p2] = (abs(p1 - p2), v)
    if not series:
        raise FigureError("no N1 = N2 = 200 rows in the input")

    fig, ax = plt.subplots(figsize=(6.5, 4.2))
    styles = {"B_prop": "o-", "B_SYS": "s--"}
    for (method, alpha) in sorted(series, key=lambda k: (k[0], -k[1])):
        pts = series[(method, alpha)]
        ps = sorted(pts)
        ax.plot(ps, [pts[p][1] for p in ps], styles[method],
                label=f"{method}, alpha = {alpha:g}")
    ax.axhline(0.0, color="red", linestyle=(0, (4, 2)), linewidth=1.2, zorder=0)
    ax.set_xlabel("p")
    ax.set_ylabel("bias")
    ax.set_title(spec.title or "Bias against dimension at N1 = N2 = 200")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def _bounds_vs_m(rows, spec: FigureSpec):
    require_columns(rows, ("m", "BOUND1", "BOUND2", "BOUND3", "BOUND4"))
    m = column(rows, "m")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    order = sorted(range(len(m)), key=lambda i: m[i])
    for key, style in (("BOUND1", "o-"), ("BOUND2", "s-"),
                       ("BOUND3", "^-"), ("BOUND4", "d-")):
        vals = column(rows, key)
        ax.plot([m[i] for i in order], [vals[i] for i in order], style,
                label=key, markersize=4)
    ax.set_yscale("log")
    ax.set_xlabel("m")
    ax.set_ylabel("bound")
    ax.set_title(spec.title or "Approximation error bounds against the scale m")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig
