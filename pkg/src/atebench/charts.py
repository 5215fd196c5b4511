"""RMSE-versus-n charts with the propensity-usage line-style convention.

One chart per experiment: x is the sample size on a log scale, y the Monte
Carlo RMSE, one line per estimator. Estimators using the true propensity
score draw solid, estimators using an estimated score dashed, and estimators
using no score dotted.

Each chart is written twice: as a hand-emitted SVG (deterministic byte
output, one <polyline> per estimator, no timestamps or generated ids) and as
a matplotlib PNG twin for quick viewing.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .data import Category
from .errors import DomainViolation, UnknownEstimator
from .estimators import CANONICAL_ORDER
from .montecarlo import McCellReport

SVG_DASH = {
    Category.TRUE_PROPENSITY: None,
    Category.ESTIMATED_PROPENSITY: "8,5",
    Category.NO_PROPENSITY: "2,4",
}
MPL_LINESTYLE = {
    Category.TRUE_PROPENSITY: "-",
    Category.ESTIMATED_PROPENSITY: "--",
    Category.NO_PROPENSITY: ":",
}
_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79",
)

_WIDTH, _HEIGHT = 760, 480
_PLOT = (70.0, 40.0, 550.0, 430.0)  # left, top, right, bottom


def color_for(estimator: str) -> str:
    try:
        return _PALETTE[CANONICAL_ORDER.index(estimator) % len(_PALETTE)]
    except ValueError:
        return _PALETTE[-1]


def _series_by_estimator(reports: list[McCellReport]) -> dict[str, list[McCellReport]]:
    series: dict[str, list[McCellReport]] = {}
    for r in sorted(reports, key=lambda r: (r.estimator, r.n)):
        series.setdefault(r.estimator, []).append(r)
    return series


def _x_position(n: float, n_lo: float, n_hi: float) -> float:
    left, _, right, _ = _PLOT
    if n_hi <= n_lo:
        return (left + right) / 2.0
    frac = (math.log10(n) - math.log10(n_lo)) / (math.log10(n_hi) - math.log10(n_lo))
    return left + frac * (right - left)


def _linear_ticks(hi: float) -> list[float]:
    if hi <= 0.0:
        return [0.0, 1.0]
    step = 10 ** math.floor(math.log10(hi / 4)) if hi > 0 else 1.0
    for mult in (1.0, 2.0, 5.0, 10.0):
        if hi / (step * mult) <= 5.0:
            step *= mult
            break
    k = math.ceil(hi / step)
    return [i * step for i in range(k + 1)]


def render_experiment_svg(
    reports: list[McCellReport], path, *, log_y: bool = False, title: str = ""
) -> None:
    """Write one deterministic SVG line chart for a single experiment."""
    if not reports:
        raise DomainViolation("no aggregate rows to plot")
    series = _series_by_estimator(reports)
    ns = sorted({r.n for r in reports})
    n_lo, n_hi = ns[0], ns[-1]
    rmses = [r.rmse for r in reports if np.isfinite(r.rmse)]
    if not rmses:
        raise DomainViolation("no finite RMSE values to plot")

    left, top, right, bottom = _PLOT
    if log_y:
        positive = [v for v in rmses if v > 0.0] or [1e-12]
        y_lo = min(positive) / 1.5
        y_hi = max(positive) * 1.5
        ticks = [10.0 ** e for e in range(
            math.floor(math.log10(y_lo)), math.ceil(math.log10(y_hi)) + 1
        )]

        def y_pos(v: float) -> float:
            v = max(v, y_lo)
            frac = (math.log10(v) - math.log10(y_lo)) / (math.log10(y_hi) - math.log10(y_lo))
            return bottom - frac * (bottom - top)

    else:
        y_hi = max(rmses) * 1.05
        y_lo = 0.0
        ticks = _linear_ticks(y_hi)

        def y_pos(v: float) -> float:
            if y_hi <= y_lo:
                return bottom
            return bottom - (v - y_lo) / (y_hi - y_lo) * (bottom - top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{(left + right) / 2:.2f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
        f'<line x1="{left:.2f}" y1="{bottom:.2f}" x2="{right:.2f}" y2="{bottom:.2f}" '
        f'stroke="black" stroke-width="1"/>',
        f'<line x1="{left:.2f}" y1="{top:.2f}" x2="{left:.2f}" y2="{bottom:.2f}" '
        f'stroke="black" stroke-width="1"/>',
    ]
    for n in ns:
        xp = _x_position(n, n_lo, n_hi)
        parts.append(
            f'<line x1="{xp:.2f}" y1="{bottom:.2f}" x2="{xp:.2f}" y2="{bottom + 5:.2f}" '
            f'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{xp:.2f}" y="{bottom + 20:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{n}</text>'
        )
    for tick in ticks:
        yp = y_pos(tick)
        if yp < top - 1e-6 or yp > bottom + 1e-6:
            continue
        parts.append(
            f'<line x1="{left - 5:.2f}" y1="{yp:.2f}" x2="{left:.2f}" y2="{yp:.2f}" '
            f'stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 8:.2f}" y="{yp + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{(left + right) / 2:.2f}" y="{bottom + 40:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">n (log scale)</text>'
    )
    parts.append(
        f'<text x="18" y="{(top + bottom) / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {(top + bottom) / 2:.2f})">RMSE</text>'
    )

    legend_y = top + 10
    for name, cells in series.items():
        pts = [
            (_x_position(c.n, n_lo, n_hi), y_pos(c.rmse))
            for c in cells
            if np.isfinite(c.rmse)
        ]
        if not pts:
            continue
        dash = SVG_DASH[cells[0].category]
        dash_attr = "" if dash is None else f' stroke-dasharray="{dash}"'
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color_for(name)}" '
            f'stroke-width="1.8"{dash_attr}/>'
        )
        parts.append(
            f'<line x1="{right + 12:.2f}" y1="{legend_y:.2f}" x2="{right + 44:.2f}" '
            f'y2="{legend_y:.2f}" stroke="{color_for(name)}" stroke-width="1.8"{dash_attr}/>'
        )
        parts.append(
            f'<text x="{right + 50:.2f}" y="{legend_y + 4:.2f}" '
            f'font-family="sans-serif" font-size="11">{name}</text>'
        )
        legend_y += 18
    parts.append("</svg>")
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(parts) + "\n")


def render_experiment_png(
    reports: list[McCellReport], path, *, log_y: bool = False, title: str = ""
) -> None:
    """Matplotlib twin of the SVG chart."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series = _series_by_estimator(reports)
    fig, ax = plt.subplots(figsize=(7.6, 4.8))
    for name, cells in series.items():
        ns = [c.n for c in cells if np.isfinite(c.rmse)]
        vals = [c.rmse for c in cells if np.isfinite(c.rmse)]
        if not ns:
            continue
        ax.plot(
            ns, vals,
            linestyle=MPL_LINESTYLE[cells[0].category],
            marker="o", markersize=3,
            color=color_for(name), label=name, linewidth=1.6,
        )
    ax.set_xscale("log")
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("n (log scale)")
    ax.set_ylabel("RMSE")
    ax.set_title(title)
    ax.legend(loc="center left", bbox_to_anchor=(1.02, 0.5), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_charts(
    reports: list[McCellReport],
    out_dir,
    *,
    omit: tuple[str, ...] = (),
    zoom_true_pi: bool = False,
    log_y: bool = False,
) -> list[str]:
    """Render per-experiment SVG charts (plus PNG twins) into out_dir.

    ``zoom_true_pi`` restricts the view to estimators that use the true
    propensity score, mirroring the zoomed appendix-style figures.
    """
    for name in omit:
        if name not in CANONICAL_ORDER:
            raise UnknownEstimator(f"cannot omit unknown estimator {name!r}")
    kept = [r for r in reports if r.estimator not in omit]
    if zoom_true_pi:
        kept = [r for r in kept if r.category is Category.TRUE_PROPENSITY]
    if not kept:
        raise DomainViolation("nothing to plot after filtering")

    os.makedirs(out_dir, exist_ok=True)
    suffix = "_true_pi" if zoom_true_pi else ""
    written = []
    for experiment in sorted({r.experiment for r in kept}):
        exp_rows = [r for r in kept if r.experiment == experiment]
        stem = f"rmse_experiment{experiment}{suffix}"
        title = f"Experiment {experiment}"
        if zoom_true_pi:
            title += " (true propensity estimators)"
        svg_path = os.path.join(out_dir, stem + ".svg")
        png_path = os.path.join(out_dir, stem + ".png")
        render_experiment_svg(exp_rows, svg_path, log_y=log_y, title=title)
        render_experiment_png(exp_rows, png_path, log_y=log_y, title=title)
        written.extend([svg_path, png_path])
    return written
