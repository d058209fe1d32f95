"""Figure rendering for experiment reports.

Two diagnostic views of an ``ExperimentReport``: Monte Carlo variances
against the limiting variances per grid point, and the decay of the
linearization remainder across sample sizes.  Files are written next to
the report so a run leaves data and pictures side by side.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["variance_figure", "remainder_figure", "render_report_figures"]

_FIGSIZE = (6.4, 4.8)
_DPI = 150


def variance_figure(report, path):
    """Scatter Monte Carlo variances against their limiting values."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    top = 0.0
    for res in report.sizes:
        finite = np.isfinite(res.limit_variance)
        if not np.any(finite):
            continue
        x = res.limit_variance[finite]
        y = res.process_variance[finite]
        err = 2.0 * res.variance_mc_se[finite]
        ax.errorbar(
            x, y, yerr=err, fmt="o", markersize=3.5, capsize=2.0,
            alpha=0.75, label=f"n = {res.n}",
        )
        top = max(top, float(np.max(x)), float(np.max(y)))
    if top <= 0.0:
        top = 1.0
    line = np.array([0.0, 1.05 * top])
    ax.plot(line, line, color="0.4", linewidth=1.0, zorder=0)
    ax.set_xlabel("limiting variance")
    ax.set_ylabel("Monte Carlo variance")
    ax.set_title("process variance on the grid vs. the limit")
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def remainder_figure(report, path):
    """Plot how the remainder supremum shrinks across sample sizes."""
    ns = np.array([res.n for res in report.sizes], dtype=float)
    medians = np.array([res.remainder_median for res in report.sizes])
    q90 = np.array([res.remainder_q90 for res in report.sizes])
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.loglog(ns, medians, "o-", label="median over replications")
    ax.loglog(ns, q90, "s--", label="0.9 quantile")
    if medians[0] > 0.0:
        guide = medians[0] * (ns / ns[0]) ** (-0.25)
        ax.loglog(ns, guide, color="0.4", linewidth=1.0, label=r"$n^{-1/4}$ guide")
    ax.set_xlabel("sample size n")
    ax.set_ylabel("sup over grid of |remainder|")
    ax.set_title("linearization remainder decay")
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_report_figures(report, stem):
    """Write both report figures, returning the file paths."""
    written = [
        variance_figure(report, f"{stem}_variance.png"),
    ]
    if len(report.sizes) >= 1:
        written.append(remainder_figure(report, f"{stem}_remainder.png"))
    return written
