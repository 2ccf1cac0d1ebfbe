"""Figure rendering for criterion sweeps.

Two views: the kappa(eps) trace on log-log axes (one line per weight,
zero maxima masked away since they have no log image), and the sampled
Lambda field over the disc with the located maximizer marked.  Rendering
always goes to files through the Agg backend; no display is assumed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .carleson import CriterionReport


def render_trace_figure(traces: list[tuple[str, CriterionReport]], path: str) -> str:
    """Log-log kappa(eps) lines, one per labelled report."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, report in traces:
        eps = np.array([l.eps for l in report.levels])
        kappa = np.array([l.kappa for l in report.levels])
        keep = kappa > 0
        if keep.any():
            ax.loglog(eps[keep], kappa[keep], marker="o", markersize=3, label=label)
        else:
            # all-zero trace: a flat marker at the bottom keeps the legend honest
            ax.plot([], [], marker="o", markersize=3, label=f"{label} (identically 0)")
    ax.set_xlabel("eps")
    ax.set_ylabel("level maximum of Lambda")
    ax.invert_xaxis()
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_field_figure(report: CriterionReport, path: str) -> str | None:
    """Scatter of the sampled Lambda field; needs a report with samples."""
    if not report.samples:
        return None
    pts = np.array([s[0] for s in report.samples])
    vals = np.array([s[1] for s in report.samples])
    fig, ax = plt.subplots(figsize=(5.0, 4.5))
    sc = ax.scatter(pts.real, pts.imag, c=vals, s=4, cmap="viridis")
    ax.plot(report.argmax_a.real, report.argmax_a.imag, "rx", markersize=9,
            label="located maximum")
    circle = plt.Circle((0, 0), 1.0, fill=False, color="gray", linewidth=0.8)
    ax.add_patch(circle)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    fig.colorbar(sc, ax=ax, label="Lambda(a)")
    ax.legend(fontsize=8, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
