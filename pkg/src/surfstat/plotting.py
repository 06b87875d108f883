"""Matplotlib figures written next to the delimited reports."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .arithstat import HistogramReport, MomentReport, density  # noqa: E402

_META = {"Software": None}


def histogram_figure(rep: HistogramReport, path: str | Path) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    lefts = [b[0] for b in rep.bins]
    width = rep.bins[0][1] - rep.bins[0][0]
    ax.bar(lefts, rep.empirical_density, width=width, align="edge", color="0.8", edgecolor="0.5", label=f"A_p/p, p={rep.p}")
    t = np.linspace(-3, 3, 1201)
    ax.plot(t, [density("a", x) for x in t], lw=1.4, label=f"model a (KS {rep.ks_a:.3f})")
    ax.plot(t, [density("b", x) for x in t], lw=1.4, label=f"model b (KS {rep.ks_b:.3f})")
    ax.set_xlim(-3, 3)
    ax.set_ylim(0, max(1.2, 1.1 * max(rep.empirical_density)))
    ax.set_xlabel("t")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)
    return path


def moments_figure(reports: list[MomentReport], path: str | Path) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    m_max = max(r.m_max for r in reports)
    ms = np.arange(1, m_max + 1)
    w = 0.8 / (len(reports) + 1)
    targets = reports[0].targets
    ax.bar(ms - 0.4, targets, width=w, align="edge", color="0.3", label="target")
    for i, r in enumerate(reports, start=1):
        ax.bar(ms - 0.4 + i * w, [float(x) for x in r.normalized], width=w, align="edge", label=f"p={r.p}")
    ax.axhline(0, color="0.5", lw=0.6)
    ax.set_xticks(ms)
    ax.set_xlabel("m")
    ax.set_ylabel("normalized moment")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_META)
    plt.close(fig)
    return path
