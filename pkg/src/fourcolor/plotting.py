"""Report figures for stress runs."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .colorer import CaseTag  # noqa: E402

REPORT_STYLE = {
    "figure.figsize": (7.0, 3.6),
    "figure.dpi": 120,
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.bbox": "tight",
}

TAG_ORDER = [t.value for t in CaseTag]


def _bars(ax, labels, values, color):
    xs = range(len(labels))
    bars = ax.bar(xs, values, color=color, edgecolor="black", linewidth=0.5)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(labels, rotation=35, ha="right")
    for b, v in zip(bars, values):
        if v:
            ax.annotate(str(v), (b.get_x() + b.get_width() / 2, v), ha="center", va="bottom", fontsize=7)
    return bars


def case_histogram(cases: Counter, path: Path, title: str = "Branch usage") -> Path:
    """Bar chart of reinsertion counts per branch tag (log scale)."""
    values = [cases.get(t, 0) for t in TAG_ORDER]
    with plt.rc_context(REPORT_STYLE):
        fig, ax = plt.subplots()
        _bars(ax, TAG_ORDER, values, "steelblue")
        if any(values):
            ax.set_yscale("log")
        ax.set_ylabel("count")
        ax.set_title(title)
        fig.savefig(path)
        plt.close(fig)
    return path


def failure_histogram(observed: Counter, final: Counter, path: Path) -> Path:
    """Branch failures by ``tag:claim``: all observed vs. unrecovered."""
    keys = sorted(set(observed) | set(final))
    with plt.rc_context(REPORT_STYLE):
        fig, ax = plt.subplots()
        if keys:
            width = 0.4
            xs = range(len(keys))
            ax.bar([x - width / 2 for x in xs], [observed.get(k, 0) for k in keys], width, label="observed")
            ax.bar([x + width / 2 for x in xs], [final.get(k, 0) for k in keys], width, label="unrecovered")
            ax.set_xticks(list(xs))
            ax.set_xticklabels(keys, rotation=35, ha="right")
            ax.set_ylabel("count")
            ax.legend(frameon=False)
        else:
            ax.text(0.5, 0.5, "no branch failures", ha="center", va="center", transform=ax.transAxes)
            ax.set_axis_off()
        ax.set_title("Branch failures")
        fig.savefig(path)
        plt.close(fig)
    return path
