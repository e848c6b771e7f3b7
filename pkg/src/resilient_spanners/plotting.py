"""Figures for experiment reports, rendered straight to files."""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
    # fixed metadata keeps repeated renders byte-stable
    "svg.hashsalt": "resilient-spanners",
}


def new_figure(width: float = 4.5, ratio: float = 0.62):
    fig, ax = plt.subplots(figsize=(width, width * ratio))
    return fig, ax


def save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def _by_n(rows, key):
    grouped = defaultdict(list)
    for r in rows:
        grouped[r["n"]].append(r[key])
    return sorted(grouped), grouped


def plot_size_scaling(rows, path, bound_c: float | None = None) -> Path:
    """Spanner and resilient-spanner sizes against ``n^{3/2}``."""
    with plt.rc_context(STYLE):
        fig, ax = new_figure()
        for key, label, marker in (("spanner", "base spanner", "o"), ("resilient", "resilient", "s")):
            ns, grouped = _by_n(rows, key)
            ax.plot([n for n in ns for _ in grouped[n]], [v for n in ns for v in grouped[n]],
                    marker, ms=3, alpha=0.5, label=label)
            ax.plot(ns, [sum(grouped[n]) / len(grouped[n]) for n in ns], "-", lw=1)
        if bound_c is not None:
            ns, _ = _by_n(rows, "resilient")
            xs = [ns[0] + i * (ns[-1] - ns[0]) / 50 for i in range(51)]
            ax.plot(xs, [bound_c * x**1.5 for x in xs], "k--", lw=0.8, label=f"{bound_c:g} n^1.5")
        ax.set_xlabel("n")
        ax.set_ylabel("edges")
        ax.legend(frameon=False)
        return save(fig, path)


def plot_fragility_histogram(host_hist: dict, spanner_hist: dict, path) -> Path:
    """Side-by-side bars of fragility counts (infinite values drawn last)."""
    def order(k):
        return math.inf if k == "inf" else float(Fraction(k))

    keys = sorted(set(host_hist) | set(spanner_hist), key=order)
    with plt.rc_context(STYLE):
        fig, ax = new_figure()
        xs = range(len(keys))
        ax.bar([x - 0.2 for x in xs], [host_hist.get(k, 0) for k in keys], width=0.4, label="host")
        ax.bar([x + 0.2 for x in xs], [spanner_hist.get(k, 0) for k in keys], width=0.4, label="spanner")
        ax.set_xticks(list(xs))
        ax.set_xticklabels(keys, rotation=45 if len(keys) > 8 else 0)
        ax.set_xlabel("fragility")
        ax.set_ylabel("edges")
        ax.legend(frameon=False)
        return save(fig, path)


def plot_cycle_accounting(rows, path) -> Path:
    """Union size of selected backup cycles, split into new and cross edges, per run."""
    with plt.rc_context(STYLE):
        fig, ax = new_figure()
        new = [r["cycles"]["new"] for r in rows]
        cross = [r["cycles"]["cross"] for r in rows]
        xs = range(len(rows))
        ax.bar(xs, new, label="new", width=0.8)
        ax.bar(xs, cross, bottom=new, label="cross", width=0.8)
        ax.plot(xs, [2 * r["n"] for r in rows], "k_", ms=6, label="2n")
        ax.set_xlabel("run")
        ax.set_ylabel("union edges")
        ax.legend(frameon=False)
        return save(fig, path)


def plot_girth_checks(rows, path) -> Path:
    """Number of edges with fragility above sigma, against n, one series per sigma."""
    with plt.rc_context(STYLE):
        fig, ax = new_figure()
        by_sigma = defaultdict(list)
        for r in rows:
            by_sigma[r["sigma"]].append((r["n"], r["high_edges"]))
        for sigma in sorted(by_sigma):
            pts = sorted(by_sigma[sigma])
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "o", ms=3, label=f"sigma={sigma}")
        ax.set_xlabel("n")
        ax.set_ylabel("edges with fragility > sigma")
        ax.legend(frameon=False)
        return save(fig, path)


def render_suite(name: str, rows, outdir, bound_c: float | None = None) -> list[Path]:
    outdir = Path(outdir)
    if not rows:
        return []
    if name == "size":
        return [plot_size_scaling(rows, outdir / "size_scaling.png", bound_c),
                plot_cycle_accounting(rows, outdir / "cycle_accounting.png")]
    if name == "correctness":
        return [plot_cycle_accounting(rows, outdir / "cycle_accounting.png")]
    if name == "girth":
        return [plot_girth_checks(rows, outdir / "girth_high_edges.png")]
    if name == "fragility":
        host, span = defaultdict(int), defaultdict(int)
        for r in rows:
            for k, v in r["host_histogram"].items():
                host[k] += v
            for k, v in r["spanner_histogram"].items():
                span[k] += v
        return [plot_fragility_histogram(dict(host), dict(span), outdir / "fragility_histogram.png")]
    return []
