"""Render experiment summaries as figures on disk.

One chart in the style of the headline experiment: mean monochrome-edge
fraction after the flip step versus expected average degree, one series
per (model, n), with interquartile-range error bars.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .harness import SummaryRow

_MODEL_STYLE = {"rgg": dict(marker="o", linestyle="-"),
                "er": dict(marker="s", linestyle="--")}


def render_summary_figure(rows: Iterable[SummaryRow], path: str,
                          title: str = "Monochrome edges after one flip step") -> str:
    """Write the summary chart to `path` (format from extension). Returns path."""
    series: dict[tuple[str, int], list[SummaryRow]] = {}
    for row in rows:
        series.setdefault((row.model, row.n), []).append(row)
    if not series:
        raise ValueError("no summary rows to plot")

    n_values = sorted({n for _, n in series})
    cmap = plt.get_cmap("viridis")
    colors = {n: cmap(0.15 + 0.7 * i / max(1, len(n_values) - 1))
              for i, n in enumerate(n_values)}

    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    for (model, n), block in sorted(series.items()):
        block = sorted(block, key=lambda r: r.avg_degree)
        deg = [r.avg_degree for r in block]
        mean = [r.mean_after for r in block]
        err_lo = [max(0.0, m - r.q25_after) for m, r in zip(mean, block)]
        err_hi = [max(0.0, r.q75_after - m) for m, r in zip(mean, block)]
        ax.errorbar(deg, mean, yerr=[err_lo, err_hi], capsize=3, markersize=5,
                    color=colors[n], label=f"{model.upper()}, n={n}",
                    **_MODEL_STYLE.get(model, {}))

    ax.axhline(0.5, color="gray", linewidth=0.8, linestyle=":")
    ax.set_xlabel("expected average degree")
    ax.set_ylabel("fraction of monochrome edges")
    ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
