"""Figure rendering for evolve runs, written next to the CSV reports.

matplotlib is imported lazily with the Agg backend so headless runs and
library users who never plot pay nothing.
"""

from __future__ import annotations

from .evolution import GenerationReport
from .genome import GENE_NAMES

# genes with few possible values get one frequency line per value;
# wide numeric genes get a mean line with a min/max band instead
_MAX_CATEGORICAL_LINES = 10


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def render_history(history: list[GenerationReport], path) -> None:
    plt = _pyplot()
    gens = [r.generation for r in history]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(gens, [r.best_f1 for r in history], label="best F1", color="tab:blue")
    ax.plot(gens, [r.mean_f1 for r in history], label="mean F1", color="tab:orange")
    ax.plot(gens, [r.min_f1 for r in history], label="min F1", color="tab:gray", alpha=0.6)
    ax.set_xlabel("generation")
    ax.set_ylabel("fitness (F1 on test folds)")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="lower right")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_diversity(history: list[GenerationReport], path) -> None:
    plt = _pyplot()
    gens = [r.generation for r in history]
    fig, axes = plt.subplots(2, 4, figsize=(16, 7), sharex=True)
    for ax, gene in zip(axes.ravel(), GENE_NAMES):
        values = sorted({v for rep in history for v, _ in rep.gene_counts[gene]})
        if len(values) <= _MAX_CATEGORICAL_LINES:
            for value in values:
                counts = [dict(rep.gene_counts[gene]).get(value, 0) for rep in history]
                ax.plot(gens, counts, label=str(value))
            ax.set_ylabel("count")
            ax.legend(fontsize=7)
        else:
            means, lows, highs = [], [], []
            for rep in history:
                expanded = [v for v, c in rep.gene_counts[gene] for _ in range(c)]
                means.append(sum(expanded) / len(expanded))
                lows.append(min(expanded))
                highs.append(max(expanded))
            ax.plot(gens, means, color="tab:blue", label="mean")
            ax.fill_between(gens, lows, highs, color="tab:blue", alpha=0.2, label="min..max")
            ax.set_ylabel("value")
            ax.legend(fontsize=7)
        ax.set_title(gene)
        ax.grid(alpha=0.3)
    for ax in axes[1]:
        ax.set_xlabel("generation")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
