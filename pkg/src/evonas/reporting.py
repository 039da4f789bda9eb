"""Writers for the run artifacts: history.csv, diversity.csv, fittest.txt.

All three files are deterministic functions of (config, seed); timing goes
to the separate summary, never into these files.
"""

from __future__ import annotations

from pathlib import Path

from .evolution import FitnessRecord, GenerationReport, RunResult
from .genome import GENE_NAMES
from .network import DenseNetwork, save_network


def write_history_csv(history: list[GenerationReport], path) -> None:
    """One row per generation: generation, best_f1, mean_f1, best_mae, best_rmse."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("generation,best_f1,mean_f1,best_mae,best_rmse\n")
        for rep in history:
            fh.write(
                f"{rep.generation},{rep.best_f1:.6f},{rep.mean_f1:.6f},"
                f"{rep.best_mae:.6f},{rep.best_rmse:.6f}\n"
            )


def write_diversity_csv(history: list[GenerationReport], path) -> None:
    """Per generation and gene, the population frequency of each value."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("generation,gene,value,count\n")
        for rep in history:
            for gene in GENE_NAMES:
                for value, count in rep.gene_counts[gene]:
                    fh.write(f"{rep.generation},{gene},{value},{count}\n")


def write_fittest(path, record: FitnessRecord, net: DenseNetwork) -> None:
    """Elite genotype (gene order: H,N,F_I,F_H,F_O,O,E,B), metrics, weights."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(record.genotype.key() + "\n")
        fh.write(f"f1={record.f_measure:.6f} mae={record.mae:.6f} rmse={record.rmse:.6f}\n")
        save_network(net, fh)


def summary_lines(result: RunResult) -> list[str]:
    """Human-oriented wrap-up including wall-clock training cost."""
    records = list(result.records.values())
    total_seconds = sum(r.train_seconds for r in records)
    lines = [
        f"dataset={result.dataset.name} instances={result.dataset.n_instances} "
        f"attributes={result.dataset.attribute_count}",
        f"generations_run={len(result.history)}",
        f"genotypes_evaluated={len(records)}",
        f"network_trainings={result.trainings}",
        f"total_training_seconds={total_seconds:.3f}",
        f"mean_seconds_per_evaluation={total_seconds / max(len(records), 1):.3f}",
        f"best_genotype={result.best.genotype.key()}",
        f"best_f1={result.best.f_measure:.6f}",
        f"best_mae={result.best.mae:.6f}",
        f"best_rmse={result.best.rmse:.6f}",
        f"best_train_seconds={result.best.train_seconds:.3f}",
    ]
    if result.best.failed_folds:
        lines.append(f"best_failed_folds={list(result.best.failed_folds)}")
    return lines


def write_summary(result: RunResult, path) -> None:
    Path(path).write_text("\n".join(summary_lines(result)) + "\n", encoding="utf-8")
