"""Command-line interface.

Commands: evolve (full GA run with CSV + figure reports), eval (score one
genotype literal), baselines (GNB / kNN / fixed ANN comparison), folds
(print the cross-validation assignment per original row).

Options can also come from a flat key=value config file (--config); every
config key has a CLI flag of the same name, and explicit flags win.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .baselines import (
    evaluate_sklearn_style,
    fixed_ann,
    gnb_fit,
    gnb_predict,
    knn_fit,
    knn_predict,
)
from .data import Dataset, FeatureScaler, kfold, load_csv, shuffle, shuffle_permutation
from .evolution import EvolutionConfig, derive_seed, evaluate, run
from .genome import GeneSpace, parse_genotype
from .network import build, config_from_genotype, fit
from .reporting import (
    summary_lines,
    write_diversity_csv,
    write_fittest,
    write_history_csv,
    write_summary,
)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise ValueError(f"must be a positive integer, got {text!r}")
    return value


def _rate(text):
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"must be a rate in [0, 1], got {text!r}")
    return value


def _bool(text):
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _int_range(text):
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"expected LO:HI, got {text!r}") from None


def _name_list(text):
    return tuple(p.strip().lower() for p in text.split(",") if p.strip())


def _label_map(text):
    mapping = {}
    for pair in text.split(","):
        if not pair.strip():
            continue
        if "=" not in pair:
            raise ValueError(f"label map entries look like name=0, got {pair!r}")
        key, value = pair.split("=", 1)
        mapping[key.strip()] = int(value)
    if not mapping:
        raise ValueError("empty label map")
    return mapping


def parse_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    for i, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}: line {i}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


class _Options:
    """CLI flag > config file > default, with one cast per key."""

    def __init__(self, args):
        self.args = args
        self.cfg = parse_config_file(args.config) if getattr(args, "config", None) else {}

    def get(self, key, cast, default):
        value = getattr(self.args, key, None)
        if value is not None:
            return value
        if key in self.cfg:
            return cast(self.cfg[key])
        return default


def _add_common(parser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--dataset", help="CSV dataset path")
    parser.add_argument(
        "--label-column",
        dest="label_column",
        help="label column name or index (default: last column)",
    )
    parser.add_argument(
        "--label-map",
        dest="label_map",
        type=_label_map,
        help="label text mapping, e.g. m=0,r=1",
    )
    parser.add_argument(
        "--drop-cols", dest="drop_cols", type=_name_list, help="columns to drop, e.g. id"
    )
    parser.add_argument("--seed", type=int, help="master seed (default 0)")
    parser.add_argument("--kfolds", type=_positive_int, help="cross-validation folds (default 5)")
    parser.add_argument(
        "--no-scale",
        dest="scale",
        action="store_const",
        const=False,
        help="disable per-fold feature standardization",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evonas",
        description="Evolve task-specific feed-forward binary classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    evolve = sub.add_parser("evolve", help="run an evolutionary search")
    _add_common(evolve)
    evolve.add_argument("--population", type=_positive_int, help="population size (default 25)")
    evolve.add_argument("--generations", type=_positive_int, help="generation limit (default 200)")
    evolve.add_argument(
        "--crossover-rate", dest="crossover_rate", type=_rate, help="default 0.77"
    )
    evolve.add_argument("--mutation-rate", dest="mutation_rate", type=_rate, help="default 0.01")
    evolve.add_argument("--selection", choices=("tournament", "roulette"))
    evolve.add_argument("--tournament-size", dest="tournament_size", type=_positive_int)
    evolve.add_argument("--elitism", type=int, help="elite count (default 2)")
    evolve.add_argument("--jobs", type=_positive_int, help="parallel evaluations (default 1)")
    evolve.add_argument("--out", help="output directory (default evonas_out)")
    evolve.add_argument(
        "--no-plots",
        dest="plots",
        action="store_const",
        const=False,
        help="skip rendering PNG figures",
    )
    evolve.add_argument(
        "--no-output-bias",
        dest="output_bias",
        action="store_const",
        const=False,
        help="freeze the output-layer bias at zero",
    )
    evolve.add_argument(
        "--binary-errors",
        dest="raw_errors",
        action="store_const",
        const=False,
        help="compute MAE/RMSE on thresholded predictions instead of raw outputs",
    )
    evolve.add_argument("--gene-hidden", dest="gene_hidden", type=_int_range, help="e.g. 1:3")
    evolve.add_argument("--gene-nodes", dest="gene_nodes", type=_int_range, help="e.g. 1:64")
    evolve.add_argument("--gene-epochs", dest="gene_epochs", type=_int_range, help="e.g. 1:100")
    evolve.add_argument("--gene-batch", dest="gene_batch", type=_int_range, help="e.g. 1:64")
    evolve.add_argument(
        "--gene-activations", dest="gene_activations", type=_name_list, help="activation set"
    )
    evolve.add_argument(
        "--gene-optimizers", dest="gene_optimizers", type=_name_list, help="optimizer set"
    )
    evolve.set_defaults(func=cmd_evolve)

    ev = sub.add_parser("eval", help="evaluate one genotype under the CV protocol")
    _add_common(ev)
    ev.add_argument(
        "--genotype",
        help="literal H,N,F_I,F_H,F_O,optimizer,epochs,batch e.g. 1,16,relu,relu,sigmoid,adam,50,4",
    )
    ev.add_argument(
        "--binary-errors",
        dest="raw_errors",
        action="store_const",
        const=False,
        help="compute MAE/RMSE on thresholded predictions instead of raw outputs",
    )
    ev.set_defaults(func=cmd_eval)

    base = sub.add_parser("baselines", help="run GNB, kNN and the fixed ANN")
    _add_common(base)
    base.add_argument("--knn-k", dest="knn_k", type=_positive_int, help="kNN neighbours (default 5)")
    base.set_defaults(func=cmd_baselines)

    folds = sub.add_parser("folds", help="print the fold assignment per original row")
    _add_common(folds)
    folds.set_defaults(func=cmd_folds)
    return parser


def _load_dataset(opts: _Options) -> Dataset:
    path = opts.get("dataset", str, None)
    if not path:
        raise ValueError("--dataset is required (flag or config file)")
    return load_csv(
        path,
        label_column=opts.get("label_column", str, "-1"),
        label_mapping=opts.get("label_map", _label_map, None),
        drop_columns=opts.get("drop_cols", _name_list, ()),
    )


def _protocol(opts: _Options, dataset: Dataset):
    """The shared run protocol: seeded shuffle, then seeded k-fold split."""
    seed = opts.get("seed", int, 0)
    k = opts.get("kfolds", _positive_int, 5)
    shuffled = shuffle(dataset, derive_seed(seed, "shuffle"))
    folds = kfold(shuffled, k, derive_seed(seed, "folds")) if k >= 2 else None
    return seed, shuffled, folds


def _gene_space(opts: _Options) -> GeneSpace:
    defaults = GeneSpace()
    return GeneSpace(
        hidden_layers=opts.get("gene_hidden", _int_range, defaults.hidden_layers),
        nodes=opts.get("gene_nodes", _int_range, defaults.nodes),
        epochs=opts.get("gene_epochs", _int_range, defaults.epochs),
        batch_size=opts.get("gene_batch", _int_range, defaults.batch_size),
        activations=opts.get("gene_activations", _name_list, defaults.activations),
        optimizers=opts.get("gene_optimizers", _name_list, defaults.optimizers),
    )


def cmd_evolve(args) -> int:
    opts = _Options(args)
    dataset = _load_dataset(opts)
    config = EvolutionConfig(
        population_size=opts.get("population", _positive_int, 25),
        generations=opts.get("generations", _positive_int, 200),
        crossover_rate=opts.get("crossover_rate", _rate, 0.77),
        mutation_rate=opts.get("mutation_rate", _rate, 0.01),
        tournament_size=opts.get("tournament_size", _positive_int, 2),
        elitism_size=opts.get("elitism", int, 2),
        selection=opts.get("selection", str, "tournament"),
        k_folds=opts.get("kfolds", _positive_int, 5),
        gene_space=_gene_space(opts),
        seed=opts.get("seed", int, 0),
        scale=opts.get("scale", _bool, True),
        output_bias=opts.get("output_bias", _bool, True),
        raw_errors=opts.get("raw_errors", _bool, True),
    )
    jobs = opts.get("jobs", _positive_int, 1)
    out_dir = Path(opts.get("out", str, "evonas_out"))
    out_dir.mkdir(parents=True, exist_ok=True)

    def progress(report):
        print(
            f"generation {report.generation}: best_f1={report.best_f1:.4f} "
            f"mean_f1={report.mean_f1:.4f}"
        )

    result = run(config, dataset, jobs=jobs, on_generation=progress)

    write_history_csv(result.history, out_dir / "history.csv")
    write_diversity_csv(result.history, out_dir / "diversity.csv")

    # retrain the elite on the full (shuffled) dataset for the shipped weights
    best = result.best
    features = result.dataset.features
    if config.scale:
        features = FeatureScaler().fit_transform(features)
    final_config = config_from_genotype(
        best.genotype, result.dataset.attribute_count, output_bias=config.output_bias
    )
    final_net = build(final_config, derive_seed(config.seed, "final", best.genotype.key()))
    fit(
        final_net,
        features,
        result.dataset.labels,
        seed=derive_seed(config.seed, "final-order", best.genotype.key()),
    )
    write_fittest(out_dir / "fittest.txt", best, final_net)
    write_summary(result, out_dir / "summary.txt")

    if opts.get("plots", _bool, True):
        from .plots import render_diversity, render_history

        render_history(result.history, out_dir / "fitness_history.png")
        render_diversity(result.history, out_dir / "diversity.png")

    for line in summary_lines(result):
        print(line)
    print(f"reports written to {out_dir}")
    return 0


def cmd_eval(args) -> int:
    opts = _Options(args)
    literal = opts.get("genotype", str, None)
    if not literal:
        raise ValueError("--genotype is required (flag or config file)")
    genotype = parse_genotype(literal)
    dataset = _load_dataset(opts)
    seed, shuffled, folds = _protocol(opts, dataset)
    record = evaluate(
        genotype,
        shuffled,
        folds,
        seed,
        scale=opts.get("scale", _bool, True),
        raw_errors=opts.get("raw_errors", _bool, True),
    )
    print(f"f1={record.f_measure:.3f} mae={record.mae:.3f} rmse={record.rmse:.3f}")
    return 0


def cmd_baselines(args) -> int:
    opts = _Options(args)
    dataset = _load_dataset(opts)
    seed, shuffled, folds = _protocol(opts, dataset)
    scale = opts.get("scale", _bool, True)
    k = opts.get("knn_k", _positive_int, 5)

    gnb = evaluate_sklearn_style(gnb_fit, gnb_predict, shuffled, folds, scale=scale)
    knn = evaluate_sklearn_style(
        lambda X, y: knn_fit(X, y, k=k), knn_predict, shuffled, folds, scale=scale
    )
    ann_record = fixed_ann(shuffled, folds, seed, scale=scale)
    ann = (ann_record.f_measure, ann_record.mae, ann_record.rmse)

    print(f"dataset: {dataset.name} ({dataset.n_instances} instances)")
    print(f"{'algorithm':<10}{'metric':<7}{'value':>8}")
    for name, (f1, mae_v, rmse_v) in (("GNB", gnb), ("KNN", knn), ("ANN", ann)):
        print(f"{name:<10}{'MAE':<7}{mae_v:>8.3f}")
        print(f"{name:<10}{'RMSE':<7}{rmse_v:>8.3f}")
        print(f"{name:<10}{'F1':<7}{f1:>8.3f}")
    return 0


def cmd_folds(args) -> int:
    opts = _Options(args)
    dataset = _load_dataset(opts)
    seed = opts.get("seed", int, 0)
    k = opts.get("kfolds", _positive_int, 5)
    perm = shuffle_permutation(dataset.n_instances, derive_seed(seed, "shuffle"))
    shuffled = shuffle(dataset, derive_seed(seed, "shuffle"))
    split = kfold(shuffled, k, derive_seed(seed, "folds"))
    fold_of_original = [0] * dataset.n_instances
    for position, original in enumerate(perm):
        fold_of_original[original] = int(split.assignments[position])
    print("row,fold")
    for row, fold in enumerate(fold_of_original):
        print(f"{row},{fold}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
