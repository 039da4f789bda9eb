"""Genetic-algorithm loop: k-fold fitness evaluation, selection, breeding.

Reproducibility rules: every stochastic choice in the loop itself comes
from one master-seeded generator consumed sequentially, and every network
training derives its seed from (master seed, genotype, fold). Evaluations
therefore never depend on scheduling order, which makes parallel
evaluation (--jobs) bit-identical to the sequential run. Fitness records
are cached by genotype value, so unchanged clones are never retrained.
"""

from __future__ import annotations

import hashlib
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .data import Dataset, FeatureScaler, FoldSplit, kfold, shuffle
from .genome import (
    GENE_NAMES,
    GeneSpace,
    Genotype,
    crossover,
    mutate,
    parse_genotype,
    random_genotype,
)
from .metrics import confusion, f_measure
from .network import build, config_from_genotype, fit, predict_raw


def derive_seed(*parts) -> int:
    """Stable 63-bit seed from arbitrary labelled parts (platform-independent)."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.blake2b(text.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big") & 0x7FFFFFFFFFFFFFFF


@dataclass(frozen=True)
class FitnessRecord:
    genotype: Genotype
    f_measure: float
    mae: float
    rmse: float
    per_fold: tuple[tuple[float, float, float], ...]  # (f1, mae, rmse) per fold
    train_seconds: float
    evaluated_at_generation: int
    failed_folds: tuple[int, ...] = ()


@dataclass(frozen=True)
class EvolutionConfig:
    population_size: int = 25
    generations: int = 200
    crossover_rate: float = 0.77
    mutation_rate: float = 0.01
    tournament_size: int = 2
    elitism_size: int = 2
    selection: str = "tournament"
    k_folds: int = 5
    gene_space: GeneSpace = field(default_factory=GeneSpace)
    seed: int = 0
    scale: bool = True
    output_bias: bool = True
    raw_errors: bool = True

    def __post_init__(self):
        if self.population_size < self.elitism_size + 2:
            raise ValueError(
                f"population_size must be >= elitism_size + 2 "
                f"({self.population_size} < {self.elitism_size + 2})"
            )
        for name in ("crossover_rate", "mutation_rate"):
            rate = getattr(self, name)
            if not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {rate}")
        if self.selection not in ("tournament", "roulette"):
            raise ValueError(f"selection must be 'tournament' or 'roulette', got {self.selection!r}")
        if self.generations < 1:
            raise ValueError("generations must be >= 1")
        if self.tournament_size < 1 or self.elitism_size < 0:
            raise ValueError("tournament_size must be >= 1 and elitism_size >= 0")


@dataclass
class GenerationReport:
    generation: int
    best_f1: float
    mean_f1: float
    min_f1: float
    best_mae: float
    best_rmse: float
    gene_counts: dict[str, tuple[tuple[object, int], ...]]
    elites: tuple[Genotype, ...]


@dataclass
class RunResult:
    best: FitnessRecord
    history: list[GenerationReport]
    population: list[Genotype]
    records: dict[str, FitnessRecord]
    trainings: int
    dataset: Dataset
    folds: FoldSplit | None


def _fold_views(dataset: Dataset, folds: FoldSplit | None):
    """Yield (train_X, train_y, test_X, test_y) per fold; no folds = train-on-test."""
    if folds is None:
        yield dataset.features, dataset.labels, dataset.features, dataset.labels
        return
    for f in range(folds.fold_count):
        tr = folds.train_indices(f)
        te = folds.test_indices(f)
        yield dataset.features[tr], dataset.labels[tr], dataset.features[te], dataset.labels[te]


def evaluate(
    genotype: Genotype,
    dataset: Dataset,
    folds: FoldSplit | None,
    seed: int,
    *,
    scale: bool = True,
    output_bias: bool = True,
    raw_errors: bool = True,
    generation: int = 0,
) -> FitnessRecord:
    """Train and test one genotype on every fold; fitness is the mean test F1.

    A fold whose training diverges (non-finite loss or parameters) scores
    (f1=0, mae=1, rmse=1) and is listed in failed_folds. MAE/RMSE are
    computed on raw network outputs by default, on thresholded predictions
    when raw_errors is False.
    """
    started = time.perf_counter()
    per_fold: list[tuple[float, float, float]] = []
    failed: list[int] = []
    for fold_index, (train_x, train_y, test_x, test_y) in enumerate(_fold_views(dataset, folds)):
        if scale:
            scaler = FeatureScaler().fit(train_x)
            train_x = scaler.transform(train_x)
            test_x = scaler.transform(test_x)
        config = config_from_genotype(genotype, dataset.attribute_count, output_bias=output_bias)
        net = build(config, derive_seed(seed, "net", genotype.key(), fold_index))
        report = fit(
            net,
            train_x,
            train_y,
            seed=derive_seed(seed, "order", genotype.key(), fold_index),
        )
        if report.diverged or not net.finite():
            per_fold.append((0.0, 1.0, 1.0))
            failed.append(fold_index)
            continue
        raw = predict_raw(net, test_x)
        binary = (raw >= 0.5).astype(np.int64)
        f1 = f_measure(confusion(binary, test_y))
        errors = raw if raw_errors else binary
        fold_mae = float(np.mean(np.abs(errors - test_y)))
        fold_rmse = float(np.sqrt(np.mean((errors - test_y) ** 2)))
        per_fold.append((f1, fold_mae, fold_rmse))
    k = len(per_fold)
    return FitnessRecord(
        genotype=genotype,
        f_measure=sum(p[0] for p in per_fold) / k,
        mae=sum(p[1] for p in per_fold) / k,
        rmse=sum(p[2] for p in per_fold) / k,
        per_fold=tuple(per_fold),
        train_seconds=time.perf_counter() - started,
        evaluated_at_generation=generation,
        failed_folds=tuple(failed),
    )


def select_tournament(items, fitnesses, rng: np.random.Generator, tournament_size: int = 2):
    """Draw distinct entrants uniformly, return the fittest; ties break uniformly."""
    n = len(items)
    if n == 0:
        raise ValueError("cannot select from an empty population")
    drawn = rng.choice(n, size=min(tournament_size, n), replace=False)
    best = max(fitnesses[i] for i in drawn)
    winners = [i for i in drawn if fitnesses[i] == best]
    return items[winners[int(rng.integers(len(winners)))]]


def select_roulette(items, fitnesses, rng: np.random.Generator):
    """Fitness-proportional selection; all-zero fitness falls back to uniform."""
    n = len(items)
    if n == 0:
        raise ValueError("cannot select from an empty population")
    total = float(sum(fitnesses))
    if total <= 0.0:
        return items[int(rng.integers(n))]
    ticket = rng.random() * total
    acc = 0.0
    for i in range(n):
        acc += fitnesses[i]
        if ticket < acc:
            return items[i]
    return items[n - 1]


# ---------------------------------------------------------------------------
# Parallel evaluation: workers hold the dataset once; tasks are genotype keys.
# ---------------------------------------------------------------------------

_WORKER: dict = {}


def _init_worker(features, labels, fold_count, assignments, seed, scale, output_bias, raw_errors):
    _WORKER["dataset"] = Dataset("worker", features, labels)
    if assignments is None:
        _WORKER["folds"] = None
    else:
        _WORKER["folds"] = FoldSplit(fold_count, assignments, 0)
    _WORKER["seed"] = seed
    _WORKER["scale"] = scale
    _WORKER["output_bias"] = output_bias
    _WORKER["raw_errors"] = raw_errors


def _eval_task(key: str) -> FitnessRecord:
    return evaluate(
        parse_genotype(key),
        _WORKER["dataset"],
        _WORKER["folds"],
        _WORKER["seed"],
        scale=_WORKER["scale"],
        output_bias=_WORKER["output_bias"],
        raw_errors=_WORKER["raw_errors"],
    )


@dataclass
class EvolutionState:
    config: EvolutionConfig
    dataset: Dataset  # already shuffled
    folds: FoldSplit | None
    rng: np.random.Generator
    population: list[Genotype]
    cache: dict[str, FitnessRecord] = field(default_factory=dict)
    generation: int = 0
    trainings: int = 0


def _ensure_evaluated(state: EvolutionState, executor=None) -> None:
    cfg = state.config
    missing = []
    seen = set()
    for g in state.population:
        key = g.key()
        if key not in state.cache and key not in seen:
            seen.add(key)
            missing.append(g)
    if not missing:
        return
    folds_per_eval = state.folds.fold_count if state.folds is not None else 1
    if executor is not None:
        results = executor.map(_eval_task, [g.key() for g in missing])
        for g, record in zip(missing, results):
            state.cache[g.key()] = replace(record, evaluated_at_generation=state.generation)
            state.trainings += folds_per_eval
        return
    for g in missing:
        state.cache[g.key()] = evaluate(
            g,
            state.dataset,
            state.folds,
            cfg.seed,
            scale=cfg.scale,
            output_bias=cfg.output_bias,
            raw_errors=cfg.raw_errors,
            generation=state.generation,
        )
        state.trainings += folds_per_eval


def _make_report(state: EvolutionState) -> GenerationReport:
    records = [state.cache[g.key()] for g in state.population]
    fits = [r.f_measure for r in records]
    order = sorted(range(len(fits)), key=lambda i: (-fits[i], i))
    best = records[order[0]]
    gene_counts: dict[str, tuple] = {}
    for name in GENE_NAMES:
        counts = Counter(getattr(g, name) for g in state.population)
        gene_counts[name] = tuple(sorted(counts.items()))
    elites = tuple(state.population[i] for i in order[: state.config.elitism_size])
    return GenerationReport(
        generation=state.generation,
        best_f1=best.f_measure,
        mean_f1=float(np.mean(fits)),
        min_f1=float(np.min(fits)),
        best_mae=best.mae,
        best_rmse=best.rmse,
        gene_counts=gene_counts,
        elites=elites,
    )


def _selector(config: EvolutionConfig):
    if config.selection == "roulette":
        return lambda pop, fits, rng: select_roulette(pop, fits, rng)
    return lambda pop, fits, rng: select_tournament(pop, fits, rng, config.tournament_size)


def step_generation(state: EvolutionState, executor=None) -> tuple[EvolutionState, GenerationReport]:
    """Breed the next population (elitism + selection + crossover + mutation).

    Elites are copied unchanged and never mutated. Each parent pair crosses
    over with probability crossover_rate, otherwise the parents are cloned;
    every non-elite offspring then mutates with probability mutation_rate.
    New genotypes are evaluated; unchanged ones reuse their cached record.
    """
    cfg = state.config
    fits = [state.cache[g.key()].f_measure for g in state.population]
    order = sorted(range(len(fits)), key=lambda i: (-fits[i], i))
    new_pop = [state.population[i] for i in order[: cfg.elitism_size]]
    select = _selector(cfg)
    while len(new_pop) < cfg.population_size:
        parent_a = select(state.population, fits, state.rng)
        parent_b = select(state.population, fits, state.rng)
        if state.rng.random() < cfg.crossover_rate:
            children = crossover(parent_a, parent_b, state.rng)
        else:
            children = (parent_a, parent_b)
        for child in children:
            if len(new_pop) >= cfg.population_size:
                break
            if state.rng.random() < cfg.mutation_rate:
                child = mutate(child, cfg.gene_space, state.rng)
            new_pop.append(child)
    state.population = new_pop
    state.generation += 1
    _ensure_evaluated(state, executor)
    return state, _make_report(state)


def init_state(config: EvolutionConfig, dataset: Dataset) -> EvolutionState:
    """Shuffle the data, build the folds, and draw the initial population."""
    shuffled = shuffle(dataset, derive_seed(config.seed, "shuffle"))
    folds = None
    if config.k_folds >= 2:
        folds = kfold(shuffled, config.k_folds, derive_seed(config.seed, "folds"))
    rng = np.random.default_rng(derive_seed(config.seed, "ga"))
    population = [random_genotype(config.gene_space, rng) for _ in range(config.population_size)]
    return EvolutionState(
        config=config, dataset=shuffled, folds=folds, rng=rng, population=population
    )


def run(config: EvolutionConfig, dataset: Dataset, *, jobs: int = 1, on_generation=None) -> RunResult:
    """Full evolutionary run; stops at the generation limit or perfect fitness.

    jobs > 1 evaluates genotypes in parallel processes; results are
    identical to the sequential run. on_generation, when given, is called
    with each GenerationReport as it is produced.
    """
    state = init_state(config, dataset)
    executor = None
    try:
        if jobs > 1:
            assignments = state.folds.assignments if state.folds is not None else None
            fold_count = state.folds.fold_count if state.folds is not None else 0
            executor = ProcessPoolExecutor(
                max_workers=jobs,
                initializer=_init_worker,
                initargs=(
                    state.dataset.features,
                    state.dataset.labels,
                    fold_count,
                    assignments,
                    config.seed,
                    config.scale,
                    config.output_bias,
                    config.raw_errors,
                ),
            )
        _ensure_evaluated(state, executor)
        report = _make_report(state)
        history = [report]
        if on_generation is not None:
            on_generation(report)
        while state.generation + 1 < config.generations and report.best_f1 < 1.0:
            state, report = step_generation(state, executor)
            history.append(report)
            if on_generation is not None:
                on_generation(report)
    finally:
        if executor is not None:
            executor.shutdown()
    best_key = max(state.population, key=lambda g: state.cache[g.key()].f_measure).key()
    return RunResult(
        best=state.cache[best_key],
        history=history,
        population=state.population,
        records=dict(state.cache),
        trainings=state.trainings,
        dataset=state.dataset,
        folds=state.folds,
    )
