"""Neuroevolution toolkit: a genetic algorithm evolves feed-forward binary
classifiers (architecture, activations, optimizer, epochs, batch size) for
a specific CSV dataset."""

from .data import Dataset, FoldSplit, feature_scale, kfold, load_csv, shuffle
from .evolution import (
    EvolutionConfig,
    FitnessRecord,
    GenerationReport,
    RunResult,
    evaluate,
    run,
    select_roulette,
    select_tournament,
    step_generation,
)
from .genome import GeneSpace, Genotype, crossover, mutate, parse_genotype, random_genotype
from .metrics import Confusion, confusion, f_measure, mae, rmse
from .network import (
    DenseNetwork,
    NetworkConfig,
    TrainReport,
    backprop,
    bce_loss,
    build,
    config_from_genotype,
    fit,
    forward,
    predict_binary,
    predict_raw,
)

__version__ = "0.1.0"

__all__ = [
    "Confusion",
    "Dataset",
    "DenseNetwork",
    "EvolutionConfig",
    "FitnessRecord",
    "FoldSplit",
    "GeneSpace",
    "GenerationReport",
    "Genotype",
    "NetworkConfig",
    "RunResult",
    "TrainReport",
    "backprop",
    "bce_loss",
    "build",
    "config_from_genotype",
    "confusion",
    "crossover",
    "evaluate",
    "f_measure",
    "feature_scale",
    "fit",
    "forward",
    "kfold",
    "load_csv",
    "mae",
    "mutate",
    "parse_genotype",
    "predict_binary",
    "predict_raw",
    "random_genotype",
    "rmse",
    "run",
    "select_roulette",
    "select_tournament",
    "shuffle",
    "step_generation",
    "__version__",
]
