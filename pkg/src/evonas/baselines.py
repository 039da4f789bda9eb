"""Reference classifiers for comparison runs: Gaussian NB, kNN, fixed ANN."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, FeatureScaler, FoldSplit
from .evolution import FitnessRecord, evaluate
from .genome import Genotype
from .metrics import confusion, f_measure

VARIANCE_FLOOR = 1e-9


@dataclass(frozen=True)
class GaussianNBModel:
    priors: np.ndarray  # [2]
    means: np.ndarray  # [2 x features]
    variances: np.ndarray  # [2 x features], floored


def gnb_fit(X: np.ndarray, y: np.ndarray) -> GaussianNBModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    classes = np.unique(y)
    if len(classes) < 2:
        raise ValueError("Gaussian NB needs both classes in the training data")
    priors = np.empty(2)
    means = np.empty((2, X.shape[1]))
    variances = np.empty((2, X.shape[1]))
    for c in (0, 1):
        rows = X[y == c]
        priors[c] = len(rows) / len(X)
        means[c] = rows.mean(axis=0)
        variances[c] = np.maximum(rows.var(axis=0), VARIANCE_FLOOR)
    return GaussianNBModel(priors=priors, means=means, variances=variances)


def gnb_log_posterior(model: GaussianNBModel, X: np.ndarray) -> np.ndarray:
    """Unnormalized log posterior per class, shape [instances x 2]."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    out = np.empty((X.shape[0], 2))
    for c in (0, 1):
        diff = X - model.means[c]
        log_lik = -0.5 * np.sum(
            diff * diff / model.variances[c] + np.log(2.0 * np.pi * model.variances[c]), axis=1
        )
        out[:, c] = np.log(model.priors[c]) + log_lik
    return out


def gnb_predict(model: GaussianNBModel, X: np.ndarray) -> np.ndarray:
    """Class with the higher log posterior; exact ties go to class 0."""
    post = gnb_log_posterior(model, X)
    return (post[:, 1] > post[:, 0]).astype(np.int64)


@dataclass(frozen=True)
class KnnModel:
    train_x: np.ndarray
    train_y: np.ndarray
    k: int = 5

    def __post_init__(self):
        if not 1 <= self.k <= len(self.train_x):
            raise ValueError(f"k must be in [1, {len(self.train_x)}], got {self.k}")


def knn_fit(X: np.ndarray, y: np.ndarray, k: int = 5) -> KnnModel:
    return KnnModel(
        train_x=np.asarray(X, dtype=np.float64), train_y=np.asarray(y, dtype=np.int64), k=k
    )


def knn_predict(model: KnnModel, X: np.ndarray) -> np.ndarray:
    """Majority label of the k Euclidean-nearest training points.

    Equal distances resolve to the lower training index (stable sort);
    split votes go to the class with the smaller summed distance.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    out = np.empty(X.shape[0], dtype=np.int64)
    for i, query in enumerate(X):
        dist = np.sqrt(np.sum((model.train_x - query) ** 2, axis=1))
        nearest = np.argsort(dist, kind="stable")[: model.k]
        labels = model.train_y[nearest]
        ones = int(np.sum(labels == 1))
        zeros = model.k - ones
        if ones != zeros:
            out[i] = 1 if ones > zeros else 0
        else:
            sum1 = float(np.sum(dist[nearest][labels == 1]))
            sum0 = float(np.sum(dist[nearest][labels == 0]))
            out[i] = 1 if sum1 < sum0 else 0
    return out


def fixed_ann_genotype() -> Genotype:
    """The non-evolved reference network: 1x16 ReLU net, Adam, 50 epochs, batch 4."""
    return Genotype(
        hidden_layers=1,
        nodes=16,
        input_activation="relu",
        hidden_activation="relu",
        output_activation="sigmoid",
        optimizer="adam",
        epochs=50,
        batch_size=4,
    )


def fixed_ann(
    dataset: Dataset,
    folds: FoldSplit | None,
    seed: int,
    *,
    scale: bool = True,
    raw_errors: bool = True,
) -> FitnessRecord:
    """Evaluate the fixed ANN under the same cross-validation protocol."""
    return evaluate(
        fixed_ann_genotype(), dataset, folds, seed, scale=scale, raw_errors=raw_errors
    )


def evaluate_sklearn_style(
    fit_fn, predict_fn, dataset: Dataset, folds: FoldSplit | None, *, scale: bool = True
):
    """Cross-validate a fit/predict classifier pair; returns (f1, mae, rmse) means.

    Error metrics are on the thresholded predictions since these models
    emit hard labels.
    """
    f1s, maes, rmses = [], [], []
    fold_ids = range(folds.fold_count) if folds is not None else [None]
    for f in fold_ids:
        if f is None:
            train_x, train_y = dataset.features, dataset.labels
            test_x, test_y = dataset.features, dataset.labels
        else:
            tr, te = folds.train_indices(f), folds.test_indices(f)
            train_x, train_y = dataset.features[tr], dataset.labels[tr]
            test_x, test_y = dataset.features[te], dataset.labels[te]
        if scale:
            scaler = FeatureScaler().fit(train_x)
            train_x = scaler.transform(train_x)
            test_x = scaler.transform(test_x)
        model = fit_fn(train_x, train_y)
        pred = predict_fn(model, test_x)
        f1s.append(f_measure(confusion(pred, test_y)))
        maes.append(float(np.mean(np.abs(pred - test_y))))
        rmses.append(float(np.sqrt(np.mean((pred - test_y) ** 2))))
    n = len(f1s)
    return sum(f1s) / n, sum(maes) / n, sum(rmses) / n
