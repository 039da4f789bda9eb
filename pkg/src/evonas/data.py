"""CSV dataset loading, shuffling, k-fold splitting and feature scaling.

Datasets and fold splits are immutable once built, so concurrent
evaluators can share them freely. All shuffling/splitting is a pure
function of an explicit seed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class DataError(ValueError):
    """Raised for malformed dataset files; messages carry row/column positions."""


@dataclass(frozen=True)
class Dataset:
    name: str
    features: np.ndarray  # [instances x attributes] float64
    labels: np.ndarray  # [instances] int, values in {0, 1}

    def __post_init__(self):
        feats = np.ascontiguousarray(self.features, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if feats.ndim != 2 or feats.shape[1] < 1:
            raise ValueError(f"features must be a 2-D matrix with >= 1 column, got shape {feats.shape}")
        if labels.ndim != 1 or labels.shape[0] != feats.shape[0]:
            raise ValueError(
                f"labels length {labels.shape} does not match {feats.shape[0]} feature rows"
            )
        if not np.all((labels == 0) | (labels == 1)):
            raise ValueError("labels must all be 0 or 1")
        feats.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labels)

    @property
    def n_instances(self) -> int:
        return self.features.shape[0]

    @property
    def attribute_count(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class FoldSplit:
    fold_count: int
    assignments: np.ndarray  # [instances], fold index in [0, fold_count)
    seed: int

    def __post_init__(self):
        a = np.ascontiguousarray(self.assignments, dtype=np.int64)
        a.flags.writeable = False
        object.__setattr__(self, "assignments", a)

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _has_header(first: list[str], second: list[str] | None) -> bool:
    # A header exists when some column is non-numeric in row 1 but numeric in
    # row 2. A text label column is text in both rows, so it never triggers.
    if second is None:
        return False
    return any(not _is_number(a) and _is_number(b) for a, b in zip(first, second))


def _resolve_column(spec, header: list[str] | None, width: int, what: str) -> int:
    if isinstance(spec, int) or (isinstance(spec, str) and spec.lstrip("-").isdigit()):
        idx = int(spec)
        if idx < 0:
            idx += width
        if not 0 <= idx < width:
            raise DataError(f"{what} index {spec} out of range for {width} columns")
        return idx
    if header is None:
        raise DataError(f"{what} {spec!r} given by name but the file has no header row")
    try:
        return header.index(spec)
    except ValueError:
        raise DataError(f"{what} {spec!r} not found in header {header}") from None


def load_csv(path, label_column, label_mapping=None, drop_columns=()) -> Dataset:
    """Load a CSV classification dataset.

    label_column and drop_columns entries may be column names (requires a
    header row) or 0-based indices. label_mapping maps label text to 0/1,
    case-insensitively; without it, label values must already be 0 or 1.
    The header row is auto-detected. Row order is preserved.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if not rows:
        raise DataError(f"{path}: file contains no data rows")

    width = len(rows[0])
    header = None
    first_data_line = 1
    if _has_header(rows[0], rows[1] if len(rows) > 1 else None):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
        first_data_line = 2
        if not rows:
            raise DataError(f"{path}: header only, no data rows")

    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataError(
                f"{path}: row {first_data_line + i}: expected {width} columns, found {len(row)}"
            )

    label_idx = _resolve_column(label_column, header, width, "label column")
    drop = {_resolve_column(c, header, width, "drop column") for c in drop_columns}
    if label_idx in drop:
        raise DataError(f"label column {label_column!r} is also listed in drop_columns")
    feature_cols = [j for j in range(width) if j != label_idx and j not in drop]
    if not feature_cols:
        raise DataError(f"{path}: no feature columns left after dropping")

    mapping = None
    if label_mapping is not None:
        mapping = {str(k).strip().lower(): int(v) for k, v in label_mapping.items()}
        if any(v not in (0, 1) for v in mapping.values()):
            raise DataError("label_mapping values must be 0 or 1")

    def col_name(j):
        return header[j] if header else str(j)

    features = np.empty((len(rows), len(feature_cols)), dtype=np.float64)
    labels = np.empty(len(rows), dtype=np.int64)
    for i, row in enumerate(rows):
        line = first_data_line + i
        raw_label = row[label_idx].strip()
        if mapping is not None and raw_label.lower() in mapping:
            labels[i] = mapping[raw_label.lower()]
        elif raw_label in ("0", "1"):
            labels[i] = int(raw_label)
        else:
            raise DataError(
                f"{path}: row {line}, column {col_name(label_idx)!r}: "
                f"unmappable label value {raw_label!r}"
            )
        for out_j, j in enumerate(feature_cols):
            cell = row[j].strip()
            try:
                features[i, out_j] = float(cell)
            except ValueError:
                raise DataError(
                    f"{path}: row {line}, column {col_name(j)!r}: "
                    f"non-numeric feature value {cell!r}"
                ) from None

    if len(np.unique(labels)) < 2:
        raise DataError(f"{path}: fewer than 2 distinct labels present")
    return Dataset(name=path.stem, features=features, labels=labels)


def write_csv(dataset: Dataset, path) -> None:
    """Write a dataset back out (header row, label column last, full precision)."""
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{j}" for j in range(dataset.attribute_count)] + ["label"])
        for x, y in zip(dataset.features, dataset.labels):
            writer.writerow([repr(float(v)) for v in x] + [int(y)])


def shuffle_permutation(n: int, seed: int) -> np.ndarray:
    return np.random.default_rng(seed).permutation(n)


def shuffle(dataset: Dataset, seed: int) -> Dataset:
    """Row-permute the dataset; feature row i and label i move together."""
    perm = shuffle_permutation(dataset.n_instances, seed)
    return Dataset(
        name=dataset.name,
        features=dataset.features[perm],
        labels=dataset.labels[perm],
    )


def kfold(dataset: Dataset, k: int, seed: int) -> FoldSplit:
    """Assign instances to k folds: seeded shuffle, then deal round-robin.

    Fold sizes differ by at most one; the split is a pure function of
    (instance count, k, seed).
    """
    n = dataset.n_instances
    if k < 2 or k > n:
        raise ValueError(f"k must be in [2, {n}], got {k}")
    order = np.random.default_rng(seed).permutation(n)
    assignments = np.empty(n, dtype=np.int64)
    assignments[order] = np.arange(n) % k
    return FoldSplit(fold_count=k, assignments=assignments, seed=seed)


class FeatureScaler:
    """Column standardization fit on training rows only; constant columns map to 0."""

    def __init__(self):
        self.mean_ = None
        self.scale_ = None

    def fit(self, X: np.ndarray) -> "FeatureScaler":
        X = np.asarray(X, dtype=np.float64)
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.scale_ = np.where(std == 0.0, 1.0, std)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        return (np.asarray(X, dtype=np.float64) - self.mean_) / self.scale_

    def fit_transform(self, X: np.ndarray) -> np.ndarray:
        return self.fit(X).transform(X)


def feature_scale(dataset: Dataset) -> Dataset:
    """Standardize every feature column to zero mean / unit variance."""
    scaled = FeatureScaler().fit_transform(dataset.features)
    return Dataset(name=dataset.name, features=scaled, labels=dataset.labels)


def synthetic_xor(n: int, noise: float = 0.15, seed: int = 0) -> Dataset:
    """Noisy 2-feature XOR: corners of the unit square with Gaussian jitter."""
    rng = np.random.default_rng(seed)
    corners = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    labels_by_corner = np.array([0, 1, 1, 0])
    which = np.arange(n) % 4
    features = corners[which] + rng.normal(0.0, noise, size=(n, 2))
    return Dataset(name="xor", features=features, labels=labels_by_corner[which])


def synthetic_blobs(
    n: int, separation: float = 3.0, seed: int = 0, label_noise: float = 0.0
) -> Dataset:
    """Two 2-D Gaussian clusters; label_noise flips that fraction of labels."""
    rng = np.random.default_rng(seed)
    labels = np.arange(n) % 2
    centers = np.where(labels[:, None] == 1, separation / 2.0, -separation / 2.0)
    features = centers + rng.normal(0.0, 1.0, size=(n, 2))
    if label_noise > 0.0:
        flip = rng.random(n) < label_noise
        labels = np.where(flip, 1 - labels, labels)
    return Dataset(name="blobs", features=features, labels=labels)
