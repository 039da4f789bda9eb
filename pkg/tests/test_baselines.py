import math

import numpy as np
import pytest

from evonas.baselines import (
    GaussianNBModel,
    evaluate_sklearn_style,
    fixed_ann,
    fixed_ann_genotype,
    gnb_fit,
    gnb_predict,
    knn_fit,
    knn_predict,
)
from evonas.data import kfold, synthetic_blobs
from evonas.genome import parse_genotype


def clusters(rng, n=40, gap=4.0):
    X = np.vstack(
        [rng.normal(-gap / 2, 0.3, size=(n // 2, 2)), rng.normal(gap / 2, 0.3, size=(n // 2, 2))]
    )
    y = np.array([0] * (n // 2) + [1] * (n // 2))
    return X, y


def test_gnb_separable_clusters_perfect(rng):
    X, y = clusters(rng)
    model = gnb_fit(X, y)
    assert np.array_equal(gnb_predict(model, X), y)


def test_gnb_tie_goes_to_class_zero():
    X = np.array([[-1.0], [1.0]])
    y = np.array([0, 1])
    model = gnb_fit(X, y)
    assert gnb_predict(model, np.array([[0.0]]))[0] == 0


def test_gnb_matches_direct_log_posterior(rng):
    X = rng.normal(size=(50, 3))
    y = rng.integers(0, 2, size=50)
    if len(np.unique(y)) < 2:
        y[0] = 1 - y[0]
    model = gnb_fit(X, y)
    pred = gnb_predict(model, X)
    for i, x in enumerate(X):
        scores = []
        for c in (0, 1):
            rows = X[y == c]
            prior = len(rows) / len(X)
            score = math.log(prior)
            for j in range(X.shape[1]):
                mu = rows[:, j].mean()
                var = max(rows[:, j].var(), 1e-9)
                score += -0.5 * (math.log(2 * math.pi * var) + (x[j] - mu) ** 2 / var)
            scores.append(score)
        assert pred[i] == (1 if scores[1] > scores[0] else 0)


def test_gnb_invariant_under_feature_shift(rng):
    X, y = clusters(rng)
    model_a = gnb_fit(X, y)
    model_b = gnb_fit(X + 100.0, y)
    queries = rng.normal(size=(20, 2))
    assert np.array_equal(gnb_predict(model_a, queries), gnb_predict(model_b, queries + 100.0))


def test_gnb_requires_both_classes():
    with pytest.raises(ValueError):
        gnb_fit(np.zeros((5, 2)), np.zeros(5, dtype=int))


def test_gnb_variance_floor():
    X = np.array([[1.0], [1.0], [2.0], [2.0]])
    y = np.array([0, 0, 1, 1])
    model = gnb_fit(X, y)
    assert np.all(model.variances > 0)


def test_knn_exact_training_point():
    X = np.array([[0.0, 0.0], [5.0, 5.0]])
    y = np.array([0, 1])
    model = knn_fit(X, y, k=1)
    assert knn_predict(model, np.array([[5.0, 5.0]]))[0] == 1


def test_knn_k_equals_n_gives_global_majority(rng):
    X = rng.normal(size=(9, 2))
    y = np.array([1, 1, 1, 1, 1, 0, 0, 0, 0])
    model = knn_fit(X, y, k=9)
    queries = rng.normal(size=(10, 2))
    assert np.all(knn_predict(model, queries) == 1)


def test_knn_matches_exhaustive_oracle(rng):
    X = rng.normal(size=(30, 4))
    y = rng.integers(0, 2, size=30)
    model = knn_fit(X, y, k=3)
    queries = rng.normal(size=(15, 4))
    pred = knn_predict(model, queries)
    for q, p in zip(queries, pred):
        dist = [(float(np.linalg.norm(X[i] - q)), i) for i in range(30)]
        dist.sort()  # distance ties resolve to the lower index
        top = dist[:3]
        votes = sum(y[i] for _, i in top)
        if votes != 3 - votes:
            expected = 1 if votes > 3 - votes else 0
        else:
            sum1 = sum(d for d, i in top if y[i] == 1)
            sum0 = sum(d for d, i in top if y[i] == 0)
            expected = 1 if sum1 < sum0 else 0
        assert p == expected


def test_knn_invariant_under_rotation(rng):
    X, y = clusters(rng)
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)))
    model_a = knn_fit(X, y, k=5)
    model_b = knn_fit(X @ q, y, k=5)
    queries = rng.normal(size=(20, 2))
    assert np.array_equal(knn_predict(model_a, queries), knn_predict(model_b, queries @ q))


def test_knn_rejects_bad_k():
    with pytest.raises(ValueError):
        knn_fit(np.zeros((3, 1)), np.array([0, 1, 0]), k=4)


def test_fixed_ann_genotype_decodes_as_documented():
    assert fixed_ann_genotype() == parse_genotype("1,16,relu,relu,sigmoid,adam,50,4")


def test_fixed_ann_deterministic():
    ds = synthetic_blobs(40, separation=3.0, seed=1)
    folds = kfold(ds, 4, 9)
    a = fixed_ann(ds, folds, seed=5)
    b = fixed_ann(ds, folds, seed=5)
    assert a.f_measure == b.f_measure
    assert a.per_fold == b.per_fold


def test_fixed_ann_solves_separable_blobs():
    ds = synthetic_blobs(60, separation=6.0, seed=2)
    folds = kfold(ds, 3, 4)
    record = fixed_ann(ds, folds, seed=0)
    assert record.f_measure == 1.0


def test_evaluate_sklearn_style_cross_validates(rng):
    ds = synthetic_blobs(60, separation=6.0, seed=3)
    folds = kfold(ds, 3, 5)
    f1, mae, rmse = evaluate_sklearn_style(gnb_fit, gnb_predict, ds, folds)
    assert f1 == 1.0
    assert mae == 0.0
    assert rmse == 0.0
