"""Binary-classification metrics: confusion counts, F-measure, MAE, RMSE."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def _check_lengths(pred, truth):
    pred = np.asarray(pred, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if pred.shape != truth.shape:
        raise ValueError(
            f"prediction/truth length mismatch: {pred.shape} vs {truth.shape}"
        )
    if pred.size == 0:
        raise ValueError("metrics need at least one instance")
    return pred, truth


def confusion(pred, truth) -> Confusion:
    """Count tp/fp/tn/fn with class 1 as the positive class."""
    pred, truth = _check_lengths(pred, truth)
    tp = int(np.sum((pred == 1) & (truth == 1)))
    fp = int(np.sum((pred == 1) & (truth == 0)))
    tn = int(np.sum((pred == 0) & (truth == 0)))
    fn = int(np.sum((pred == 0) & (truth == 1)))
    return Confusion(tp=tp, fp=fp, tn=tn, fn=fn)


def f_measure(c: Confusion) -> float:
    """F1 score; every degenerate case (no positives predicted or present) is 0."""
    denom = 2 * c.tp + c.fp + c.fn
    if denom == 0:
        return 0.0
    return 2 * c.tp / denom


def mae(pred, truth) -> float:
    pred, truth = _check_lengths(pred, truth)
    return float(np.mean(np.abs(pred - truth)))


def rmse(pred, truth) -> float:
    pred, truth = _check_lengths(pred, truth)
    return float(np.sqrt(np.mean((pred - truth) ** 2)))
