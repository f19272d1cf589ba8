"""Balanced accuracy, recall and precision of binary predictions."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class Confusion:
    """Counts of a binary confusion matrix, failure being positive."""

    tp: int
    fn: int
    tn: int
    fp: int


@dataclass(frozen=True)
class Metrics:
    """Scores of a model on a test set.

    Attributes:
        bac: Balanced accuracy.
        recall: Share of failure paths flagged.
        precision: Share of flagged paths that are failures.
        train_secs: Training time.
        predict_secs: Prediction time.
        degenerate: Whether a denominator was zero.
    """

    bac: float
    recall: float
    precision: float
    train_secs: float = 0.0
    predict_secs: float = 0.0
    degenerate: bool = False


def confusion(truth: np.ndarray, predicted: np.ndarray) -> Confusion:
    """Count outcomes of predictions against true labels."""
    truth = np.asarray(truth, dtype=bool)
    predicted = np.asarray(predicted, dtype=bool)
    return Confusion(
        tp=int(np.sum(truth & predicted)),
        fn=int(np.sum(truth & ~predicted)),
        tn=int(np.sum(~truth & ~predicted)),
        fp=int(np.sum(~truth & predicted)),
    )


def _ratio(numerator: int, denominator: int) -> Tuple[float, bool]:
    if denominator == 0:
        return 0.0, True
    return numerator / denominator, False


def balanced_accuracy(counts: Confusion) -> Tuple[float, bool]:
    """Mean of the recalls of both classes.

    Returns:
        tuple: The score and whether a class was missing, in which
            case its term counts as 0.
    """
    sensitivity, missing_pos = _ratio(counts.tp, counts.tp + counts.fn)
    specificity, missing_neg = _ratio(counts.tn, counts.tn + counts.fp)
    return 0.5 * (sensitivity + specificity), missing_pos or missing_neg


def score(
    truth: np.ndarray,
    predicted: np.ndarray,
    train_secs: float = 0.0,
    predict_secs: float = 0.0,
) -> Metrics:
    """Score predictions.

    Args:
        truth: True labels, 1 for failure.
        predicted: Predicted labels.
        train_secs: Training time to report.
        predict_secs: Prediction time to report.

    Returns:
        Metrics: The scores.
    """
    counts = confusion(truth, predicted)
    bac, degenerate = balanced_accuracy(counts)
    recall, no_failures = _ratio(counts.tp, counts.tp + counts.fn)
    precision, no_flags = _ratio(counts.tp, counts.tp + counts.fp)
    return Metrics(
        bac=bac,
        recall=recall,
        precision=precision,
        train_secs=round(train_secs, 3),
        predict_secs=round(predict_secs, 3),
        degenerate=degenerate or no_failures or no_flags,
    )
