import numpy as np
from pytest import approx

from featurefinch.learn.metrics import (
    Confusion,
    balanced_accuracy,
    confusion,
    score,
)


def test_confusion():
    truth = np.array([1, 1, 0, 0, 0])
    predicted = np.array([1, 0, 0, 1, 0])

    assert confusion(truth, predicted) == Confusion(tp=1, fn=1, tn=2, fp=1)


def test_balanced_accuracy():
    bac, degenerate = balanced_accuracy(Confusion(tp=3, fn=1, tn=4, fp=4))

    assert bac == approx(0.625)
    assert not degenerate


def test_missing_class_counts_as_zero():
    bac, degenerate = balanced_accuracy(Confusion(tp=0, fn=0, tn=3, fp=1))

    assert bac == approx(0.375)
    assert degenerate


def test_score():
    metrics = score(
        np.array([1, 1, 0, 0]), np.array([1, 0, 0, 0]), 1.23456, 0.0004
    )

    assert metrics.bac == approx(0.75)
    assert metrics.recall == approx(0.5)
    assert metrics.precision == approx(1.0)
    assert (metrics.train_secs, metrics.predict_secs) == (1.235, 0.0)
    assert not metrics.degenerate


def test_score_without_flags_is_degenerate():
    metrics = score(np.array([1, 0]), np.array([0, 0]))

    assert metrics.precision == 0.0
    assert metrics.degenerate
