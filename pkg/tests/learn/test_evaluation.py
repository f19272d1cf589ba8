import numpy as np
from pytest import fixture, raises

from featurefinch.config.settings import LearnConfig
from featurefinch.learn.evaluation import (
    Detection,
    detection_rate,
    evaluate,
    feature_importance,
    fit_model,
    labels_of,
    leave_one_interaction_out,
    partial_data_eval,
    retrain_top_k,
    stratified_folds,
    stratified_split,
)
from featurefinch.learn.exceptions import EvaluationError
from featurefinch.modelx.records import PathRecord, SequenceEntry


def record(status, functions, atoms, spec_id=None):
    sequence = tuple(
        SequenceEntry(f, "unit.flc", line) for line, f in enumerate(functions)
    )
    return PathRecord("AB", spec_id, status, [sequence], atoms)


@fixture
def corpus():
    normals = [
        record(
            "normal",
            ["main", "send"],
            ["(Eq 0 checkRes)", f"(Lt {i % 4} x)"],
        )
        for i in range(24)
    ]
    failures = [
        record(
            "failure",
            ["main", "check", "sign"],
            ["(Eq 1 checkRes)", f"(Lt {i % 4} x)"],
            spec_id=f"s{i % 2 + 1}",
        )
        for i in range(12)
    ]
    return normals + failures


@fixture
def config():
    return LearnConfig(model="nb", repeats=2, folds=3, rf_trees=10)


def test_stratified_split():
    labels = np.array([0] * 10 + [1] * 5)

    train, test = stratified_split(labels, 0.2, seed=0)

    assert sorted(train.tolist() + test.tolist()) == list(range(15))
    assert labels[test].tolist().count(0) == 2
    assert labels[test].tolist().count(1) == 1


def test_small_classes_reach_both_sides():
    labels = np.array([0] * 10 + [1] * 2)

    train, test = stratified_split(labels, 0.1, seed=5)

    assert 1 in labels[train] and 1 in labels[test]


def test_stratified_folds():
    labels = np.array([0] * 6 + [1] * 3)

    folds = stratified_folds(labels, 3, seed=1)

    assert len(folds) == 3
    assert sorted(np.concatenate(folds).tolist()) == list(range(9))
    assert all(1 in labels[fold] for fold in folds)


def test_evaluate(corpus, config):
    result = evaluate(corpus, "combined", "nb", config)

    assert result.metrics.bac == 1.0
    assert len(result.cv_scores) == 6
    assert result.cv_bac == 1.0
    assert result.model.kind == "nb"
    assert not result.observed & set(result.test_indices.tolist())


def test_evaluate_without_cross_validation(corpus, config):
    result = evaluate(corpus, "stack", "svm", config, False)

    assert result.cv_scores == []
    assert result.metrics.recall == 1.0


def test_single_class_corpus(corpus, config):
    normals = [r for r in corpus if not r.is_failure]

    with raises(EvaluationError, match="single class"):
        evaluate(normals, "combined", "nb", config)


def test_leave_one_interaction_out(corpus, config):
    table = leave_one_interaction_out(corpus, "combined", "nb", config)

    assert table == [Detection("s1", 6, 6), Detection("s2", 6, 6)]
    assert detection_rate(table) == 100.0


def test_unknown_interaction(corpus, config):
    with raises(EvaluationError, match="s9"):
        leave_one_interaction_out(corpus, "stack", "nb", config, ["s9"])


def test_interaction_without_other_failures(config):
    records = [
        record("normal", ["main", "send"], ["(Eq 0 x)"]),
        record("failure", ["main", "check"], ["(Eq 1 x)"], "s1"),
    ]

    table = leave_one_interaction_out(records, "stack", "nb", config)

    assert table == [Detection("s1", 1, 0)]
    assert detection_rate([]) == 0.0


def test_partial_data_eval(corpus, config):
    result = evaluate(corpus, "combined", "nb", config, False)

    scores = partial_data_eval(result, corpus, [0.25, 0.5])

    assert [s.fraction for s in scores] == [0.25, 0.5]
    assert all(s.dropped == 0 for s in scores)


def test_feature_importance(corpus, config):
    model = fit_model(corpus, "stack", "rf", config)

    ranking = feature_importance(model)

    assert ranking[0][0] in {"check", "send", "sign"}
    assert dict(ranking)["main"] == 0.0
    assert np.isclose(sum(value for _, value in ranking), 1.0)
    with raises(EvaluationError):
        feature_importance(fit_model(corpus, "stack", "nb", config))


def test_retrain_top_k(corpus, config):
    result = retrain_top_k(corpus, "stack", "nb", config, k=2)

    assert len(result.tokens) == 2
    assert set(result.tokens) <= {"check", "main", "send", "sign"}
    assert result.metrics.recall == 1.0


def test_labels_of(corpus):
    assert labels_of(corpus).sum() == 12
