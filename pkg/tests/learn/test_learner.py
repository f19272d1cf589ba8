from unittest.mock import MagicMock

from pytest import fixture, raises

from featurefinch.config.config_service_provider import ConfigServiceProvider
from featurefinch.config.settings import LearnConfig
from featurefinch.foundation.application import Application
from featurefinch.learn.evaluation import Detection
from featurefinch.learn.exceptions import EvaluationError
from featurefinch.learn.learn_service_provider import LearnServiceProvider
from featurefinch.learn.learner import Learner
from featurefinch.modelx.records import PathRecord, SequenceEntry


def record(status, functions, atoms, spec_id=None):
    sequence = tuple(
        SequenceEntry(f, "unit.flc", line) for line, f in enumerate(functions)
    )
    return PathRecord("AB", spec_id, status, [sequence], atoms)


@fixture
def records():
    normals = [
        record("normal", ["main", "send"], ["(Eq 0 checkRes)"])
        for _ in range(15)
    ]
    failures = [
        record(
            "failure", ["main", "check"], ["(Eq 1 checkRes)"], f"s{i % 2}"
        )
        for i in range(10)
    ]
    return normals + failures


@fixture
def learner():
    return Learner(
        LearnConfig(
            source="combined",
            model="nb",
            repeats=1,
            folds=2,
            rf_trees=5,
            top_k=1,
            fractions=[0.5],
        )
    )


def test_learner_defaults():
    learner = Learner()

    assert learner.source == "combined"
    assert learner.model == "svm"


def test_evaluate(learner, records):
    result = learner.evaluate(records)

    assert result.metrics.bac == 1.0
    assert len(result.cv_scores) == 2
    assert result.model.source == "combined"


def test_detect(learner, records):
    assert learner.detect(records, ["s1"]) == [Detection("s1", 5, 5)]


def test_partial(learner, records):
    result = learner.evaluate(records, cross_validation=False)

    scores = learner.partial(result, records)

    assert [score.fraction for score in scores] == [0.5]


def test_importance(learner, records):
    ranking = learner.importance(records)

    assert ranking[0][0] != "main"
    assert dict(ranking)["main"] == 0.0
    with raises(EvaluationError):
        learner.importance(records[:15])


def test_top_k(learner, records):
    result = learner.top_k(records)

    assert len(result.tokens) == 1
    assert result.tokens[0] != "main"


def test_learn_service_provider():
    mock_app = MagicMock()
    LearnServiceProvider().register(mock_app)

    mock_app.bind.assert_called_once()


def test_learner_follows_config():
    app = Application()
    ConfigServiceProvider(None, {"model": "svm", "top_k": 7}).register(app)
    LearnServiceProvider().register(app)

    learner = app.make("learner")

    assert isinstance(learner, Learner)
    assert learner.model == "svm"
    assert learner.config.top_k == 7
