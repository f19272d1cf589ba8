"""Evaluation harness of the classification pipeline.

Every evaluation starts from a stratified train/test split. The
vocabulary, the sampler and the classifier only ever see training
records; the held-out records are used for scoring alone.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from featurefinch.config.settings import LearnConfig
from featurefinch.learn.classifiers import (
    Classifier,
    RandomForest,
    make_classifier,
)
from featurefinch.learn.documents import (
    Vocabulary,
    make_document,
    vectorize,
)
from featurefinch.learn.exceptions import EvaluationError, TrainingError
from featurefinch.learn.metrics import (
    Metrics,
    balanced_accuracy,
    confusion,
    score,
)
from featurefinch.learn.smote import smote
from featurefinch.modelx.records import PathRecord

logger = logging.getLogger(__name__)

MAX_REDRAWS = 10


@dataclass
class TrainedModel:
    """A classifier with the vocabulary it was trained on.

    Attributes:
        kind: Classifier kind.
        source: Data source of the tokens.
        vocabulary: Columns of the training matrix.
        classifier: The trained classifier.
    """

    kind: str
    source: str
    vocabulary: Vocabulary
    classifier: Classifier

    def matrix(
        self, records: Sequence[PathRecord], fraction: float = 0.0
    ) -> np.ndarray:
        """Count matrix of records over the model's vocabulary."""
        documents = [
            make_document(record, self.source, fraction) for record in records
        ]
        return self.vocabulary.transform(documents)

    def predict(self, records: Sequence[PathRecord]) -> np.ndarray:
        """Predicted labels, 1 for failure."""
        if not records:
            return np.zeros(0, dtype=int)
        return self.classifier.predict(self.matrix(records))


def labels_of(records: Sequence[PathRecord]) -> np.ndarray:
    """Labels of records, 1 for failure."""
    return np.array([int(record.is_failure) for record in records], int)


def fit_model(
    records: Sequence[PathRecord],
    source: str,
    kind: str,
    config: LearnConfig = None,
    seed: Optional[int] = None,
    tokens: Optional[Iterable[str]] = None,
) -> TrainedModel:
    """Train a model on records, balancing classes with SMOTE.

    Args:
        records: Training records.
        source: Data source.
        kind: Classifier kind.
        config: Learner settings.
        seed: Seed overriding the configured one.
        tokens: Tokens to restrict the vocabulary to.

    Returns:
        TrainedModel: The trained model.

    Raises:
        TrainingError: If the records hold a single class.
    """
    config = config or LearnConfig()
    seed = config.seed if seed is None else seed

    matrix, labels, vocabulary = vectorize(records, source)
    if tokens is not None:
        vocabulary = vocabulary.restrict(tokens)
        matrix, labels, _ = vectorize(records, source, vocabulary)
    if len(np.unique(labels)) < 2:
        raise TrainingError("training set has a single class")

    matrix, labels = smote(matrix, labels, config.k_neighbors, seed)
    classifier = make_classifier(kind, config, seed).fit(matrix, labels)
    return TrainedModel(kind, source, vocabulary, classifier)


def stratified_split(
    labels: np.ndarray, test_fraction: float, seed: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Split indices into training and test sets per class.

    Each class with at least two members puts at least one in each
    set.

    Returns:
        tuple: Sorted training and test indices.
    """
    rng = np.random.default_rng(seed)
    train, test = [], []
    for label in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == label))
        count = int(round(test_fraction * len(members)))
        if len(members) >= 2:
            count = min(max(count, 1), len(members) - 1)
        test.extend(members[:count])
        train.extend(members[count:])
    return np.array(sorted(train), int), np.array(sorted(test), int)


def stratified_folds(
    labels: np.ndarray, folds: int, seed: int
) -> List[np.ndarray]:
    """Deal the indices of each class round-robin over folds.

    Returns:
        list: Non-empty sorted index arrays.
    """
    rng = np.random.default_rng(seed)
    dealt: List[List[int]] = [[] for _ in range(folds)]
    position = 0
    for label in np.unique(labels):
        for index in rng.permutation(np.flatnonzero(labels == label)):
            dealt[position % folds].append(int(index))
            position += 1
    return [np.array(sorted(fold), int) for fold in dealt if fold]


def _usable(labels: np.ndarray, folds: List[np.ndarray]) -> bool:
    for fold in folds:
        rest = np.delete(labels, fold)
        if len(np.unique(rest)) < 2:
            return False
    return True


@dataclass(frozen=True)
class FoldScore:
    """Balanced accuracy of one cross-validation fold."""

    repeat: int
    fold: int
    bac: float


@dataclass
class EvaluationResult:
    """Outcome of an evaluation.

    Attributes:
        metrics: Scores on the held-out records.
        cv_scores: Scores of every cross-validation fold.
        model: Model refit on the whole training partition.
        train_indices: Records of the training partition.
        test_indices: Records of the test partition.
        observed: Records seen by vocabularies, sampling or training.
    """

    metrics: Metrics
    cv_scores: List[FoldScore] = field(default_factory=list)
    model: Optional[TrainedModel] = None
    train_indices: np.ndarray = field(default_factory=lambda: np.zeros(0))
    test_indices: np.ndarray = field(default_factory=lambda: np.zeros(0))
    observed: Set[int] = field(default_factory=set)

    @property
    def cv_bac(self) -> float:
        """Mean balanced accuracy over the folds."""
        if not self.cv_scores:
            return 0.0
        return float(np.mean([fold.bac for fold in self.cv_scores]))


def _check_labels(labels: np.ndarray) -> None:
    if len(labels) == 0:
        raise EvaluationError("empty corpus")
    if len(np.unique(labels)) < 2:
        raise EvaluationError("corpus has a single class")


def cross_validate(
    records: Sequence[PathRecord],
    indices: np.ndarray,
    source: str,
    kind: str,
    config: LearnConfig,
    observed: Set[int],
) -> List[FoldScore]:
    """Run repeated stratified k-fold cross validation.

    A repeat whose folds would leave a training part with a single
    class is re-drawn with the next seed.

    Raises:
        EvaluationError: If no usable fold assignment is found.
    """
    labels = labels_of(records)[indices]
    scores = []
    for repeat in range(config.repeats):
        seed = config.seed + 1000 * repeat
        for attempt in range(MAX_REDRAWS):
            folds = stratified_folds(labels, config.folds, seed + attempt)
            if _usable(labels, folds):
                break
            logger.warning(
                "repeat %d: fold with a single class, re-drawn with seed %d",
                repeat,
                seed + attempt + 1,
            )
        else:
            raise EvaluationError(
                "cannot draw folds whose training parts hold both classes"
            )

        for number, fold in enumerate(folds):
            train = np.delete(indices, fold)
            observed.update(int(i) for i in train)
            model = fit_model(
                [records[i] for i in train], source, kind, config, seed
            )
            predicted = model.predict([records[i] for i in indices[fold]])
            bac, _ = balanced_accuracy(confusion(labels[fold], predicted))
            scores.append(FoldScore(repeat, number, bac))
            logger.debug("repeat %d fold %d: bac %.4f", repeat, number, bac)
    return scores


def evaluate(
    records: Sequence[PathRecord],
    source: str,
    kind: str,
    config: LearnConfig = None,
    cross_validation: bool = True,
) -> EvaluationResult:
    """Evaluate a classifier on a corpus.

    The corpus is split 80/20 (by default) per class. The training
    part is cross-validated, then the model is refit on all of it and
    scored on the test part.

    Args:
        records: Cleaned path records of both classes.
        source: Data source.
        kind: Classifier kind.
        config: Learner settings.
        cross_validation: Whether to run the cross validation.

    Returns:
        EvaluationResult: Test metrics, fold scores and the model.

    Raises:
        EvaluationError: If the corpus holds a single class.
    """
    config = config or LearnConfig()
    labels = labels_of(records)
    _check_labels(labels)

    train, test = stratified_split(labels, config.test_fraction, config.seed)
    observed: Set[int] = set()
    cv_scores = []
    if cross_validation:
        cv_scores = cross_validate(
            records, train, source, kind, config, observed
        )

    started = time.monotonic()
    model = fit_model([records[i] for i in train], source, kind, config)
    train_secs = time.monotonic() - started
    observed.update(int(i) for i in train)

    started = time.monotonic()
    predicted = model.predict([records[i] for i in test])
    predict_secs = time.monotonic() - started

    metrics = score(labels[test], predicted, train_secs, predict_secs)
    logger.info(
        "%s on %s: bac %.4f recall %.4f precision %.4f",
        kind,
        source,
        metrics.bac,
        metrics.recall,
        metrics.precision,
    )
    return EvaluationResult(
        metrics=metrics,
        cv_scores=cv_scores,
        model=model,
        train_indices=train,
        test_indices=test,
        observed=observed,
    )


@dataclass(frozen=True)
class Detection:
    """Whether one interaction was found by a model that never saw it.

    Attributes:
        spec_id: The interaction.
        failures: Number of its failure paths.
        flagged: Failure paths classified as failures.
    """

    spec_id: str
    failures: int
    flagged: int

    @property
    def detected(self) -> bool:
        """At least one failure path was flagged."""
        return self.flagged > 0


def detection_rate(table: Sequence[Detection]) -> float:
    """Percentage of detected interactions."""
    if not table:
        return 0.0
    return 100.0 * sum(row.detected for row in table) / len(table)


def leave_one_interaction_out(
    records: Sequence[PathRecord],
    source: str,
    kind: str,
    config: LearnConfig = None,
    spec_ids: Optional[Iterable[str]] = None,
) -> List[Detection]:
    """Test each interaction on a model trained without it.

    Args:
        records: Cleaned path records.
        source: Data source.
        kind: Classifier kind.
        config: Learner settings.
        spec_ids: Interactions to test, all spec ids by default.

    Returns:
        list: One detection row per interaction, by spec id.

    Raises:
        EvaluationError: If an interaction has no failure path.
    """
    config = config or LearnConfig()
    known = sorted(
        {r.spec_id for r in records if r.is_failure and r.spec_id}
    )
    wanted = sorted(set(spec_ids)) if spec_ids is not None else known

    table = []
    for spec_id in wanted:
        held_out = [
            r for r in records if r.is_failure and r.spec_id == spec_id
        ]
        if not held_out:
            raise EvaluationError(
                f"interaction {spec_id!r} has no failure paths"
            )
        training = [
            r
            for r in records
            if not (r.is_failure and r.spec_id == spec_id)
        ]
        try:
            model = fit_model(training, source, kind, config)
        except TrainingError as error:
            logger.warning(
                "interaction %s: cannot train without it (%s)", spec_id, error
            )
            table.append(Detection(spec_id, len(held_out), 0))
            continue

        flagged = int(np.sum(model.predict(held_out)))
        table.append(Detection(spec_id, len(held_out), flagged))
        logger.info(
            "interaction %s: %d of %d failure paths flagged",
            spec_id,
            flagged,
            len(held_out),
        )
    return table


@dataclass(frozen=True)
class PartialScore:
    """Scores on test documents with their heads removed.

    Attributes:
        fraction: Share removed from the head of each sequence and of
            the atom list.
        metrics: Scores on the remaining documents.
        dropped: Documents left empty and skipped.
    """

    fraction: float
    metrics: Metrics
    dropped: int


def partial_data_eval(
    result: EvaluationResult,
    records: Sequence[PathRecord],
    fractions: Iterable[float] = (0.25, 0.5, 0.75),
) -> List[PartialScore]:
    """Score an evaluated model on truncated test documents.

    Args:
        result: An evaluation whose model is reused unchanged.
        records: The records the evaluation ran on.
        fractions: Shares removed from the head of each document.

    Returns:
        list: One score per fraction.

    Raises:
        EvaluationError: If truncation empties every test document.
    """
    model = result.model
    test = [records[i] for i in result.test_indices]
    truth = labels_of(test)
    scores = []

    for fraction in fractions:
        documents = [
            make_document(record, model.source, fraction) for record in test
        ]
        kept = [i for i, doc in enumerate(documents) if doc.tokens]
        dropped = len(documents) - len(kept)
        if not kept:
            raise EvaluationError(
                f"removing {fraction:.2f} of each document leaves none"
            )
        if dropped:
            logger.warning(
                "fraction %.2f: %d test documents emptied", fraction, dropped
            )

        matrix = model.vocabulary.transform([documents[i] for i in kept])
        predicted = model.classifier.predict(matrix)
        scores.append(
            PartialScore(fraction, score(truth[kept], predicted), dropped)
        )
    return scores


def feature_importance(model: TrainedModel) -> List[Tuple[str, float]]:
    """Gini importance of every vocabulary token.

    Args:
        model: A trained random forest model.

    Returns:
        list: (token, score) pairs, highest first, ties by token.

    Raises:
        EvaluationError: If the model is not a random forest.
    """
    if not isinstance(model.classifier, RandomForest):
        raise EvaluationError("feature importance needs a random forest")
    scores = model.classifier.importances
    pairs = [
        (token, float(scores[column]))
        for column, token in enumerate(model.vocabulary.tokens)
    ]
    return sorted(pairs, key=lambda pair: (-pair[1], pair[0]))


@dataclass(frozen=True)
class TopKResult:
    """A model retrained on the most important tokens.

    Attributes:
        tokens: Tokens kept, most important first.
        metrics: Scores on the held-out records.
    """

    tokens: Tuple[str, ...]
    metrics: Metrics


def retrain_top_k(
    records: Sequence[PathRecord],
    source: str,
    kind: str,
    config: LearnConfig = None,
    k: Optional[int] = None,
) -> TopKResult:
    """Retrain a model on the k tokens a forest finds most important.

    The forest and the retrained model share the training partition
    of `evaluate`; scores come from its test partition.

    Args:
        records: Cleaned path records.
        source: Data source.
        kind: Classifier kind of the retrained model.
        config: Learner settings.
        k: Number of tokens, the configured top-k by default.

    Returns:
        TopKResult: The tokens and the retrained model's scores.
    """
    config = config or LearnConfig()
    k = k or config.top_k
    labels = labels_of(records)
    _check_labels(labels)

    train, test = stratified_split(labels, config.test_fraction, config.seed)
    training = [records[i] for i in train]
    forest = fit_model(training, source, "rf", config)
    tokens = tuple(token for token, _ in feature_importance(forest)[:k])

    model = fit_model(training, source, kind, config, tokens=tokens)
    predicted = model.predict([records[i] for i in test])
    metrics = score(labels[test], predicted)
    logger.info(
        "%s on top %d tokens: recall %.4f precision %.4f",
        kind,
        len(tokens),
        metrics.recall,
        metrics.precision,
    )
    return TopKResult(tokens, metrics)
