"""Configured entry point to the classification pipeline."""
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from featurefinch.config.settings import LearnConfig
from featurefinch.learn.evaluation import (
    Detection,
    EvaluationResult,
    PartialScore,
    TopKResult,
    evaluate,
    feature_importance,
    fit_model,
    labels_of,
    leave_one_interaction_out,
    partial_data_eval,
    retrain_top_k,
    stratified_split,
)
from featurefinch.learn.exceptions import EvaluationError
from featurefinch.modelx.records import PathRecord

logger = logging.getLogger(__name__)


class Learner:
    """Runs evaluations with the configured source and model.

    Attributes:
        config: Learner settings.
    """

    def __init__(self, config: LearnConfig = None) -> None:
        """Establish the learner settings.

        Args:
            config: Learner settings, defaults when omitted.
        """
        self.config = config or LearnConfig()

    @property
    def source(self) -> str:
        """Configured data source."""
        return self.config.source

    @property
    def model(self) -> str:
        """Configured classifier kind."""
        return self.config.model

    def evaluate(
        self, records: Sequence[PathRecord], cross_validation: bool = True
    ) -> EvaluationResult:
        """Split, cross-validate, train and score on a corpus."""
        return evaluate(
            records, self.source, self.model, self.config, cross_validation
        )

    def detect(
        self,
        records: Sequence[PathRecord],
        spec_ids: Optional[Iterable[str]] = None,
    ) -> List[Detection]:
        """Test every interaction on a model trained without it."""
        return leave_one_interaction_out(
            records, self.source, self.model, self.config, spec_ids
        )

    def partial(
        self, result: EvaluationResult, records: Sequence[PathRecord]
    ) -> List[PartialScore]:
        """Score an evaluated model on documents with their heads cut."""
        return partial_data_eval(result, records, self.config.fractions)

    def importance(
        self, records: Sequence[PathRecord]
    ) -> List[Tuple[str, float]]:
        """Gini importance of a forest trained on the training split.

        Args:
            records: Cleaned path records of both classes.

        Returns:
            list: (token, score) pairs, highest first.

        Raises:
            EvaluationError: If the corpus holds a single class.
        """
        labels = labels_of(records)
        if len(set(labels.tolist())) < 2:
            raise EvaluationError("corpus has a single class")
        train, _ = stratified_split(
            labels, self.config.test_fraction, self.config.seed
        )
        forest = fit_model(
            [records[i] for i in train], self.source, "rf", self.config
        )
        return feature_importance(forest)

    def top_k(
        self, records: Sequence[PathRecord], k: Optional[int] = None
    ) -> TopKResult:
        """Retrain the configured model on the most important tokens."""
        result = retrain_top_k(
            records, self.source, self.model, self.config, k
        )
        logger.info("kept tokens: %s", ", ".join(result.tokens))
        return result
