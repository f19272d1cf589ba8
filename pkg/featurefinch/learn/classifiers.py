"""Binary classifiers over count vectors.

Labels are 1 for failure paths and 0 for normal ones.
"""
import logging
import math
from abc import ABCMeta, abstractmethod
from typing import Any, Dict, List, Optional

import numpy as np

from featurefinch.config.settings import LearnConfig
from featurefinch.learn.exceptions import TrainingError

logger = logging.getLogger(__name__)


def _check_training(matrix: np.ndarray, labels: np.ndarray) -> None:
    if len(labels) == 0 or len(np.unique(labels)) < 2:
        raise TrainingError("training set has a single class")
    if matrix.shape[0] != len(labels):
        raise TrainingError("matrix and labels differ in length")


class Classifier(metaclass=ABCMeta):
    """Base class of the classifiers.

    Subclasses set `kind` and implement fitting, scoring and their
    persistent state.
    """

    kind = ""

    @abstractmethod
    def fit(self, matrix: np.ndarray, labels: np.ndarray) -> "Classifier":
        """Train on rows and labels.

        Raises:
            TrainingError: If only one class is present.
        """

    @abstractmethod
    def decision(self, matrix: np.ndarray) -> np.ndarray:
        """Scores where positive values mean failure."""

    def predict(self, matrix: np.ndarray) -> np.ndarray:
        """Predicted labels."""
        return (self.decision(matrix) > 0).astype(int)

    @abstractmethod
    def state(self) -> Dict[str, Any]:
        """Hyperparameters and learned parameters as JSON values."""

    @classmethod
    @abstractmethod
    def from_state(cls, state: Dict[str, Any]) -> "Classifier":
        """Rebuild a trained classifier."""


class NaiveBayes(Classifier):
    """Multinomial naive Bayes with additive smoothing.

    Attributes:
        alpha: Smoothing added to every token count.
    """

    kind = "nb"

    def __init__(self, alpha: float = 1.0) -> None:
        """Establish the smoothing.

        Args:
            alpha: Additive smoothing.
        """
        self.alpha = alpha
        self.log_prior = np.zeros(2)
        self.log_likelihood = np.zeros((2, 0))

    def fit(self, matrix: np.ndarray, labels: np.ndarray) -> "NaiveBayes":
        _check_training(matrix, labels)
        counts = np.bincount(labels, minlength=2)
        self.log_prior = np.log(counts / counts.sum())

        token_counts = np.vstack(
            [matrix[labels == label].sum(axis=0) for label in (0, 1)]
        )
        smoothed = token_counts + self.alpha
        self.log_likelihood = np.log(
            smoothed / smoothed.sum(axis=1, keepdims=True)
        )
        return self

    def decision(self, matrix: np.ndarray) -> np.ndarray:
        joint = matrix @ self.log_likelihood.T + self.log_prior
        return joint[:, 1] - joint[:, 0]

    def state(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "log_prior": self.log_prior.tolist(),
            "log_likelihood": self.log_likelihood.tolist(),
        }

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "NaiveBayes":
        model = cls(state["alpha"])
        model.log_prior = np.array(state["log_prior"])
        model.log_likelihood = np.array(state["log_likelihood"])
        return model


class LinearSVM(Classifier):
    """Linear hinge-loss classifier trained by stochastic subgradients.

    Steps follow the Pegasos schedule 1 / (lambda t) with a projection
    onto the ball of radius 1 / sqrt(lambda). The bias is a constant
    input column.

    Attributes:
        lam: Regularisation strength.
        epochs: Passes over the training set.
        seed: Seed of the sample order.
    """

    kind = "svm"

    def __init__(
        self, lam: float = 1e-4, epochs: int = 50, seed: int = 0
    ) -> None:
        """Establish the hyperparameters.

        Args:
            lam: Regularisation strength.
            epochs: Passes over the training set.
            seed: Seed of the sample order.
        """
        self.lam = lam
        self.epochs = epochs
        self.seed = seed
        self.weights = np.zeros(0)

    @staticmethod
    def _augment(matrix: np.ndarray) -> np.ndarray:
        return np.hstack([matrix, np.ones((matrix.shape[0], 1))])

    def fit(self, matrix: np.ndarray, labels: np.ndarray) -> "LinearSVM":
        _check_training(matrix, labels)
        inputs = self._augment(matrix)
        targets = np.where(labels == 1, 1.0, -1.0)
        rng = np.random.default_rng(self.seed)
        radius = 1 / math.sqrt(self.lam)

        weights = np.zeros(inputs.shape[1])
        step = 0
        for _ in range(self.epochs):
            for row in rng.permutation(len(targets)):
                step += 1
                rate = 1 / (self.lam * step)
                margin = targets[row] * (weights @ inputs[row])
                weights *= 1 - rate * self.lam
                if margin < 1:
                    weights += rate * targets[row] * inputs[row]
                norm = np.linalg.norm(weights)
                if norm > radius:
                    weights *= radius / norm
        self.weights = weights
        return self

    def decision(self, matrix: np.ndarray) -> np.ndarray:
        return self._augment(matrix) @ self.weights

    def state(self) -> Dict[str, Any]:
        return {
            "lam": self.lam,
            "epochs": self.epochs,
            "seed": self.seed,
            "weights": self.weights.tolist(),
        }

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "LinearSVM":
        model = cls(state["lam"], state["epochs"], state["seed"])
        model.weights = np.array(state["weights"])
        return model


def gini(positives: np.ndarray, totals: np.ndarray) -> np.ndarray:
    """Gini impurity of two-class nodes given positive counts."""
    with np.errstate(invalid="ignore", divide="ignore"):
        share = np.where(totals > 0, positives / totals, 0.0)
    return 2 * share * (1 - share)


class DecisionTree:
    """A depth-bounded binary tree split on Gini impurity.

    Nodes are stored in parallel lists; a leaf has feature -1.

    Attributes:
        max_depth: Depth limit.
        max_features: Non-constant features examined per split.
        importances: Weighted impurity decrease per feature.
    """

    def __init__(
        self,
        max_depth: int = 16,
        max_features: Optional[int] = None,
        rng: Optional[np.random.Generator] = None,
    ) -> None:
        """Establish the tree settings.

        Args:
            max_depth: Depth limit.
            max_features: Features examined per split, all if None.
            rng: Source of the feature order.
        """
        self.max_depth = max_depth
        self.max_features = max_features
        self.rng = rng or np.random.default_rng(0)
        self.feature: List[int] = []
        self.threshold: List[float] = []
        self.left: List[int] = []
        self.right: List[int] = []
        self.value: List[float] = []
        self.importances = np.zeros(0)

    def _new_node(self, value: float) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(value)
        return len(self.value) - 1

    def _best_split(self, matrix: np.ndarray, labels: np.ndarray):
        """Find the split with the lowest weighted child impurity."""
        total = len(labels)
        limit = self.max_features or matrix.shape[1]
        best = (np.inf, -1, 0.0)
        examined = 0

        for feature in self.rng.permutation(matrix.shape[1]):
            column = matrix[:, feature]
            order = np.argsort(column, kind="stable")
            values = column[order]
            if values[0] == values[-1]:
                continue
            examined += 1

            positives = np.cumsum(labels[order])[:-1]
            left_sizes = np.arange(1, total)
            right_positives = positives[-1] + labels[order][-1] - positives
            impurity = (
                left_sizes * gini(positives, left_sizes)
                + (total - left_sizes)
                * gini(right_positives, total - left_sizes)
            ) / total
            valid = values[:-1] != values[1:]
            impurity = np.where(valid, impurity, np.inf)
            position = int(np.argmin(impurity))
            if impurity[position] < best[0]:
                threshold = (values[position] + values[position + 1]) / 2
                best = (float(impurity[position]), int(feature), threshold)

            if examined >= limit:
                break
        return best

    def fit(self, matrix: np.ndarray, labels: np.ndarray) -> "DecisionTree":
        """Grow the tree on rows and 0/1 labels."""
        self.importances = np.zeros(matrix.shape[1])
        total = len(labels)
        pending = [(np.arange(total), 0, self._new_node(labels.mean()))]

        while pending:
            rows, depth, node = pending.pop()
            node_labels = labels[rows]
            share = node_labels.mean()
            if depth >= self.max_depth or len(rows) < 2 or share in (0, 1):
                continue

            impurity, feature, threshold = self._best_split(
                matrix[rows], node_labels
            )
            if feature < 0:
                continue
            parent = 2 * share * (1 - share)
            self.importances[feature] += (
                len(rows) / total * (parent - impurity)
            )

            goes_left = matrix[rows, feature] <= threshold
            left_rows, right_rows = rows[goes_left], rows[~goes_left]
            self.feature[node] = feature
            self.threshold[node] = threshold
            self.left[node] = self._new_node(labels[left_rows].mean())
            self.right[node] = self._new_node(labels[right_rows].mean())
            pending.append((right_rows, depth + 1, self.right[node]))
            pending.append((left_rows, depth + 1, self.left[node]))
        return self

    def probability(self, matrix: np.ndarray) -> np.ndarray:
        """Share of failure samples in the leaf of each row."""
        result = np.zeros(matrix.shape[0])
        pending = [(np.arange(matrix.shape[0]), 0)]
        while pending:
            rows, node = pending.pop()
            feature = self.feature[node]
            if feature < 0:
                result[rows] = self.value[node]
                continue
            goes_left = matrix[rows, feature] <= self.threshold[node]
            pending.append((rows[goes_left], self.left[node]))
            pending.append((rows[~goes_left], self.right[node]))
        return result

    def state(self) -> Dict[str, Any]:
        """Nodes of the tree as JSON values."""
        return {
            "feature": list(self.feature),
            "threshold": list(self.threshold),
            "left": list(self.left),
            "right": list(self.right),
            "value": [float(value) for value in self.value],
        }

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "DecisionTree":
        """Rebuild a grown tree."""
        tree = cls()
        tree.feature = [int(f) for f in state["feature"]]
        tree.threshold = [float(t) for t in state["threshold"]]
        tree.left = [int(n) for n in state["left"]]
        tree.right = [int(n) for n in state["right"]]
        tree.value = [float(v) for v in state["value"]]
        return tree


class RandomForest(Classifier):
    """Bagged Gini trees with square-root feature sampling.

    Attributes:
        n_trees: Number of trees.
        max_depth: Depth limit of each tree.
        seed: Seed of bootstrap samples and feature orders.
        trees: The grown trees.
        importances: Gini importance per column, summing to 1.
    """

    kind = "rf"

    def __init__(
        self, n_trees: int = 100, max_depth: int = 16, seed: int = 0
    ) -> None:
        """Establish the forest settings.

        Args:
            n_trees: Number of trees.
            max_depth: Depth limit of each tree.
            seed: Seed of the forest.
        """
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.seed = seed
        self.trees: List[DecisionTree] = []
        self.importances = np.zeros(0)

    def fit(self, matrix: np.ndarray, labels: np.ndarray) -> "RandomForest":
        _check_training(matrix, labels)
        rng = np.random.default_rng(self.seed)
        rows, columns = matrix.shape
        max_features = max(1, int(math.sqrt(columns)))

        self.trees = []
        totals = np.zeros(columns)
        for _ in range(self.n_trees):
            sample = rng.integers(rows, size=rows)
            tree = DecisionTree(self.max_depth, max_features, rng)
            tree.fit(matrix[sample], labels[sample])
            if tree.importances.sum() > 0:
                totals += tree.importances / tree.importances.sum()
            self.trees.append(tree)

        self.importances = totals
        if totals.sum() > 0:
            self.importances = totals / totals.sum()
        return self

    def probability(self, matrix: np.ndarray) -> np.ndarray:
        """Average failure probability over the trees."""
        return np.mean([tree.probability(matrix) for tree in self.trees], 0)

    def decision(self, matrix: np.ndarray) -> np.ndarray:
        return self.probability(matrix) - 0.5

    def state(self) -> Dict[str, Any]:
        return {
            "n_trees": self.n_trees,
            "max_depth": self.max_depth,
            "seed": self.seed,
            "importances": self.importances.tolist(),
            "trees": [tree.state() for tree in self.trees],
        }

    @classmethod
    def from_state(cls, state: Dict[str, Any]) -> "RandomForest":
        model = cls(state["n_trees"], state["max_depth"], state["seed"])
        model.importances = np.array(state["importances"])
        model.trees = [DecisionTree.from_state(t) for t in state["trees"]]
        return model


CLASSIFIERS = {cls.kind: cls for cls in (NaiveBayes, LinearSVM, RandomForest)}


def make_classifier(
    kind: str, config: LearnConfig = None, seed: Optional[int] = None
) -> Classifier:
    """Create an untrained classifier.

    Args:
        kind: `nb`, `svm` or `rf`.
        config: Learner settings holding the hyperparameters.
        seed: Seed overriding the configured one.

    Returns:
        Classifier: The classifier.

    Raises:
        ValueError: If the kind is not supported.
    """
    config = config or LearnConfig()
    seed = config.seed if seed is None else seed

    if kind == "nb":
        return NaiveBayes(config.nb_alpha)

    if kind == "svm":
        return LinearSVM(config.svm_lambda, config.svm_epochs, seed)

    if kind == "rf":
        return RandomForest(config.rf_trees, config.rf_max_depth, seed)

    raise ValueError(f"Unsupported classifier {kind}.")
