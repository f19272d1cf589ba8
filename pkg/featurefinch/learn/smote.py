"""Synthetic minority oversampling of count matrices."""
import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)


def interpolate(point: np.ndarray, neighbor: np.ndarray, gap: float):
    """Point on the segment from `point` towards `neighbor`."""
    return point + gap * (neighbor - point)


def nearest_neighbors(points: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k nearest other points of each point.

    Distances are Euclidean; ties go to the lower index.
    """
    squared = np.sum(points ** 2, axis=1)
    distances = squared[:, None] + squared[None, :] - 2 * points @ points.T
    np.fill_diagonal(distances, np.inf)
    k = min(k, len(points) - 1)
    return np.argsort(distances, axis=1, kind="stable")[:, :k]


def smote(
    matrix: np.ndarray, labels: np.ndarray, k: int = 5, seed: int = 0
) -> Tuple[np.ndarray, np.ndarray]:
    """Balance two classes with synthetic minority samples.

    Each synthetic sample lies between a random minority point and one
    of its k nearest minority neighbours, at a uniform random gap in
    (0, 1). A minority class of one point is duplicated instead.

    Args:
        matrix: Training rows.
        labels: Training labels, 0 or 1.
        k: Number of neighbours considered.
        seed: Seed of the sampler.

    Returns:
        tuple: The rows and labels with synthetic rows appended.
    """
    classes, counts = np.unique(labels, return_counts=True)
    if len(classes) < 2 or counts[0] == counts[1]:
        return matrix, labels

    minority = classes[np.argmin(counts)]
    needed = int(counts.max() - counts.min())
    points = matrix[labels == minority]
    rng = np.random.default_rng(seed)

    if len(points) == 1:
        logger.warning(
            "SMOTE: minority class has a single sample, duplicating it"
        )
        synthetic = np.repeat(points, needed, axis=0)
    else:
        neighbors = nearest_neighbors(points, k)
        synthetic = np.empty((needed, matrix.shape[1]))
        for row in range(needed):
            origin = rng.integers(len(points))
            neighbor = neighbors[origin, rng.integers(neighbors.shape[1])]
            gap = 0.0
            while gap == 0.0:
                gap = rng.random()
            synthetic[row] = interpolate(
                points[origin], points[neighbor], gap
            )

    logger.debug("SMOTE: %d synthetic samples of class %d", needed, minority)
    return (
        np.vstack([matrix, synthetic]),
        np.concatenate(
            [labels, np.full(needed, minority, dtype=labels.dtype)]
        ),
    )
