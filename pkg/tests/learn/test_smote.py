import numpy as np

from featurefinch.learn.smote import interpolate, nearest_neighbors, smote


def test_interpolate():
    point, neighbor = np.array([0.0, 2.0]), np.array([4.0, 2.0])

    assert interpolate(point, neighbor, 0.25).tolist() == [1.0, 2.0]


def test_nearest_neighbors():
    points = np.array([[0.0], [1.0], [5.0]])

    assert nearest_neighbors(points, 1).tolist() == [[1], [0], [1]]
    assert nearest_neighbors(points, 10).shape == (3, 2)


def test_balanced_classes_are_unchanged():
    matrix = np.eye(4)
    labels = np.array([0, 1, 0, 1])

    balanced, balanced_labels = smote(matrix, labels)

    assert balanced is matrix
    assert balanced_labels is labels


def test_synthetic_samples_lie_between_minority_points():
    minority = np.array([[0.0, 0.0], [2.0, 2.0], [4.0, 4.0]])
    majority = np.full((7, 2), 9.0)
    matrix = np.vstack([majority, minority])
    labels = np.array([0] * 7 + [1] * 3)

    balanced, balanced_labels = smote(matrix, labels, k=2, seed=3)

    synthetic = balanced[len(matrix):]
    assert synthetic.shape == (4, 2)
    assert balanced_labels.tolist() == labels.tolist() + [1] * 4
    assert np.all(synthetic[:, 0] == synthetic[:, 1])
    assert np.all((synthetic > 0) & (synthetic < 4))


def test_sampling_is_seeded():
    matrix = np.vstack([np.full((5, 2), 9.0), np.eye(2) * 3])
    labels = np.array([0] * 5 + [1] * 2)

    first, _ = smote(matrix, labels, seed=7)
    second, _ = smote(matrix, labels, seed=7)

    assert np.array_equal(first, second)


def test_single_minority_sample_is_duplicated():
    matrix = np.array([[1.0], [1.0], [1.0], [5.0]])
    labels = np.array([0, 0, 0, 1])

    balanced, balanced_labels = smote(matrix, labels)

    assert balanced[4:].tolist() == [[5.0], [5.0]]
    assert balanced_labels.tolist() == [0, 0, 0, 1, 1, 1]
