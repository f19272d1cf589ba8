"""Exceptions raised by the classification pipeline."""
from featurefinch.support.exceptions import InputError


class TrainingError(InputError):
    """A model cannot be trained on the given data."""


class EvaluationError(InputError):
    """An evaluation cannot be carried out on the given corpus."""


class ModelMismatchError(InputError):
    """A saved model does not fit the data it is applied to."""
