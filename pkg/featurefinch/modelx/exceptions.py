"""Exceptions raised while building and reading model corpora."""
from featurefinch.support.exceptions import InputError


class CorpusError(InputError):
    """A corpus file cannot be written or read."""


class AnnotationError(InputError):
    """A metadata variable collides with an existing identifier."""
