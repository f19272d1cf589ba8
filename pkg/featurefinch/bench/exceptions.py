"""Exceptions raised while building benchmark product lines."""
from featurefinch.support.exceptions import InputError, InvariantViolation


class BlueprintError(InputError):
    """A product line blueprint is inconsistent."""


class SuiteValidationError(InvariantViolation):
    """A seeded interaction does not manifest in any product."""
