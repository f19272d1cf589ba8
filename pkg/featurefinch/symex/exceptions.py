"""Exceptions raised by the symbolic execution engine."""
from featurefinch.support.exceptions import InputError, InvariantViolation


class EngineError(InputError):
    """A program cannot be explored, e.g. no path survives."""


class EngineStateError(InvariantViolation):
    """The engine reached an inconsistent state."""
