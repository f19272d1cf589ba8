"""Base exceptions shared across the toolkit.

Each category maps to a command-line exit code.
"""


class FinchError(Exception):
    """Base class for errors raised by featurefinch.

    Attributes:
        exit_code: Process exit code used by the console.
    """

    exit_code = 4

    def __init__(self, message: str) -> None:
        """Establish the message of the exception.

        Args:
            message: The exception message.
        """
        super().__init__(message)


class InputError(FinchError):
    """Invalid input: source text, product files, corpora or settings."""

    exit_code = 2


class AnalysisTruncated(FinchError):
    """An analysis stopped early on its time or path budget."""

    exit_code = 3


class InvariantViolation(FinchError):
    """An internal consistency check failed."""

    exit_code = 4
