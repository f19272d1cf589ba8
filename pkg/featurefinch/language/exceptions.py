"""Exceptions raised by the FLC frontend."""
from featurefinch.support.exceptions import InputError


class FlcSyntaxError(InputError):
    """Source text could not be lexed or parsed.

    Attributes:
        line: Line of the offending token.
        column: Column of the offending token.
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        """Establish the message and location of the error.

        Args:
            message: The exception message.
            line: Line of the offending token.
            column: Column of the offending token.
        """
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DirectiveError(FlcSyntaxError):
    """A feature directive is unbalanced, malformed or misplaced."""


class ResolveError(InputError):
    """A product could not be resolved into an IR program."""


class ProductError(InputError):
    """A product definition is malformed or names unknown features."""
