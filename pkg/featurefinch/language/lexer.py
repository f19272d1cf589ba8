"""Tokenizer for FLC source text.

A line whose first non-blank character is `#` becomes a single
DIRECTIVE token holding the directive keyword and its argument text.
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import List

from featurefinch.language.exceptions import FlcSyntaxError


class TokenKind(Enum):
    """Kinds of FLC tokens."""

    IDENT = "identifier"
    NUMBER = "number"
    KEYWORD = "keyword"
    OP = "operator"
    DIRECTIVE = "directive"
    EOF = "end of input"


KEYWORDS = frozenset(
    {
        "features",
        "int",
        "int8",
        "int16",
        "int32",
        "void",
        "if",
        "else",
        "while",
        "return",
    }
)

OPERATORS = (
    "&&",
    "||",
    "==",
    "!=",
    "<=",
    ">=",
    "<",
    ">",
    "+",
    "-",
    "*",
    "/",
    "%",
    "!",
    "=",
    "(",
    ")",
    "{",
    "}",
    "[",
    "]",
    ",",
    ";",
    "@",
)

_PATTERN = re.compile(
    r"(?P<space>[ \t\r]+)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<number>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>"
    + "|".join(re.escape(op) for op in OPERATORS)
    + r")"
)

_DIRECTIVE = re.compile(r"\s*#\s*(?P<keyword>[A-Za-z]*)\s*(?P<argument>.*)")


@dataclass(frozen=True)
class Token:
    """A lexical token.

    Attributes:
        kind: Kind of the token.
        value: Token text; for directives the keyword.
        line: 1-based line of the token.
        column: 1-based column of the token.
        argument: Argument text of a directive.
    """

    kind: TokenKind
    value: str
    line: int
    column: int
    argument: str = ""

    def is_op(self, value: str) -> bool:
        """Check whether the token is the given operator or keyword."""
        return (
            self.kind in (TokenKind.OP, TokenKind.KEYWORD)
            and self.value == value
        )


def tokenize(source: str) -> List[Token]:
    """Split FLC source text into tokens.

    Args:
        source: UTF-8 decoded source text.

    Returns:
        list: Tokens terminated by an EOF token.

    Raises:
        FlcSyntaxError: On a character that starts no token.
    """
    tokens: List[Token] = []
    lines = source.split("\n")

    for number, text in enumerate(lines, start=1):
        if text.lstrip().startswith("#"):
            match = _DIRECTIVE.match(text)
            argument = re.sub(r"//.*", "", match.group("argument")).strip()
            tokens.append(
                Token(
                    TokenKind.DIRECTIVE,
                    match.group("keyword"),
                    number,
                    text.index("#") + 1,
                    argument,
                )
            )
            continue

        position = 0
        while position < len(text):
            match = _PATTERN.match(text, position)
            if not match:
                raise FlcSyntaxError(
                    f"unexpected character {text[position]!r}",
                    number,
                    position + 1,
                )
            column = position + 1
            position = match.end()

            if match.lastgroup in ("space", "comment"):
                continue
            if match.lastgroup == "number":
                tokens.append(
                    Token(TokenKind.NUMBER, match.group(), number, column)
                )
            elif match.lastgroup == "ident":
                kind = (
                    TokenKind.KEYWORD
                    if match.group() in KEYWORDS
                    else TokenKind.IDENT
                )
                tokens.append(Token(kind, match.group(), number, column))
            else:
                tokens.append(
                    Token(TokenKind.OP, match.group(), number, column)
                )

    tokens.append(Token(TokenKind.EOF, "", len(lines), 1))
    return tokens
