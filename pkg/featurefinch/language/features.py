"""Presence conditions: boolean expressions over feature names.

Expressions are immutable. And and Or flatten nested operands of the
same kind when constructed, so `A && (B && C)` has three operands.
"""
import re
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, List, Tuple

from featurefinch.language.exceptions import DirectiveError

FEATURE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"true", "false"})

_TOKEN = re.compile(r"\s*(?:(&&|\|\||!|\(|\))|([A-Za-z_][A-Za-z0-9_]*))")


class FeatureExpr:
    """Base class for presence conditions."""

    precedence = 4

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        """Evaluate the condition for a set of enabled features.

        Args:
            enabled: Names of enabled features.

        Returns:
            bool: Whether the condition holds.
        """
        raise NotImplementedError

    def features(self) -> FrozenSet[str]:
        """Collect the feature names mentioned by the condition.

        Returns:
            frozenset: Feature names.
        """
        raise NotImplementedError

    def canonical(self) -> "FeatureExpr":
        """Return the condition with operands sorted and deduplicated.

        Returns:
            FeatureExpr: Canonical form used for structural equality.
        """
        return self

    def to_text(self, compact: bool = False) -> str:
        """Render the condition in directive syntax.

        Args:
            compact: Whether to omit spaces around binary operators.

        Returns:
            str: Text such as `A && !B`.
        """
        raise NotImplementedError

    def _operand_text(self, operand: "FeatureExpr", compact: bool) -> str:
        text = operand.to_text(compact)
        if operand.precedence < self.precedence:
            return f"({text})"
        return text

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Const(FeatureExpr):
    """A constant condition.

    Attributes:
        value: The truth value.
    """

    value: bool

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        return self.value

    def features(self) -> FrozenSet[str]:
        return frozenset()

    def to_text(self, compact: bool = False) -> str:
        return "true" if self.value else "false"


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class Atom(FeatureExpr):
    """A single feature.

    Attributes:
        name: Feature name.
    """

    name: str

    def __post_init__(self) -> None:
        if not FEATURE_NAME.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"Invalid feature name {self.name!r}.")

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        return self.name in enabled

    def features(self) -> FrozenSet[str]:
        return frozenset({self.name})

    def to_text(self, compact: bool = False) -> str:
        return self.name


@dataclass(frozen=True)
class Not(FeatureExpr):
    """Negation of a condition.

    Attributes:
        operand: The negated condition.
    """

    operand: FeatureExpr
    precedence = 3

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        return not self.operand.evaluate(enabled)

    def features(self) -> FrozenSet[str]:
        return self.operand.features()

    def canonical(self) -> FeatureExpr:
        return Not(self.operand.canonical())

    def to_text(self, compact: bool = False) -> str:
        return "!" + self._operand_text(self.operand, compact)


class _Junction(FeatureExpr):
    """Shared behaviour of And and Or."""

    operands: Tuple[FeatureExpr, ...]
    symbol = ""

    def __post_init__(self) -> None:
        if not self.operands:
            raise ValueError(f"{type(self).__name__} needs operands.")

        flat: List[FeatureExpr] = []
        for operand in self.operands:
            if isinstance(operand, type(self)):
                flat.extend(operand.operands)
            else:
                flat.append(operand)
        object.__setattr__(self, "operands", tuple(flat))

    def features(self) -> FrozenSet[str]:
        return frozenset().union(*(op.features() for op in self.operands))

    def canonical(self) -> FeatureExpr:
        unique = {op.canonical() for op in self.operands}
        ordered = sorted(unique, key=lambda op: op.to_text(compact=True))
        if len(ordered) == 1:
            return ordered[0]
        return type(self)(tuple(ordered))

    def to_text(self, compact: bool = False) -> str:
        separator = self.symbol if compact else f" {self.symbol} "
        return separator.join(
            self._operand_text(op, compact) for op in self.operands
        )


@dataclass(frozen=True)
class And(_Junction):
    """Conjunction of conditions.

    Attributes:
        operands: Conjuncts, never nested Ands.
    """

    operands: Tuple[FeatureExpr, ...]
    precedence = 2
    symbol = "&&"

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        return all(op.evaluate(enabled) for op in self.operands)


@dataclass(frozen=True)
class Or(_Junction):
    """Disjunction of conditions.

    Attributes:
        operands: Disjuncts, never nested Ors.
    """

    operands: Tuple[FeatureExpr, ...]
    precedence = 1
    symbol = "||"

    def evaluate(self, enabled: AbstractSet[str]) -> bool:
        return any(op.evaluate(enabled) for op in self.operands)


def conjoin(conditions: Iterable[FeatureExpr]) -> FeatureExpr:
    """Conjoin conditions, dropping TRUE operands.

    Args:
        conditions: Conditions to conjoin.

    Returns:
        FeatureExpr: TRUE for no operands, the operand itself
            for one, otherwise an And.
    """
    operands = tuple(c for c in conditions if c != TRUE)
    if not operands:
        return TRUE
    if len(operands) == 1:
        return operands[0]
    return And(operands)


def equivalent(left: FeatureExpr, right: FeatureExpr) -> bool:
    """Compare two conditions after canonicalisation.

    Args:
        left: First condition.
        right: Second condition.

    Returns:
        bool: True if both have the same canonical form.
    """
    return left.canonical() == right.canonical()


class _ExprParser:
    """Recursive descent parser over `|| && ! ( )`."""

    def __init__(self, text: str, declared: AbstractSet[str], line: int):
        self.text = text
        self.declared = declared
        self.line = line
        self.tokens = self._tokenize(text)
        self.position = 0

    def _error(self, message: str) -> DirectiveError:
        return DirectiveError(message, self.line, 1)

    def _tokenize(self, text: str) -> List[str]:
        tokens = []
        index = 0
        while index < len(text):
            if text[index:].strip() == "":
                break
            match = _TOKEN.match(text, index)
            if not match:
                raise self._error(
                    f"unexpected character {text[index:].strip()[0]!r} "
                    f"in feature expression"
                )
            tokens.append(match.group(1) or match.group(2))
            index = match.end()
        return tokens

    def _peek(self) -> str:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return ""

    def _take(self) -> str:
        token = self._peek()
        self.position += 1
        return token

    def parse(self) -> FeatureExpr:
        if not self.tokens:
            raise self._error("empty feature expression")
        expr = self._disjunction()
        if self._peek():
            raise self._error(f"unexpected {self._peek()!r}")
        return expr

    def _disjunction(self) -> FeatureExpr:
        operands = [self._conjunction()]
        while self._peek() == "||":
            self._take()
            operands.append(self._conjunction())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def _conjunction(self) -> FeatureExpr:
        operands = [self._unary()]
        while self._peek() == "&&":
            self._take()
            operands.append(self._unary())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def _unary(self) -> FeatureExpr:
        token = self._take()
        if token == "!":
            return Not(self._unary())
        if token == "(":
            expr = self._disjunction()
            if self._take() != ")":
                raise self._error("expected ')'")
            return expr
        if token == "true":
            return TRUE
        if token == "false":
            return FALSE
        if token and FEATURE_NAME.match(token):
            if self.declared is not None and token not in self.declared:
                raise self._error(f"undeclared feature {token!r}")
            return Atom(token)
        raise self._error(f"expected a feature, got {token or 'end'!r}")


def parse_feature_expr(
    text: str, declared: AbstractSet[str] = None, line: int = 0
) -> FeatureExpr:
    """Parse a condition written in directive syntax.

    Args:
        text: Condition text such as `A && !B`.
        declared: Names that may appear, or None to accept any.
        line: Source line used in error messages.

    Returns:
        FeatureExpr: The parsed condition.

    Raises:
        DirectiveError: If the text is malformed or names an
            undeclared feature.
    """
    return _ExprParser(text, declared, line).parse()
