"""Symbolic values: integers, symbolic variables and expression trees.

Expressions are built through `binary`, `negate` and `as_bool`, which
fold constants and keep a canonical shape: `>`/`>=` become `Lt`/`Le`
with swapped operands, logical negation is pushed into relations, and
operands of commutative operators are ordered by their text.
Arithmetic wraps at 32 bits.
"""
from dataclasses import dataclass
from typing import FrozenSet, Mapping, Tuple, Union

from featurefinch.language.ir import wrap

ARITHMETIC = frozenset({"Add", "Sub", "Mul", "SDiv", "SRem"})
RELATIONS = frozenset({"Eq", "Ne", "Lt", "Le"})
CONNECTIVES = frozenset({"And", "Or"})
COMMUTATIVE = frozenset({"Add", "Mul", "Eq", "Ne", "And", "Or"})

OPERATORS = {
    "+": "Add",
    "-": "Sub",
    "*": "Mul",
    "/": "SDiv",
    "%": "SRem",
    "==": "Eq",
    "!=": "Ne",
    "<": "Lt",
    "<=": "Le",
    "&&": "And",
    "||": "Or",
}
SWAPPED = {">": "Lt", ">=": "Le"}


@dataclass(frozen=True)
class SymVar:
    """A symbolic input.

    Attributes:
        base: Source name of the variable.
        instance: 1 for the first make_symbolic of `base` on a path.
        width: Width in bits.
        lo: Smallest value of the domain.
        hi: Largest value of the domain.
    """

    base: str
    instance: int
    width: int
    lo: int
    hi: int

    @property
    def name(self) -> str:
        """Display name, `base` or `base_instance`."""
        if self.instance == 1:
            return self.base
        return f"{self.base}_{self.instance}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Expr:
    """An operator applied to symbolic operands.

    Attributes:
        op: Operator name such as `Add` or `Lt`.
        args: Operands.
    """

    op: str
    args: Tuple["SymValue", ...]

    def __str__(self) -> str:
        return to_text(self)


SymValue = Union[int, SymVar, Expr]


def to_text(value: SymValue) -> str:
    """Serialize a value in prefix form, e.g. `(Le (Add 1 x) 3)`."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, SymVar):
        return value.name
    return f"({value.op} {' '.join(to_text(arg) for arg in value.args)})"


def is_boolean(value: SymValue) -> bool:
    """Whether a value is known to be 0 or 1."""
    if isinstance(value, int):
        return value in (0, 1)
    return isinstance(value, Expr) and (
        value.op in RELATIONS or value.op in CONNECTIVES
    )


def sdiv(left: int, right: int) -> int:
    """Signed division truncating toward zero."""
    quotient = abs(left) // abs(right)
    if (left < 0) != (right < 0):
        quotient = -quotient
    return wrap(quotient)


def srem(left: int, right: int) -> int:
    """Remainder with the sign of the dividend."""
    return wrap(left - right * sdiv(left, right))


def apply(op: str, left: int, right: int) -> int:
    """Apply an operator to concrete operands.

    Raises:
        ZeroDivisionError: On SDiv or SRem by zero.
    """
    if op == "Add":
        return wrap(left + right)
    if op == "Sub":
        return wrap(left - right)
    if op == "Mul":
        return wrap(left * right)
    if op == "SDiv":
        return sdiv(left, right)
    if op == "SRem":
        return srem(left, right)
    if op == "Eq":
        return int(left == right)
    if op == "Ne":
        return int(left != right)
    if op == "Lt":
        return int(left < right)
    if op == "Le":
        return int(left <= right)
    if op == "And":
        return int(bool(left) and bool(right))
    if op == "Or":
        return int(bool(left) or bool(right))
    raise ValueError(f"Unsupported operator {op}.")


def as_bool(value: SymValue) -> SymValue:
    """Coerce a value to a 0/1 truth value."""
    if isinstance(value, int):
        return int(value != 0)
    if is_boolean(value):
        return value
    return make("Ne", 0, value)


def negate(value: SymValue) -> SymValue:
    """Logical negation pushed into relations and connectives."""
    if isinstance(value, int):
        return int(value == 0)
    if isinstance(value, Expr):
        left, right = value.args[0], value.args[-1]
        if value.op == "Eq":
            return make("Ne", left, right)
        if value.op == "Ne":
            return make("Eq", left, right)
        if value.op == "Lt":
            return make("Le", right, left)
        if value.op == "Le":
            return make("Lt", right, left)
        if value.op == "And":
            return make("Or", negate(left), negate(right))
        if value.op == "Or":
            return make("And", negate(left), negate(right))
    return make("Eq", 0, value)


def make(op: str, left: SymValue, right: SymValue) -> SymValue:
    """Build a canonical expression, folding what can be folded.

    Args:
        op: Operator name.
        left: Left operand.
        right: Right operand.

    Returns:
        SymValue: An integer when both sides are concrete, otherwise
            a canonical expression.
    """
    if op in CONNECTIVES:
        left, right = as_bool(left), as_bool(right)

    if isinstance(left, int) and isinstance(right, int):
        if op in ("SDiv", "SRem") and right == 0:
            return Expr(op, (left, right))
        return apply(op, left, right)

    if op in COMMUTATIVE and to_text(right) < to_text(left):
        left, right = right, left

    simplified = _simplify(op, left, right)
    if simplified is None and op in COMMUTATIVE and isinstance(right, int):
        simplified = _simplify(op, right, left)
    if simplified is not None:
        return simplified
    return Expr(op, (left, right))


def _simplify(op: str, left: SymValue, right: SymValue):
    if op == "Add":
        if left == 0:
            return right
        if (
            isinstance(left, int)
            and isinstance(right, Expr)
            and right.op == "Add"
            and isinstance(right.args[0], int)
        ):
            return make("Add", wrap(left + right.args[0]), right.args[1])
    if op == "Sub" and right == 0:
        return left
    if op == "Mul":
        if left == 0:
            return 0
        if left == 1:
            return right
    if op == "SDiv" and right == 1:
        return left
    if op == "And":
        if left == 0:
            return 0
        if left == 1:
            return right
    if op == "Or":
        if left == 1:
            return 1
        if left == 0:
            return right
    if left == right and not isinstance(left, int):
        if op in ("Eq", "Le"):
            return 1
        if op in ("Ne", "Lt"):
            return 0
    return None


def binary(symbol: str, left: SymValue, right: SymValue) -> SymValue:
    """Build an expression from an FLC binary operator.

    Args:
        symbol: Operator as written in source, e.g. `>=`.
        left: Left operand.
        right: Right operand.

    Returns:
        SymValue: The canonical value.
    """
    if symbol in SWAPPED:
        return make(SWAPPED[symbol], right, left)
    return make(OPERATORS[symbol], left, right)


def unary(symbol: str, operand: SymValue) -> SymValue:
    """Build an expression from an FLC unary operator."""
    if symbol == "-":
        return make("Sub", 0, operand)
    return negate(operand)


def evaluate(value: SymValue, env: Mapping[str, int]) -> int:
    """Evaluate a value under an assignment of variable names.

    Args:
        value: The value.
        env: Values by display name.

    Returns:
        int: The concrete result.

    Raises:
        KeyError: If a variable is unassigned.
        ZeroDivisionError: On division by zero.
    """
    if isinstance(value, int):
        return value
    if isinstance(value, SymVar):
        return env[value.name]
    left = evaluate(value.args[0], env)
    right = evaluate(value.args[1], env)
    return apply(value.op, left, right)


def variables(value: SymValue) -> FrozenSet[SymVar]:
    """Collect the symbolic variables of a value."""
    if isinstance(value, int):
        return frozenset()
    if isinstance(value, SymVar):
        return frozenset({value})
    return frozenset().union(*(variables(arg) for arg in value.args))
