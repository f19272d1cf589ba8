"""Atomic constraints of path conditions."""
from dataclasses import dataclass, field
from typing import List

from featurefinch.symex.values import (
    RELATIONS,
    Expr,
    SymValue,
    as_bool,
    evaluate,
    make,
    negate,
    to_text,
    variables,
)


@dataclass(frozen=True)
class AtomicConstraint:
    """One relational conjunct of a path condition.

    Attributes:
        relation: One of Eq, Ne, Lt, Le.
        lhs: Left operand.
        rhs: Right operand.
        text: Canonical serialization, e.g. `(Eq 1 isEncryptedRes)`.
    """

    relation: str
    lhs: SymValue
    rhs: SymValue
    text: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(f"Unsupported relation {self.relation}.")
        if not self.text:
            object.__setattr__(
                self,
                "text",
                f"({self.relation} {to_text(self.lhs)} {to_text(self.rhs)})",
            )

    @property
    def value(self) -> Expr:
        """The constraint as a boolean expression."""
        return Expr(self.relation, (self.lhs, self.rhs))

    def holds(self, env) -> bool:
        """Evaluate the constraint under an assignment.

        Division by zero makes the constraint false.
        """
        try:
            return bool(evaluate(self.value, env))
        except ZeroDivisionError:
            return False

    def variables(self):
        """Symbolic variables mentioned by the constraint."""
        return variables(self.lhs) | variables(self.rhs)

    def __str__(self) -> str:
        return self.text


def serialize_atom(atom: AtomicConstraint) -> str:
    """Serialize an atom in canonical prefix form.

    Args:
        atom: The atom.

    Returns:
        str: Text such as `(Le (Add 1 x) 3)`.
    """
    return atom.text


def atomize(condition: SymValue, truth: bool = True) -> List[AtomicConstraint]:
    """Split a branch condition into atomic constraints.

    Conjunctions asserted true, and disjunctions asserted false, split
    into one atom per conjunct. Anything else becomes a single atom.

    Args:
        condition: Symbolic condition.
        truth: Whether the condition is asserted true or false.

    Returns:
        list: Atoms; empty when the condition is concrete.
    """
    if isinstance(condition, int):
        return []

    condition = as_bool(condition)
    if not truth:
        condition = negate(condition)

    if isinstance(condition, int):
        return []
    if condition.op == "And":
        return atomize(condition.args[0]) + atomize(condition.args[1])
    if condition.op == "Or":
        return [_atom(make("Ne", 0, condition))]
    return [_atom(condition)]


def _atom(condition: Expr) -> AtomicConstraint:
    lhs, rhs = condition.args
    return AtomicConstraint(condition.op, lhs, rhs)
