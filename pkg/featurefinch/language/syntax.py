"""Abstract syntax of FLC source units.

Every node records the line it starts on. Lines take no part in
equality so that a reparsed pretty-print compares equal to the original.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple, Union

from featurefinch.language.exceptions import ResolveError
from featurefinch.language.features import TRUE, FeatureExpr

WIDTHS = {"int": 32, "int32": 32, "int16": 16, "int8": 8}
INTRINSICS = frozenset({"make_symbolic", "assume", "assert", "fail"})


# Expressions


@dataclass(frozen=True)
class IntLit:
    value: int
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Name:
    ident: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Index:
    ident: str
    index: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class UnaryOp:
    op: str
    operand: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CallExpr:
    callee: str
    args: Tuple["Expr", ...]
    line: int = field(default=0, compare=False)


Expr = Union[IntLit, Name, Index, UnaryOp, BinaryOp, CallExpr]


# Statements


@dataclass(frozen=True)
class VarDecl:
    """Local variable or local array declaration."""

    type_name: str
    name: str
    size: Optional[int]
    init: Optional[Expr]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assign:
    target: Union[Name, Index]
    value: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class If:
    cond: Expr
    then: Tuple["Stmt", ...]
    orelse: Tuple["Stmt", ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class While:
    cond: Expr
    body: Tuple["Stmt", ...]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ExprStmt:
    call: CallExpr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Return:
    value: Optional[Expr]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MakeSymbolic:
    """`make_symbolic(v)` or `make_symbolic(v, lo, hi)`."""

    target: str
    lo: Optional[int]
    hi: Optional[int]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assume:
    cond: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Assert:
    cond: Expr
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Fail:
    """`fail()` optionally annotated with `@spec(<id>)`."""

    spec_id: Optional[str]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Conditional:
    """A `#if` block with an optional `#else` branch.

    At top level the branches hold declarations, inside functions
    they hold statements.
    """

    condition: FeatureExpr
    then: Tuple
    orelse: Tuple
    line: int = field(default=0, compare=False)
    end_line: int = field(default=0, compare=False)


Stmt = Union[
    VarDecl,
    Assign,
    If,
    While,
    ExprStmt,
    Return,
    MakeSymbolic,
    Assume,
    Assert,
    Fail,
    Conditional,
]


# Declarations


@dataclass(frozen=True)
class GlobalDecl:
    type_name: str
    name: str
    size: Optional[int]
    init: Optional[int]
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Param:
    type_name: str
    name: str
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FunctionDef:
    return_type: str
    name: str
    params: Tuple[Param, ...]
    body: Tuple[Stmt, ...]
    line: int = field(default=0, compare=False)
    end_line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DirectiveScope:
    """Line range governed by one directive branch.

    Attributes:
        start: First line inside the branch.
        end: Last line inside the branch.
        condition: Conjunction of this branch and all enclosing ones.
        depth: Nesting depth, 1 for an outermost branch.
    """

    start: int
    end: int
    condition: FeatureExpr
    depth: int


@dataclass(frozen=True)
class SourceUnit:
    """A parsed FLC file.

    Attributes:
        path: File path used in locations.
        features: Declared features in declaration order.
        items: Top-level declarations and directive blocks.
        scopes: Directive scopes in source order.
        line_count: Number of lines of the source.
        metadata_vars: Names of injected metadata variables.
    """

    path: str
    features: Tuple[str, ...]
    items: Tuple
    scopes: Tuple[DirectiveScope, ...] = ()
    line_count: int = 0
    metadata_vars: FrozenSet[str] = frozenset()

    def presence_of(self, line: int) -> FeatureExpr:
        """Find the innermost presence condition of a line.

        Args:
            line: 1-based line number.

        Returns:
            FeatureExpr: Condition of the innermost enclosing
                directive branch, or TRUE at top level.

        Raises:
            ResolveError: If the line is out of range.
        """
        if not 1 <= line <= self.line_count:
            raise ResolveError(
                f"line {line} out of range 1..{self.line_count} "
                f"of {self.path}"
            )
        return self._presence_table().get(line, TRUE)

    def _presence_table(self) -> Dict[int, FeatureExpr]:
        table = self.__dict__.get("_table")
        if table is None:
            table = {}
            depths: Dict[int, int] = {}
            for scope in self.scopes:
                for line in range(scope.start, scope.end + 1):
                    if scope.depth > depths.get(line, 0):
                        depths[line] = scope.depth
                        table[line] = scope.condition
            object.__setattr__(self, "_table", table)
        return table


def presence_of(unit: SourceUnit, line: int) -> FeatureExpr:
    """Find the innermost presence condition of a line in a unit.

    Args:
        unit: A parsed source unit.
        line: 1-based line number.

    Returns:
        FeatureExpr: The presence condition, TRUE at top level.
    """
    return unit.presence_of(line)
