"""Pretty-printer producing FLC source that reparses to the same AST."""
from typing import List

from featurefinch.language.syntax import (
    Assert,
    Assign,
    Assume,
    BinaryOp,
    CallExpr,
    Conditional,
    ExprStmt,
    Fail,
    FunctionDef,
    GlobalDecl,
    If,
    Index,
    IntLit,
    MakeSymbolic,
    Name,
    Return,
    SourceUnit,
    UnaryOp,
    VarDecl,
    While,
)

PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 4,
    "<=": 4,
    ">": 4,
    ">=": 4,
    "+": 5,
    "-": 5,
    "*": 6,
    "/": 6,
    "%": 6,
}
UNARY_PRECEDENCE = 7
INDENT = "    "


def format_expr(expr, parent: int = 0) -> str:
    """Render an expression with the parentheses its structure needs.

    Binary operators are left associative, so a right operand of equal
    precedence is parenthesised.

    Args:
        expr: Expression node.
        parent: Precedence of the enclosing operator.

    Returns:
        str: Source text of the expression.
    """
    if isinstance(expr, IntLit):
        text = str(expr.value)
        return f"({text})" if expr.value < 0 else text
    if isinstance(expr, Name):
        return expr.ident
    if isinstance(expr, Index):
        return f"{expr.ident}[{format_expr(expr.index)}]"
    if isinstance(expr, CallExpr):
        args = ", ".join(format_expr(arg) for arg in expr.args)
        return f"{expr.callee}({args})"
    if isinstance(expr, UnaryOp):
        text = expr.op + format_expr(expr.operand, UNARY_PRECEDENCE)
        return f"({text})" if parent > UNARY_PRECEDENCE else text
    if isinstance(expr, BinaryOp):
        level = PRECEDENCE[expr.op]
        text = (
            f"{format_expr(expr.left, level)} {expr.op} "
            f"{format_expr(expr.right, level + 1)}"
        )
        return f"({text})" if level < parent else text
    raise TypeError(f"Unsupported expression {expr!r}.")


class Printer:
    """Renders a source unit line by line."""

    def __init__(self) -> None:
        """Establish the output buffer."""
        self.lines: List[str] = []

    def render(self, unit: SourceUnit) -> str:
        """Render a whole unit.

        Args:
            unit: Unit to render.

        Returns:
            str: Source text ending with a newline.
        """
        if unit.features:
            self.lines.append(f"features {', '.join(unit.features)};")
        for item in unit.items:
            self._top(item)
        return "\n".join(self.lines) + "\n"

    def _emit(self, depth: int, text: str) -> None:
        self.lines.append(INDENT * depth + text)

    def _directive(self, node: Conditional, depth: int, render) -> None:
        self.lines.append(f"#if {node.condition.to_text()}")
        for child in node.then:
            render(child, depth)
        if node.orelse:
            self.lines.append("#else")
            for child in node.orelse:
                render(child, depth)
        self.lines.append("#endif")

    def _top(self, item, depth: int = 0) -> None:
        if isinstance(item, Conditional):
            self._directive(item, depth, self._top)
        elif isinstance(item, GlobalDecl):
            size = f"[{item.size}]" if item.size is not None else ""
            init = f" = {item.init}" if item.init is not None else ""
            self._emit(0, f"{item.type_name} {item.name}{size}{init};")
        elif isinstance(item, FunctionDef):
            params = ", ".join(f"{p.type_name} {p.name}" for p in item.params)
            self._emit(0, f"{item.return_type} {item.name}({params}) {{")
            self._block(item.body, 1)
            self._emit(0, "}")
        else:
            raise TypeError(f"Unsupported declaration {item!r}.")

    def _block(self, body, depth: int) -> None:
        for statement in body:
            self._statement(statement, depth)

    def _statement(self, node, depth: int) -> None:
        if isinstance(node, Conditional):
            self._directive(node, depth, self._statement)
        elif isinstance(node, VarDecl):
            size = f"[{node.size}]" if node.size is not None else ""
            init = (
                f" = {format_expr(node.init)}" if node.init is not None else ""
            )
            self._emit(depth, f"{node.type_name} {node.name}{size}{init};")
        elif isinstance(node, Assign):
            target = format_expr(node.target)
            self._emit(depth, f"{target} = {format_expr(node.value)};")
        elif isinstance(node, If):
            self._emit(depth, f"if ({format_expr(node.cond)}) {{")
            self._block(node.then, depth + 1)
            if node.orelse:
                self._emit(depth, "} else {")
                self._block(node.orelse, depth + 1)
            self._emit(depth, "}")
        elif isinstance(node, While):
            self._emit(depth, f"while ({format_expr(node.cond)}) {{")
            self._block(node.body, depth + 1)
            self._emit(depth, "}")
        elif isinstance(node, ExprStmt):
            self._emit(depth, f"{format_expr(node.call)};")
        elif isinstance(node, Return):
            value = (
                f" {format_expr(node.value)}" if node.value is not None else ""
            )
            self._emit(depth, f"return{value};")
        elif isinstance(node, MakeSymbolic):
            bounds = (
                f", {node.lo}, {node.hi}" if node.lo is not None else ""
            )
            self._emit(depth, f"make_symbolic({node.target}{bounds});")
        elif isinstance(node, (Assume, Assert)):
            name = "assume" if isinstance(node, Assume) else "assert"
            self._emit(depth, f"{name}({format_expr(node.cond)});")
        elif isinstance(node, Fail):
            spec = f" @spec({node.spec_id})" if node.spec_id else ""
            self._emit(depth, f"fail(){spec};")
        else:
            raise TypeError(f"Unsupported statement {node!r}.")


def print_unit(unit: SourceUnit) -> str:
    """Render a source unit as FLC text.

    Args:
        unit: Unit to render.

    Returns:
        str: Source text.
    """
    return Printer().render(unit)
