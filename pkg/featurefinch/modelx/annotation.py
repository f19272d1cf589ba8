"""Injection of metadata variables exposing function return values.

For an integer function `f` the annotated unit declares a global
`fRes`, makes it symbolic on entry to `f` and assumes it equal to the
returned value before every `return`. Each call creates a fresh
instance of the variable, so the returns of different calls appear as
`fRes`, `fRes_2`, ... in path conditions. The program's behaviour does
not change.
"""
import logging
from dataclasses import replace
from typing import Iterable, List, Set

from featurefinch.language.lowering import calls_in
from featurefinch.language.syntax import (
    Assign,
    Assume,
    BinaryOp,
    Conditional,
    FunctionDef,
    GlobalDecl,
    If,
    IntLit,
    MakeSymbolic,
    Name,
    Return,
    SourceUnit,
    VarDecl,
    While,
)
from featurefinch.modelx.exceptions import AnnotationError

logger = logging.getLogger(__name__)

SUFFIX = "Res"
RETURN_SUFFIX = "__ret"


def metadata_name(function: str) -> str:
    """Name of the metadata variable of a function."""
    return f"{function}{SUFFIX}"


def _functions(items: Iterable) -> List[FunctionDef]:
    found = []
    for item in items:
        if isinstance(item, Conditional):
            found.extend(_functions(item.then + item.orelse))
        elif isinstance(item, FunctionDef):
            found.append(item)
    return found


def _identifiers(items: Iterable) -> Set[str]:
    """Collect every declared identifier of a unit."""
    names: Set[str] = set()

    def visit(nodes) -> None:
        for node in nodes:
            if isinstance(node, Conditional):
                visit(node.then + node.orelse)
            elif isinstance(node, GlobalDecl):
                names.add(node.name)
            elif isinstance(node, FunctionDef):
                names.add(node.name)
                names.update(param.name for param in node.params)
                visit(node.body)
            elif isinstance(node, VarDecl):
                names.add(node.name)
            elif isinstance(node, If):
                visit(node.then + node.orelse)
            elif isinstance(node, While):
                visit(node.body)

    visit(items)
    return names


class _FunctionAnnotator:
    """Rewrites the returns of one function."""

    def __init__(self, function: FunctionDef, variable: str) -> None:
        self.function = function
        self.variable = variable
        self.temp = variable + RETURN_SUFFIX
        self.uses_temp = False

    def annotate(self) -> FunctionDef:
        line = self.function.line
        body = self._block(self.function.body)
        prologue = [MakeSymbolic(self.variable, None, None, line=line)]
        if self.uses_temp:
            prologue.append(VarDecl("int", self.temp, None, None, line=line))

        if not body or not isinstance(body[-1], Return):
            end = self.function.end_line or line
            body.append(self._assume_equal(IntLit(0, line=end), end))
        return replace(self.function, body=tuple(prologue + body))

    def _assume_equal(self, value, line: int) -> Assume:
        return Assume(
            BinaryOp("==", Name(self.variable, line=line), value, line=line),
            line=line,
        )

    def _block(self, statements: Iterable) -> List:
        rewritten = []
        for node in statements:
            if isinstance(node, Return) and node.value is not None:
                rewritten.extend(self._return(node))
            elif isinstance(node, If):
                rewritten.append(
                    replace(
                        node,
                        then=tuple(self._block(node.then)),
                        orelse=tuple(self._block(node.orelse)),
                    )
                )
            elif isinstance(node, While):
                rewritten.append(
                    replace(node, body=tuple(self._block(node.body)))
                )
            elif isinstance(node, Conditional):
                rewritten.append(
                    replace(
                        node,
                        then=tuple(self._block(node.then)),
                        orelse=tuple(self._block(node.orelse)),
                    )
                )
            else:
                rewritten.append(node)
        return rewritten

    def _return(self, node: Return) -> List:
        line = node.line
        if not calls_in(node.value):
            return [self._assume_equal(node.value, line), node]

        # Evaluate calls once, the returned value goes through a local.
        self.uses_temp = True
        temp = Name(self.temp, line=line)
        return [
            Assign(temp, node.value, line=line),
            self._assume_equal(temp, line),
            Return(temp, line=line),
        ]


def annotate_metadata_vars(unit: SourceUnit) -> SourceUnit:
    """Inject a metadata variable into every integer function.

    Args:
        unit: A parsed source unit.

    Returns:
        SourceUnit: The annotated unit; void functions are unchanged.

    Raises:
        AnnotationError: If a metadata variable name is already used.
    """
    functions = [f for f in _functions(unit.items) if f.return_type != "void"]
    taken = _identifiers(unit.items)

    variables = {}
    for function in functions:
        name = metadata_name(function.name)
        if name in variables.values():
            continue
        for clash in (name, name + RETURN_SUFFIX):
            if clash in taken:
                raise AnnotationError(
                    f"metadata variable {clash!r} of function "
                    f"{function.name!r} collides with an existing "
                    f"identifier at line {function.line}"
                )
        variables[function.name] = name

    def rewrite(items) -> tuple:
        rewritten = []
        for item in items:
            if isinstance(item, Conditional):
                rewritten.append(
                    replace(
                        item,
                        then=rewrite(item.then),
                        orelse=rewrite(item.orelse),
                    )
                )
            elif isinstance(item, FunctionDef) and item.name in variables:
                rewritten.append(
                    _FunctionAnnotator(item, variables[item.name]).annotate()
                )
            else:
                rewritten.append(item)
        return tuple(rewritten)

    globals_ = tuple(
        GlobalDecl("int", name, None, None, line=0)
        for name in sorted(set(variables.values()))
    )
    logger.debug(
        "%s: %d metadata variables injected", unit.path, len(variables)
    )
    return replace(
        unit,
        items=globals_ + rewrite(unit.items),
        metadata_vars=unit.metadata_vars | frozenset(variables.values()),
    )
