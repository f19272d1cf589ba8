"""Resolution of a source unit against a product and lowering to IR."""
import logging
from dataclasses import replace
from typing import Dict, Iterable, List, Optional, Set, Tuple

from featurefinch.language.exceptions import ProductError, ResolveError
from featurefinch.language.features import FeatureExpr
from featurefinch.language.ir import (
    Binary,
    Const,
    InstKind,
    IrExpr,
    IrFunction,
    IrInstruction,
    IrProgram,
    Location,
    MemoryObjectDecl,
    Temp,
    Unary,
    width_range,
    wrap,
)
from featurefinch.language.products import ProductDef
from featurefinch.language.syntax import (
    WIDTHS,
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

logger = logging.getLogger(__name__)

ENTRY = "main"


def select(items: Iterable, enabled: Set[str]) -> List:
    """Flatten directive blocks, keeping branches enabled by a product.

    Args:
        items: Declarations or statements, possibly in directive blocks.
        enabled: Enabled features.

    Returns:
        list: Retained items without directive blocks.
    """
    kept = []
    for item in items:
        if isinstance(item, Conditional):
            chosen = item.condition.evaluate(enabled)
            branch = item.then if chosen else item.orelse
            kept.extend(select(branch, enabled))
        else:
            kept.append(item)
    return kept


def _all_functions(items: Iterable) -> Set[str]:
    names = set()
    for item in items:
        if isinstance(item, Conditional):
            names |= _all_functions(item.then + item.orelse)
        elif isinstance(item, FunctionDef):
            names.add(item.name)
    return names


def calls_in(node) -> List[CallExpr]:
    """Collect call expressions in a statement or expression."""
    calls = []
    if isinstance(node, CallExpr):
        calls.append(node)
        for arg in node.args:
            calls.extend(calls_in(arg))
    elif isinstance(node, (tuple, list)):
        for child in node:
            calls.extend(calls_in(child))
    elif hasattr(node, "__dataclass_fields__") and not isinstance(
        node, (IntLit, Name)
    ):
        for name in node.__dataclass_fields__:
            value = getattr(node, name)
            if hasattr(value, "__dataclass_fields__") or isinstance(
                value, (tuple, list)
            ):
                calls.extend(calls_in(value))
    return calls


class FunctionLowerer:
    """Lowers the retained statements of one function.

    Attributes:
        resolver: The owning resolver.
        function: Function being lowered.
        instructions: Instructions emitted so far.
        locals: Local objects by source name.
    """

    def __init__(self, resolver: "Resolver", function: FunctionDef) -> None:
        """Establish the lowering state.

        Args:
            resolver: The owning resolver.
            function: Function to lower.
        """
        self.resolver = resolver
        self.function = function
        self.instructions: List[IrInstruction] = []
        self.locals: Dict[str, MemoryObjectDecl] = {}
        self._declared: Dict[str, VarDecl] = {}
        self._temps = 0
        self._line = function.line

    # Emission helpers

    def _temp(self) -> str:
        name = f"t{self._temps}"
        self._temps += 1
        return name

    def _emit(self, kind: InstKind, **fields) -> int:
        index = len(self.instructions)
        self.instructions.append(
            IrInstruction(
                kind=kind,
                uid=f"{self.function.name}:{index}",
                loc=Location(self.resolver.unit.path, self._line),
                presence=self.resolver.presence(self._line),
                **fields,
            )
        )
        return index

    def _patch(self, index: int, targets: Tuple[int, int]) -> None:
        self.instructions[index] = replace(
            self.instructions[index], targets=targets
        )

    def _error(self, message: str) -> ResolveError:
        return ResolveError(
            f"{message} at line {self._line} of {self.resolver.unit.path}"
        )

    # Names

    def _object(self, name: str) -> MemoryObjectDecl:
        if name in self.locals:
            return self.locals[name]
        if name in self.resolver.globals:
            return self.resolver.globals[name]
        raise self._error(f"undeclared variable {name!r}")

    def _declare(self, type_name: str, name: str, size: Optional[int]):
        decl = MemoryObjectDecl(
            id=f"{self.function.name}::{name}",
            name=name,
            count=size or 1,
            width=WIDTHS[type_name],
            scope=self.function.name,
            array=size is not None,
        )
        self.locals[name] = decl
        return decl

    # Functions

    def lower(self) -> IrFunction:
        """Lower the function body.

        Returns:
            IrFunction: The lowered function.
        """
        params = []
        for param in self.function.params:
            if param.name in self.locals:
                raise self._error(f"duplicate parameter {param.name!r}")
            params.append(self._declare(param.type_name, param.name, None).id)

        self._block(self.function.body)

        self._line = self.function.end_line or self.function.line
        returns_value = self.function.return_type != "void"
        self._emit(
            InstKind.RETURN,
            operands=(Const(0),) if returns_value else (),
        )

        return IrFunction(
            name=self.function.name,
            params=tuple(params),
            locals=tuple(decl.id for decl in self.locals.values()),
            returns_value=returns_value,
            body=tuple(self.instructions),
        )

    # Statements

    def _block(self, statements: Iterable) -> None:
        for statement in select(statements, self.resolver.enabled):
            self._statement(statement)

    def _statement(self, node) -> None:
        self._line = node.line

        if isinstance(node, VarDecl):
            self._var_decl(node)
        elif isinstance(node, Assign):
            self._assign(node)
        elif isinstance(node, If):
            self._if(node)
        elif isinstance(node, While):
            self._while(node)
        elif isinstance(node, ExprStmt):
            self._call(node.call, want_value=False)
        elif isinstance(node, Return):
            self._return(node)
        elif isinstance(node, MakeSymbolic):
            self._make_symbolic(node)
        elif isinstance(node, Assume):
            self._emit(InstKind.ASSUME, operands=(self._expr(node.cond),))
        elif isinstance(node, Assert):
            self._emit(InstKind.ASSERT, operands=(self._expr(node.cond),))
        elif isinstance(node, Fail):
            self._emit(InstKind.FAIL, spec_id=node.spec_id)
        else:
            raise TypeError(f"Unsupported statement {node!r}.")

    def _var_decl(self, node: VarDecl) -> None:
        previous = self._declared.get(node.name)
        if previous is not None and previous is not node:
            raise self._error(f"duplicate local {node.name!r}")
        if previous is None:
            if node.name in self.locals:
                raise self._error(f"local {node.name!r} shadows a parameter")
            self._declared[node.name] = node
            self._declare(node.type_name, node.name, node.size)

        if node.init is not None:
            value = self._expr(node.init)
            self._line = node.line
            self._emit(
                InstKind.STORE,
                obj=self.locals[node.name].id,
                operands=(Const(0), value),
            )

    def _assign(self, node: Assign) -> None:
        target = self._object(node.target.ident)
        if isinstance(node.target, Index):
            if not target.array:
                raise self._error(f"{target.name!r} is not an array")
            offset = self._expr(node.target.index)
        else:
            if target.array:
                raise self._error(f"array {target.name!r} needs an index")
            offset = Const(0)
        value = self._expr(node.value)
        self._line = node.line
        self._emit(InstKind.STORE, obj=target.id, operands=(offset, value))

    def _if(self, node: If) -> None:
        cond = self._expr(node.cond)
        self._line = node.line
        branch = self._emit(InstKind.BRANCH, operands=(cond,))
        then_start = len(self.instructions)
        self._block(node.then)

        if node.orelse:
            self._line = node.line
            jump = self._emit(InstKind.BRANCH, operands=(Const(1),))
            else_start = len(self.instructions)
            self._block(node.orelse)
            end = len(self.instructions)
            self._patch(jump, (end, end))
        else:
            else_start = len(self.instructions)
        self._patch(branch, (then_start, else_start))

    def _while(self, node: While) -> None:
        exits = []
        for _ in range(self.resolver.loop_bound):
            self._line = node.line
            cond = self._expr(node.cond)
            self._line = node.line
            branch = self._emit(InstKind.BRANCH, operands=(cond,))
            exits.append((branch, len(self.instructions)))
            self._block(node.body)

        self._line = node.line
        cond = self._expr(node.cond)
        self._line = node.line
        residual = self._emit(InstKind.BRANCH, operands=(cond,))
        halt = self._emit(InstKind.HALT)
        exits.append((residual, halt))

        end = len(self.instructions)
        for branch, taken in exits:
            self._patch(branch, (taken, end))

    def _return(self, node: Return) -> None:
        if node.value is None:
            operands = ()
            if self.function.return_type != "void":
                operands = (Const(0),)
        else:
            if self.function.return_type == "void":
                raise self._error("void function returns a value")
            operands = (self._expr(node.value),)
        self._line = node.line
        self._emit(InstKind.RETURN, operands=operands)

    def _make_symbolic(self, node: MakeSymbolic) -> None:
        target = self._object(node.target)
        if target.array:
            raise self._error("make_symbolic needs a scalar variable")
        lo, hi = width_range(target.width)
        if node.lo is not None:
            if node.lo < lo or node.hi > hi:
                raise self._error(
                    f"range [{node.lo}, {node.hi}] exceeds the width "
                    f"of {target.name!r}"
                )
            lo, hi = node.lo, node.hi
        self._emit(
            InstKind.MAKE_SYMBOLIC,
            obj=target.id,
            operands=(Const(lo), Const(hi)),
            metadata=node.target in self.resolver.unit.metadata_vars,
        )

    # Expressions

    def _expr(self, node) -> IrExpr:
        if isinstance(node, IntLit):
            return Const(wrap(node.value))

        if isinstance(node, Name):
            target = self._object(node.ident)
            if target.array:
                raise self._error(f"array {target.name!r} needs an index")
            dest = self._temp()
            self._emit(
                InstKind.LOAD, dest=dest, obj=target.id, operands=(Const(0),)
            )
            return Temp(dest)

        if isinstance(node, Index):
            target = self._object(node.ident)
            if not target.array:
                raise self._error(f"{target.name!r} is not an array")
            offset = self._expr(node.index)
            dest = self._temp()
            self._emit(
                InstKind.LOAD, dest=dest, obj=target.id, operands=(offset,)
            )
            return Temp(dest)

        if isinstance(node, UnaryOp):
            operand = self._expr(node.operand)
            if isinstance(operand, Const):
                if node.op == "-":
                    return Const(wrap(-operand.value))
                return Const(int(operand.value == 0))
            return Unary(node.op, operand)

        if isinstance(node, BinaryOp):
            left = self._expr(node.left)
            right = self._expr(node.right)
            if node.op in ("/", "%"):
                dest = self._temp()
                self._emit(
                    InstKind.ASSIGN,
                    dest=dest,
                    operands=(Binary(node.op, left, right),),
                )
                return Temp(dest)
            return Binary(node.op, left, right)

        if isinstance(node, CallExpr):
            return self._call(node, want_value=True)

        raise TypeError(f"Unsupported expression {node!r}.")

    def _call(self, node: CallExpr, want_value: bool) -> Optional[IrExpr]:
        callee = self.resolver.callee(node, self._line)
        if len(node.args) != len(callee.params):
            raise self._error(
                f"{node.callee!r} takes {len(callee.params)} arguments, "
                f"got {len(node.args)}"
            )
        if want_value and callee.return_type == "void":
            raise self._error(f"void function {node.callee!r} has no value")

        args = tuple(self._expr(arg) for arg in node.args)
        self._line = node.line
        dest = self._temp() if want_value else None
        self._emit(InstKind.CALL, callee=node.callee, operands=args, dest=dest)
        return Temp(dest) if dest else None


class Resolver:
    """Resolves a source unit against one product.

    Attributes:
        unit: The source unit.
        product: The product.
        enabled: Enabled feature names.
        loop_bound: Unrolling bound of loops.
        globals: Retained global objects by name.
        functions: Retained function definitions by name.
    """

    def __init__(
        self, unit: SourceUnit, product: ProductDef, loop_bound: int = 8
    ) -> None:
        """Check the product and collect retained declarations.

        Args:
            unit: The source unit.
            product: The product to resolve.
            loop_bound: Unrolling bound of loops.

        Raises:
            ProductError: If the product enables undeclared features.
            ResolveError: If the loop bound is not positive or
                declarations clash.
        """
        if loop_bound <= 0:
            raise ResolveError(
                f"loop bound must be positive, got {loop_bound}"
            )

        unknown = sorted(set(product.enabled) - set(unit.features))
        if unknown:
            raise ProductError(
                f"product {product.name!r} enables undeclared features "
                f"{', '.join(unknown)}"
            )

        self.unit = unit
        self.product = product
        self.enabled = set(product.enabled)
        self.loop_bound = loop_bound
        self.globals: Dict[str, MemoryObjectDecl] = {}
        self.functions: Dict[str, FunctionDef] = {}
        self._declared_functions = _all_functions(unit.items)
        self._presence: Dict[int, FeatureExpr] = {}

        for item in select(unit.items, self.enabled):
            if isinstance(item, GlobalDecl):
                self._add_global(item)
            elif item.name in self.functions:
                raise ResolveError(
                    f"duplicate function {item.name!r} at line {item.line}"
                )
            else:
                self.functions[item.name] = item

    def _add_global(self, item: GlobalDecl) -> None:
        if item.name in self.globals:
            raise ResolveError(
                f"duplicate global {item.name!r} at line {item.line}"
            )
        width = WIDTHS[item.type_name]
        count = item.size or 1
        value = wrap(item.init, width) if item.init is not None else 0
        self.globals[item.name] = MemoryObjectDecl(
            id=item.name,
            name=item.name,
            count=count,
            width=width,
            init=(value,) * count,
            array=item.size is not None,
        )

    def presence(self, line: int) -> FeatureExpr:
        """Presence condition of a source line, cached."""
        if line not in self._presence:
            self._presence[line] = self.unit.presence_of(line)
        return self._presence[line]

    def callee(self, node: CallExpr, line: int) -> FunctionDef:
        """Find the retained function a callsite targets.

        Args:
            node: The call.
            line: Line of the enclosing statement.

        Returns:
            FunctionDef: The called function.

        Raises:
            ResolveError: If the function was excluded by the product
                or never declared.
        """
        if node.callee in self.functions:
            return self.functions[node.callee]
        if node.callee in self._declared_functions:
            raise ResolveError(
                f"dangling callsite to {node.callee!r} at line {line} "
                f"in product {self.product.name!r}"
            )
        raise ResolveError(
            f"call to undeclared function {node.callee!r} at line {line}"
        )

    def _check_recursion(self) -> None:
        graph = {
            name: sorted(
                {
                    call.callee
                    for call in calls_in(
                        tuple(select(function.body, self.enabled))
                    )
                    if call.callee in self.functions
                }
            )
            for name, function in self.functions.items()
        }

        done: Set[str] = set()

        def visit(name: str, path: List[str]) -> None:
            if name in path:
                cycle = path[path.index(name):] + [name]
                raise ResolveError(
                    f"recursive call cycle: {' -> '.join(cycle)}"
                )
            if name in done:
                return
            for callee in graph[name]:
                visit(callee, path + [name])
            done.add(name)

        for name in sorted(graph):
            visit(name, [])

    def resolve(self) -> IrProgram:
        """Lower the retained functions.

        Returns:
            IrProgram: The program of the product.

        Raises:
            ResolveError: On a missing entry, recursion, dangling
                callsites or ill-typed statements.
        """
        if ENTRY not in self.functions:
            raise ResolveError(
                f"entry function {ENTRY!r} missing in product "
                f"{self.product.name!r}"
            )
        self._check_recursion()

        functions = {}
        objects = {decl.id: decl for decl in self.globals.values()}
        for name in sorted(self.functions):
            lowerer = FunctionLowerer(self, self.functions[name])
            functions[name] = lowerer.lower()
            objects.update({d.id: d for d in lowerer.locals.values()})

        logger.debug(
            "Resolved product %s: %d functions, %d instructions",
            self.product.name,
            len(functions),
            sum(len(f.body) for f in functions.values()),
        )
        return IrProgram(
            product=self.product,
            path=self.unit.path,
            functions=functions,
            globals=tuple(self.globals.values()),
            objects=objects,
            entry=ENTRY,
        )


def resolve_product(
    unit: SourceUnit, product: ProductDef, loop_bound: int = 8
) -> IrProgram:
    """Resolve a source unit for a product and lower it to IR.

    Args:
        unit: The parsed source unit.
        product: The product whose features decide the directives.
        loop_bound: Number of times loops are unrolled.

    Returns:
        IrProgram: The product's program.
    """
    return Resolver(unit, product, loop_bound).resolve()
