"""Intermediate representation of a resolved product.

Each function is a flat list of instructions. Control flow uses
`branch` instructions whose targets are indices into that list; an
unconditional jump is a branch on the constant 1. Expressions are
side-effect free trees over constants and temporaries; memory is only
touched by `load` and `store`.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple, Union

from featurefinch.language.features import TRUE, FeatureExpr
from featurefinch.language.products import ProductDef


class InstKind(Enum):
    """Kinds of IR instructions."""

    ASSIGN = "assign"
    LOAD = "load"
    STORE = "store"
    BRANCH = "branch"
    CALL = "call"
    RETURN = "return"
    MAKE_SYMBOLIC = "make_symbolic"
    ASSUME = "assume"
    ASSERT = "assert"
    FAIL = "fail"
    HALT = "halt"


def wrap(value: int, bits: int = 32) -> int:
    """Wrap an integer to a signed two's complement width.

    Args:
        value: Any integer.
        bits: Width in bits.

    Returns:
        int: The value reduced into [-2**(bits-1), 2**(bits-1)).
    """
    half = 1 << (bits - 1)
    return ((value + half) % (1 << bits)) - half


def width_range(bits: int) -> Tuple[int, int]:
    """Inclusive range of a signed width."""
    half = 1 << (bits - 1)
    return -half, half - 1


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Temp:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "IrExpr"

    def __str__(self) -> str:
        return f"{self.op}{self.operand}"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "IrExpr"
    right: "IrExpr"

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


IrExpr = Union[Const, Temp, Unary, Binary]


@dataclass(frozen=True)
class Location:
    """Source location of an instruction.

    Attributes:
        file: Path of the source unit.
        line: 1-based line.
    """

    file: str
    line: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}"


@dataclass(frozen=True)
class MemoryObjectDecl:
    """A global or local memory object.

    Attributes:
        id: Object identifier, `func::name` for locals.
        name: Source name of the object.
        count: Number of elements.
        width: Element width in bits.
        scope: `global` or the owning function name.
        init: Initial element values.
        array: Whether the object was declared with a size.
    """

    id: str
    name: str
    count: int
    width: int
    scope: str = "global"
    init: Tuple[int, ...] = ()
    array: bool = False

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError(f"Object {self.id} needs at least one element.")
        if self.width not in (8, 16, 32):
            raise ValueError(f"Unsupported width {self.width}.")


@dataclass(frozen=True)
class IrInstruction:
    """One IR instruction.

    Attributes:
        kind: Instruction kind.
        uid: Identifier `function:index`.
        loc: Source location.
        presence: Presence condition of the source line.
        operands: Expression operands, by kind: assign (value),
            load (offset), store (offset, value), branch (condition),
            call (arguments), return (value?), make_symbolic (lo, hi),
            assume and assert (condition).
        dest: Temporary receiving a result.
        obj: Memory object of load, store and make_symbolic.
        callee: Called function.
        targets: Branch targets (taken, not taken).
        spec_id: Specification id of a `fail`.
        metadata: Whether a make_symbolic introduces a metadata variable.
    """

    kind: InstKind
    uid: str
    loc: Location
    presence: FeatureExpr = TRUE
    operands: Tuple[IrExpr, ...] = ()
    dest: Optional[str] = None
    obj: Optional[str] = None
    callee: Optional[str] = None
    targets: Tuple[int, ...] = ()
    spec_id: Optional[str] = None
    metadata: bool = False

    @property
    def function(self) -> str:
        """Name of the function holding the instruction."""
        return self.uid.rpartition(":")[0]

    def __str__(self) -> str:
        parts = [self.kind.value]
        if self.dest:
            parts.append(f"{self.dest} =")
        if self.callee:
            parts.append(self.callee)
        if self.obj:
            parts.append(self.obj)
        parts.extend(str(operand) for operand in self.operands)
        if self.targets:
            parts.append("-> " + ",".join(map(str, self.targets)))
        if self.spec_id:
            parts.append(f"@spec({self.spec_id})")
        return f"{self.uid} {' '.join(parts)}"


@dataclass(frozen=True)
class IrFunction:
    """A lowered function.

    Attributes:
        name: Function name.
        params: Object ids of the parameters in order.
        locals: Object ids of parameters and locals.
        returns_value: Whether the function returns an integer.
        body: Instructions.
    """

    name: str
    params: Tuple[str, ...]
    locals: Tuple[str, ...]
    returns_value: bool
    body: Tuple[IrInstruction, ...]


@dataclass(frozen=True)
class IrProgram:
    """A product resolved to IR.

    Attributes:
        product: The product the program was resolved for.
        path: Path of the source unit.
        functions: Functions by name.
        globals: Global objects in declaration order.
        objects: Every memory object by id, locals included.
        entry: Entry function name.
    """

    product: ProductDef
    path: str
    functions: Dict[str, IrFunction]
    globals: Tuple[MemoryObjectDecl, ...]
    objects: Dict[str, MemoryObjectDecl] = field(default_factory=dict)
    entry: str = "main"

    def instructions(self):
        """Iterate over every instruction of every function."""
        for name in sorted(self.functions):
            yield from self.functions[name].body
