"""Concrete interpreter for IR programs.

Runs a program under a fixed list of input values, one per non-metadata
`make_symbolic`, and records the last-writer store-load and store-store
pairs it observes. Metadata variables take the value their `assume`
equates them with. Only expression folding is shared with the symbolic
executor; the interpreter serves as its reference.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from featurefinch.language.ir import (
    Binary,
    Const,
    InstKind,
    IrExpr,
    IrInstruction,
    IrProgram,
    Temp,
    Unary,
    wrap,
)
from featurefinch.symex.exceptions import EngineError, EngineStateError
from featurefinch.symex.state import CallSequence, Status
from featurefinch.symex.tracking import (
    BASE_ADDRESS,
    DepPair,
    deduplicate,
)
from featurefinch.symex.values import binary, unary

MAX_RUNS = 1 << 16


class NeedInput(Exception):
    """The run reached a make_symbolic beyond the given inputs.

    Attributes:
        lo: Smallest value of the input's domain.
        hi: Largest value of the input's domain.
    """

    def __init__(self, lo: int, hi: int) -> None:
        """Record the domain of the missing input."""
        super().__init__(f"input needed in [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi


@dataclass
class _Unbound:
    """Value of a metadata variable before its assume binds it."""

    obj: str
    name: str


@dataclass
class ConcreteOutcome:
    """Result of one concrete run.

    Attributes:
        status: Termination status, None if an assume failed.
        env: Value of every symbolic variable by display name.
        stack: Call stack at termination.
        sequences: Every call stack entered.
        sl_pairs: Unique store-load pairs.
        ss_pairs: Unique store-store pairs.
        spec_id: Spec id of a failing `fail`.
    """

    status: Optional[Status]
    env: Dict[str, int] = field(default_factory=dict)
    stack: CallSequence = ()
    sequences: Set[CallSequence] = field(default_factory=set)
    sl_pairs: List[DepPair] = field(default_factory=list)
    ss_pairs: List[DepPair] = field(default_factory=list)
    spec_id: Optional[str] = None


class ConcreteInterpreter:
    """Executes a program with concrete inputs.

    Attributes:
        program: The program.
        store_key_mode: Key mode of the last-writer map.
    """

    def __init__(
        self, program: IrProgram, store_key_mode: str = BASE_ADDRESS
    ) -> None:
        """Establish the program and key mode."""
        self.program = program
        self.store_key_mode = store_key_mode

    def _key(self, obj: str, offset: int):
        if self.store_key_mode == BASE_ADDRESS:
            return obj
        return (obj, offset)

    def _eval(self, temps: Dict, expr: IrExpr):
        if isinstance(expr, Const):
            return expr.value
        if isinstance(expr, Temp):
            return temps[expr.name]
        if isinstance(expr, Unary):
            return unary(expr.op, self._int(self._eval(temps, expr.operand)))
        if isinstance(expr, Binary):
            left = self._int(self._eval(temps, expr.left))
            right = self._int(self._eval(temps, expr.right))
            return binary(expr.op, left, right)
        raise EngineStateError(f"unsupported expression {expr!r}")

    @staticmethod
    def _int(value) -> int:
        if isinstance(value, _Unbound):
            raise EngineStateError(
                f"metadata variable {value.name} used before its assume"
            )
        return value

    def run(self, inputs: Sequence[int]) -> ConcreteOutcome:
        """Run the program once.

        Args:
            inputs: Values of the non-metadata make_symbolic calls in
                execution order.

        Returns:
            ConcreteOutcome: Status, bindings and dependency pairs.

        Raises:
            NeedInput: If more inputs are needed than given.
        """
        program = self.program
        memory: Dict[Tuple[str, int], object] = {}
        for decl in program.globals:
            for offset, value in enumerate(decl.init):
                memory[(decl.id, offset)] = value

        writers: Dict = {}
        outcome = ConcreteOutcome(status=None)
        counters: Dict[str, int] = {}
        consumed = 0
        sl: List[DepPair] = []
        ss: List[DepPair] = []

        # frame: [function, pc, temps, callsite line, dest]
        frames = [[program.entry, 0, {}, 0, None]]
        self._enter(memory, writers, program.entry)
        outcome.sequences.add(((program.entry, 0),))

        def stack() -> CallSequence:
            return tuple((f[0], f[3]) for f in frames)

        def finish(status: Optional[Status]) -> ConcreteOutcome:
            outcome.status = status
            outcome.stack = stack()
            outcome.sl_pairs = deduplicate(sl)
            outcome.ss_pairs = deduplicate(ss)
            return outcome

        while True:
            frame = frames[-1]
            inst = program.functions[frame[0]].body[frame[1]]
            temps = frame[2]
            kind = inst.kind
            frame[1] += 1

            if kind is InstKind.ASSIGN:
                expr = inst.operands[0]
                if isinstance(expr, Binary) and expr.op in ("/", "%"):
                    if self._int(self._eval(temps, expr.right)) == 0:
                        return finish(Status.FAILURE)
                temps[inst.dest] = self._eval(temps, expr)

            elif kind in (InstKind.LOAD, InstKind.STORE):
                decl = program.objects[inst.obj]
                offset = self._int(self._eval(temps, inst.operands[0]))
                if not 0 <= offset < decl.count:
                    return finish(Status.FAILURE)
                key = self._key(inst.obj, offset)
                previous = writers.get(key)
                if kind is InstKind.LOAD:
                    temps[inst.dest] = memory.get((inst.obj, offset), 0)
                    if previous is not None:
                        sl.append(self._pair("SL", previous, inst))
                else:
                    value = self._int(self._eval(temps, inst.operands[1]))
                    memory[(inst.obj, offset)] = wrap(value, decl.width)
                    if previous is not None:
                        ss.append(self._pair("SS", previous, inst))
                    writers[key] = inst

            elif kind is InstKind.BRANCH:
                cond = self._int(self._eval(temps, inst.operands[0]))
                frame[1] = inst.targets[0] if cond != 0 else inst.targets[1]

            elif kind is InstKind.CALL:
                callee = program.functions[inst.callee]
                args = [self._int(self._eval(temps, a)) for a in inst.operands]
                frames.append([callee.name, 0, {}, inst.loc.line, inst.dest])
                self._enter(memory, writers, callee.name)
                for param, value in zip(callee.params, args):
                    width = program.objects[param].width
                    memory[(param, 0)] = wrap(value, width)
                outcome.sequences.add(stack())

            elif kind is InstKind.RETURN:
                value = 0
                if inst.operands:
                    value = self._int(self._eval(temps, inst.operands[0]))
                if len(frames) == 1:
                    return finish(Status.NORMAL)
                done = frames.pop()
                if done[4] is not None:
                    frames[-1][2][done[4]] = value

            elif kind is InstKind.MAKE_SYMBOLIC:
                decl = program.objects[inst.obj]
                counters[decl.name] = counters.get(decl.name, 0) + 1
                instance = counters[decl.name]
                name = decl.name
                if instance > 1:
                    name = f"{decl.name}_{instance}"
                if inst.metadata:
                    memory[(inst.obj, 0)] = _Unbound(inst.obj, name)
                else:
                    if consumed >= len(inputs):
                        raise NeedInput(
                            inst.operands[0].value, inst.operands[1].value
                        )
                    memory[(inst.obj, 0)] = inputs[consumed]
                    outcome.env[name] = inputs[consumed]
                    consumed += 1

            elif kind is InstKind.ASSUME:
                if not self._assume(temps, inst, memory, outcome):
                    return finish(None)

            elif kind is InstKind.ASSERT:
                if self._int(self._eval(temps, inst.operands[0])) == 0:
                    return finish(Status.FAILURE)

            elif kind is InstKind.FAIL:
                outcome.spec_id = inst.spec_id
                return finish(Status.FAILURE)

            elif kind is InstKind.HALT:
                return finish(Status.BOUND_EXHAUSTED)

    def _enter(self, memory: Dict, writers: Dict, function: str) -> None:
        for object_id in self.program.functions[function].locals:
            decl = self.program.objects[object_id]
            for offset in range(decl.count):
                memory[(object_id, offset)] = 0
                writers.pop((object_id, offset), None)
            writers.pop(object_id, None)

    def _assume(
        self,
        temps: Dict,
        inst: IrInstruction,
        memory: Dict,
        outcome: ConcreteOutcome,
    ) -> bool:
        expr = inst.operands[0]
        if isinstance(expr, Binary) and expr.op == "==":
            left = self._eval(temps, expr.left)
            right = self._eval(temps, expr.right)
            for unbound, other in ((left, right), (right, left)):
                if isinstance(unbound, _Unbound):
                    value = self._int(other)
                    memory[(unbound.obj, 0)] = value
                    outcome.env[unbound.name] = value
                    return True
            return left == right
        return self._int(self._eval(temps, expr)) != 0

    def _pair(
        self, kind: str, src: IrInstruction, dst: IrInstruction
    ) -> DepPair:
        return DepPair(
            kind=kind,
            src=src.uid,
            dst=dst.uid,
            object=dst.obj,
            src_loc=src.loc,
            dst_loc=dst.loc,
            src_presence=src.presence,
            dst_presence=dst.presence,
        )


def run_concrete(
    program: IrProgram,
    inputs: Sequence[int],
    store_key_mode: str = BASE_ADDRESS,
) -> ConcreteOutcome:
    """Run a program once with concrete inputs.

    Args:
        program: The program.
        inputs: Values of the non-metadata symbolic inputs.
        store_key_mode: Key mode of the last-writer map.

    Returns:
        ConcreteOutcome: The outcome of the run.
    """
    return ConcreteInterpreter(program, store_key_mode).run(inputs)


def enumerate_outcomes(
    program: IrProgram,
    store_key_mode: str = BASE_ADDRESS,
    limit: int = MAX_RUNS,
) -> Iterator[ConcreteOutcome]:
    """Run a program under every assignment of its symbolic inputs.

    Inputs are discovered lazily: a run that needs one more input is
    restarted once per value of that input's domain.

    Args:
        program: The program.
        store_key_mode: Key mode of the last-writer map.
        limit: Largest number of runs.

    Yields:
        ConcreteOutcome: One outcome per complete assignment.

    Raises:
        EngineError: If more than `limit` runs would be needed.
    """
    interpreter = ConcreteInterpreter(program, store_key_mode)
    pending: List[Tuple[int, ...]] = [()]
    runs = 0

    while pending:
        prefix = pending.pop()
        runs += 1
        if runs > limit:
            raise EngineError(
                f"more than {limit} input assignments in product "
                f"{program.product.name!r}"
            )
        try:
            yield interpreter.run(prefix)
        except NeedInput as need:
            for value in range(need.hi, need.lo - 1, -1):
                pending.append(prefix + (value,))
