"""Operational semantics of IR instructions over symbolic path states."""
import logging
from itertools import count
from typing import Any, Dict, List, Optional, Sequence, Tuple

from featurefinch.config.settings import EngineConfig
from featurefinch.language.ir import (
    Binary,
    Const,
    InstKind,
    IrExpr,
    IrInstruction,
    IrProgram,
    Location,
    Temp,
    Unary,
    wrap,
)
from featurefinch.symex.constraints import AtomicConstraint, atomize
from featurefinch.symex.exceptions import EngineStateError
from featurefinch.symex.solver import Feasibility, FeasibilityChecker
from featurefinch.symex.state import Access, Frame, PathState, Status
from featurefinch.symex.tracking import track
from featurefinch.symex.values import SymValue, SymVar, binary, make, unary

logger = logging.getLogger(__name__)


class ExecutionContext:
    """Program-wide data shared by every path of one exploration.

    Attributes:
        program: The program being explored.
        config: Engine settings.
        instructions: Instructions by uid.
        checker: Feasibility checker with its cache.
    """

    def __init__(self, program: IrProgram, config: EngineConfig) -> None:
        """Index the program's instructions.

        Args:
            program: The program being explored.
            config: Engine settings.
        """
        self.program = program
        self.config = config
        self.instructions: Dict[str, IrInstruction] = {
            inst.uid: inst for inst in program.instructions()
        }
        self.checker = FeasibilityChecker(config.feasibility_budget)
        self._ids = count(1)

    def next_id(self) -> int:
        """Allocate a fresh path id."""
        return next(self._ids)

    def initial_state(self) -> PathState:
        """Build the state entering the entry function.

        Returns:
            PathState: Path 0 with globals initialized.
        """
        state = PathState(id=0)
        for decl in self.program.globals:
            for offset, value in enumerate(decl.init):
                state.memory[(decl.id, offset)] = value

        entry = self.program.functions[self.program.entry]
        state.frames.append(
            Frame(entry.name, 0, Location(self.program.path, 0))
        )
        self.reset_locals(state, entry.name)
        state.record_sequence(state.stack)
        return state

    def reset_locals(self, state: PathState, function: str) -> None:
        """Zero the locals of a function and forget their stores."""
        for object_id in self.program.functions[function].locals:
            decl = self.program.objects[object_id]
            for offset in range(decl.count):
                state.memory[(object_id, offset)] = 0
                state.sm.pop((object_id, offset), None)
            state.sm.pop(object_id, None)


def evaluate(state: PathState, expr: IrExpr) -> SymValue:
    """Evaluate an IR expression in the innermost frame.

    Raises:
        EngineStateError: If a temporary is read before it is set.
    """
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Temp):
        try:
            return state.frame.temps[expr.name]
        except KeyError:
            raise EngineStateError(
                f"temporary {expr.name} read before assignment "
                f"in {state.frame.function}"
            )
    if isinstance(expr, Unary):
        return unary(expr.op, evaluate(state, expr.operand))
    if isinstance(expr, Binary):
        return binary(
            expr.op, evaluate(state, expr.left), evaluate(state, expr.right)
        )
    raise EngineStateError(f"unsupported expression {expr!r}")


def _split(
    state: PathState,
    options: Sequence[Tuple[List[AtomicConstraint], Any]],
    context: ExecutionContext,
) -> List[Tuple[PathState, Any]]:
    """Fork a state over alternative constraint sets.

    Infeasible options are dropped before ids are allocated, so the
    first surviving successor keeps the parent's id.

    Args:
        state: State before the fork.
        options: (atoms, payload) per alternative, in source order.
        context: Execution context.

    Returns:
        list: (successor, payload) for each feasible option.
    """
    feasible = []
    for atoms, payload in options:
        known = {atom.text for atom in state.pc}
        fresh = [atom for atom in atoms if atom.text not in known]
        verdict = Feasibility.SAT
        if fresh:
            verdict = context.checker(state.pc + fresh)
        if verdict is not Feasibility.UNSAT:
            feasible.append((fresh, payload, verdict))

    states = [state] + [state.fork(context.next_id()) for _ in feasible[1:]]
    successors = []
    for successor, (atoms, payload, verdict) in zip(states, feasible):
        successor.add_atoms(atoms)
        if verdict is Feasibility.UNKNOWN:
            if not successor.over_approx:
                logger.warning(
                    "path %d over-approximated: feasibility unknown",
                    successor.id,
                )
            successor.over_approx = True
        successors.append((successor, payload))
    return successors


def _fail(state: PathState, inst: IrInstruction, reason: str) -> PathState:
    state.terminate(Status.FAILURE, f"{reason} at {inst.loc}")
    return state


def _resolve_offset(
    state: PathState, inst: IrInstruction, context: ExecutionContext
) -> List[Tuple[PathState, Optional[int]]]:
    """Fork over the concrete offsets an access may touch.

    Returns:
        list: (successor, offset) pairs; offset None marks an
            out-of-bounds successor, already terminated.
    """
    decl = context.program.objects[inst.obj]
    offset = evaluate(state, inst.operands[0])

    if isinstance(offset, int):
        if 0 <= offset < decl.count:
            return [(state, offset)]
        _fail(state, inst, f"out-of-bounds access to {decl.name}[{offset}]")
        return [(state, None)]

    options = [
        (atomize(make("Eq", offset, candidate)), candidate)
        for candidate in range(decl.count)
    ]
    in_bounds = make(
        "And", make("Le", 0, offset), make("Lt", offset, decl.count)
    )
    options.append((atomize(in_bounds, truth=False), None))

    successors = _split(state, options, context)
    for successor, candidate in successors:
        if candidate is None:
            _fail(successor, inst, f"out-of-bounds access to {decl.name}")
    return successors


def step(
    state: PathState, inst: IrInstruction, context: ExecutionContext
) -> List[PathState]:
    """Execute one instruction.

    Args:
        state: An active state positioned at `inst`.
        inst: The instruction to execute.
        context: Execution context.

    Returns:
        list: Feasible successors in source order. The first keeps the
            parent's id; others get fresh ids.

    Raises:
        EngineStateError: If the state is not active.
    """
    if state.status is not Status.ACTIVE:
        raise EngineStateError(f"path {state.id} is not active")
    state.last_access = None
    kind = inst.kind

    if kind is InstKind.ASSIGN:
        return _assign(state, inst, context)

    if kind in (InstKind.LOAD, InstKind.STORE):
        value = None
        if kind is InstKind.STORE:
            value = evaluate(state, inst.operands[1])
        decl = context.program.objects[inst.obj]
        successors = []
        for successor, offset in _resolve_offset(state, inst, context):
            if offset is not None:
                if kind is InstKind.LOAD:
                    successor.frame.temps[inst.dest] = successor.memory.get(
                        (inst.obj, offset), 0
                    )
                else:
                    stored = value
                    if isinstance(stored, int):
                        stored = wrap(stored, decl.width)
                    successor.memory[(inst.obj, offset)] = stored
                successor.last_access = Access(
                    kind.value, inst.obj, offset
                )
                successor.frame.pc += 1
            successors.append(successor)
        return successors

    if kind is InstKind.BRANCH:
        taken, not_taken = inst.targets
        cond = evaluate(state, inst.operands[0])
        if taken == not_taken or isinstance(cond, int):
            state.frame.pc = taken if cond != 0 else not_taken
            return [state]
        options = [
            (atomize(cond, True), taken),
            (atomize(cond, False), not_taken),
        ]
        successors = []
        for successor, target in _split(state, options, context):
            successor.frame.pc = target
            successors.append(successor)
        return successors

    if kind is InstKind.CALL:
        return [_call(state, inst, context)]

    if kind is InstKind.RETURN:
        value = evaluate(state, inst.operands[0]) if inst.operands else 0
        frame = state.frames.pop()
        if not state.frames:
            state.frames.append(frame)
            state.terminate(Status.NORMAL)
        elif frame.dest is not None:
            state.frame.temps[frame.dest] = value
        return [state]

    if kind is InstKind.MAKE_SYMBOLIC:
        decl = context.program.objects[inst.obj]
        instance = state.counters.get(decl.name, 0) + 1
        state.counters[decl.name] = instance
        state.memory[(inst.obj, 0)] = SymVar(
            decl.name,
            instance,
            decl.width,
            inst.operands[0].value,
            inst.operands[1].value,
        )
        state.frame.pc += 1
        return [state]

    if kind is InstKind.ASSUME:
        cond = evaluate(state, inst.operands[0])
        if isinstance(cond, int):
            if cond == 0:
                return []
            state.frame.pc += 1
            return [state]
        successors = _split(state, [(atomize(cond, True), None)], context)
        for successor, _ in successors:
            successor.frame.pc += 1
        return [successor for successor, _ in successors]

    if kind is InstKind.ASSERT:
        cond = evaluate(state, inst.operands[0])
        if isinstance(cond, int):
            if cond == 0:
                return [_fail(state, inst, "assertion failed")]
            state.frame.pc += 1
            return [state]
        options = [(atomize(cond, True), True), (atomize(cond, False), False)]
        successors = []
        for successor, holds in _split(state, options, context):
            if holds:
                successor.frame.pc += 1
            else:
                _fail(successor, inst, "assertion failed")
            successors.append(successor)
        return successors

    if kind is InstKind.FAIL:
        state.spec_id = inst.spec_id
        state.terminate(
            Status.FAILURE, f"specification violated at {inst.loc}"
        )
        return [state]

    if kind is InstKind.HALT:
        state.terminate(
            Status.BOUND_EXHAUSTED, f"loop bound exhausted at {inst.loc}"
        )
        return [state]

    raise EngineStateError(f"unsupported instruction {inst}")


def _assign(
    state: PathState, inst: IrInstruction, context: ExecutionContext
) -> List[PathState]:
    expr = inst.operands[0]
    if not (isinstance(expr, Binary) and expr.op in ("/", "%")):
        state.frame.temps[inst.dest] = evaluate(state, expr)
        state.frame.pc += 1
        return [state]

    left = evaluate(state, expr.left)
    right = evaluate(state, expr.right)
    if isinstance(right, int):
        if right == 0:
            return [_fail(state, inst, "division by zero")]
        state.frame.temps[inst.dest] = binary(expr.op, left, right)
        state.frame.pc += 1
        return [state]

    is_zero = make("Eq", 0, right)
    options = [
        (atomize(is_zero, False), True),
        (atomize(is_zero, True), False),
    ]
    successors = []
    for successor, nonzero in _split(state, options, context):
        if nonzero:
            successor.frame.temps[inst.dest] = binary(expr.op, left, right)
            successor.frame.pc += 1
        else:
            _fail(successor, inst, "division by zero")
        successors.append(successor)
    return successors


def _call(
    state: PathState, inst: IrInstruction, context: ExecutionContext
) -> PathState:
    callee = context.program.functions[inst.callee]
    args = [evaluate(state, arg) for arg in inst.operands]
    state.frame.pc += 1
    state.frames.append(Frame(callee.name, 0, inst.loc, inst.dest))
    context.reset_locals(state, callee.name)

    for param, value in zip(callee.params, args):
        if isinstance(value, int):
            value = wrap(value, context.program.objects[param].width)
        state.memory[(param, 0)] = value
    return state


def execute_track_and_update(
    state: PathState,
    inst: IrInstruction,
    active,
    normal_term: List[PathState],
    fail_term: List[PathState],
    exhausted: List[PathState],
    context: ExecutionContext,
) -> List[PathState]:
    """Execute an instruction and update models and worklists.

    For each successor: a call records the call stack after the push
    as a call sequence; a store pairs with the key's previous store and
    replaces it in the store map; a load pairs with the key's most
    recent store; terminated successors move to their result list and
    active ones go back to the worklist.

    Args:
        state: The active state positioned at `inst`.
        inst: The instruction.
        active: Worklist with an `extend` method.
        normal_term: Normally terminated states.
        fail_term: States terminated by a failure.
        exhausted: States that ran out of loop unrolling.
        context: Execution context.

    Returns:
        list: The successors.
    """
    successors = step(state, inst, context)
    still_active = []

    for successor in successors:
        if inst.kind is InstKind.CALL:
            successor.record_sequence(successor.stack)
        if successor.last_access is not None:
            track(
                successor,
                inst,
                context.config.store_key_mode,
                context.instructions,
            )

        if successor.status is Status.NORMAL:
            normal_term.append(successor)
        elif successor.status is Status.FAILURE:
            fail_term.append(successor)
        elif successor.status is Status.BOUND_EXHAUSTED:
            exhausted.append(successor)
        else:
            still_active.append(successor)

    active.extend(still_active)
    return successors
