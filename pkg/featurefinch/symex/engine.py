"""Worklist exploration of a program's symbolic paths."""
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Deque, List, Optional

from featurefinch.config.settings import EngineConfig
from featurefinch.language.ir import IrProgram
from featurefinch.symex.constraints import AtomicConstraint
from featurefinch.symex.exceptions import EngineError
from featurefinch.symex.executor import (
    ExecutionContext,
    execute_track_and_update,
)
from featurefinch.symex.state import CallSequence, PathState, Status
from featurefinch.symex.tracking import DepPair, choose_longest, deduplicate

logger = logging.getLogger(__name__)


class Worklist:
    """Active states in depth-first or breadth-first order.

    Depth-first order explores the first successor of a fork first.
    """

    def __init__(self, search: str = "dfs") -> None:
        """Establish an empty worklist.

        Args:
            search: `dfs` or `bfs`.
        """
        self.search = search
        self._states: Deque[PathState] = deque()

    def extend(self, states: List[PathState]) -> None:
        """Add successors in source order."""
        if self.search == "dfs":
            self._states.extend(reversed(states))
        else:
            self._states.extend(states)

    def pop(self) -> PathState:
        """Take the next state to run."""
        if self.search == "dfs":
            return self._states.pop()
        return self._states.popleft()

    def __len__(self) -> int:
        return len(self._states)


@dataclass
class PathOutcome:
    """Models of one terminated path.

    Attributes:
        id: Path id.
        status: Termination status.
        sequences: Call sequences, longest first.
        atoms: Path condition atoms.
        over_approx: Whether feasibility was ever unknown.
        spec_id: Spec id of a failing `fail`.
        diagnostic: Reason of an error termination.
    """

    id: int
    status: Status
    sequences: List[CallSequence]
    atoms: List[AtomicConstraint]
    over_approx: bool = False
    spec_id: Optional[str] = None
    diagnostic: Optional[str] = None


@dataclass
class ExtractionResult:
    """Control-flow and data-flow models of one product.

    Attributes:
        product: Product name.
        normal_paths: Normally terminated paths.
        fail_paths: Paths ending in a failure.
        ss_pairs: Unique store-store pairs.
        sl_pairs: Unique store-load pairs.
        exhausted: Number of paths that ran out of loop unrolling.
        truncated: Whether the time or path budget stopped exploration.
        steps: Number of executed instructions.
        elapsed: Wall time in seconds.
    """

    product: str
    normal_paths: List[PathOutcome] = field(default_factory=list)
    fail_paths: List[PathOutcome] = field(default_factory=list)
    ss_pairs: List[DepPair] = field(default_factory=list)
    sl_pairs: List[DepPair] = field(default_factory=list)
    exhausted: int = 0
    truncated: bool = False
    steps: int = 0
    elapsed: float = 0.0

    @property
    def terminated(self) -> int:
        """Number of terminated paths of any status."""
        return len(self.normal_paths) + len(self.fail_paths) + self.exhausted


class SymbolicEngine:
    """Extracts feature models by exploring every feasible path.

    Attributes:
        config: Engine settings.
    """

    def __init__(self, config: EngineConfig = None) -> None:
        """Establish the engine settings.

        Args:
            config: Engine settings, defaults when omitted.
        """
        self.config = config or EngineConfig()

    def extract_feature_models(self, program: IrProgram) -> ExtractionResult:
        """Run the worklist loop over a program.

        Exploration stops when no active state is left, when the
        timeout passes or when max-paths paths have terminated; the
        last two mark the result truncated. Normal paths report their
        L longest call sequences, failed paths the call stack at the
        failure.

        Args:
            program: The program of one product.

        Returns:
            ExtractionResult: Path and dependency models.

        Raises:
            EngineError: If exploration ends without any terminated path
                and without being truncated.
        """
        config = self.config
        context = ExecutionContext(program, config)
        worklist = Worklist(config.search)
        worklist.extend([context.initial_state()])

        normal: List[PathState] = []
        failed: List[PathState] = []
        exhausted: List[PathState] = []
        result = ExtractionResult(program.product.name)

        start = time.monotonic()
        while len(worklist):
            if time.monotonic() - start > config.timeout_secs:
                logger.warning(
                    "product %s: timeout after %.3fs with %d active paths",
                    program.product.name,
                    config.timeout_secs,
                    len(worklist),
                )
                result.truncated = True
                break
            if len(normal) + len(failed) + len(exhausted) >= config.max_paths:
                logger.warning(
                    "product %s: path budget %d reached",
                    program.product.name,
                    config.max_paths,
                )
                result.truncated = True
                break

            state = worklist.pop()
            frame = state.frame
            inst = program.functions[frame.function].body[frame.pc]
            execute_track_and_update(
                state, inst, worklist, normal, failed, exhausted, context
            )
            result.steps += 1

        result.elapsed = time.monotonic() - start

        if not (normal or failed or exhausted) and not result.truncated:
            raise EngineError(
                f"no feasible path in product {program.product.name!r}"
            )

        for state in sorted(normal, key=lambda s: s.id):
            result.normal_paths.append(
                self._outcome(
                    state, choose_longest(state.sequences, config.longest)
                )
            )
        for state in sorted(failed, key=lambda s: s.id):
            result.fail_paths.append(self._outcome(state, [state.stack]))

        terminated = normal + failed + exhausted
        result.exhausted = len(exhausted)
        result.ss_pairs = deduplicate(p for s in terminated for p in s.ss)
        result.sl_pairs = deduplicate(p for s in terminated for p in s.sl)

        logger.info(
            "product %s: %d normal, %d failure, %d exhausted paths, "
            "%d SS and %d SL pairs in %d steps",
            program.product.name,
            len(result.normal_paths),
            len(result.fail_paths),
            result.exhausted,
            len(result.ss_pairs),
            len(result.sl_pairs),
            result.steps,
        )
        if context.checker.unknown:
            logger.warning(
                "product %s: %d feasibility checks were inconclusive",
                program.product.name,
                context.checker.unknown,
            )
        return result

    @staticmethod
    def _outcome(
        state: PathState, sequences: List[CallSequence]
    ) -> PathOutcome:
        return PathOutcome(
            id=state.id,
            status=state.status,
            sequences=sequences,
            atoms=list(state.pc),
            over_approx=state.over_approx,
            spec_id=state.spec_id,
            diagnostic=state.diagnostic,
        )


def extract_feature_models(
    program: IrProgram, config: EngineConfig = None
) -> ExtractionResult:
    """Extract the feature models of a program.

    Args:
        program: The program of one product.
        config: Engine settings.

    Returns:
        ExtractionResult: Path and dependency models.
    """
    return SymbolicEngine(config).extract_feature_models(program)
