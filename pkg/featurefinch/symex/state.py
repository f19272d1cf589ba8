"""Per-path state of the symbolic execution engine."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Set, Tuple

from featurefinch.language.ir import Location
from featurefinch.symex.constraints import AtomicConstraint
from featurefinch.symex.values import SymValue

CallEntry = Tuple[str, int]
CallSequence = Tuple[CallEntry, ...]


class Status(Enum):
    """Termination status of a path."""

    ACTIVE = "active"
    NORMAL = "normal"
    FAILURE = "failure"
    BOUND_EXHAUSTED = "bound_exhausted"


@dataclass
class Frame:
    """An activation of a function.

    Attributes:
        function: Function name.
        pc: Index of the next instruction.
        callsite: Location of the call that entered the function.
        dest: Caller temporary receiving the return value.
        temps: Temporary values of the activation.
    """

    function: str
    pc: int
    callsite: Location
    dest: Optional[str] = None
    temps: Dict[str, SymValue] = field(default_factory=dict)

    def copy(self) -> "Frame":
        """Copy the frame with its own temporaries."""
        return Frame(
            self.function, self.pc, self.callsite, self.dest, dict(self.temps)
        )


@dataclass
class Access:
    """The memory access performed by the last executed instruction."""

    kind: str
    obj: str
    offset: int


@dataclass
class PathState:
    """State of one symbolic path.

    Attributes:
        id: Path id.
        pc: Path condition atoms in insertion order.
        memory: Element values by (object id, offset).
        frames: Call stack, entry function first.
        sm: Most recent store instruction uid by store key.
        ss: Store-store pairs seen on this path.
        sl: Store-load pairs seen on this path.
        sequences: Call sequences entered, by length.
        status: Termination status.
        over_approx: Whether a feasibility check was inconclusive.
        counters: make_symbolic instances per base name.
        spec_id: Spec id of the `fail` that ended the path.
        diagnostic: Reason of an error termination.
        last_access: Memory access of the last instruction.
    """

    id: int
    pc: List[AtomicConstraint] = field(default_factory=list)
    memory: Dict[Tuple[str, int], SymValue] = field(default_factory=dict)
    frames: List[Frame] = field(default_factory=list)
    sm: Dict = field(default_factory=dict)
    ss: List = field(default_factory=list)
    sl: List = field(default_factory=list)
    sequences: Dict[int, Set[CallSequence]] = field(default_factory=dict)
    status: Status = Status.ACTIVE
    over_approx: bool = False
    counters: Dict[str, int] = field(default_factory=dict)
    spec_id: Optional[str] = None
    diagnostic: Optional[str] = None
    last_access: Optional[Access] = None
    _pc_texts: Set[str] = field(default_factory=set, repr=False)

    @property
    def frame(self) -> Frame:
        """The innermost frame."""
        return self.frames[-1]

    @property
    def stack(self) -> CallSequence:
        """The call stack as (function, callsite line) entries."""
        return tuple((f.function, f.callsite.line) for f in self.frames)

    def add_atoms(self, atoms: List[AtomicConstraint]) -> bool:
        """Append atoms not already in the path condition.

        Returns:
            bool: Whether any atom was new.
        """
        added = False
        for atom in atoms:
            if atom.text not in self._pc_texts:
                self._pc_texts.add(atom.text)
                self.pc.append(atom)
                added = True
        return added

    def record_sequence(self, sequence: CallSequence) -> None:
        """Insert a call sequence under its length."""
        self.sequences.setdefault(len(sequence), set()).add(sequence)

    def fork(self, new_id: int) -> "PathState":
        """Copy the state for a successor path.

        Args:
            new_id: Id of the successor.

        Returns:
            PathState: An independent copy.
        """
        return PathState(
            id=new_id,
            pc=list(self.pc),
            memory=dict(self.memory),
            frames=[frame.copy() for frame in self.frames],
            sm=dict(self.sm),
            ss=list(self.ss),
            sl=list(self.sl),
            sequences={k: set(v) for k, v in self.sequences.items()},
            status=self.status,
            over_approx=self.over_approx,
            counters=dict(self.counters),
            spec_id=self.spec_id,
            diagnostic=self.diagnostic,
            last_access=None,
            _pc_texts=set(self._pc_texts),
        )

    def terminate(self, status: Status, diagnostic: str = None) -> None:
        """Mark the path terminated."""
        self.status = status
        if diagnostic:
            self.diagnostic = diagnostic
