"""Store-load and store-store dependency tracking and call sequences."""
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Set

from featurefinch.language.features import FeatureExpr
from featurefinch.language.ir import IrInstruction, Location
from featurefinch.symex.state import Access, CallSequence, PathState

BASE_ADDRESS = "base-address"
OBJECT_OFFSET = "object-offset"


@dataclass(frozen=True)
class DepPair:
    """A store followed by a load (SL) or a store (SS) of the same key.

    Attributes:
        kind: `SL` or `SS`.
        src: Uid of the source store.
        dst: Uid of the destination load or store.
        object: Object id of the accessed memory.
        src_loc: Location of the source.
        dst_loc: Location of the destination.
        src_presence: Presence condition of the source line.
        dst_presence: Presence condition of the destination line.
    """

    kind: str
    src: str
    dst: str
    object: str
    src_loc: Location
    dst_loc: Location
    src_presence: FeatureExpr
    dst_presence: FeatureExpr

    @property
    def key(self):
        """Identity used to deduplicate pairs across paths."""
        return (self.kind, self.src_loc, self.dst_loc, self.object)

    @property
    def src_function(self) -> str:
        """Function holding the source."""
        return self.src.rpartition(":")[0]

    @property
    def dst_function(self) -> str:
        """Function holding the destination."""
        return self.dst.rpartition(":")[0]

    def sort_key(self):
        """Deterministic ordering of pairs."""
        return (
            self.kind,
            self.src_loc.file,
            self.src_loc.line,
            self.dst_loc.file,
            self.dst_loc.line,
            self.object,
            self.src,
            self.dst,
        )


def store_key(access: Access, mode: str) -> Hashable:
    """Key of the store map for an access.

    Args:
        access: The memory access.
        mode: `base-address` keys by object, `object-offset` by
            (object, offset).

    Returns:
        The store map key.
    """
    if mode == BASE_ADDRESS:
        return access.obj
    return (access.obj, access.offset)


def track(
    state: PathState,
    inst: IrInstruction,
    mode: str,
    instructions: Dict[str, IrInstruction],
) -> None:
    """Update the store map and dependency pairs after an access.

    A store pairs with the previous store of its key (SS) and becomes
    the key's most recent store. A load pairs with the most recent
    store of its key (SL). Accesses to a key with no recorded store
    produce no pair.

    Args:
        state: The successor state that performed the access.
        inst: The executed instruction.
        mode: Store key mode.
        instructions: Instructions by uid.
    """
    access = state.last_access
    if access is None:
        return

    key = store_key(access, mode)
    previous = state.sm.get(key)

    if access.kind == "store":
        if previous is not None:
            state.ss.append(_pair("SS", instructions[previous], inst, access))
        state.sm[key] = inst.uid
    elif previous is not None:
        state.sl.append(_pair("SL", instructions[previous], inst, access))


def _pair(
    kind: str, src: IrInstruction, dst: IrInstruction, access: Access
) -> DepPair:
    return DepPair(
        kind=kind,
        src=src.uid,
        dst=dst.uid,
        object=access.obj,
        src_loc=src.loc,
        dst_loc=dst.loc,
        src_presence=src.presence,
        dst_presence=dst.presence,
    )


def deduplicate(pairs: Iterable[DepPair]) -> List[DepPair]:
    """Keep the first pair of each (kind, src-loc, dst-loc, object).

    Args:
        pairs: Pairs from any number of paths.

    Returns:
        list: Unique pairs in deterministic order.
    """
    seen: Set = set()
    unique = []
    for pair in sorted(pairs, key=DepPair.sort_key):
        if pair.key not in seen:
            seen.add(pair.key)
            unique.append(pair)
    return unique


def sequence_text(sequence: CallSequence) -> str:
    """Serialize a call sequence for ordering."""
    return "/".join(f"{name}@{line}" for name, line in sequence)


def choose_longest(
    sequences: Dict[int, Set[CallSequence]], limit: int
) -> List[CallSequence]:
    """Select the longest call sequences recorded for a path.

    Args:
        sequences: Call sequences by length.
        limit: Number of sequences to keep, at least 1.

    Returns:
        list: Up to `limit` sequences, longest first; ties are broken
            by the smaller serialization.

    Raises:
        ValueError: If limit is below 1.
    """
    if limit < 1:
        raise ValueError("L must be at least 1.")
    candidates = [seq for group in sequences.values() for seq in group]
    candidates.sort(key=lambda seq: (-len(seq), sequence_text(seq)))
    return candidates[:limit]
