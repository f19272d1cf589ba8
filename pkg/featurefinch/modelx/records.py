"""Records of the path and dependency corpora."""
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

from featurefinch.language.features import TRUE, FeatureExpr

NORMAL = "normal"
FAILURE = "failure"
STATUSES = (NORMAL, FAILURE)
DEP_KINDS = ("SL", "SS")


class SequenceEntry(NamedTuple):
    """A function entered on a path and the call that entered it.

    Attributes:
        function: Name of the entered function.
        file: File of the callsite.
        line: Line of the callsite, 0 for the entry function.
    """

    function: str
    file: str
    line: int


Sequence = Tuple[SequenceEntry, ...]


@dataclass
class PathRecord:
    """One terminated symbolic path.

    Attributes:
        product: Product name.
        spec_id: Spec id of the violated check, failures only.
        status: `normal` or `failure`.
        call_sequences: Call sequences, exactly one for failures.
        atoms: Canonical atom texts, sorted and unique.
        over_approx: Whether feasibility was ever unknown on the path.
        truncated: Whether the product's exploration was truncated.
    """

    product: str
    spec_id: Optional[str]
    status: str
    call_sequences: List[Sequence]
    atoms: List[str] = field(default_factory=list)
    over_approx: bool = False
    truncated: bool = False

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"Unsupported path status {self.status!r}.")
        if not self.call_sequences:
            raise ValueError("A path record needs a call sequence.")
        if self.status == FAILURE and len(self.call_sequences) != 1:
            raise ValueError(
                "A failure record carries exactly one call sequence."
            )
        self.call_sequences = [tuple(seq) for seq in self.call_sequences]
        self.atoms = sorted(set(self.atoms))

    @property
    def is_failure(self) -> bool:
        """Whether the path ended in a failure."""
        return self.status == FAILURE

    def functions(self) -> List[str]:
        """Function names of every call sequence, in order."""
        return [
            entry.function for seq in self.call_sequences for entry in seq
        ]


@dataclass(frozen=True)
class Endpoint:
    """One side of a dependency.

    Attributes:
        file: Source file.
        line: Source line.
        presence: Presence condition of the line.
        function: Function holding the access.
    """

    file: str
    line: int
    presence: FeatureExpr = TRUE
    function: str = ""


@dataclass(frozen=True)
class DepRecord:
    """A store-load or store-store dependency of one product.

    Attributes:
        product: Product name.
        kind: `SL` or `SS`.
        src: The source store.
        dst: The destination load or store.
        object: Accessed memory object.
    """

    product: str
    kind: str
    src: Endpoint
    dst: Endpoint
    object: str

    def __post_init__(self) -> None:
        if self.kind not in DEP_KINDS:
            raise ValueError(f"Unsupported dependency kind {self.kind!r}.")

    @property
    def src_access(self) -> str:
        """Access kind of the source, always a store."""
        return "s"

    @property
    def dst_access(self) -> str:
        """Access kind of the destination, `l` or `s`."""
        return "l" if self.kind == "SL" else "s"
