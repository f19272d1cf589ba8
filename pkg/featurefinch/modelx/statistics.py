"""Summary statistics of a path corpus."""
from dataclasses import dataclass
from typing import Sequence

from featurefinch.modelx.exceptions import CorpusError
from featurefinch.modelx.records import PathRecord


@dataclass(frozen=True)
class CorpusStatistics:
    """Shape of the path models of one product line.

    Attributes:
        dataset: Name of the product line.
        products: Number of products with at least one path.
        normal: Normal paths.
        failure: Failure paths.
        trace_min: Shortest call sequence.
        trace_max: Longest call sequence.
        functions: Distinct functions over all call sequences.
        atoms_min: Smallest path condition.
        atoms_max: Largest path condition.
        constraints: Distinct atoms over all path conditions.
    """

    dataset: str
    products: int
    normal: int
    failure: int
    trace_min: int
    trace_max: int
    functions: int
    atoms_min: int
    atoms_max: int
    constraints: int

    @property
    def failure_ratio(self) -> float:
        """Failure paths as a percentage of all paths."""
        return 100.0 * self.failure / (self.normal + self.failure)


def corpus_statistics(
    records: Sequence[PathRecord], dataset: str = "corpus"
) -> CorpusStatistics:
    """Summarise a path corpus.

    Args:
        records: Path records of one product line.
        dataset: Name reported for the corpus.

    Returns:
        CorpusStatistics: Counts and min/max sizes.

    Raises:
        CorpusError: If the corpus is empty.
    """
    if not records:
        raise CorpusError(f"no path records in {dataset}")

    lengths = [len(seq) for record in records for seq in record.call_sequences]
    sizes = [len(record.atoms) for record in records]
    failure = sum(record.is_failure for record in records)

    return CorpusStatistics(
        dataset=dataset,
        products=len({record.product for record in records}),
        normal=len(records) - failure,
        failure=failure,
        trace_min=min(lengths),
        trace_max=max(lengths),
        functions=len({f for record in records for f in record.functions()}),
        atoms_min=min(sizes),
        atoms_max=max(sizes),
        constraints=len({atom for record in records for atom in record.atoms}),
    )
