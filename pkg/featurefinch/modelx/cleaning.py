"""Removal of specification-checking calls from call sequences."""
import logging
from dataclasses import replace
from fnmatch import fnmatchcase
from typing import Iterable, List, Optional, Sequence, Tuple

from featurefinch.modelx.records import FAILURE, PathRecord

logger = logging.getLogger(__name__)


def is_excluded(function: str, exclusions: Iterable[str]) -> bool:
    """Check a function name against shell-style exclusion patterns."""
    return any(fnmatchcase(function, pattern) for pattern in exclusions)


def clean_trace(
    sequence: Sequence[tuple], exclusions: Iterable[str]
) -> Optional[Tuple]:
    """Drop the entries of excluded functions from a call sequence.

    Args:
        sequence: Entries whose first field is the function name.
        exclusions: Function name patterns, e.g. `*_spec__*`.

    Returns:
        tuple: The remaining entries, or None if none remain.
    """
    exclusions = tuple(exclusions)
    kept = tuple(
        entry for entry in sequence if not is_excluded(entry[0], exclusions)
    )
    return kept or None


class TraceCleaner:
    """Cleans the call sequences of path records.

    Records left without any call sequence are dropped and counted.

    Attributes:
        exclusions: Function name patterns to remove.
        dropped: Number of records dropped so far.
    """

    def __init__(self, exclusions: Iterable[str] = ()) -> None:
        """Establish the exclusion patterns.

        Args:
            exclusions: Function name patterns to remove.
        """
        self.exclusions = tuple(exclusions)
        self.dropped = 0

    def clean(self, record: PathRecord) -> Optional[PathRecord]:
        """Clean one record.

        Args:
            record: A path record.

        Returns:
            PathRecord: The cleaned record, or None if it was dropped.
        """
        sequences = []
        for sequence in record.call_sequences:
            cleaned = clean_trace(sequence, self.exclusions)
            if cleaned is not None and cleaned not in sequences:
                sequences.append(cleaned)

        if not sequences or (
            record.status == FAILURE and len(sequences) != 1
        ):
            self.dropped += 1
            logger.debug(
                "dropped %s record of product %s: every call excluded",
                record.status,
                record.product,
            )
            return None
        return replace(record, call_sequences=sequences)

    def clean_all(self, records: Iterable[PathRecord]) -> List[PathRecord]:
        """Clean records, keeping the ones that survive.

        Args:
            records: Path records.

        Returns:
            list: Cleaned records in input order.
        """
        before = self.dropped
        cleaned = [
            kept
            for kept in (self.clean(record) for record in records)
            if kept is not None
        ]
        if self.dropped > before:
            logger.warning(
                "%d records dropped by trace cleaning", self.dropped - before
            )
        return cleaned
