"""Bag-of-words documents and vocabularies built from path records."""
import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from featurefinch.learn.exceptions import TrainingError
from featurefinch.modelx.records import PathRecord

STACK = "stack"
CONSTRAINTS = "constraints"
COMBINED = "combined"
SOURCES = (STACK, CONSTRAINTS, COMBINED)

# `fRes_2` and `x_3` are later instances of `fRes` and `x`.
_INSTANCE = re.compile(r"\b([A-Za-z_][A-Za-z0-9_]*?)_(?:[2-9]|[1-9][0-9]+)\b")


def strip_instances(atom: str) -> str:
    """Remove instance suffixes of symbolic variables from an atom."""
    return _INSTANCE.sub(r"\1", atom)


def _head_removed(entries: Sequence, fraction: float) -> List:
    return list(entries[math.floor(fraction * len(entries)):])


def record_tokens(
    record: PathRecord, source: str, fraction: float = 0.0
) -> List[str]:
    """Tokens of a record for one data source.

    Args:
        record: A cleaned path record.
        source: `stack`, `constraints` or `combined`.
        fraction: Share of each call sequence and of the sorted atom
            list removed from its head.

    Returns:
        list: Function names and/or atom texts.

    Raises:
        ValueError: If the source is not supported.
    """
    if source not in SOURCES:
        raise ValueError(f"Unsupported data source {source}.")

    tokens: List[str] = []
    if source in (STACK, COMBINED):
        for sequence in record.call_sequences:
            tokens.extend(
                entry.function for entry in _head_removed(sequence, fraction)
            )
    if source in (CONSTRAINTS, COMBINED):
        tokens.extend(
            strip_instances(atom)
            for atom in _head_removed(record.atoms, fraction)
        )
    return tokens


@dataclass
class TraceDocument:
    """A labelled bag of words.

    Attributes:
        tokens: Token counts.
        label: 1 for a failure path, 0 for a normal one.
        spec_id: Spec id of a failure path.
        product: Product name.
    """

    tokens: Counter
    label: int
    spec_id: Optional[str] = None
    product: str = ""


def make_document(
    record: PathRecord, source: str, fraction: float = 0.0
) -> TraceDocument:
    """Build the document of a record."""
    return TraceDocument(
        tokens=Counter(record_tokens(record, source, fraction)),
        label=int(record.is_failure),
        spec_id=record.spec_id,
        product=record.product,
    )


class Vocabulary:
    """Maps tokens to matrix columns in lexicographic order.

    Attributes:
        source: Data source the tokens come from.
        tokens: Tokens by column.
    """

    def __init__(self, tokens: Iterable[str], source: str) -> None:
        """Establish the columns.

        Args:
            tokens: Tokens, sorted and deduplicated here.
            source: Data source of the tokens.
        """
        self.source = source
        self.tokens: Tuple[str, ...] = tuple(sorted(set(tokens)))
        self.index: Dict[str, int] = {
            token: column for column, token in enumerate(self.tokens)
        }

    @classmethod
    def build(
        cls, documents: Iterable[TraceDocument], source: str
    ) -> "Vocabulary":
        """Collect the tokens of training documents."""
        return cls((t for doc in documents for t in doc.tokens), source)

    def __len__(self) -> int:
        return len(self.tokens)

    def restrict(self, tokens: Iterable[str]) -> "Vocabulary":
        """A vocabulary holding only the given tokens."""
        return Vocabulary(
            (token for token in tokens if token in self.index), self.source
        )

    def transform(self, documents: Sequence[TraceDocument]) -> np.ndarray:
        """Count matrix of documents; unknown tokens are ignored."""
        matrix = np.zeros((len(documents), len(self.tokens)))
        for row, document in enumerate(documents):
            for token, count in document.tokens.items():
                column = self.index.get(token)
                if column is not None:
                    matrix[row, column] = count
        return matrix


def vectorize(
    records: Sequence[PathRecord],
    source: str,
    vocab: Optional[Vocabulary] = None,
) -> Tuple[np.ndarray, np.ndarray, Vocabulary]:
    """Turn records into a count matrix.

    Args:
        records: Cleaned path records.
        source: `stack`, `constraints` or `combined`.
        vocab: Vocabulary to reuse; built from the records if omitted.

    Returns:
        tuple: Count matrix, labels (1 for failure) and vocabulary.

    Raises:
        TrainingError: If there are no records, or atoms are requested
            but no record has any.
    """
    if not records:
        raise TrainingError("empty corpus")
    if source != STACK and not any(record.atoms for record in records):
        raise TrainingError(f"source {source!r} needs records with atoms")

    documents = [make_document(record, source) for record in records]
    if vocab is None:
        vocab = Vocabulary.build(documents, source)
    labels = np.array([doc.label for doc in documents], dtype=int)
    return vocab.transform(documents), labels, vocab
