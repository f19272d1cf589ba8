"""Level-wise frequent itemset mining."""
import logging
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Set

logger = logging.getLogger(__name__)

Itemset = FrozenSet[str]
Supports = Dict[Itemset, Fraction]


def as_fraction(value) -> Fraction:
    """Convert a threshold to an exact fraction, e.g. 0.01 to 1/100."""
    if isinstance(value, Fraction):
        return value
    return Fraction(str(value))


def _candidates(frequent: Iterable[Itemset], size: int) -> Set[Itemset]:
    """Join frequent sets and prune those with an infrequent subset."""
    previous = set(frequent)
    joined = set()
    for left, right in combinations(sorted(previous, key=sorted), 2):
        union = left | right
        if len(union) == size:
            joined.add(union)
    return {
        candidate
        for candidate in joined
        if all(
            frozenset(subset) in previous
            for subset in combinations(candidate, size - 1)
        )
    }


def apriori(
    transactions: Iterable[Iterable[str]],
    min_support,
    max_size: int = 2,
) -> Supports:
    """Find every itemset whose support reaches a threshold.

    Args:
        transactions: Item texts of each record.
        min_support: Smallest support, in (0, 1].
        max_size: Largest itemset size.

    Returns:
        dict: Supports of the frequent itemsets as exact fractions.

    Raises:
        ValueError: If min_support or max_size is out of range.
    """
    threshold = as_fraction(min_support)
    if not 0 < threshold <= 1:
        raise ValueError("min-support must be in (0, 1].")
    if max_size < 1:
        raise ValueError("max-size must be at least 1.")

    records: List[Itemset] = [frozenset(t) for t in transactions]
    if not records:
        logger.warning("apriori: no records, nothing is frequent")
        return {}
    total = len(records)

    counts = Counter(item for record in records for item in record)
    frequent: Supports = {}
    level: List[Itemset] = []
    for item, count in sorted(counts.items()):
        support = Fraction(count, total)
        logger.debug("singleton %s support %s", item, support)
        if support >= threshold:
            itemset = frozenset({item})
            frequent[itemset] = support
            level.append(itemset)

    size = 2
    while level and size <= max_size:
        candidates = _candidates(level, size)
        counts = Counter()
        for record in records:
            if len(record) < size:
                continue
            for candidate in candidates:
                if candidate <= record:
                    counts[candidate] += 1

        level = []
        for candidate in sorted(candidates, key=sorted):
            support = Fraction(counts[candidate], total)
            if support >= threshold:
                frequent[candidate] = support
                level.append(candidate)
        logger.debug("level %d: %d frequent itemsets", size, len(level))
        size += 1

    logger.info(
        "apriori: %d frequent itemsets over %d records", len(frequent), total
    )
    return frequent
