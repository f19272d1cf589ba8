"""Association rules between encoded feature-dependency items."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import FrozenSet, Iterable, List

from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.language.features import equivalent
from featurefinch.mine.apriori import Supports, as_fraction
from featurefinch.mine.items import DESTINATION, SOURCE, parse_item
from featurefinch.support.reports import fraction_text, render_csv

logger = logging.getLogger(__name__)

BOTH_WAYS = "⟺"
ONE_WAY = "⟹"
COLUMNS = ("lhs", "rhs", "direction", "support", "confidence")


@dataclass(frozen=True)
class AssociationRule:
    """A rule `lhs -> rhs` over item texts.

    Attributes:
        lhs: Antecedent items.
        rhs: Consequent items.
        support: Support of lhs and rhs together.
        confidence: support(lhs | rhs) / support(lhs).
    """

    lhs: FrozenSet[str]
    rhs: FrozenSet[str]
    support: Fraction
    confidence: Fraction

    def __post_init__(self) -> None:
        if self.lhs & self.rhs:
            raise ValueError("Rule sides must be disjoint.")


@dataclass(frozen=True)
class ReportedRule:
    """A rule as reported, with both directions merged.

    Attributes:
        lhs: Antecedent items.
        rhs: Consequent items.
        direction: `⟺` when both directions hold, else `⟹`.
        support: Support of the itemset.
        confidence: Confidence, the smaller one for `⟺`.
    """

    lhs: FrozenSet[str]
    rhs: FrozenSet[str]
    direction: str
    support: Fraction
    confidence: Fraction

    @property
    def text(self) -> str:
        """Rule text such as `{a} ⟺ {b}`."""
        return f"{{{_side(self.lhs)}}} {self.direction} {{{_side(self.rhs)}}}"


def _side(items: FrozenSet[str]) -> str:
    return ", ".join(sorted(items))


def derive_rules(frequent: Supports, min_confidence) -> List[AssociationRule]:
    """Derive the confident rules of frequent itemsets.

    Args:
        frequent: Supports from apriori, including every subset of
            each frequent itemset.
        min_confidence: Smallest confidence kept, in [0, 1].

    Returns:
        list: Rules in deterministic order.
    """
    threshold = as_fraction(min_confidence)
    rules = []
    for itemset in sorted(frequent, key=sorted):
        if len(itemset) < 2:
            continue
        support = frequent[itemset]
        for size in range(1, len(itemset)):
            for lhs in combinations(sorted(itemset), size):
                lhs = frozenset(lhs)
                confidence = support / frequent[lhs]
                if confidence >= threshold:
                    rules.append(
                        AssociationRule(
                            lhs, itemset - lhs, support, confidence
                        )
                    )
                else:
                    logger.debug(
                        "rule %s -> %s below confidence (%s)",
                        _side(lhs),
                        _side(itemset - lhs),
                        confidence,
                    )
    return rules


def _is_self_dependency(rule: AssociationRule) -> bool:
    items = [parse_item(text) for text in rule.lhs | rule.rhs]
    sources = [item.feature for item in items if item.role == SOURCE]
    dests = [item.feature for item in items if item.role == DESTINATION]
    return any(
        equivalent(source, dest) for source in sources for dest in dests
    )


def filter_rules(rules: Iterable[AssociationRule]) -> List[AssociationRule]:
    """Drop rules relating a feature to itself.

    Args:
        rules: Rules over encoded items.

    Returns:
        list: Rules whose source and destination features differ.

    Raises:
        ItemFormatError: If an item text is malformed.
    """
    kept = []
    for rule in rules:
        if _is_self_dependency(rule):
            logger.debug("dropped self dependency %s", sorted(rule.lhs))
        else:
            kept.append(rule)
    return kept


def _orient(lhs: FrozenSet[str], rhs: FrozenSet[str]):
    """Put the side with a Source item first, then the smaller text."""

    def key(side):
        has_source = any(f"_{SOURCE}_" in text for text in side)
        return (not has_source, _side(side))

    return (lhs, rhs) if key(lhs) <= key(rhs) else (rhs, lhs)


def merge_directions(rules: Iterable[AssociationRule]) -> List[ReportedRule]:
    """Merge rules holding in both directions.

    Args:
        rules: Directional rules.

    Returns:
        list: Unique reported rules sorted by support and confidence,
            both descending, then by rule text.
    """
    by_pair = {}
    for rule in rules:
        by_pair.setdefault((rule.lhs, rule.rhs), rule)

    reported = {}
    for (lhs, rhs), rule in by_pair.items():
        reverse = by_pair.get((rhs, lhs))
        if reverse is not None:
            first, second = _orient(lhs, rhs)
            confidence = min(rule.confidence, reverse.confidence)
            merged = ReportedRule(
                first, second, BOTH_WAYS, rule.support, confidence
            )
        else:
            merged = ReportedRule(
                lhs, rhs, ONE_WAY, rule.support, rule.confidence
            )
        reported[(merged.lhs, merged.rhs, merged.direction)] = merged

    return sorted(
        reported.values(),
        key=lambda r: (-r.support, -r.confidence, r.text),
    )


def format_rules(
    rules: Iterable[AssociationRule], preamble: str = ""
) -> str:
    """Render rules as the rules CSV.

    Args:
        rules: Filtered rules.
        preamble: Comment lines written before the header.

    Returns:
        str: CSV with columns lhs, rhs, direction, support, confidence.
    """
    rows = [
        (
            _side(rule.lhs),
            _side(rule.rhs),
            rule.direction,
            fraction_text(rule.support),
            fraction_text(rule.confidence),
        )
        for rule in merge_directions(rules)
    ]
    return render_csv(COLUMNS, rows, preamble)


def report_rules(
    rules: Iterable[AssociationRule], path: str, preamble: str = ""
) -> None:
    """Write the rules CSV.

    Args:
        rules: Filtered rules.
        path: Output file.
        preamble: Comment lines written before the header.
    """
    FileSystem.write_file(path, format_rules(rules, preamble))
