"""Encoding of feature dependencies as itemsets.

An item reads `<FEATURE-EXPR>_<Source|Destination>_{<KIND>}_<ACCESS>`,
e.g. `LS_RECURSIVE_Source_{Store_Store}_Store`. The kind segment is
always written with underscores.
"""
import re
from dataclasses import dataclass
from typing import FrozenSet

from featurefinch.featloc.locators import FeatureDepRecord
from featurefinch.language.exceptions import DirectiveError
from featurefinch.language.features import FeatureExpr, parse_feature_expr
from featurefinch.mine.exceptions import ItemFormatError

SOURCE = "Source"
DESTINATION = "Destination"
KIND_SEGMENTS = {"SS": "Store_Store", "SL": "Store_Load"}
KINDS = {segment: kind for kind, segment in KIND_SEGMENTS.items()}
ACCESSES = {"s": "Store", "l": "Load"}

_ITEM = re.compile(
    r"(?P<feature>.+)_(?P<role>Source|Destination)"
    r"_\{(?P<kind>Store_Store|Store_Load)\}_(?P<access>Store|Load)\Z"
)
_HYPHENATED = re.compile(r"_\{Store-(Store|Load)\}_")


@dataclass(frozen=True)
class EncodedItem:
    """One endpoint of a feature dependency.

    Attributes:
        feature: Feature expression of the endpoint.
        role: `Source` or `Destination`.
        kind: Dependency kind, `SS` or `SL`.
        access: `Store` or `Load`.
    """

    feature: FeatureExpr
    role: str
    kind: str
    access: str

    @property
    def text(self) -> str:
        """Canonical item text."""
        feature = self.feature.to_text(compact=True)
        segment = KIND_SEGMENTS[self.kind]
        return f"{feature}_{self.role}_{{{segment}}}_{self.access}"

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class ItemSetRecord:
    """The two items of one dependency.

    Attributes:
        source: Source-role item.
        dest: Destination-role item.
    """

    source: EncodedItem
    dest: EncodedItem

    @property
    def items(self) -> FrozenSet[str]:
        """Texts of both items."""
        return frozenset({self.source.text, self.dest.text})


def encode(record: FeatureDepRecord) -> ItemSetRecord:
    """Encode a feature dependency as a pair of items.

    Args:
        record: A located dependency.

    Returns:
        ItemSetRecord: The source item, accessed by a store, and the
            destination item, accessed per the dependency.
    """
    return ItemSetRecord(
        source=EncodedItem(record.source, SOURCE, record.kind, "Store"),
        dest=EncodedItem(
            record.dest,
            DESTINATION,
            record.kind,
            ACCESSES[record.dest_access],
        ),
    )


def parse_item(text: str) -> EncodedItem:
    """Parse an item text.

    Args:
        text: Item text in canonical form.

    Returns:
        EncodedItem: The parsed item.

    Raises:
        ItemFormatError: If the text is malformed, uses the hyphenated
            kind segment or has an access that contradicts its role.
    """
    if _HYPHENATED.search(text):
        raise ItemFormatError(
            f"item {text!r} uses a hyphenated kind, write "
            f"{{Store_Store}} or {{Store_Load}}"
        )
    match = _ITEM.match(text)
    if match is None:
        raise ItemFormatError(f"malformed item {text!r}")

    role = match["role"]
    kind = KINDS[match["kind"]]
    access = match["access"]
    expected = "Store"
    if role == DESTINATION and kind == "SL":
        expected = "Load"
    if access != expected:
        raise ItemFormatError(
            f"item {text!r}: {role} of {match['kind']} must be {expected}"
        )

    try:
        feature = parse_feature_expr(match["feature"])
    except DirectiveError as error:
        raise ItemFormatError(f"item {text!r}: {error}")
    return EncodedItem(feature, role, kind, access)
