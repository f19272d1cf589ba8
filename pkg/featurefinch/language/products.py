"""Product definitions: named sets of enabled features."""
import re
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, List

from featurefinch.language.exceptions import ProductError
from featurefinch.language.features import FEATURE_NAME

_LINE = re.compile(r"\s*(?P<name>[^:\s][^:]*?)\s*:(?P<features>.*)\Z")


@dataclass(frozen=True)
class ProductDef:
    """One product of a product line.

    Attributes:
        name: Product name, unique within a product file.
        enabled: Names of the enabled features.
    """

    name: str
    enabled: FrozenSet[str]

    def to_line(self) -> str:
        """Render the product as a product file line.

        Returns:
            str: Text such as `sign_verify: Sign, Verify`.
        """
        return f"{self.name}: {', '.join(sorted(self.enabled))}"


def parse_products(
    text: str, declared: AbstractSet[str] = None
) -> List[ProductDef]:
    """Parse a product file.

    Each non-blank line reads `name: feat1, feat2, ...`. Lines starting
    with `#` are comments.

    Args:
        text: Contents of the product file.
        declared: Features of the source unit, or None to skip
            the subset check.

    Returns:
        list: Products in file order.

    Raises:
        ProductError: On a malformed line, a duplicate name, an
            unknown feature or an empty file.
    """
    products: List[ProductDef] = []
    names = set()

    for number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue

        match = _LINE.match(line)
        if not match:
            raise ProductError(f"malformed product at line {number}")

        name = match.group("name")
        if name in names:
            raise ProductError(
                f"duplicate product {name!r} at line {number}"
            )
        names.add(name)

        enabled = set()
        for feature in match.group("features").split(","):
            feature = feature.strip()
            if not feature:
                continue
            if not FEATURE_NAME.match(feature):
                raise ProductError(
                    f"invalid feature {feature!r} at line {number}"
                )
            if declared is not None and feature not in declared:
                raise ProductError(
                    f"undeclared feature {feature!r} in product {name!r}"
                )
            enabled.add(feature)

        products.append(ProductDef(name, frozenset(enabled)))

    if not products:
        raise ProductError("empty product file")
    return products


def format_products(products: List[ProductDef]) -> str:
    """Render products as a product file.

    Args:
        products: Products to render.

    Returns:
        str: One line per product.
    """
    return "".join(f"{product.to_line()}\n" for product in products)
