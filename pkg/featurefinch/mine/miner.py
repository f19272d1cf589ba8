"""Feature-dependency mining from dependency records to rules."""
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional

from featurefinch.config.settings import MineConfig
from featurefinch.featloc.locators import FeatureDepRecord, make_locator
from featurefinch.featloc.relevance import Tally, classify_relevance
from featurefinch.mine.apriori import Supports, apriori
from featurefinch.mine.items import encode
from featurefinch.mine.rules import AssociationRule, derive_rules, filter_rules
from featurefinch.modelx.records import DepRecord

logger = logging.getLogger(__name__)


@dataclass
class MiningResult:
    """Everything one mining run produces.

    Attributes:
        located: Dependencies labelled with features.
        frequent: Frequent itemsets and their supports.
        rules: Rules left after dropping self dependencies.
        derived: Number of rules before filtering.
        relevance: Endpoint relevance tally, when built from records.
    """

    located: List[FeatureDepRecord] = field(default_factory=list)
    frequent: Supports = field(default_factory=dict)
    rules: List[AssociationRule] = field(default_factory=list)
    derived: int = 0
    relevance: Optional[Tally] = None


class Miner:
    """Runs feature location, encoding, Apriori and rule filtering.

    Attributes:
        config: Miner settings.
    """

    def __init__(self, config: MineConfig = None) -> None:
        """Establish the miner settings.

        Args:
            config: Miner settings, defaults when omitted.
        """
        self.config = config or MineConfig()

    def locate(self, deps: Iterable[DepRecord]) -> List[FeatureDepRecord]:
        """Label dependencies with features, dropping irrelevant ones."""
        locator = make_locator(self.config.locator, self.config.role_separator)
        return [
            located
            for located in (locator(dep) for dep in deps)
            if located is not None
        ]

    def mine(self, deps: List[DepRecord]) -> MiningResult:
        """Mine rules from dependency records.

        Args:
            deps: Dependency records of any number of products.

        Returns:
            MiningResult: Located dependencies, itemsets and rules.
        """
        located = self.locate(deps)
        logger.info(
            "located %d of %d dependencies (%s mode)",
            len(located),
            len(deps),
            self.config.locator,
        )
        result = self.mine_located(located)
        result.relevance = classify_relevance(
            deps, self.config.locator, self.config.role_separator
        )
        return result

    def mine_located(self, located: List[FeatureDepRecord]) -> MiningResult:
        """Mine rules from dependencies already labelled with features.

        Args:
            located: Feature dependencies.

        Returns:
            MiningResult: Itemsets and filtered rules.
        """
        if not located:
            logger.warning("no feature dependencies to mine")

        transactions = [encode(record).items for record in located]
        frequent = apriori(
            transactions, self.config.min_support, self.config.max_size
        )
        derived = derive_rules(frequent, self.config.min_confidence)
        rules = filter_rules(derived)
        logger.info(
            "%d rules derived, %d kept after filtering",
            len(derived),
            len(rules),
        )
        return MiningResult(
            located=located,
            frequent=frequent,
            rules=rules,
            derived=len(derived),
        )
