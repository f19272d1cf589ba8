"""The shipped benchmark product lines.

`mailkit`, `liftkit` and `pumpkit` are small analogs of an e-mail
client, an elevator and a mine pump controller. Their products are all
single features and all feature pairs, so every seeded interaction has
exactly one product enabling both of its features.
"""
import logging
from dataclasses import dataclass
from os.path import join
from typing import Dict, List, Optional, Tuple

from featurefinch.bench.blueprints import (
    Blueprint,
    FeatureRole,
    InputDomain,
    Interaction,
    interaction_rows,
    pairwise_products,
    render_unit,
    seeded_products,
)
from featurefinch.bench.exceptions import SuiteValidationError
from featurefinch.config.settings import EngineConfig
from featurefinch.featloc.locators import role_feature
from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import ProductDef, format_products
from featurefinch.language.syntax import SourceUnit
from featurefinch.modelx.annotation import annotate_metadata_vars
from featurefinch.support.reports import render_csv
from featurefinch.symex.engine import ExtractionResult, SymbolicEngine
from featurefinch.symex.tracking import DepPair

logger = logging.getLogger(__name__)

INTERACTION_COLUMNS = ("spec_id", "source", "dest", "kind", "slot", "guarded")

MAILKIT = Blueprint(
    name="mailkit",
    description="e-mail client with eight optional features",
    inputs=(
        InputDomain("msg", 0, 7),
        InputDomain("user", 0, 3),
        InputDomain("mode", 0, 3),
    ),
    roles=(
        FeatureRole("Keys", "keys", "mode"),
        FeatureRole("Addressbook", "addressbook", "user"),
        FeatureRole("Encrypt", "encrypt", "msg"),
        FeatureRole("Decrypt", "decrypt", "msg"),
        FeatureRole("Forward", "forward", "user"),
        FeatureRole("Sign", "sign", "msg"),
        FeatureRole("Autoresponder", "autorespond", "mode"),
        FeatureRole("Verify", "verify", "msg"),
    ),
    interactions=interaction_rows(
        """
        keys_verify           Keys        Verify        SS trust     user 10 12
        keys_addressbook      Keys        Addressbook   SS contact   mode 20 22
        addressbook_encrypt   Addressbook Encrypt       SL alias     msg   3  9
        encrypt_decrypt       Encrypt     Decrypt       SL cipher    msg   1  3
        encrypt_forward       Encrypt     Forward       SL sealed    user  5  7
        encrypt_autoresponder Encrypt     Autoresponder SL envelope  mode  2  5
        decrypt_forward       Decrypt     Forward       SS outbox    msg  30 35
        forward_sign          Forward     Sign          SL header    msg   2  9
        sign_verify           Sign        Verify        SL signature msg   4  5
        sign_autoresponder    Sign        Autoresponder SS reply     user 40 41
        """
    ),
)

LIFTKIT = Blueprint(
    name="liftkit",
    description="elevator controller with six optional features",
    inputs=(
        InputDomain("floor", 0, 4),
        InputDomain("load", 0, 7),
        InputDomain("call", 0, 3),
    ),
    roles=(
        FeatureRole("Weight", "weigh", "load"),
        FeatureRole("Empty", "empty", "floor"),
        FeatureRole("TwoThirdsFull", "twothirds", "load"),
        FeatureRole("Overloaded", "overload", "load"),
        FeatureRole("ExecutiveFloor", "executive", "floor"),
        FeatureRole("Park", "park", "call"),
    ),
    interactions=interaction_rows(
        """
        weight_overloaded  Weight        Overloaded     SL mass    load   1  8
        weight_twothirds   Weight        TwoThirdsFull  SL ballast load   2  6
        empty_executive    Empty         ExecutiveFloor SL vacancy floor  1  5
        twothirds_park     TwoThirdsFull Park           SS stop    floor 10 12
        overload_executive Overloaded    ExecutiveFloor SL blocked call   1  3
        """
    ),
)

PUMPKIT = Blueprint(
    name="pumpkit",
    description="mine pump controller with seven optional features",
    inputs=(
        InputDomain("water", 0, 7),
        InputDomain("methane", 0, 3),
        InputDomain("cmd", 0, 3),
    ),
    roles=(
        FeatureRole("Command", "command", "cmd"),
        FeatureRole("MethaneQuery", "query", "methane"),
        FeatureRole("Low", "low", "water"),
        FeatureRole("High", "high", "water"),
        FeatureRole("Start", "start", "cmd"),
        FeatureRole("Stop", "stop", "water"),
        FeatureRole("MethaneAlarm", "alarm", "methane"),
    ),
    # command_start has no fail: nothing in the code checks it.
    interactions=interaction_rows(
        """
        query_alarm   MethaneQuery MethaneAlarm SL gas     methane  1  4
        low_stop      Low          Stop         SL level   water    1  2
        high_start    High         Start        SS pump    water   10 15
        command_start Command      Start        SL request cmd      2  4 -
        """
    ),
)


BLUEPRINTS = (MAILKIT, LIFTKIT, PUMPKIT)


@dataclass(frozen=True)
class BenchmarkSuite:
    """A product line ready for extraction.

    Attributes:
        name: Suite name.
        source: FLC source text of the unit.
        products: Products to extract.
        interactions: Seeded interactions.
    """

    name: str
    source: str
    products: Tuple[ProductDef, ...]
    interactions: Tuple[Interaction, ...]

    @property
    def unit_path(self) -> str:
        """File name of the unit."""
        return f"{self.name}.flc"

    @property
    def products_path(self) -> str:
        """File name of the product file."""
        return f"{self.name}.products"

    @property
    def interactions_path(self) -> str:
        """File name of the interaction table."""
        return f"{self.name}.interactions.csv"

    @property
    def features(self) -> Tuple[str, ...]:
        """Declared features of the unit."""
        return self.parse().features

    def parse(self) -> SourceUnit:
        """Parse the unit and inject its metadata variables."""
        return annotate_metadata_vars(parse_unit(self.source, self.unit_path))

    def seeded_products(self, interaction: Interaction) -> List[ProductDef]:
        """Products that enable both features of an interaction."""
        return [
            product
            for product in self.products
            if interaction.pair <= product.enabled
        ]


def build_suite(
    blueprint: Blueprint, products: Optional[List[ProductDef]] = None
) -> BenchmarkSuite:
    """Render a blueprint into a suite.

    Args:
        blueprint: The product line.
        products: Products to ship, all singles and pairs by default.

    Returns:
        BenchmarkSuite: The rendered suite.
    """
    if products is None:
        products = pairwise_products(blueprint.features)
    return BenchmarkSuite(
        name=blueprint.name,
        source=render_unit(blueprint),
        products=tuple(products),
        interactions=blueprint.interactions,
    )


def build_scaled_suite(blueprint: Blueprint) -> BenchmarkSuite:
    """Render a large blueprint with one product per interacting pair."""
    return build_suite(blueprint, seeded_products(blueprint))


def _links(pair: DepPair, interaction: Interaction) -> bool:
    source = role_feature(pair.src_function)
    dest = role_feature(pair.dst_function)
    return (
        pair.kind == interaction.kind
        and pair.object == interaction.slot
        and source is not None
        and dest is not None
        and source.name == interaction.source
        and dest.name == interaction.dest
    )


def manifests(interaction: Interaction, result: ExtractionResult) -> bool:
    """Check whether an interaction shows in a product's models.

    A guarded interaction must fail with its spec id. An unguarded one
    must leave its dependency between the two roles.

    Args:
        interaction: The seeded interaction.
        result: Models of a product enabling both features.

    Returns:
        bool: Whether the interaction manifests.
    """
    if interaction.guarded:
        return any(
            path.spec_id == interaction.spec_id for path in result.fail_paths
        )
    return any(
        _links(pair, interaction)
        for pair in result.sl_pairs + result.ss_pairs
    )


def check_suite(
    suite: BenchmarkSuite, config: Optional[EngineConfig] = None
) -> Dict[str, List[str]]:
    """Run the engine on every seeded product of a suite.

    Args:
        suite: The suite to check.
        config: Engine settings, defaults when omitted.

    Returns:
        dict: Names of the products each interaction manifests in,
            by spec id.

    Raises:
        SuiteValidationError: If an interaction manifests nowhere.
    """
    config = config or EngineConfig()
    engine = SymbolicEngine(config)
    unit = suite.parse()
    results: Dict[str, ExtractionResult] = {}
    witnesses: Dict[str, List[str]] = {}

    for interaction in suite.interactions:
        found = []
        for product in suite.seeded_products(interaction):
            if product.name not in results:
                program = resolve_product(unit, product, config.loop_bound)
                results[product.name] = engine.extract_feature_models(
                    program
                )
            if manifests(interaction, results[product.name]):
                found.append(product.name)

        if not found:
            raise SuiteValidationError(
                f"interaction {interaction.spec_id} of {suite.name} "
                f"manifests in no product"
            )
        witnesses[interaction.spec_id] = found
        logger.debug(
            "%s: %s manifests in %s",
            suite.name,
            interaction.spec_id,
            ", ".join(found),
        )

    logger.info(
        "%s: %d interactions checked on %d products",
        suite.name,
        len(witnesses),
        len(results),
    )
    return witnesses


def gen_benchmarks(
    config: Optional[EngineConfig] = None, validate: bool = True
) -> List[BenchmarkSuite]:
    """Build the three shipped suites.

    Args:
        config: Engine settings used by the check.
        validate: Whether to run the engine on the seeded products.

    Returns:
        list: mailkit, liftkit and pumpkit.
    """
    suites = [build_suite(blueprint) for blueprint in BLUEPRINTS]
    if validate:
        for suite in suites:
            check_suite(suite, config)
    return suites


def interaction_table(suite: BenchmarkSuite, preamble: str = "") -> str:
    """Render the seeded interactions of a suite as CSV."""
    rows = [
        (
            interaction.spec_id,
            interaction.source,
            interaction.dest,
            interaction.kind,
            interaction.slot,
            str(interaction.guarded).lower(),
        )
        for interaction in suite.interactions
    ]
    return render_csv(INTERACTION_COLUMNS, rows, preamble)


def write_suite(
    suite: BenchmarkSuite, directory: str, preamble: str = ""
) -> List[str]:
    """Write the unit, product file and interaction table of a suite.

    Args:
        suite: The suite.
        directory: Target directory, created when missing.
        preamble: Comment lines opening the product file and table.

    Returns:
        list: Paths of the written files.
    """
    FileSystem.make_directory(directory)
    files = [
        (suite.unit_path, suite.source),
        (suite.products_path, preamble + format_products(suite.products)),
        (suite.interactions_path, interaction_table(suite, preamble)),
    ]
    paths = []
    for name, contents in files:
        path = join(directory, name)
        FileSystem.write_file(path, contents)
        paths.append(path)
    logger.info("wrote suite %s to %s", suite.name, directory)
    return paths
