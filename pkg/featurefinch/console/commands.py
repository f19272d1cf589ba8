"""Pipelines behind the console commands.

Each command receives an Application whose services were registered by
`make_application` and writes its outputs under the application paths.
Every report starts with the run configuration header.
"""
import logging
from os.path import basename, dirname, join, splitext
from typing import Any, Dict, List, Optional, Sequence

from featurefinch.bench.blueprints import scaled_blueprint
from featurefinch.bench.suites import (
    BenchmarkSuite,
    build_scaled_suite,
    check_suite,
    gen_benchmarks,
    write_suite,
)
from featurefinch.config.config_service_provider import ConfigServiceProvider
from featurefinch.console.reports import (
    ProductSummary,
    format_cv,
    format_detection,
    format_extract,
    format_importance,
    format_metrics,
    format_partial,
    format_predictions,
    format_statistics,
    format_top_k,
)
from featurefinch.featloc.relevance import format_relevance
from featurefinch.featloc.tables import format_dependency_table
from featurefinch.filesystem.filesystem import FileSystem
from featurefinch.foundation.application import Application
from featurefinch.language.lowering import resolve_product
from featurefinch.language.parser import parse_unit
from featurefinch.language.products import parse_products
from featurefinch.learn.evaluation import EvaluationResult
from featurefinch.learn.learn_service_provider import LearnServiceProvider
from featurefinch.learn.persistence import (
    check_compatible,
    load_model,
    save_model,
)
from featurefinch.mine.mine_service_provider import MineServiceProvider
from featurefinch.mine.miner import MiningResult
from featurefinch.mine.rules import format_rules
from featurefinch.modelx.annotation import annotate_metadata_vars
from featurefinch.modelx.corpus import (
    dep_records,
    emit_corpus,
    path_records,
    read_corpus,
)
from featurefinch.modelx.records import DepRecord, PathRecord
from featurefinch.modelx.statistics import corpus_statistics
from featurefinch.support.exceptions import FinchError, InputError
from featurefinch.symex.symex_service_provider import SymexServiceProvider

logger = logging.getLogger(__name__)

PATHS_CORPUS = "paths.jsonl"
DEPS_CORPUS = "deps.jsonl"
MODEL_FILE = "model.json"


def make_application(
    output: Optional[str] = None,
    config_path: Optional[str] = None,
    options: Dict[str, Any] = None,
) -> Application:
    """Create the service container of one command.

    Args:
        output: Output directory of the run.
        config_path: Optional flat config file.
        options: Flat options from the command line.

    Returns:
        Application: Container with every service registered.

    Raises:
        SettingsError: If the merged settings are invalid.
    """
    app = Application(base_path=output)
    providers = [
        ConfigServiceProvider(config_path, options),
        SymexServiceProvider(),
        MineServiceProvider(),
        LearnServiceProvider(),
    ]
    for provider in providers:
        app.register(provider)
    app.load_services()
    return app


def read_input(path: str) -> str:
    """Read an input file, reporting a missing one as bad input.

    Raises:
        InputError: If the file cannot be read.
    """
    try:
        return FileSystem.read_file(path)
    except OSError as error:
        raise InputError(f"cannot read {path}: {error}")


def dataset_name(path: str) -> str:
    """Name of the product line a corpus file belongs to.

    A corpus written by `extract` into `<dir>/corpus/paths.jsonl` is
    named after `<dir>`; any other file after its stem.
    """
    folder = dirname(path)
    if basename(folder) == "corpus" and dirname(folder):
        return basename(dirname(folder))
    return splitext(basename(path))[0]


def write_report(app: Application, name: str, text: str) -> str:
    """Write a report into the reports directory.

    Returns:
        str: Path of the report.
    """
    path = join(app.paths["reports"], name)
    FileSystem.write_file(path, text)
    logger.info("wrote %s", path)
    return path


def extract(
    app: Application, source_path: str, products_path: str
) -> List[ProductSummary]:
    """Extract the path and dependency corpora of a product line.

    The unit is annotated with metadata variables, then every product
    is resolved and explored. Path records are cleaned before they are
    written.

    Args:
        app: The Application.
        source_path: FLC source file.
        products_path: Product file.

    Returns:
        list: Counts of every product, in product file order.
    """
    config = app.make("config")
    engine = app.make("engine")
    cleaner = app.make("cleaner")

    unit = parse_unit(read_input(source_path), source_path)
    unit = annotate_metadata_vars(unit)
    declared = set(unit.features)
    products = parse_products(read_input(products_path), declared)

    paths: List[PathRecord] = []
    deps: List[DepRecord] = []
    rows = []
    for product in products:
        try:
            program = resolve_product(
                unit, product, config.engine.loop_bound
            )
            result = engine.extract_feature_models(program)
        except FinchError as error:
            logger.error("product %s: %s", product.name, error)
            raise

        paths.extend(path_records(result, program))
        deps.extend(dep_records(result))
        rows.append(
            ProductSummary(
                product=product.name,
                normal=len(result.normal_paths),
                failure=len(result.fail_paths),
                exhausted=result.exhausted,
                sl=len(result.sl_pairs),
                ss=len(result.ss_pairs),
                truncated=result.truncated,
            )
        )

    corpus = app.paths["corpus"]
    emit_corpus(cleaner.clean_all(paths), join(corpus, PATHS_CORPUS))
    emit_corpus(deps, join(corpus, DEPS_CORPUS))
    header = config.to_header()
    write_report(app, "extract.csv", format_extract(rows, header))
    return rows


def mine(app: Application, deps_path: str) -> MiningResult:
    """Mine feature dependency rules from a dependency corpus.

    Args:
        app: The Application.
        deps_path: Dependency corpus.

    Returns:
        MiningResult: Located dependencies, itemsets and rules.
    """
    config = app.make("config")
    deps = read_corpus(deps_path, DepRecord)
    if not deps:
        logger.warning("dependency corpus %s is empty", deps_path)

    result = app.make("miner").mine(deps)
    header = config.to_header()
    write_report(
        app,
        "dependencies.csv",
        format_dependency_table(result.located, header),
    )
    write_report(
        app, "relevance.csv", format_relevance(result.relevance, header)
    )
    write_report(app, "rules.csv", format_rules(result.rules, header))
    return result


def _path_corpus(path: str) -> List[PathRecord]:
    return read_corpus(path, PathRecord)


def train(app: Application, paths_path: str) -> EvaluationResult:
    """Evaluate and save a model, then test each interaction.

    Args:
        app: The Application.
        paths_path: Path corpus.

    Returns:
        EvaluationResult: Scores, fold scores and the saved model.
    """
    config = app.make("config")
    learner = app.make("learner")
    records = _path_corpus(paths_path)

    result = learner.evaluate(records)
    detections = learner.detect(records)
    save_model(result.model, join(app.paths["models"], MODEL_FILE))

    header = config.to_header()
    write_report(
        app,
        "metrics.csv",
        format_metrics(
            dataset_name(paths_path),
            learner.source,
            learner.model,
            result.metrics,
            config.learn.timings,
            header,
        ),
    )
    write_report(app, "cv.csv", format_cv(result.cv_scores, header))
    write_report(app, "detection.csv", format_detection(detections, header))
    return result


def predict(
    app: Application, model_path: str, paths_path: str
) -> List[PathRecord]:
    """Label the paths of a corpus with a saved model.

    Args:
        app: The Application.
        model_path: Saved model.
        paths_path: Path corpus of the products to label.

    Returns:
        list: Records predicted to be failures.

    Raises:
        ModelMismatchError: If the model cannot label the records.
    """
    config = app.make("config")
    records = _path_corpus(paths_path)
    try:
        model = load_model(model_path)
    except FileNotFoundError as error:
        raise InputError(str(error))
    check_compatible(model, records, config.learn.source)

    predicted = model.predict(records)
    flagged = [r for r, label in zip(records, predicted) if label]
    write_report(
        app,
        "predictions.csv",
        format_predictions(records, predicted, config.to_header()),
    )
    return flagged


def ablate(app: Application, paths_path: str) -> Dict[str, Any]:
    """Run the partial data and importance-guided retraining studies.

    Args:
        app: The Application.
        paths_path: Path corpus.

    Returns:
        dict: The partial scores, importances and top-k result.
    """
    config = app.make("config")
    learner = app.make("learner")
    records = _path_corpus(paths_path)

    result = learner.evaluate(records, cross_validation=False)
    partial = learner.partial(result, records)
    importance = learner.importance(records)
    top_k = learner.top_k(records)

    header = config.to_header()
    write_report(app, "partial.csv", format_partial(partial, header))
    write_report(
        app, "importance.csv", format_importance(importance, header)
    )
    write_report(app, "topk.csv", format_top_k(top_k, header))
    return {"partial": partial, "importance": importance, "top_k": top_k}


def gen_bench(
    app: Application, scale: Optional[int] = None, padding: int = 100
) -> List[BenchmarkSuite]:
    """Write benchmark suites into the output directory.

    Without a scale the three shipped suites are written; with one, a
    generated line of that many features seeded by the run's seed.
    Every suite is checked with the engine before it is written.

    Args:
        app: The Application.
        scale: Number of features of a generated line.
        padding: Straight-line statements per role of a generated line.

    Returns:
        list: The written suites.
    """
    config = app.make("config")
    if scale is None:
        suites = gen_benchmarks(config.engine)
    else:
        suite = build_scaled_suite(
            scaled_blueprint(scale, config.seed, padding)
        )
        check_suite(suite, config.engine)
        suites = [suite]

    for suite in suites:
        write_suite(suite, app.paths["base"], config.to_header())
    return suites


def report(app: Application, corpus_paths: Sequence[str]) -> str:
    """Write path model statistics of one or more path corpora.

    Args:
        app: The Application.
        corpus_paths: Path corpora, one per product line.

    Returns:
        str: Path of the statistics report.
    """
    config = app.make("config")
    stats = [
        corpus_statistics(_path_corpus(path), dataset_name(path))
        for path in corpus_paths
    ]
    return write_report(
        app, "stats.csv", format_statistics(stats, config.to_header())
    )
