"""Command-line entry point of featurefinch."""
import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from featurefinch import __version__
from featurefinch.console import commands
from featurefinch.console.reports import trace_text
from featurefinch.foundation.application import Application
from featurefinch.support.exceptions import AnalysisTruncated, FinchError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Flags that map onto RunConfig settings.
SETTING_FLAGS = (
    "seed",
    "timeout_secs",
    "max_paths",
    "l",
    "loop_bound",
    "search",
    "store_key_mode",
    "min_support",
    "min_confidence",
    "max_size",
    "locator",
    "source",
    "model",
    "top_k",
    "exclusions",
    "timings",
)


class UsageParser(argparse.ArgumentParser):
    """Argument parser that exits with status 1 on usage errors."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def setting_arguments() -> argparse.ArgumentParser:
    """Flags shared by every subcommand, all defaulting to unset."""
    parser = UsageParser(add_help=False)
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument(
        "--output", default=".", help="output directory (default: .)"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="-v for progress, -vv for detail",
    )
    parser.add_argument("--seed", type=int)
    parser.add_argument("--timeout-secs", type=float)
    parser.add_argument("--max-paths", type=int)
    parser.add_argument(
        "-L",
        dest="l",
        type=int,
        help="longest call sequences kept per normal path",
    )
    parser.add_argument("--loop-bound", type=int)
    parser.add_argument("--search", choices=("dfs", "bfs"))
    parser.add_argument(
        "--store-key-mode", choices=("base-address", "object-offset")
    )
    parser.add_argument("--min-support", type=float)
    parser.add_argument("--min-confidence", type=float)
    parser.add_argument("--max-size", type=int)
    parser.add_argument("--locator", choices=("directive", "name"))
    parser.add_argument(
        "--source", choices=("stack", "constraints", "combined")
    )
    parser.add_argument("--model", choices=("nb", "svm", "rf"))
    parser.add_argument("--top-k", type=int)
    parser.add_argument(
        "--exclusions", help="comma separated function name patterns"
    )
    parser.add_argument(
        "--timings",
        action="store_true",
        default=None,
        help="write measured train and predict times",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    """Create the parser of every subcommand."""
    common = setting_arguments()
    parser = UsageParser(
        prog="featurefinch",
        description="Detect feature interactions in product lines.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    extract = subparsers.add_parser(
        "extract", parents=[common], help="build path and dep corpora"
    )
    extract.add_argument("source_path", metavar="SRC")
    extract.add_argument("products_path", metavar="PRODUCTS")
    extract.set_defaults(handler=run_extract)

    mine = subparsers.add_parser(
        "mine", parents=[common], help="mine feature dependency rules"
    )
    mine.add_argument("deps_path", metavar="DEPS")
    mine.set_defaults(handler=run_mine)

    train = subparsers.add_parser(
        "train", parents=[common], help="evaluate and save a model"
    )
    train.add_argument("paths_path", metavar="PATHS")
    train.set_defaults(handler=run_train)

    predict = subparsers.add_parser(
        "predict", parents=[common], help="label paths with a model"
    )
    predict.add_argument("model_path", metavar="MODEL")
    predict.add_argument("paths_path", metavar="PATHS")
    predict.set_defaults(handler=run_predict)

    ablate = subparsers.add_parser(
        "ablate", parents=[common], help="partial data and top-k studies"
    )
    ablate.add_argument("paths_path", metavar="PATHS")
    ablate.set_defaults(handler=run_ablate)

    bench = subparsers.add_parser(
        "gen-bench", parents=[common], help="write benchmark suites"
    )
    bench.add_argument(
        "--scale", type=int, help="generate a line of N features"
    )
    bench.add_argument(
        "--padding",
        type=int,
        default=100,
        help="statements per role of a generated line",
    )
    bench.set_defaults(handler=run_gen_bench)

    report = subparsers.add_parser(
        "report", parents=[common], help="path model statistics"
    )
    report.add_argument("corpus_paths", metavar="PATHS", nargs="+")
    report.set_defaults(handler=run_report)
    return parser


def configure_logging(verbose: int) -> None:
    """Send log records to stderr at the requested verbosity."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def options_of(args: argparse.Namespace, inputs: List[str]) -> Dict:
    """Flat settings given on the command line."""
    options: Dict[str, Any] = {
        name: getattr(args, name) for name in SETTING_FLAGS
    }
    options["pipeline"] = args.command
    options["inputs"] = inputs
    options["output"] = args.output
    return options


def run_extract(app: Application, args: argparse.Namespace) -> int:
    rows = commands.extract(app, args.source_path, args.products_path)
    for row in rows:
        print(
            f"{row.product}: {row.normal} normal, {row.failure} failure, "
            f"{row.sl} SL, {row.ss} SS"
        )
    truncated = [row.product for row in rows if row.truncated]
    if truncated:
        raise AnalysisTruncated(
            f"exploration truncated for {', '.join(truncated)}"
        )
    return 0


def run_mine(app: Application, args: argparse.Namespace) -> int:
    result = commands.mine(app, args.deps_path)
    print(f"{len(result.rules)} rules from {len(result.located)} deps")
    return 0


def run_train(app: Application, args: argparse.Namespace) -> int:
    result = commands.train(app, args.paths_path)
    print(
        f"bac {result.metrics.bac:.6f} recall {result.metrics.recall:.6f} "
        f"precision {result.metrics.precision:.6f}"
    )
    return 0


def run_predict(app: Application, args: argparse.Namespace) -> int:
    flagged = commands.predict(app, args.model_path, args.paths_path)
    for record in flagged:
        print(f"{record.product}: failure {trace_text(record)}")
    return 0


def run_ablate(app: Application, args: argparse.Namespace) -> int:
    results = commands.ablate(app, args.paths_path)
    top_k = results["top_k"]
    print(
        f"top {len(top_k.tokens)}: recall {top_k.metrics.recall:.6f} "
        f"precision {top_k.metrics.precision:.6f}"
    )
    return 0


def run_gen_bench(app: Application, args: argparse.Namespace) -> int:
    suites = commands.gen_bench(app, args.scale, args.padding)
    for suite in suites:
        print(
            f"{suite.name}: {len(suite.features)} features, "
            f"{len(suite.products)} products, "
            f"{len(suite.interactions)} interactions"
        )
    return 0


def run_report(app: Application, args: argparse.Namespace) -> int:
    print(commands.report(app, args.corpus_paths))
    return 0


def inputs_of(args: argparse.Namespace) -> List[str]:
    names = ("source_path", "products_path", "deps_path", "model_path")
    inputs = [getattr(args, name) for name in names if hasattr(args, name)]
    if hasattr(args, "paths_path"):
        inputs.append(args.paths_path)
    return inputs + list(getattr(args, "corpus_paths", []))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command.

    Args:
        argv: Arguments without the program name, sys.argv by default.

    Returns:
        int: Exit status. 0 on success, 1 on usage errors, 2 on bad
            input, 3 when an analysis was truncated and 4 when an
            internal check failed.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    handler: Callable[[Application, argparse.Namespace], int]
    handler = args.handler

    try:
        app = commands.make_application(
            args.output, args.config, options_of(args, inputs_of(args))
        )
        return handler(app, args)
    except FinchError as error:
        logger.error("%s", error)
        return error.exit_code
    except FileNotFoundError as error:
        logger.error("%s", error)
        return 2


if __name__ == "__main__":
    sys.exit(main())
