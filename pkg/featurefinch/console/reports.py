"""CSV reports written by the console commands."""
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from featurefinch.learn.evaluation import (
    Detection,
    FoldScore,
    PartialScore,
    TopKResult,
    detection_rate,
)
from featurefinch.learn.metrics import Metrics
from featurefinch.modelx.records import PathRecord
from featurefinch.modelx.statistics import CorpusStatistics
from featurefinch.support.reports import fraction_text, render_csv


@dataclass(frozen=True)
class ProductSummary:
    """Counts of one extracted product."""

    product: str
    normal: int
    failure: int
    exhausted: int
    sl: int
    ss: int
    truncated: bool


def _flag(value: bool) -> str:
    return "true" if value else "false"


def _seconds(value: float, timings: bool) -> str:
    return f"{value if timings else 0.0:.3f}"


def format_extract(rows: Iterable[ProductSummary], preamble: str = "") -> str:
    """Per-product path and dependency counts."""
    header = (
        "product",
        "normal",
        "failure",
        "exhausted",
        "sl",
        "ss",
        "truncated",
    )
    return render_csv(
        header,
        [
            (
                row.product,
                row.normal,
                row.failure,
                row.exhausted,
                row.sl,
                row.ss,
                _flag(row.truncated),
            )
            for row in rows
        ],
        preamble,
    )


def format_metrics(
    dataset: str,
    source: str,
    model: str,
    metrics: Metrics,
    timings: bool = False,
    preamble: str = "",
) -> str:
    """Scores of one evaluation.

    Times are written as zero unless `timings` is set, so that reruns
    produce identical files.
    """
    header = (
        "dataset",
        "source",
        "model",
        "bac",
        "recall",
        "precision",
        "train_secs",
        "predict_secs",
    )
    row = (
        dataset,
        source,
        model,
        fraction_text(metrics.bac),
        fraction_text(metrics.recall),
        fraction_text(metrics.precision),
        _seconds(metrics.train_secs, timings),
        _seconds(metrics.predict_secs, timings),
    )
    return render_csv(header, [row], preamble)


def format_cv(scores: Sequence[FoldScore], preamble: str = "") -> str:
    """Balanced accuracy of every cross-validation fold."""
    rows = [
        (score.repeat, score.fold, fraction_text(score.bac))
        for score in scores
    ]
    return render_csv(("repeat", "fold", "bac"), rows, preamble)


def format_detection(table: Sequence[Detection], preamble: str = "") -> str:
    """Per-interaction detection rows and the detected percentage."""
    rows = [
        (row.spec_id, row.failures, row.flagged, _flag(row.detected))
        for row in table
    ]
    text = render_csv(
        ("spec_id", "failures", "flagged", "detected"), rows, preamble
    )
    return text + f"# detected {detection_rate(table):.2f}%\n"


def format_importance(
    pairs: Sequence[Tuple[str, float]], preamble: str = ""
) -> str:
    """Gini importance of every token, highest first."""
    rows = [(token, fraction_text(value)) for token, value in pairs]
    return render_csv(("token", "score"), rows, preamble)


def format_partial(scores: Sequence[PartialScore], preamble: str = "") -> str:
    """Scores on test documents with their heads removed."""
    rows = [
        (
            fraction_text(score.fraction, 2),
            fraction_text(score.metrics.bac),
            fraction_text(score.metrics.recall),
            fraction_text(score.metrics.precision),
            score.dropped,
        )
        for score in scores
    ]
    header = ("fraction", "bac", "recall", "precision", "dropped")
    return render_csv(header, rows, preamble)


def format_top_k(result: TopKResult, preamble: str = "") -> str:
    """Scores of a model retrained on the most important tokens."""
    row = (
        len(result.tokens),
        " ".join(result.tokens),
        fraction_text(result.metrics.bac),
        fraction_text(result.metrics.recall),
        fraction_text(result.metrics.precision),
    )
    header = ("k", "tokens", "bac", "recall", "precision")
    return render_csv(header, [row], preamble)


def trace_text(record: PathRecord) -> str:
    """First call sequence of a record as `f@line/g@line`."""
    return "/".join(
        f"{entry.function}@{entry.line}" for entry in record.call_sequences[0]
    )


def format_predictions(
    records: Sequence[PathRecord],
    predicted: Sequence[int],
    preamble: str = "",
) -> str:
    """Predicted label of every path, with its trace."""
    rows: List[tuple] = [
        (
            index,
            record.product,
            record.status,
            "failure" if label else "normal",
            record.spec_id or "",
            trace_text(record),
        )
        for index, (record, label) in enumerate(zip(records, predicted))
    ]
    header = ("path", "product", "status", "predicted", "spec_id", "trace")
    return render_csv(header, rows, preamble)


def format_statistics(
    stats: Sequence[CorpusStatistics], preamble: str = ""
) -> str:
    """Path model statistics, one row per product line."""
    rows = [
        (
            entry.dataset,
            entry.products,
            entry.normal,
            entry.failure,
            fraction_text(entry.failure_ratio, 2),
            f"{entry.trace_min}:{entry.trace_max}",
            entry.functions,
            f"{entry.atoms_min}:{entry.atoms_max}",
            entry.constraints,
        )
        for entry in stats
    ]
    header = (
        "dataset",
        "products",
        "normal",
        "failure",
        "failure_pct",
        "trace_length",
        "functions",
        "constraint_size",
        "constraints",
    )
    return render_csv(header, rows, preamble)
