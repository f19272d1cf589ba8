"""The feature-dependency table read by the miner."""
from typing import Iterable, List

from featurefinch.featloc.locators import FeatureDepRecord
from featurefinch.language.exceptions import DirectiveError
from featurefinch.language.features import parse_feature_expr
from featurefinch.modelx.exceptions import CorpusError
from featurefinch.modelx.records import DEP_KINDS, Endpoint
from featurefinch.support.reports import read_csv_rows, render_csv

COLUMNS = (
    "kind",
    "src_file",
    "src_line",
    "src_presence",
    "dst_file",
    "dst_line",
    "dst_presence",
    "src_access",
    "dst_access",
)


def format_dependency_table(
    records: Iterable[FeatureDepRecord], preamble: str = ""
) -> str:
    """Render feature dependencies as CSV.

    Args:
        records: Located dependencies.
        preamble: Comment lines written before the header.

    Returns:
        str: The CSV document.
    """
    rows = [
        (
            record.kind,
            record.src.file,
            record.src.line,
            record.source.to_text(),
            record.dst.file,
            record.dst.line,
            record.dest.to_text(),
            record.source_access,
            record.dest_access,
        )
        for record in records
    ]
    return render_csv(COLUMNS, rows, preamble)


def parse_dependency_table(text: str) -> List[FeatureDepRecord]:
    """Parse a feature-dependency CSV.

    Raises:
        CorpusError: If a row is malformed.
    """
    records = []
    for number, row in enumerate(read_csv_rows(text), start=2):
        try:
            kind = row["kind"]
            if kind not in DEP_KINDS:
                raise ValueError(f"unsupported kind {kind!r}")
            source = parse_feature_expr(row["src_presence"])
            dest = parse_feature_expr(row["dst_presence"])
            records.append(
                FeatureDepRecord(
                    source=source,
                    dest=dest,
                    kind=kind,
                    dest_access=row["dst_access"],
                    src=Endpoint(
                        row["src_file"], int(row["src_line"]), source
                    ),
                    dst=Endpoint(
                        row["dst_file"], int(row["dst_line"]), dest
                    ),
                )
            )
        except (KeyError, ValueError, TypeError, DirectiveError) as error:
            raise CorpusError(f"dependency table row {number}: {error}")
    return records
