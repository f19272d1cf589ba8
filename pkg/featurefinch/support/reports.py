"""CSV rendering shared by every report.

Reports may start with `#` comment lines carrying the tool version and
the run configuration; readers skip them.
"""
import csv
import io
from typing import Iterable, List, Sequence


def render_csv(
    header: Sequence[str], rows: Iterable[Sequence], preamble: str = ""
) -> str:
    """Render rows as CSV text with LF line endings.

    Args:
        header: Column names.
        rows: Rows of values, converted with str().
        preamble: Comment lines written before the header.

    Returns:
        str: The CSV document.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return preamble + buffer.getvalue()


def read_csv_rows(text: str) -> List[dict]:
    """Parse CSV text, skipping `#` comment lines.

    Args:
        text: CSV document with a header row.

    Returns:
        list: One dictionary per row keyed by column name.
    """
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))


def fraction_text(value, digits: int = 6) -> str:
    """Render a fraction or float with a fixed number of decimals."""
    return f"{float(value):.{digits}f}"
