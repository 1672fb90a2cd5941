import csv
import io
import logging
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

from app.config import CSV_SIGNIFICANT_DIGITS, LOG_LEVEL

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("HARNESS")


def format_float(value: float) -> str:
    """Formats a float with 12 significant digits."""
    return f"{value:.{CSV_SIGNIFICANT_DIGITS}g}"


def format_cell(value):
    """Formats one CSV cell value; quoting is left to the csv writer."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return value


def _write_rows(file, header: Sequence[str] | None, rows: Iterable[Sequence]) -> None:
    writer = csv.writer(file, lineterminator="\n")
    if header:
        writer.writerow(header)
    writer.writerows([format_cell(value) for value in row] for row in rows)


def render_csv(header: Sequence[str] | None, rows: Iterable[Sequence]) -> str:
    """
    Comma-separated text with LF line endings and a trailing newline.
    """
    buffer = io.StringIO()
    _write_rows(buffer, header, rows)
    return buffer.getvalue()


def write_csv(header: Sequence[str] | None, rows: Iterable[Sequence], out: Path | None = None) -> str:
    """
    Writes CSV to ``out``, or to stdout when it is None.

    Returns:
        str: The written text.
    """
    text = render_csv(header, rows)
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="") as file:
            file.write(text)
        logger.info(f"Wrote {text.count(chr(10))} lines to {out}")
    return text
