"""CSV emission with round-trippable float formatting."""

from __future__ import annotations

import csv
import io
import sys
from pathlib import Path
from typing import Iterable, Sequence


def format_value(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, "dtype"):
        if hasattr(value, "dtype") and value.dtype.kind in "iub":
            return str(int(value))
        return format(float(value), ".17g")
    return str(value)


def render_csv(headers: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    width = len(headers)
    for n, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"row {n} has {len(row)} fields, expected {width}")
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def emit_csv(headers: Sequence[str], rows: Iterable[Sequence], path: str | Path) -> None:
    """Write a header row and data rows; ``"-"`` writes to stdout."""
    text = render_csv(headers, rows)
    if str(path) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        headers = next(reader)
        return headers, [row for row in reader]
