"""CSV loading helpers shared by the figure renderers."""

from __future__ import annotations

import csv

from .errors import FigureError, MissingColumnError


def load_rows(paths: list[str]) -> list[dict[str, str]]:
    """Concatenated data rows of one or more CSV files.

    All files must share the columns the caller later asks for; an
    empty result is an error.
    """
    rows: list[dict[str, str]] = []
    for path in paths:
        try:
            with open(path, newline="") as fh:
                rows.extend(csv.DictReader(fh))
        except OSError as exc:
            raise FigureError(f"cannot read {path}: {exc}") from None
    if not rows:
        raise FigureError(f"no data rows found in {', '.join(paths)}")
    return rows


def require_columns(rows: list[dict[str, str]], columns: tuple[str, ...]) -> None:
    present = set(rows[0])
    for col in columns:
        if col not in present:
            raise MissingColumnError(f"missing column {col!r} in input CSV")


def column(rows: list[dict[str, str]], name: str) -> list[float]:
    out = []
    for i, row in enumerate(rows, start=2):
        try:
            out.append(float(row[name]))
        except (TypeError, ValueError):
            raise FigureError(
                f"row {i}: column {name!r} is not numeric: {row[name]!r}"
            ) from None
    return out
