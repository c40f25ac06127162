"""Benchmark configuration grids used by the `reproduce` command.

Tables 1-5 are deterministic bound/cumulant computations; tables 6-9 add
seeded Type I error simulation at a fixed nominal level per table.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .model import MonotoneDesign

_DIMS_SMALL = (5, 10, 15)

# (N1, N2) pairs shared by tables 6-9
_SIZE_PAIRS = (
    (50, 50), (100, 100), (200, 200),
    (50, 100), (100, 200), (200, 400),
    (50, 25), (100, 50), (200, 100),
)

# p/N1 fractions and p1:p2 ratios spanning the moderate to high
# dimensional regimes
_P_FRACTIONS = (0.2, 0.4, 0.8)
_SPLIT_RATIOS = (0.25, 1.0, 4.0)


@dataclass(frozen=True)
class TableRow:
    design: MonotoneDesign
    alpha: float | None = None


def _bound_grid(n: int, n1: int) -> list[TableRow]:
    return [TableRow(MonotoneDesign.from_counts(n, n1, p1, p2))
            for p1 in _DIMS_SMALL for p2 in _DIMS_SMALL]


def _dim_splits(N1: int) -> list[tuple[int, int]]:
    out = []
    for frac in _P_FRACTIONS:
        p = round(frac * N1)
        for ratio in _SPLIT_RATIOS:
            p1 = round(p * ratio / (1.0 + ratio))
            out.append((p1, p - p1))
    return out


def _type1_grid(alpha: float) -> list[TableRow]:
    rows = []
    for N1, N2 in _SIZE_PAIRS:
        for p1, p2 in _dim_splits(N1):
            rows.append(TableRow(MonotoneDesign(N1, N2, p1, p2), alpha))
    return rows


def table_rows(table_id: str) -> list[TableRow]:
    """Configuration list for a benchmark table id ('table1'..'table9')."""
    if table_id == "table1":
        return _bound_grid(60, 40)
    if table_id == "table2":
        return _bound_grid(60, 50)
    if table_id == "table3":
        return _bound_grid(120, 80)
    if table_id == "table4":
        return [TableRow(MonotoneDesign.from_counts(n, n1, 20, 10))
                for n, n1 in ((50, 40), (100, 80), (500, 400), (5000, 4000))]
    if table_id == "table5":
        return [TableRow(MonotoneDesign.from_counts(n, n1, p1, p - p1))
                for n, n1, p, p1 in ((50, 40, 30, 20), (100, 80, 60, 40),
                                     (1000, 800, 600, 400),
                                     (5000, 4000, 3000, 2000))]
    if table_id == "table6":
        return [TableRow(MonotoneDesign(N1, N2, 2, 2), alpha)
                for N1, N2 in _SIZE_PAIRS for alpha in (0.10, 0.05, 0.01)]
    if table_id in ("table7", "table8", "table9"):
        alpha = {"table7": 0.10, "table8": 0.05, "table9": 0.01}[table_id]
        return _type1_grid(alpha)
    raise DomainError(f"unknown table id {table_id!r}")


BOUND_TABLES = ("table1", "table2", "table3", "table4", "table5")
TYPE1_TABLES = ("table6", "table7", "table8", "table9")
ALL_TABLES = BOUND_TABLES + TYPE1_TABLES
