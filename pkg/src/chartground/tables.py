"""Controlled chart-to-table evaluation: parse model-emitted tables under a
known header set and score them with the tuple matcher.

Accepted wire formats are pipe-delimited markdown (optional separator row,
surrounding prose ignored) and comma-separated text. Gold tables are CSV with
one header row, UTF-8, '.' decimal separator.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field

import numpy as np

from chartground.assignment import INCOMPATIBLE, min_cost_assignment
from chartground.extract import TupleSet
from chartground.figure import Scalar, normalize_text
from chartground.matching import (
    FidelityMetrics,
    MatchResult,
    Tolerance,
    coerce_number,
    fidelity_metrics,
    levenshtein,
    match_tuple_sets,
)

# Worst accepted header-name edit distance when aligning columns.
HEADER_MATCH_MAX_DISTANCE = 3


class UnparsableTable(ValueError):
    """No candidate table found in the model output."""


class HeaderMismatch(ValueError):
    """Fewer columns than expected headers could be resolved."""


@dataclass
class Table:
    headers: tuple[str, ...]
    rows: list[tuple[Scalar, ...]] = field(default_factory=list)

    def __post_init__(self) -> None:
        trimmed = [normalize_text(h) for h in self.headers]
        if not trimmed:
            raise ValueError("table must have at least one header")
        if len(set(trimmed)) != len(trimmed):
            raise ValueError(f"duplicate headers after trimming: {self.headers}")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.headers):
                raise ValueError(
                    f"row {i} has {len(row)} cells, expected {len(self.headers)}"
                )

    @property
    def arity(self) -> int:
        return len(self.headers)


def parse_cell(text: str) -> Scalar:
    """One table cell to a Scalar: number when coercible, empty to null."""
    t = text.strip()
    if not t:
        return None
    n = coerce_number(t)
    return n if n is not None else t


def load_table_csv(path: str) -> Table:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if any(cell.strip() for cell in row)]
    if not rows:
        raise UnparsableTable(f"empty table file: {path}")
    headers = tuple(h.strip() for h in rows[0])
    data = [tuple(parse_cell(c) for c in row) for row in rows[1:]]
    width = len(headers)
    kept = [row for row in data if len(row) == width]
    return Table(headers=headers, rows=kept)


def save_table_csv(table: Table, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.headers)
        for row in table.rows:
            writer.writerow(["" if v is None else v for v in row])


_SEPARATOR_CELL_RE = re.compile(r"^:?-{2,}:?$")
_FENCE_RE = re.compile(r"^```")


def _markdown_rows(text: str) -> list[list[str]]:
    rows: list[list[str]] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or _FENCE_RE.match(stripped) or "|" not in stripped:
            continue
        inner = stripped.strip("|")
        cells = [c.strip() for c in inner.split("|")]
        if cells and all(_SEPARATOR_CELL_RE.match(c) for c in cells if c):
            continue
        rows.append(cells)
    return rows


def _csv_rows(text: str) -> list[list[str]]:
    lines = [ln for ln in text.splitlines() if "," in ln]
    if not lines:
        return []
    reader = csv.reader(io.StringIO("\n".join(lines)))
    return [[c.strip() for c in row] for row in reader if row]


def _header_distance(expected: str, candidate: str) -> int:
    a = normalize_text(expected).lower()
    b = normalize_text(candidate).lower()
    if a == b:
        return 0
    return levenshtein(a, b)


def _locate_header(rows: list[list[str]], expected: tuple[str, ...]) -> int:
    """Index of the row that best resembles the expected header names."""
    best_idx, best_score = 0, -1.0
    for idx, row in enumerate(rows):
        score = 0.0
        for h in expected:
            dists = [_header_distance(h, cell) for cell in row]
            d = min(dists) if dists else len(h)
            score += max(0.0, 1.0 - d / max(1, len(h)))
        if score > best_score:
            best_idx, best_score = idx, score
    return best_idx


def _resolve_columns(header_row: list[str], expected: tuple[str, ...]) -> list[int]:
    """Column index for each expected header via best one-to-one alignment."""
    if len(header_row) < len(expected):
        raise HeaderMismatch(
            f"table has {len(header_row)} columns, expected {len(expected)}"
        )
    cost = np.zeros((len(expected), len(header_row)))
    for i, h in enumerate(expected):
        for j, cell in enumerate(header_row):
            d = _header_distance(h, cell)
            cost[i, j] = d if d <= HEADER_MATCH_MAX_DISTANCE else INCOMPATIBLE
    pairs = dict(min_cost_assignment(cost))
    column_of: list[int] = []
    for i in range(len(expected)):
        j = pairs.get(i)
        if j is None or cost[i, j] >= INCOMPATIBLE:
            raise HeaderMismatch(f"no column resolvable for header {expected[i]!r}")
        column_of.append(j)
    return column_of


@dataclass
class ParsedTable:
    table: Table
    dropped_rows: int = 0
    diagnostics: list[str] = field(default_factory=list)


def parse_model_table(text: str, expected: tuple[str, ...]) -> ParsedTable:
    """Extract the table from raw model output and align it to the headers.

    Columns are reordered to the expected header order; rows with the wrong
    cell count are dropped with a diagnostic.
    """
    if not expected:
        raise ValueError("expected headers must be non-empty")
    rows = _markdown_rows(text)
    if not rows:
        rows = _csv_rows(text)
    if not rows:
        raise UnparsableTable("no delimited table found in output")

    header_idx = _locate_header(rows, expected)
    header_row = rows[header_idx]
    column_of = _resolve_columns(header_row, expected)

    parsed = ParsedTable(table=Table(headers=tuple(expected)))
    width = len(header_row)
    for offset, row in enumerate(rows[header_idx + 1 :]):
        if len(row) != width:
            parsed.dropped_rows += 1
            parsed.diagnostics.append(
                f"dropped row {offset} with {len(row)} cells (expected {width})"
            )
            continue
        parsed.table.rows.append(tuple(parse_cell(row[j]) for j in column_of))
    return parsed


def table_to_tuples(t: Table) -> TupleSet:
    """One tuple per row, fields in header order, no synthetic name field."""
    return TupleSet(chart_type=None, arity=t.arity, tuples=[tuple(r) for r in t.rows])


@dataclass
class TableEvalResult:
    passed: bool
    metrics: dict[str, FidelityMetrics]
    matches: dict[str, MatchResult] = field(default_factory=dict)
    error: str | None = None
    table: Table | None = None


def evaluate_table(
    model_text: str,
    gt: Table,
    levels: tuple[Tolerance, ...] = tuple(Tolerance),
    case_insensitive: bool = False,
) -> TableEvalResult:
    """Parse a model output against the gold headers and score per tolerance.

    Parse failures score zero everywhere and flip the pass flag; they are
    results, not exceptions.
    """
    gt_tuples = table_to_tuples(gt)
    try:
        parsed = parse_model_table(model_text, gt.headers)
    except (UnparsableTable, HeaderMismatch) as exc:
        zero = FidelityMetrics(0.0, 0.0, 0.0, 0.0)
        return TableEvalResult(
            passed=False,
            metrics={lv.label: zero for lv in levels},
            error=str(exc),
        )
    pred_tuples = table_to_tuples(parsed.table)
    metrics: dict[str, FidelityMetrics] = {}
    matches: dict[str, MatchResult] = {}
    for lv in levels:
        m = match_tuple_sets(pred_tuples, gt_tuples, lv, case_insensitive)
        matches[lv.label] = m
        metrics[lv.label] = fidelity_metrics(m)
    return TableEvalResult(
        passed=True, metrics=metrics, matches=matches, table=parsed.table
    )
