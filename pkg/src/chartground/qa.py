"""Automated dataset filtering: completeness, structural limits,
signature-based deduplication, and executability bookkeeping.

The stages run in a fixed order and every stage conserves records:
removed + retained always sums back to the stage input.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Callable, Mapping

from chartground.figure import Scalar
from chartground.matching import coerce_number
from chartground.tables import Table, load_table_csv

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2}(\.\d+)?)?)?$")


def _is_iso_date(value: Scalar) -> bool:
    if not isinstance(value, str):
        return False
    s = value.strip()
    if not _DATE_RE.match(s):
        return False
    try:
        datetime.fromisoformat(s)
    except ValueError:
        return False
    return True


def _as_number(value: Scalar) -> float | None:
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return coerce_number(value)
    return None


def column_kind(values: list[Scalar]) -> str:
    """Classify a non-empty column: quantitative, date, or categorical.

    Cells that are all numeric (after text coercion) are quantitative; all
    ISO dates are date; anything else falls back to categorical.
    """
    present = [v for v in values if v is not None]
    if not present:
        return "categorical"
    if all(_as_number(v) is not None for v in present):
        return "quantitative"
    if all(_is_iso_date(v) for v in present):
        return "date"
    return "categorical"


def _cell_str(value: Scalar) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return value


def _mode_first_occurrence(values: list[Scalar]) -> Scalar:
    """Most frequent value; ties go to the earliest first occurrence."""
    counts = Counter(values)
    best = max(counts.values())
    for v in values:
        if counts[v] == best:
            return v
    return values[0]


def _format_mean(x: float) -> str:
    """Shortest round-trip decimal with at least one fractional digit."""
    return repr(float(x))


@dataclass(frozen=True)
class TableSignature:
    canonical: str  # delimited; authoritative for dedup
    compat: str  # undelimited concatenation


def column_signature(values: list[Scalar]) -> tuple[str, int, str]:
    """(kind, length, representative) for one column."""
    kind = column_kind(values)
    if kind == "quantitative":
        nums = [_as_number(v) for v in values]
        nums = [n for n in nums if n is not None]
        rep = _format_mean(sum(nums) / len(nums)) if nums else ""
    else:
        rep = _cell_str(_mode_first_occurrence(values))
    return kind, len(values), rep


def table_signature(t: Table) -> TableSignature:
    """Column-order concatenation of per-column (kind, length, representative).

    The canonical form delimits the triples ('|' inside, ';' between) so that
    lookalike columns cannot collide; compat reproduces the undelimited form.
    """
    parts = []
    for col in range(t.arity):
        values = [row[col] for row in t.rows]
        parts.append(column_signature(values))
    canonical = ";".join(f"{k}|{n}|{r}" for k, n, r in parts)
    compat = "".join(f"{k}{n}{r}" for k, n, r in parts)
    return TableSignature(canonical=canonical, compat=compat)


@dataclass
class TripleRecord:
    id: str
    table: str
    figure: str
    script: str
    code_char_count: int | None = None


def load_qa_manifest(path: str) -> list[TripleRecord]:
    """One JSON record per line: id plus the three component paths."""
    records: list[TripleRecord] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            records.append(
                TripleRecord(
                    id=str(obj["id"]),
                    table=obj.get("table", ""),
                    figure=obj.get("figure", ""),
                    script=obj.get("script", ""),
                    code_char_count=obj.get("code_chars"),
                )
            )
    return records


@dataclass
class Removal:
    record: TripleRecord
    reason: str
    duplicate_of: str | None = None


@dataclass
class StageResult:
    name: str
    removed: list[Removal]
    retained: list[TripleRecord]
    skipped: bool = False


@dataclass
class FilterReport:
    input_count: int
    stages: list[StageResult] = field(default_factory=list)

    @property
    def retained(self) -> list[TripleRecord]:
        for stage in reversed(self.stages):
            if not stage.skipped:
                return stage.retained
        return []

    def to_dict(self) -> dict:
        return {
            "input_count": self.input_count,
            "stages": [
                {
                    "name": s.name,
                    "skipped": s.skipped,
                    "removed": len(s.removed) if not s.skipped else 0,
                    "retained": len(s.retained),
                    "removals": [
                        {
                            "id": r.record.id,
                            "reason": r.reason,
                            **({"duplicate_of": r.duplicate_of} if r.duplicate_of else {}),
                        }
                        for r in s.removed
                    ],
                }
                for s in self.stages
            ],
            "retained_ids": [r.id for r in self.retained],
        }

    def render_text(self) -> str:
        lines = [f"{'stage':<16}{'removed':>10}{'retained':>10}"]
        for s in self.stages:
            flag = "  (skipped)" if s.skipped else ""
            lines.append(f"{s.name:<16}{len(s.removed):>10}{len(s.retained):>10}{flag}")
        return "\n".join(lines)


def _file_ok(path: str) -> bool:
    p = Path(path)
    return bool(path) and p.is_file() and p.stat().st_size > 0


def dedup(
    records: list[TripleRecord],
    table_loader: Callable[[str], Table] = load_table_csv,
) -> tuple[list[TripleRecord], list[Removal]]:
    """Keep the first record per canonical table signature (stable order)."""
    seen: dict[str, str] = {}
    retained: list[TripleRecord] = []
    removed: list[Removal] = []
    for rec in records:
        sig = table_signature(table_loader(rec.table)).canonical
        if sig in seen:
            removed.append(
                Removal(rec, "duplicate table signature", duplicate_of=seen[sig])
            )
        else:
            seen[sig] = rec.id
            retained.append(rec)
    return retained, removed


def run_filters(
    records: list[TripleRecord],
    max_code_chars: int | None = None,
    exec_status: Mapping[str, bool] | None = None,
    table_loader: Callable[[str], Table] = load_table_csv,
) -> FilterReport:
    """Apply the filter stages in order and report per-stage counts.

    Executability status comes from the executor; when absent that stage is
    skipped and flagged rather than guessed.
    """
    report = FilterReport(input_count=len(records))
    current = list(records)

    removed = [
        Removal(r, "missing or empty component file")
        for r in current
        if not (_file_ok(r.table) and _file_ok(r.figure) and _file_ok(r.script))
    ]
    removed_ids = {r.record.id for r in removed}
    current = [r for r in current if r.id not in removed_ids]
    report.stages.append(StageResult("completeness", removed, list(current)))

    if max_code_chars is None:
        report.stages.append(StageResult("structural", [], list(current), skipped=True))
    else:
        removed = []
        kept = []
        for r in current:
            chars = r.code_char_count
            if chars is None:
                chars = len(Path(r.script).read_text(encoding="utf-8", errors="replace"))
                r.code_char_count = chars
            if chars > max_code_chars:
                removed.append(Removal(r, f"code length {chars} > {max_code_chars}"))
            else:
                kept.append(r)
        current = kept
        report.stages.append(StageResult("structural", removed, list(current)))

    kept, removed = dedup(current, table_loader)
    current = kept
    report.stages.append(StageResult("dedup", removed, list(current)))

    if exec_status is None:
        report.stages.append(
            StageResult("executability", [], list(current), skipped=True)
        )
    else:
        removed = [
            Removal(r, "script failed executability check")
            for r in current
            if not exec_status.get(r.id, False)
        ]
        removed_ids = {r.record.id for r in removed}
        current = [r for r in current if r.id not in removed_ids]
        report.stages.append(StageResult("executability", removed, list(current)))

    return report
