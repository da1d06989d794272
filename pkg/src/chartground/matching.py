"""Field comparators, tolerance levels, optimal tuple-set matching, and the
precision / recall / F1 / IoU metric family.

A tuple matches only when every field passes its comparator: edit distance
for text against a per-level bound, relative error for numbers against a
per-level bound. Matching between tuple sets is maximum-cardinality and
one-to-one; among maximum matchings the one with the smallest summed numeric
relative error is chosen (deterministically).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from chartground.assignment import INCOMPATIBLE, max_cardinality_min_cost
from chartground.extract import TupleSet
from chartground.figure import Scalar, normalize_text


class Tolerance(enum.Enum):
    """The three tolerance regimes: (max edit distance, max relative error)."""

    STRICT = ("strict", 0, 0.0)
    SLIGHT = ("slight", 3, 0.05)
    HIGH = ("high", 5, 0.10)

    def __init__(self, label: str, j_max: int, e_max: float):
        self.label = label
        self.j_max = j_max
        self.e_max = e_max

    @classmethod
    def from_label(cls, label: str) -> "Tolerance":
        for level in cls:
            if level.label == label:
                return level
        raise ValueError(f"unknown tolerance {label!r}")


def levenshtein(a: str, b: str) -> int:
    """Classic edit distance (insert/delete/substitute, unit costs)."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, cb in enumerate(b, start=1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            )
        prev = cur
    return prev[-1]


_CURRENCY = "$€£¥₹"
_NUMERIC_TEXT_RE = re.compile(r"^[+-]?(\d{1,3}(,\d{3})+|\d+)?(\.\d+)?([eE][+-]?\d+)?$")


def coerce_number(s: str) -> float | None:
    """Parse text as a number after stripping thousands separators, a leading
    currency symbol, and a trailing percent sign. None when not numeric."""
    t = s.strip()
    if not t:
        return None
    if t[0] in _CURRENCY:
        t = t[1:].strip()
    if t.endswith("%"):
        t = t[:-1].strip()
    if not _NUMERIC_TEXT_RE.match(t) or not any(ch.isdigit() for ch in t):
        return None
    try:
        return float(t.replace(",", ""))
    except ValueError:
        return None


def relative_error(p: float, q: float) -> float:
    """|p - q| relative to the ground-truth magnitude; absolute at q = 0."""
    if q == 0.0:
        return abs(p)
    return abs(p - q) / abs(q)


def field_match(
    p: Scalar, q: Scalar, level: Tolerance, case_insensitive: bool = False
) -> bool:
    """Whether a predicted field matches a ground-truth field at a tolerance.

    Strings compare by edit distance on NFC-normalized, trimmed text.
    Numbers compare by relative error. A string against a number is retried
    after numeric coercion of the string. Null matches nothing.
    """
    if p is None or q is None:
        return False
    if isinstance(p, str) and isinstance(q, str):
        a, b = normalize_text(p), normalize_text(q)
        if case_insensitive:
            a, b = a.lower(), b.lower()
        if abs(len(a) - len(b)) > level.j_max:
            return False
        return levenshtein(a, b) <= level.j_max
    if isinstance(p, str):
        pn = coerce_number(p)
        if pn is None:
            return False
        p = pn
    if isinstance(q, str):
        qn = coerce_number(q)
        if qn is None:
            return False
        q = qn
    return relative_error(p, q) <= level.e_max


def _pair_cost(
    p: tuple, q: tuple, level: Tolerance, case_insensitive: bool
) -> float:
    """Matching cost: summed numeric relative error, or INCOMPATIBLE."""
    if len(p) != len(q):
        return INCOMPATIBLE
    err = 0.0
    for pv, qv in zip(p, q):
        if not field_match(pv, qv, level, case_insensitive):
            return INCOMPATIBLE
        a = coerce_number(pv) if isinstance(pv, str) else pv
        b = coerce_number(qv) if isinstance(qv, str) else qv
        if isinstance(a, float) and isinstance(b, float):
            err += relative_error(a, b)
    return err


@dataclass(frozen=True)
class MatchResult:
    n_m: int
    n_p: int
    n_gt: int
    assignment: tuple[tuple[int, int], ...] = ()
    note: str | None = None

    def swapped(self) -> "MatchResult":
        return MatchResult(
            self.n_m, self.n_gt, self.n_p,
            tuple((j, i) for i, j in self.assignment), self.note,
        )


def _hashable(t: tuple) -> tuple:
    return t  # tuples of float/str are hashable as-is


def _identity_prematch(pred: Sequence[tuple], gt: Sequence[tuple]) -> list[tuple[int, int]] | None:
    """Fast path: equal multisets with no nulls match 1:1 (provably maximal)."""
    if len(pred) != len(gt):
        return None
    from collections import Counter

    if any(any(v is None for v in t) for t in pred):
        return None
    try:
        if Counter(map(_hashable, pred)) != Counter(map(_hashable, gt)):
            return None
    except TypeError:
        return None
    remaining: dict[tuple, list[int]] = {}
    for j, t in enumerate(gt):
        remaining.setdefault(t, []).append(j)
    pairs = []
    for i, t in enumerate(pred):
        pairs.append((i, remaining[t].pop(0)))
    return pairs


def match_tuples(
    pred: Sequence[tuple],
    gt: Sequence[tuple],
    level: Tolerance,
    case_insensitive: bool = False,
) -> MatchResult:
    """Maximum-cardinality one-to-one matching between two tuple multisets."""
    n_p, n_gt = len(pred), len(gt)
    if n_p == 0 or n_gt == 0:
        return MatchResult(0, n_p, n_gt)

    pairs = _identity_prematch(pred, gt)
    if pairs is None:
        cost = np.empty((n_p, n_gt), dtype=float)
        for i, p in enumerate(pred):
            for j, q in enumerate(gt):
                cost[i, j] = _pair_cost(p, q, level, case_insensitive)
        pairs = max_cardinality_min_cost(cost)
    pairs = sorted(pairs)
    return MatchResult(len(pairs), n_p, n_gt, tuple(pairs))


def match_tuple_sets(
    pred: TupleSet,
    gt: TupleSet,
    level: Tolerance,
    case_insensitive: bool = False,
) -> MatchResult:
    """Match two per-trace tuple sets; arity mismatch matches nothing."""
    if pred.arity != gt.arity and pred.tuples and gt.tuples:
        return MatchResult(
            0, len(pred.tuples), len(gt.tuples),
            note=f"arity mismatch ({pred.arity} vs {gt.arity})",
        )
    return match_tuples(pred.tuples, gt.tuples, level, case_insensitive)


def match_tuple_pools(
    pred_sets: Iterable[TupleSet],
    gt_sets: Iterable[TupleSet],
    level: Tolerance,
    case_insensitive: bool = False,
) -> MatchResult:
    """Match the union of per-trace tuple sets (trace names disambiguate)."""
    pred = [t for ts in pred_sets for t in ts.tuples]
    gt = [t for ts in gt_sets for t in ts.tuples]
    return match_tuples(pred, gt, level, case_insensitive)


@dataclass(frozen=True)
class FidelityMetrics:
    precision: float
    recall: float
    f1: float
    iou: float


def fidelity_metrics(m: MatchResult) -> FidelityMetrics:
    """P, R, F1, IoU from matched/predicted/ground-truth counts.

    Both sides empty counts as vacuous agreement (all ones); an undefined
    component from a zero denominator scores zero.
    """
    if m.n_p == 0 and m.n_gt == 0:
        return FidelityMetrics(1.0, 1.0, 1.0, 1.0)
    p = m.n_m / m.n_p if m.n_p else 0.0
    r = m.n_m / m.n_gt if m.n_gt else 0.0
    f1 = 2.0 * p * r / (p + r) if (p + r) else 0.0
    iou = m.n_m / (m.n_p + m.n_gt - m.n_m) if (m.n_p + m.n_gt - m.n_m) else 0.0
    return FidelityMetrics(p, r, f1, iou)
