"""The four visual-structure sub-scores: text components, color fidelity,
chart-type distribution, and subplot layout.

All scores live in [0, 1], are invariant to declaration order, and reach 1.0
exactly at structural identity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from chartground.assignment import min_cost_assignment
from chartground.colors import ColorValue, color_set_fidelity
from chartground.figure import Annotation, FigureSpec, normalize_text
from chartground.matching import levenshtein

# Annotations farther apart than this fraction of the figure contribute no
# positional credit.
ANNOTATION_RADIUS = 0.25

_FULL_DOMAIN = (0.0, 1.0, 0.0, 1.0)


@dataclass(frozen=True)
class TextScores:
    legend: float | None
    title: float | None
    axis_label: float | None
    annotations: float | None
    avg: float


@dataclass(frozen=True)
class StructureScores:
    text: TextScores
    color: float
    chart_type: float
    layout: float


def string_similarity(a: str, b: str) -> float:
    """1 - edit_distance / max_length, and 1.0 for two empty strings."""
    a, b = normalize_text(a), normalize_text(b)
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def _matched_similarity_score(
    gen_items: list[str], ref_items: list[str]
) -> float | None:
    """Best one-to-one pairing similarity, normalized by the larger count.

    None when the reference side has no items (category absent).
    """
    if not ref_items:
        return None
    if not gen_items:
        return 0.0
    weight = np.zeros((len(gen_items), len(ref_items)))
    for i, g in enumerate(gen_items):
        for j, r in enumerate(ref_items):
            weight[i, j] = string_similarity(g, r)
    pairs = min_cost_assignment(-weight)
    total = sum(weight[i, j] for i, j in pairs)
    return total / max(len(gen_items), len(ref_items))


def _annotation_score(
    gen: tuple[Annotation, ...], ref: tuple[Annotation, ...]
) -> float | None:
    """Text similarity weighted by positional proximity in fraction space."""
    if not ref:
        return None
    if not gen:
        return 0.0
    weight = np.zeros((len(gen), len(ref)))
    for i, g in enumerate(gen):
        for j, r in enumerate(ref):
            sim = string_similarity(g.text, r.text)
            if g.coord_space == "fraction" and r.coord_space == "fraction":
                dist = math.hypot(g.x - r.x, g.y - r.y)
                sim *= 1.0 - min(1.0, dist / ANNOTATION_RADIUS)
            elif g.coord_space != r.coord_space:
                sim = 0.0
            # matching data-space positions are not comparable without axis
            # ranges; the text similarity stands alone there
            weight[i, j] = sim
    pairs = min_cost_assignment(-weight)
    total = sum(weight[i, j] for i, j in pairs)
    return total / max(len(gen), len(ref))


def text_components_score(gen: FigureSpec, ref: FigureSpec) -> TextScores:
    """Per-category text scores; a category the reference lacks is absent."""
    legend = _matched_similarity_score(
        list(gen.layout.legend_entries), list(ref.layout.legend_entries)
    )
    title = _matched_similarity_score(
        [gen.layout.title] if gen.layout.title else [],
        [ref.layout.title] if ref.layout.title else [],
    )
    axis_label = _matched_similarity_score(
        list(gen.layout.axis_labels.values()), list(ref.layout.axis_labels.values())
    )
    annotations = _annotation_score(gen.layout.annotations, ref.layout.annotations)

    present = [s for s in (legend, title, axis_label, annotations) if s is not None]
    avg = sum(present) / len(present) if present else 1.0
    return TextScores(legend, title, axis_label, annotations, avg)


def figure_colors(spec: FigureSpec) -> list[ColorValue]:
    """All trace colors in declaration order."""
    return [c for trace in spec.traces for c in trace.colors]


def color_score(gen: FigureSpec, ref: FigureSpec) -> float:
    return color_set_fidelity(figure_colors(gen), figure_colors(ref))


def chart_type_score(gen: FigureSpec, ref: FigureSpec) -> float:
    """Generalized Jaccard overlap of the per-type trace counts."""
    gen_counts = Counter(t.chart_type for t in gen.traces)
    ref_counts = Counter(t.chart_type for t in ref.traces)
    if not gen_counts and not ref_counts:
        return 0.0
    types = set(gen_counts) | set(ref_counts)
    inter = sum(min(gen_counts[t], ref_counts[t]) for t in types)
    union = sum(max(gen_counts[t], ref_counts[t]) for t in types)
    return inter / union if union else 0.0


def _domains(spec: FigureSpec) -> list[tuple[float, float, float, float]]:
    if spec.layout.subplots:
        return [s.domain for s in spec.layout.subplots]
    return [_FULL_DOMAIN]


def _center(d: tuple[float, float, float, float]) -> tuple[float, float]:
    return (0.5 * (d[0] + d[1]), 0.5 * (d[2] + d[3]))


def rect_iou(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> float:
    ix = max(0.0, min(a[1], b[1]) - max(a[0], b[0]))
    iy = max(0.0, min(a[3], b[3]) - max(a[2], b[2]))
    inter = ix * iy
    area_a = max(0.0, a[1] - a[0]) * max(0.0, a[3] - a[2])
    area_b = max(0.0, b[1] - b[0]) * max(0.0, b[3] - b[2])
    union = area_a + area_b - inter
    return inter / union if union > 0 else 0.0


def layout_score(gen: FigureSpec, ref: FigureSpec) -> float:
    """Half subplot-count agreement, half geometry overlap of paired panels.

    Panels pair by minimum center distance; a figure without declared
    subplots counts as one full-canvas panel.
    """
    gen_doms = _domains(gen)
    ref_doms = _domains(ref)
    count_term = min(len(gen_doms), len(ref_doms)) / max(len(gen_doms), len(ref_doms))
    cost = np.zeros((len(gen_doms), len(ref_doms)))
    for i, g in enumerate(gen_doms):
        for j, r in enumerate(ref_doms):
            cost[i, j] = math.dist(_center(g), _center(r))
    pairs = min_cost_assignment(cost)
    geometry = (
        sum(rect_iou(gen_doms[i], ref_doms[j]) for i, j in pairs) / len(pairs)
        if pairs
        else 0.0
    )
    return 0.5 * count_term + 0.5 * geometry


def structure_scores(gen: FigureSpec, ref: FigureSpec) -> StructureScores:
    """All four visual-structure components for one generated/reference pair."""
    return StructureScores(
        text=text_components_score(gen, ref),
        color=color_score(gen, ref),
        chart_type=chart_type_score(gen, ref),
        layout=layout_score(gen, ref),
    )
