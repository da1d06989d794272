"""Per-sample metric assembly, perceptual similarity over supplied embeddings,
and corpus aggregation into leaderboard-shaped reports.

Component scores are kept in [0, 1] internally; reported columns (and the
overall score) use the 0-100 leaderboard scale. Failed samples score zero in
every column rather than being excluded, so refusing to answer never helps.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from chartground.extract import extract_tuples
from chartground.figure import ChartType, FigureSpec
from chartground.matching import (
    FidelityMetrics,
    Tolerance,
    fidelity_metrics,
    match_tuple_pools,
)
from chartground.structure import StructureScores, TextScores, structure_scores
from chartground.tables import Table

DEFAULT_WEIGHTS = {
    "text": 1.0,
    "color": 1.0,
    "chart_type": 1.0,
    "layout": 1.0,
    "data": 1.0,
    "clip": 1.0,
}

# Leaderboard column order for delimited summaries.
SUMMARY_COLUMNS = (
    "pass_rate", "legend", "title", "axis_label", "annotations", "text_avg",
    "color", "chart_type", "layout", "data_fidelity", "clip", "overall",
)


class DimensionMismatch(ValueError):
    pass


class ZeroVector(ValueError):
    pass


def clip_similarity(gen_vec: np.ndarray, ref_vec: np.ndarray) -> float:
    """Clamped cosine similarity between two embeddings, scaled to 0-100."""
    gen_vec = np.asarray(gen_vec, dtype=np.float64)
    ref_vec = np.asarray(ref_vec, dtype=np.float64)
    if gen_vec.shape != ref_vec.shape or gen_vec.ndim != 1:
        raise DimensionMismatch(
            f"embedding shapes differ: {gen_vec.shape} vs {ref_vec.shape}"
        )
    ng = float(np.linalg.norm(gen_vec))
    nr = float(np.linalg.norm(ref_vec))
    if ng == 0.0 or nr == 0.0:
        raise ZeroVector("embedding with zero norm")
    cos = float(np.dot(gen_vec, ref_vec) / (ng * nr))
    return 100.0 * max(0.0, cos)


def read_embedding(path: str) -> np.ndarray:
    """Flat little-endian float32 vector after a one-line text header (dim)."""
    with open(path, "rb") as fh:
        header = fh.readline().decode("ascii").strip()
        dim = int(header)
        data = fh.read(4 * dim)
    if len(data) != 4 * dim:
        raise ValueError(f"embedding file {path} truncated (expected dim {dim})")
    return np.frombuffer(data, dtype="<f4").astype(np.float64)


def write_embedding(path: str, vec: Sequence[float]) -> None:
    arr = np.asarray(vec, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(f"{arr.size}\n".encode("ascii"))
        fh.write(arr.tobytes())


@dataclass
class SampleBundle:
    id: str
    gt_figure: FigureSpec
    gt_table: Table | None = None
    gt_image: str | None = None
    gen_figure: FigureSpec | None = None
    gen_status: str = "ok"  # ok | exec_error | parse_error | timeout
    embeddings: tuple[np.ndarray, np.ndarray] | None = None

    def __post_init__(self) -> None:
        if (self.gen_status == "ok") != (self.gen_figure is not None):
            raise ValueError("gen_figure must be present exactly when gen_status is ok")

    @property
    def passed(self) -> bool:
        return self.gen_status == "ok"


@dataclass
class SampleReport:
    id: str
    passed: bool
    gen_status: str
    structure: StructureScores
    data_fidelity: dict[str, FidelityMetrics]
    clip: float | None
    overall: float

    def to_dict(self) -> dict:
        t = self.structure.text
        return {
            "id": self.id,
            "passed": self.passed,
            "gen_status": self.gen_status,
            "text": {
                "legend": t.legend,
                "title": t.title,
                "axis_label": t.axis_label,
                "annotations": t.annotations,
                "avg": t.avg,
            },
            "color": self.structure.color,
            "chart_type": self.structure.chart_type,
            "layout": self.structure.layout,
            "data_fidelity": {
                level: {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "iou": m.iou,
                }
                for level, m in sorted(self.data_fidelity.items())
            },
            "clip": self.clip,
            "overall": self.overall,
        }


def _zero_report(bundle: SampleBundle) -> SampleReport:
    ref = bundle.gt_figure.layout
    text = TextScores(
        legend=0.0 if ref.legend_entries else None,
        title=0.0 if ref.title else None,
        axis_label=0.0 if ref.axis_labels else None,
        annotations=0.0 if ref.annotations else None,
        avg=0.0,
    )
    zero = FidelityMetrics(0.0, 0.0, 0.0, 0.0)
    return SampleReport(
        id=bundle.id,
        passed=False,
        gen_status=bundle.gen_status,
        structure=StructureScores(text=text, color=0.0, chart_type=0.0, layout=0.0),
        data_fidelity={lv.label: zero for lv in Tolerance},
        clip=0.0 if bundle.embeddings is not None else None,
        overall=0.0,
    )


def score_sample(
    bundle: SampleBundle,
    weights: dict[str, float] | None = None,
    iou_level: Tolerance = Tolerance.SLIGHT,
    case_insensitive: bool = False,
) -> SampleReport:
    """Score one generated figure against its ground truth.

    The overall score is the weighted mean of the present components (text
    average, color, chart type, layout, tuple IoU at the chosen tolerance,
    and the clip similarity when embeddings were supplied), scaled to 0-100.
    """
    if not bundle.passed:
        return _zero_report(bundle)

    gen = bundle.gen_figure
    ref = bundle.gt_figure
    structure = structure_scores(gen, ref)

    gen_sets = extract_tuples(gen).tuple_sets
    ref_sets = extract_tuples(ref).tuple_sets
    fidelity: dict[str, FidelityMetrics] = {}
    for lv in Tolerance:
        fidelity[lv.label] = fidelity_metrics(
            match_tuple_pools(gen_sets, ref_sets, lv, case_insensitive)
        )

    clip = None
    if bundle.embeddings is not None:
        clip = clip_similarity(bundle.embeddings[0], bundle.embeddings[1])

    w = dict(DEFAULT_WEIGHTS)
    if weights:
        w.update(weights)
    text = structure.text
    text_present = any(
        s is not None for s in (text.legend, text.title, text.axis_label, text.annotations)
    )
    components: list[tuple[str, float]] = []
    if text_present:
        components.append(("text", text.avg))
    components.append(("color", structure.color))
    components.append(("chart_type", structure.chart_type))
    components.append(("layout", structure.layout))
    components.append(("data", fidelity[iou_level.label].iou))
    if clip is not None:
        components.append(("clip", clip / 100.0))
    total_weight = sum(w[name] for name, _ in components)
    overall = (
        100.0 * sum(w[name] * value for name, value in components) / total_weight
        if total_weight
        else 0.0
    )

    return SampleReport(
        id=bundle.id,
        passed=True,
        gen_status=bundle.gen_status,
        structure=structure,
        data_fidelity=fidelity,
        clip=clip,
        overall=overall,
    )


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


@dataclass
class BenchmarkReport:
    samples: list[SampleReport]
    aggregates: dict[str, float | None]
    per_type: dict[str, dict[str, float | None]] = field(default_factory=dict)
    iou_level: str = Tolerance.SLIGHT.label

    def to_dict(self) -> dict:
        return {
            "iou_level": self.iou_level,
            "aggregates": self.aggregates,
            "per_type": self.per_type,
            "samples": [s.to_dict() for s in self.samples],
        }


def _column_values(reports: Iterable[SampleReport], iou_level: str) -> dict[str, list[float]]:
    cols: dict[str, list[float]] = defaultdict(list)
    for r in reports:
        t = r.structure.text
        for name, value in (
            ("legend", t.legend),
            ("title", t.title),
            ("axis_label", t.axis_label),
            ("annotations", t.annotations),
        ):
            if value is not None:
                cols[name].append(100.0 * value)
        cols["text_avg"].append(100.0 * t.avg)
        cols["color"].append(100.0 * r.structure.color)
        cols["chart_type"].append(100.0 * r.structure.chart_type)
        cols["layout"].append(100.0 * r.structure.layout)
        cols["data_fidelity"].append(100.0 * r.data_fidelity[iou_level].iou)
        for level, m in r.data_fidelity.items():
            cols[f"precision_{level}"].append(100.0 * m.precision)
            cols[f"recall_{level}"].append(100.0 * m.recall)
            cols[f"f1_{level}"].append(100.0 * m.f1)
            cols[f"iou_{level}"].append(100.0 * m.iou)
        if r.clip is not None:
            cols["clip"].append(r.clip)
        cols["overall"].append(r.overall)
    return cols


def aggregate(
    reports: list[SampleReport],
    types: list[ChartType] | None = None,
    iou_level: Tolerance = Tolerance.SLIGHT,
) -> BenchmarkReport:
    """Corpus means per column (failures contribute zeros) plus a per-type
    breakdown; pass rate is a percentage of all samples."""
    if types is not None and len(types) != len(reports):
        raise ValueError("types must parallel reports")

    def summarize(group: list[SampleReport]) -> dict[str, float | None]:
        cols = _column_values(group, iou_level.label)
        out: dict[str, float | None] = {
            "count": float(len(group)),
            "pass_rate": 100.0 * sum(r.passed for r in group) / len(group)
            if group
            else None,
        }
        for name, values in sorted(cols.items()):
            out[name] = _mean(values)
        return out

    per_type: dict[str, dict[str, float | None]] = {}
    if types is not None:
        buckets: dict[str, list[SampleReport]] = defaultdict(list)
        for r, t in zip(reports, types):
            buckets[t.value].append(r)
        per_type = {name: summarize(group) for name, group in sorted(buckets.items())}

    return BenchmarkReport(
        samples=reports,
        aggregates=summarize(reports),
        per_type=per_type,
        iou_level=iou_level.label,
    )


def dominant_chart_type(spec: FigureSpec) -> ChartType:
    """The most common trace type (ties go to declaration order)."""
    if not spec.traces:
        return ChartType.SCATTER
    counts = Counter(t.chart_type for t in spec.traces)
    best = max(counts.values())
    for t in spec.traces:
        if counts[t.chart_type] == best:
            return t.chart_type
    return spec.traces[0].chart_type
