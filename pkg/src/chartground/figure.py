"""Canonical figure schema shared by ground truth, generated outputs, and the executor.

A figure document is a JSON object with a "data" array of trace objects (each
carrying a "type" string and field arrays) and a "layout" object. Files use
the .figure.json extension, UTF-8, doubles for numbers, and text colors.
"""

from __future__ import annotations

import enum
import json
import math
import unicodedata
from dataclasses import dataclass, field
from typing import Any, Mapping, Union

from chartground.colors import ColorValue, UnparsableColor, parse_color, sample_colorscale

# A field cell: finite float, text (dates are ISO-8601 text), or missing.
Scalar = Union[float, str, None]


class ChartType(str, enum.Enum):
    SCATTERPOLAR = "scatterpolar"
    SCATTER3D = "scatter3d"
    LINE3D = "line3d"
    PIE = "pie"
    BARPOLAR = "barpolar"
    MESH3D = "mesh3d"
    VIOLIN = "violin"
    LINE = "line"
    HISTOGRAM2D = "histogram2d"
    BAR = "bar"
    BOX = "box"
    SCATTERTERNARY = "scatterternary"
    WATERFALL = "waterfall"
    HEATMAP = "heatmap"
    SCATTER = "scatter"
    CONE = "cone"
    SURFACE = "surface"
    HISTOGRAM = "histogram"
    CARPET = "carpet"
    TREEMAP = "treemap"
    PARCOORDS = "parcoords"
    FUNNELAREA = "funnelarea"
    FUNNEL = "funnel"
    SANKEY = "sankey"
    CANDLESTICK = "candlestick"
    CONTOUR = "contour"
    SUNBURST = "sunburst"
    HISTOGRAM2DCONTOUR = "histogram2dcontour"
    AREACHART = "areachart"
    OHLC = "ohlc"


# Field arrays a trace object may carry, beyond grid fields ("z" may be a
# list of rows) and parcoords "dimensions". The quartile fields support box /
# violin traces defined by precomputed statistics instead of raw samples.
TRACE_FIELD_NAMES = (
    "x", "y", "z", "r", "theta", "a", "b", "c",
    "labels", "values", "parents",
    "open", "high", "low", "close",
    "source", "target",
    "u", "v", "w", "measure",
    "q1", "median", "q3", "lowerfence", "upperfence", "mean",
)


class MalformedDocument(ValueError):
    """The document is not parseable as a figure document."""


class UnsupportedFigure(ValueError):
    """A ground-truth document contained no recognizable traces."""


@dataclass(frozen=True)
class SubplotSpec:
    id: str
    domain: tuple[float, float, float, float]  # (x0, x1, y0, y1) figure fractions


@dataclass(frozen=True)
class Annotation:
    text: str
    x: float
    y: float
    coord_space: str = "fraction"  # "data" or "fraction"


@dataclass(frozen=True)
class TraceSpec:
    name: str
    chart_type: ChartType
    fields: Mapping[str, tuple[Scalar, ...]]
    colors: tuple[ColorValue, ...] = ()
    subplot_id: str | None = None
    # parcoords only: per-dimension value arrays, in declaration order
    dimensions: tuple[tuple[Scalar, ...], ...] = ()
    # grid traces only: z rows, row-major
    grid: tuple[tuple[Scalar, ...], ...] = ()


@dataclass(frozen=True)
class LayoutSpec:
    title: str | None = None
    axis_labels: Mapping[str, str] = field(default_factory=dict)
    legend_entries: tuple[str, ...] = ()
    annotations: tuple[Annotation, ...] = ()
    subplots: tuple[SubplotSpec, ...] = ()
    background_color: ColorValue | None = None


@dataclass(frozen=True)
class FigureSpec:
    traces: tuple[TraceSpec, ...]
    layout: LayoutSpec
    source: str = "generated"  # "ground_truth" or "generated"


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    trace_index: int | None = None
    field_name: str | None = None


@dataclass
class ParsedFigure:
    """A validated FigureSpec plus the rejects and drops seen while parsing."""

    figure: FigureSpec
    rejections: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def normalize_text(s: str) -> str:
    """NFC-normalize and trim; the comparison form for all text fields."""
    return unicodedata.normalize("NFC", s).strip()


def _coerce_scalar(value: Any, notes: list[str], where: str) -> Scalar:
    if value is None:
        return None
    if isinstance(value, bool):
        return 1.0 if value else 0.0
    if isinstance(value, (int, float)):
        v = float(value)
        if not math.isfinite(v):
            notes.append(f"non-finite number at {where} replaced by null")
            return None
        return v
    if isinstance(value, str):
        return value
    notes.append(f"unsupported value {value!r} at {where} replaced by null")
    return None


def _coerce_array(values: Any, notes: list[str], where: str) -> tuple[Scalar, ...]:
    if not isinstance(values, (list, tuple)):
        return (_coerce_scalar(values, notes, where),)
    return tuple(
        _coerce_scalar(v, notes, f"{where}[{i}]") for i, v in enumerate(values)
    )


def _parse_trace_colors(raw: Any, notes: list[str], where: str) -> tuple[ColorValue, ...]:
    out: list[ColorValue] = []
    if raw is None:
        return ()
    if isinstance(raw, str):
        raw = [raw]
    if not isinstance(raw, list):
        notes.append(f"ignored non-list colors at {where}")
        return ()
    for i, item in enumerate(raw):
        if not isinstance(item, str):
            notes.append(f"ignored non-string color at {where}[{i}]")
            continue
        try:
            out.append(parse_color(item))
        except UnparsableColor:
            notes.append(f"ignored unparsable color {item!r} at {where}[{i}]")
    return tuple(out)


def _parse_colorscale(raw: Any, notes: list[str], where: str) -> tuple[ColorValue, ...]:
    stops: list[tuple[float, ColorValue]] = []
    if not isinstance(raw, list):
        notes.append(f"ignored non-list colorscale at {where}")
        return ()
    for i, stop in enumerate(raw):
        if (
            isinstance(stop, (list, tuple))
            and len(stop) == 2
            and isinstance(stop[0], (int, float))
            and isinstance(stop[1], str)
        ):
            try:
                stops.append((float(stop[0]), parse_color(stop[1])))
            except UnparsableColor:
                notes.append(f"ignored unparsable colorscale stop at {where}[{i}]")
        else:
            notes.append(f"ignored malformed colorscale stop at {where}[{i}]")
    return tuple(sample_colorscale(stops))


def _parse_trace(
    raw: Mapping[str, Any], index: int, notes: list[str]
) -> tuple[TraceSpec | None, dict[str, Any] | None]:
    type_str = raw.get("type")
    try:
        chart_type = ChartType(type_str)
    except ValueError:
        return None, {"index": index, "type": type_str, "reason": "unknown trace type"}

    where = f"data[{index}]"
    name_raw = raw.get("name")
    name = normalize_text(name_raw) if isinstance(name_raw, str) else ""
    if not name:
        name = f"trace{index}"

    fields: dict[str, tuple[Scalar, ...]] = {}
    grid: tuple[tuple[Scalar, ...], ...] = ()
    for key in TRACE_FIELD_NAMES:
        if key not in raw or raw[key] is None:
            continue
        value = raw[key]
        if key == "z" and isinstance(value, list) and value and isinstance(value[0], (list, tuple)):
            grid = tuple(
                _coerce_array(row, notes, f"{where}.z[{r}]") for r, row in enumerate(value)
            )
            continue
        fields[key] = _coerce_array(value, notes, f"{where}.{key}")

    dimensions: tuple[tuple[Scalar, ...], ...] = ()
    raw_dims = raw.get("dimensions")
    if isinstance(raw_dims, list):
        dims: list[tuple[Scalar, ...]] = []
        for d, dim in enumerate(raw_dims):
            if isinstance(dim, Mapping):
                dim = dim.get("values", [])
            dims.append(_coerce_array(dim, notes, f"{where}.dimensions[{d}]"))
        dimensions = tuple(dims)

    colors = _parse_trace_colors(raw.get("colors"), notes, f"{where}.colors")
    if not colors and "colorscale" in raw:
        colors = _parse_colorscale(raw["colorscale"], notes, f"{where}.colorscale")

    subplot_raw = raw.get("subplot")
    subplot_id = subplot_raw if isinstance(subplot_raw, str) and subplot_raw else None

    return (
        TraceSpec(
            name=name,
            chart_type=chart_type,
            fields=fields,
            colors=colors,
            subplot_id=subplot_id,
            dimensions=dimensions,
            grid=grid,
        ),
        None,
    )


def _parse_layout(raw: Mapping[str, Any], notes: list[str]) -> LayoutSpec:
    title = None
    t = raw.get("title")
    if isinstance(t, str) and t.strip():
        title = t

    axis_labels: dict[str, str] = {}
    al = raw.get("axis_labels")
    if isinstance(al, Mapping):
        for k, v in al.items():
            if isinstance(k, str) and isinstance(v, str) and v.strip():
                axis_labels[k] = v

    legend_entries: list[str] = []
    le = raw.get("legend")
    if isinstance(le, list):
        legend_entries = [e for e in le if isinstance(e, str)]

    annotations: list[Annotation] = []
    for i, a in enumerate(raw.get("annotations") or []):
        if not isinstance(a, Mapping) or not isinstance(a.get("text"), str):
            notes.append(f"ignored malformed annotation layout.annotations[{i}]")
            continue
        try:
            x = float(a.get("x", 0.0))
            y = float(a.get("y", 0.0))
        except (TypeError, ValueError):
            notes.append(f"ignored annotation with bad position layout.annotations[{i}]")
            continue
        coord = a.get("coord", "fraction")
        annotations.append(
            Annotation(a["text"], x, y, coord if coord in ("data", "fraction") else "fraction")
        )

    subplots: list[SubplotSpec] = []
    for i, s in enumerate(raw.get("subplots") or []):
        if (
            isinstance(s, Mapping)
            and isinstance(s.get("id"), str)
            and isinstance(s.get("domain"), (list, tuple))
            and len(s["domain"]) == 4
        ):
            try:
                dom = tuple(float(v) for v in s["domain"])
            except (TypeError, ValueError):
                notes.append(f"ignored subplot with bad domain layout.subplots[{i}]")
                continue
            subplots.append(SubplotSpec(s["id"], dom))
        else:
            notes.append(f"ignored malformed subplot layout.subplots[{i}]")

    background = None
    bg = raw.get("background_color")
    if isinstance(bg, str):
        try:
            background = parse_color(bg)
        except UnparsableColor:
            notes.append(f"ignored unparsable background color {bg!r}")

    return LayoutSpec(
        title=title,
        axis_labels=axis_labels,
        legend_entries=tuple(legend_entries),
        annotations=tuple(annotations),
        subplots=tuple(subplots),
        background_color=background,
    )


def parse_figure_spec(
    document: bytes | str | Mapping[str, Any], source: str = "generated"
) -> ParsedFigure:
    """Parse and validate a figure document.

    Unknown trace types go to the rejection list; non-finite numbers become
    nulls and are noted. Raises MalformedDocument for structural problems and
    UnsupportedFigure when a ground-truth document yields zero traces.
    """
    if source not in ("ground_truth", "generated"):
        raise ValueError(f"bad source {source!r}")
    if isinstance(document, (bytes, str)):
        try:
            obj = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        obj = document
    if not isinstance(obj, Mapping):
        raise MalformedDocument("document root is not an object")
    data = obj.get("data")
    layout_raw = obj.get("layout")
    if not isinstance(data, list) or not isinstance(layout_raw, Mapping):
        raise MalformedDocument('document must have a "data" array and a "layout" object')

    notes: list[str] = []
    rejections: list[dict[str, Any]] = []
    traces: list[TraceSpec] = []
    for i, raw_trace in enumerate(data):
        if not isinstance(raw_trace, Mapping):
            rejections.append({"index": i, "type": None, "reason": "trace is not an object"})
            continue
        trace, rejection = _parse_trace(raw_trace, i, notes)
        if rejection is not None:
            rejections.append(rejection)
        else:
            traces.append(trace)

    if source == "ground_truth" and not traces:
        raise UnsupportedFigure("ground-truth document has no recognizable traces")

    layout = _parse_layout(layout_raw, notes)
    figure = FigureSpec(traces=tuple(traces), layout=layout, source=source)
    return ParsedFigure(figure=figure, rejections=rejections, notes=notes)


def load_figure(path: str, source: str = "generated") -> ParsedFigure:
    with open(path, "rb") as fh:
        return parse_figure_spec(fh.read(), source=source)


def validate_figure_spec(spec: FigureSpec) -> list[Violation]:
    """Report every invariant violation; never raises."""
    from chartground.extract import required_fields  # local to avoid an import cycle

    violations: list[Violation] = []
    if spec.source == "ground_truth" and not spec.traces:
        violations.append(Violation("EmptyGroundTruth", "ground-truth figure has no traces"))

    subplot_ids = {s.id for s in spec.layout.subplots}
    for s in spec.layout.subplots:
        x0, x1, y0, y1 = s.domain
        if not (0.0 <= x0 < x1 <= 1.0 and 0.0 <= y0 < y1 <= 1.0):
            violations.append(
                Violation("BadSubplotDomain", f"subplot {s.id!r} domain {s.domain} out of order")
            )

    for idx, trace in enumerate(spec.traces):
        if not trace.name:
            violations.append(Violation("EmptyTraceName", "trace has empty name", idx))
        if trace.subplot_id is not None and trace.subplot_id not in subplot_ids:
            violations.append(
                Violation(
                    "UnresolvedSubplot",
                    f"trace references unknown subplot {trace.subplot_id!r}",
                    idx,
                )
            )
        required = required_fields(trace)
        lengths = {
            name: len(trace.fields[name]) for name in required if name in trace.fields
        }
        if len(set(lengths.values())) > 1:
            detail = ", ".join(f"{k}={v}" for k, v in sorted(lengths.items()))
            violations.append(
                Violation("RaggedArrays", f"unequal field lengths ({detail})", idx)
            )
        for name, values in trace.fields.items():
            for v in values:
                if isinstance(v, float) and not math.isfinite(v):
                    violations.append(
                        Violation("NonFiniteNumber", "non-finite value", idx, name)
                    )
                    break
    return violations


def serialize_figure_spec(spec: FigureSpec) -> dict[str, Any]:
    """Render a FigureSpec back to the document shape (round-trip stable)."""
    data = []
    for trace in spec.traces:
        obj: dict[str, Any] = {"type": trace.chart_type.value, "name": trace.name}
        for key, values in trace.fields.items():
            obj[key] = list(values)
        if trace.grid:
            obj["z"] = [list(row) for row in trace.grid]
        if trace.dimensions:
            obj["dimensions"] = [list(d) for d in trace.dimensions]
        if trace.colors:
            obj["colors"] = [c.hex() if c.alpha == 1.0 else
                             f"rgba({c.r}, {c.g}, {c.b}, {c.alpha})" for c in trace.colors]
        if trace.subplot_id is not None:
            obj["subplot"] = trace.subplot_id
        data.append(obj)

    layout: dict[str, Any] = {}
    if spec.layout.title is not None:
        layout["title"] = spec.layout.title
    if spec.layout.axis_labels:
        layout["axis_labels"] = dict(spec.layout.axis_labels)
    if spec.layout.legend_entries:
        layout["legend"] = list(spec.layout.legend_entries)
    if spec.layout.annotations:
        layout["annotations"] = [
            {"text": a.text, "x": a.x, "y": a.y, "coord": a.coord_space}
            for a in spec.layout.annotations
        ]
    if spec.layout.subplots:
        layout["subplots"] = [{"id": s.id, "domain": list(s.domain)} for s in spec.layout.subplots]
    if spec.layout.background_color is not None:
        layout["background_color"] = spec.layout.background_color.hex()
    return {"data": data, "layout": layout}
