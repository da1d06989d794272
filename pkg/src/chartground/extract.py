"""Type-specific extractors turning a FigureSpec into normalized tuple sets.

Every data point becomes a tuple whose position 0 is the trace name and whose
remaining positions follow the chart type's field schema. Points containing a
null in any schema position are dropped and tallied, never matched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from chartground.figure import ChartType, FigureSpec, Scalar, TraceSpec

DataTuple = tuple  # (name, field_1, ..., field_m)

_SCHEMAS: dict[ChartType, tuple[str, ...]] = {}
_KINDS: dict[str, str] = {
    "name": "string",
    "label": "string",
    "parent": "string",
    "source": "string",
    "target": "string",
    "x": "numeric",
    "y": "numeric",
    "z": "numeric",
    "r": "numeric",
    "theta": "numeric",
    "a": "numeric",
    "b": "numeric",
    "c": "numeric",
    "u": "numeric",
    "v": "numeric",
    "w": "numeric",
    "value": "numeric",
    "low": "numeric",
    "high": "numeric",
    "open": "numeric",
    "close": "numeric",
}

for t in (ChartType.SCATTER, ChartType.LINE, ChartType.AREACHART, ChartType.BAR,
          ChartType.FUNNEL, ChartType.WATERFALL):
    _SCHEMAS[t] = ("name", "x", "y")
for t in (ChartType.CANDLESTICK, ChartType.OHLC):
    _SCHEMAS[t] = ("name", "x", "low", "high", "open", "close")
for t in (ChartType.PIE, ChartType.FUNNELAREA):
    _SCHEMAS[t] = ("name", "label", "value")
for t in (ChartType.SUNBURST, ChartType.TREEMAP):
    _SCHEMAS[t] = ("name", "label", "parent", "value")
for t in (ChartType.HEATMAP, ChartType.CONTOUR, ChartType.HISTOGRAM2D,
          ChartType.HISTOGRAM2DCONTOUR, ChartType.SURFACE,
          ChartType.SCATTER3D, ChartType.LINE3D, ChartType.MESH3D):
    _SCHEMAS[t] = ("name", "x", "y", "z")
_SCHEMAS[ChartType.CONE] = ("name", "x", "y", "z", "u", "v", "w")
for t in (ChartType.SCATTERPOLAR, ChartType.BARPOLAR):
    _SCHEMAS[t] = ("name", "theta", "r")
_SCHEMAS[ChartType.SCATTERTERNARY] = ("name", "a", "b", "c")
_SCHEMAS[ChartType.HISTOGRAM] = ("name", "x")
for t in (ChartType.BOX, ChartType.VIOLIN):
    _SCHEMAS[t] = ("name", "x", "y")
_SCHEMAS[ChartType.SANKEY] = ("name", "source", "target", "value")
_SCHEMAS[ChartType.CARPET] = ("name", "a", "b")

# Grid types flatten a z matrix into per-cell tuples.
_GRID_TYPES = frozenset({
    ChartType.HEATMAP, ChartType.CONTOUR, ChartType.HISTOGRAM2D,
    ChartType.HISTOGRAM2DCONTOUR, ChartType.SURFACE,
})

_BOX_STAT_FIELDS = ("q1", "median", "q3", "lowerfence", "upperfence", "mean")


@dataclass(frozen=True)
class FieldSchema:
    chart_type: ChartType
    field_names: tuple[str, ...]
    field_kinds: tuple[str, ...]


@dataclass
class TupleSet:
    """The tuple multiset for one trace (or one table)."""

    chart_type: ChartType | None
    arity: int
    tuples: list[DataTuple] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tuples)


@dataclass
class ExtractionResult:
    tuple_sets: list[TupleSet]
    diagnostics: list[str] = field(default_factory=list)
    dropped_points: int = 0


def tuple_schema(t: ChartType, dim_count: int | None = None) -> FieldSchema:
    """The fixed field schema for a chart type.

    Parcoords has one numeric slot per dimension; pass dim_count to size it
    (defaults to the bare name slot when unknown).
    """
    if t is ChartType.PARCOORDS:
        names = ("name",) + tuple(f"d{i + 1}" for i in range(dim_count or 0))
        kinds = ("string",) + ("numeric",) * (dim_count or 0)
        return FieldSchema(t, names, kinds)
    names = _SCHEMAS[t]
    return FieldSchema(t, names, tuple(_KINDS[n] for n in names))


def required_fields(trace: TraceSpec) -> tuple[str, ...]:
    """Trace field arrays that must share one length (the zip group)."""
    t = trace.chart_type
    if t is ChartType.PARCOORDS:
        return ()
    if t in (ChartType.PIE, ChartType.FUNNELAREA):
        group = ("labels", "values")
    elif t in (ChartType.SUNBURST, ChartType.TREEMAP):
        group = ("labels", "parents", "values")
    elif t is ChartType.SANKEY:
        group = ("source", "target", "values")
    elif t in _GRID_TYPES:
        group = ("x", "y") if trace.grid else ("x", "y", "z")
    else:
        group = tuple(n for n in _SCHEMAS[t] if n != "name")
    return tuple(n for n in group if n in trace.fields)


def _zip_points(
    trace: TraceSpec, field_names: tuple[str, ...], diagnostics: list[str], index: int
) -> tuple[list[DataTuple], int]:
    """Tuples from parallel field arrays; missing arrays => empty + diagnostic."""
    arrays = []
    for fname in field_names:
        if fname not in trace.fields:
            diagnostics.append(
                f"trace[{index}] {trace.chart_type.value}: missing field {fname!r}"
            )
            return [], 0
        arrays.append(trace.fields[fname])
    n = min(len(a) for a in arrays) if arrays else 0
    tuples: list[DataTuple] = []
    dropped = 0
    for i in range(n):
        point = tuple(a[i] for a in arrays)
        if any(v is None for v in point):
            dropped += 1
            continue
        tuples.append((trace.name, *point))
    return tuples, dropped


def _grid_points(trace: TraceSpec, diagnostics: list[str], index: int) -> tuple[list[DataTuple], int]:
    """Flatten a z grid row-major into (name, x, y, z) cell tuples."""
    grid = trace.grid
    if not grid:
        # flat z array paired with x/y like a point cloud
        return _zip_points(trace, ("x", "y", "z"), diagnostics, index)
    xs = trace.fields.get("x")
    ys = trace.fields.get("y")
    tuples: list[DataTuple] = []
    dropped = 0
    for r, row in enumerate(grid):
        y = ys[r] if ys is not None and r < len(ys) else float(r)
        for c, z in enumerate(row):
            x = xs[c] if xs is not None and c < len(xs) else float(c)
            if x is None or y is None or z is None:
                dropped += 1
                continue
            tuples.append((trace.name, x, y, z))
    return tuples, dropped


def _sankey_points(trace: TraceSpec, diagnostics: list[str], index: int) -> tuple[list[DataTuple], int]:
    """Link tuples with node indices dereferenced to their labels."""
    labels = trace.fields.get("labels", ())

    def deref(v: Scalar) -> Scalar:
        if isinstance(v, float) and v.is_integer() and 0 <= int(v) < len(labels):
            return labels[int(v)]
        return v

    raw, dropped = _zip_points(trace, ("source", "target", "values"), diagnostics, index)
    return [(name, deref(s), deref(t), v) for name, s, t, v in raw], dropped


def _box_points(trace: TraceSpec, diagnostics: list[str], index: int) -> tuple[list[DataTuple], int]:
    """Raw sample points when present, else one tuple per precomputed statistic."""
    if "y" in trace.fields:
        if "x" in trace.fields:
            return _zip_points(trace, ("x", "y"), diagnostics, index)
        tuples = []
        dropped = 0
        for v in trace.fields["y"]:
            if v is None:
                dropped += 1
            else:
                tuples.append((trace.name, trace.name, v))
        return tuples, dropped
    stats = [f for f in _BOX_STAT_FIELDS if f in trace.fields]
    if not stats:
        diagnostics.append(
            f"trace[{index}] {trace.chart_type.value}: no raw samples or statistics"
        )
        return [], 0
    tuples = []
    dropped = 0
    for fname in stats:
        for v in trace.fields[fname]:
            if v is None:
                dropped += 1
            else:
                tuples.append((trace.name, fname, v))
    return tuples, dropped


def _parcoords_points(trace: TraceSpec) -> tuple[list[DataTuple], int]:
    """One tuple per polyline across the dimension arrays."""
    dims = trace.dimensions
    if not dims:
        return [], 0
    n = min(len(d) for d in dims)
    tuples: list[DataTuple] = []
    dropped = 0
    for i in range(n):
        point = tuple(d[i] for d in dims)
        if any(v is None for v in point):
            dropped += 1
            continue
        tuples.append((trace.name, *point))
    return tuples, dropped


def _histogram_points(trace: TraceSpec, diagnostics: list[str], index: int) -> tuple[list[DataTuple], int]:
    values = trace.fields.get("x")
    if values is None:
        values = trace.fields.get("y")
    if values is None:
        diagnostics.append(f"trace[{index}] histogram: missing field 'x'")
        return [], 0
    tuples = []
    dropped = 0
    for v in values:
        if v is None:
            dropped += 1
        else:
            tuples.append((trace.name, v))
    return tuples, dropped


def extract_trace_tuples(
    trace: TraceSpec, index: int = 0, diagnostics: list[str] | None = None
) -> tuple[TupleSet, int]:
    """Extract one trace's TupleSet; returns (set, dropped point count)."""
    if diagnostics is None:
        diagnostics = []
    t = trace.chart_type
    if t is ChartType.PARCOORDS:
        tuples, dropped = _parcoords_points(trace)
        arity = 1 + len(trace.dimensions)
    elif t in _GRID_TYPES:
        tuples, dropped = _grid_points(trace, diagnostics, index)
        arity = 4
    elif t is ChartType.SANKEY:
        tuples, dropped = _sankey_points(trace, diagnostics, index)
        arity = 4
    elif t in (ChartType.BOX, ChartType.VIOLIN):
        tuples, dropped = _box_points(trace, diagnostics, index)
        arity = 3
    elif t is ChartType.HISTOGRAM:
        tuples, dropped = _histogram_points(trace, diagnostics, index)
        arity = 2
    elif t in (ChartType.PIE, ChartType.FUNNELAREA):
        raw, dropped = _zip_points(trace, ("labels", "values"), diagnostics, index)
        tuples, arity = raw, 3
    elif t in (ChartType.SUNBURST, ChartType.TREEMAP):
        raw, dropped = _zip_points(trace, ("labels", "parents", "values"), diagnostics, index)
        tuples, arity = raw, 4
    else:
        names = tuple(n for n in _SCHEMAS[t] if n != "name")
        tuples, dropped = _zip_points(trace, names, diagnostics, index)
        arity = 1 + len(names)
    return TupleSet(chart_type=t, arity=arity, tuples=tuples), dropped


def extract_tuples(spec: FigureSpec) -> ExtractionResult:
    """One TupleSet per trace, in declaration order."""
    result = ExtractionResult(tuple_sets=[])
    for i, trace in enumerate(spec.traces):
        tset, dropped = extract_trace_tuples(trace, i, result.diagnostics)
        if dropped:
            result.diagnostics.append(
                f"trace[{i}] {trace.chart_type.value}: dropped {dropped} point(s) containing null"
            )
        result.dropped_points += dropped
        result.tuple_sets.append(tset)
    return result
