"""Reference figure documents covering every supported chart type.

One small, fully valid document per type. They back the self-comparison
suite and give CLI users a working corpus shape to copy.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from chartground.figure import ChartType


def _doc(traces: list[dict], title: str, **layout: Any) -> dict:
    base: dict[str, Any] = {"title": title}
    base.update(layout)
    if "legend" not in base:
        base["legend"] = [t.get("name", f"trace{i}") for i, t in enumerate(traces)]
    return {"data": traces, "layout": base}


_XY_LABELS = {"axis_labels": {"x": "category", "y": "value"}}


def sample_document(chart_type: ChartType) -> dict:
    """A minimal valid figure document of the given type."""
    t = chart_type.value
    if chart_type in (ChartType.SCATTER, ChartType.LINE, ChartType.AREACHART):
        return _doc(
            [{"type": t, "name": "series a", "x": [1.0, 2.0, 3.0],
              "y": [2.5, 1.25, 3.75], "colors": ["#1f77b4"]}],
            f"{t} sample", axis_labels={"x": "step", "y": "value"},
        )
    if chart_type is ChartType.BAR:
        return _doc(
            [{"type": t, "name": "revenue", "x": ["Q1", "Q2", "Q3"],
              "y": [120.0, 95.5, 143.25], "colors": ["#2ca02c"]}],
            "bar sample", **_XY_LABELS,
        )
    if chart_type is ChartType.HISTOGRAM:
        return _doc(
            [{"type": t, "name": "draws", "x": [1.0, 1.0, 2.0, 3.0, 3.0, 3.0],
              "colors": ["#9467bd"]}],
            "histogram sample", axis_labels={"x": "value", "y": "count"},
        )
    if chart_type in (ChartType.BOX, ChartType.VIOLIN):
        return _doc(
            [{"type": t, "name": "spread", "x": ["a", "a", "b", "b"],
              "y": [1.0, 2.0, 1.5, 2.5], "colors": ["#8c564b"]}],
            f"{t} sample", **_XY_LABELS,
        )
    if chart_type in (ChartType.HEATMAP, ChartType.CONTOUR,
                      ChartType.HISTOGRAM2D, ChartType.HISTOGRAM2DCONTOUR):
        return _doc(
            [{"type": t, "name": "grid", "x": ["c1", "c2"], "y": ["r1", "r2"],
              "z": [[1.0, 2.0], [3.0, 4.0]],
              "colorscale": [[0.0, "#440154"], [1.0, "#fde725"]]}],
            f"{t} sample", **_XY_LABELS,
        )
    if chart_type is ChartType.SURFACE:
        return _doc(
            [{"type": t, "name": "terrain", "x": [0.0, 1.0], "y": [0.0, 1.0],
              "z": [[0.0, 0.5], [0.7, 1.2]],
              "colorscale": [[0.0, "#0d0887"], [1.0, "#f0f921"]]}],
            "surface sample",
        )
    if chart_type in (ChartType.SCATTER3D, ChartType.LINE3D):
        return _doc(
            [{"type": t, "name": "path", "x": [0.0, 1.0, 2.0],
              "y": [0.0, 1.0, 0.5], "z": [1.0, 2.0, 3.0], "colors": ["#d62728"]}],
            f"{t} sample",
        )
    if chart_type is ChartType.MESH3D:
        return _doc(
            [{"type": t, "name": "mesh", "x": [0.0, 1.0, 0.0, 1.0],
              "y": [0.0, 0.0, 1.0, 1.0], "z": [0.0, 1.0, 1.0, 0.0],
              "colors": ["#17becf"]}],
            "mesh3d sample",
        )
    if chart_type is ChartType.CONE:
        return _doc(
            [{"type": t, "name": "flow", "x": [0.0, 1.0], "y": [0.0, 1.0],
              "z": [0.0, 0.5], "u": [1.0, 0.0], "v": [0.0, 1.0],
              "w": [0.5, 0.5], "colors": ["#bcbd22"]}],
            "cone sample",
        )
    if chart_type in (ChartType.PIE, ChartType.FUNNELAREA):
        return _doc(
            [{"type": t, "name": "share", "labels": ["alpha", "beta", "gamma"],
              "values": [45.0, 30.0, 25.0],
              "colors": ["#1f77b4", "#ff7f0e", "#2ca02c"]}],
            f"{t} sample",
        )
    if chart_type is ChartType.FUNNEL:
        return _doc(
            [{"type": t, "name": "pipeline", "x": [100.0, 60.0, 30.0],
              "y": ["visit", "cart", "buy"], "colors": ["#e377c2"]}],
            "funnel sample", axis_labels={"x": "count", "y": "stage"},
        )
    if chart_type is ChartType.WATERFALL:
        return _doc(
            [{"type": t, "name": "delta", "x": ["start", "change", "end"],
              "y": [200.0, -50.0, 150.0], "measure": ["absolute", "relative", "total"],
              "colors": ["#7f7f7f"]}],
            "waterfall sample", **_XY_LABELS,
        )
    if chart_type in (ChartType.CANDLESTICK, ChartType.OHLC):
        return _doc(
            [{"type": t, "name": "ticker", "x": ["2021-01-04", "2021-01-05"],
              "open": [133.0, 129.5], "high": [134.0, 132.0],
              "low": [126.0, 128.0], "close": [129.0, 131.0],
              "colors": ["#2ca02c", "#d62728"]}],
            f"{t} sample", axis_labels={"x": "date", "y": "price"},
        )
    if chart_type in (ChartType.SCATTERPOLAR, ChartType.BARPOLAR):
        return _doc(
            [{"type": t, "name": "radial", "theta": ["n", "e", "s", "w"],
              "r": [1.0, 2.0, 1.5, 2.5], "colors": ["#1f77b4"]}],
            f"{t} sample",
        )
    if chart_type is ChartType.SCATTERTERNARY:
        return _doc(
            [{"type": t, "name": "mixture", "a": [0.2, 0.5], "b": [0.3, 0.25],
              "c": [0.5, 0.25], "colors": ["#ff7f0e"]}],
            "scatterternary sample",
        )
    if chart_type in (ChartType.SUNBURST, ChartType.TREEMAP):
        return _doc(
            [{"type": t, "name": "tree", "labels": ["root", "left", "right"],
              "parents": ["", "root", "root"], "values": [10.0, 6.0, 4.0],
              "colors": ["#1f77b4", "#aec7e8", "#ffbb78"]}],
            f"{t} sample",
        )
    if chart_type is ChartType.SANKEY:
        return _doc(
            [{"type": t, "name": "flows", "labels": ["coal", "power", "homes"],
              "source": [0, 1], "target": [1, 2], "values": [8.0, 6.5],
              "colors": ["#1f77b4", "#ff7f0e", "#2ca02c"]}],
            "sankey sample",
        )
    if chart_type is ChartType.PARCOORDS:
        return _doc(
            [{"type": t, "name": "profiles",
              "dimensions": [
                  {"label": "d1", "values": [1.0, 2.0]},
                  {"label": "d2", "values": [3.0, 1.0]},
                  {"label": "d3", "values": [2.0, 2.5]},
              ],
              "colors": ["#17becf"]}],
            "parcoords sample",
        )
    if chart_type is ChartType.CARPET:
        return _doc(
            [{"type": t, "name": "sheet", "a": [1.0, 2.0, 3.0],
              "b": [4.0, 5.0, 6.0], "colors": ["#9467bd"]}],
            "carpet sample",
        )
    raise ValueError(f"no fixture for {chart_type}")


def fixture_suite() -> dict[str, dict]:
    """Documents for all 30 chart types, keyed by type name."""
    return {t.value: sample_document(t) for t in ChartType}


def write_fixture_suite(out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, doc in fixture_suite().items():
        path = out / f"{name}.figure.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
        paths.append(path)
    return paths
