"""Lower plotly figures to the canonical chart document.

plotly's own JSON is already trace-list + layout shaped, so this is mostly a
relabeling pass: scatter traces split into line / scatter / areachart by mode
and fill, 3d scatters into line3d, gl variants fold into their base types,
and the handful of trace families outside the supported enumeration become
rejections.
"""

from __future__ import annotations

import base64
import json
from typing import Any

import numpy as np

SUPPORTED_TYPES = {
    "scatterpolar", "scatter3d", "pie", "barpolar", "mesh3d", "violin",
    "histogram2d", "bar", "box", "scatterternary", "waterfall", "heatmap",
    "cone", "surface", "histogram", "carpet", "treemap", "parcoords",
    "funnelarea", "funnel", "sankey", "candlestick", "contour", "sunburst",
    "histogram2dcontour", "ohlc",
}

_FIELD_KEYS = (
    "x", "y", "z", "r", "theta", "a", "b", "c", "labels", "values",
    "parents", "open", "high", "low", "close", "u", "v", "w", "measure",
    "q1", "median", "q3", "lowerfence", "upperfence", "mean",
)

_GL_ALIASES = {"scattergl": "scatter", "scatterpolargl": "scatterpolar"}


def _as_array(value: Any) -> list | None:
    """A JSON list, or plotly's base64 binary array form decoded to one."""
    if isinstance(value, list):
        return value
    if isinstance(value, dict) and "bdata" in value and "dtype" in value:
        try:
            arr = np.frombuffer(
                base64.b64decode(value["bdata"]), dtype=np.dtype(value["dtype"])
            )
            shape = value.get("shape")
            if isinstance(shape, str):
                arr = arr.reshape([int(d) for d in shape.split(",")])
            return arr.tolist()
        except (ValueError, TypeError):
            return None
    return None


def _mapped_type(trace: dict) -> str | None:
    ttype = trace.get("type", "scatter")
    ttype = _GL_ALIASES.get(ttype, ttype)
    if ttype == "scatter":
        fill = trace.get("fill")
        if fill and fill != "none":
            return "areachart"
        mode = trace.get("mode")
        if mode is not None and "lines" not in mode:
            return "scatter"
        if mode is None:
            # plotly's implicit default always draws lines
            return "line"
        return "line"
    if ttype == "scatter3d":
        mode = trace.get("mode")
        if mode is not None and "lines" in mode:
            return "line3d"
        return "scatter3d"
    if ttype in SUPPORTED_TYPES:
        return ttype
    return None


def _is_color_string(value: Any) -> bool:
    return isinstance(value, str) and bool(value.strip())


def _trace_colors(trace: dict) -> list[str]:
    marker = trace.get("marker") or {}
    if isinstance(marker.get("colors"), list):
        return [c for c in marker["colors"] if _is_color_string(c)]
    out = []
    color = marker.get("color")
    if isinstance(color, list):
        out += [c for c in color if _is_color_string(c)]
    elif _is_color_string(color):
        out.append(color)
    line = trace.get("line") or {}
    if _is_color_string(line.get("color")):
        out.append(line["color"])
    if not out and _is_color_string(trace.get("fillcolor")):
        out.append(trace["fillcolor"])
    return out


def _convert_trace(trace: dict) -> tuple[dict | None, dict | None]:
    mapped = _mapped_type(trace)
    if mapped is None:
        return None, {
            "type": trace.get("type"), "reason": "unsupported trace type",
        }
    out: dict[str, Any] = {"type": mapped}
    if isinstance(trace.get("name"), str) and trace["name"]:
        out["name"] = trace["name"]

    source_type = trace.get("type", "scatter")
    if source_type == "sankey":
        link = trace.get("link") or {}
        node = trace.get("node") or {}
        for src_key, dst_key in (("source", "source"), ("target", "target"),
                                 ("value", "values")):
            arr = _as_array(link.get(src_key))
            if arr is not None:
                out[dst_key] = arr
        labels = _as_array(node.get("label"))
        if labels is not None:
            out["labels"] = labels
        if isinstance(node.get("color"), list):
            out["colors"] = [c for c in node["color"] if _is_color_string(c)]
    elif source_type == "parcoords":
        dims = trace.get("dimensions")
        if isinstance(dims, list):
            out["dimensions"] = [
                {"label": d.get("label", f"d{i + 1}"),
                 "values": _as_array(d.get("values")) or []}
                for i, d in enumerate(dims)
                if isinstance(d, dict)
            ]
    else:
        for key in _FIELD_KEYS:
            if key in trace:
                arr = _as_array(trace[key])
                if arr is not None:
                    out[key] = arr

    if "colors" not in out:
        colors = _trace_colors(trace)
        if colors:
            out["colors"] = colors
        elif isinstance(trace.get("colorscale"), list):
            out["colorscale"] = trace["colorscale"]

    axis = trace.get("xaxis") or trace.get("yaxis")
    if isinstance(axis, str) and axis not in ("x", "y", "x1", "y1"):
        out["subplot"] = f"panel{axis.lstrip('xy')}"
    return out, None


def _layout_title(layout: dict) -> str | None:
    title = layout.get("title")
    if isinstance(title, dict):
        title = title.get("text")
    return title if isinstance(title, str) and title.strip() else None


def _axis_entries(layout: dict) -> dict[str, str]:
    out = {}
    for key, value in layout.items():
        if not isinstance(value, dict):
            continue
        if key.startswith("xaxis") or key.startswith("yaxis"):
            title = value.get("title")
            if isinstance(title, dict):
                title = title.get("text")
            if isinstance(title, str) and title.strip():
                suffix = key[5:]
                out[key[0] + suffix] = title
    return out


def _subplot_domains(layout: dict) -> list[dict]:
    panels: dict[str, dict[str, Any]] = {}
    for key, value in layout.items():
        if not isinstance(value, dict) or "domain" not in value:
            continue
        if key.startswith("xaxis") or key.startswith("yaxis"):
            suffix = key[5:] or "1"
            panel = panels.setdefault(suffix, {})
            panel["x" if key.startswith("x") else "y"] = value["domain"]
    out = []
    for suffix, panel in sorted(panels.items()):
        if "x" in panel and "y" in panel and suffix != "1":
            out.append(
                {"id": f"panel{suffix}",
                 "domain": [panel["x"][0], panel["x"][1], panel["y"][0], panel["y"][1]]}
            )
    return out


def capture_plotly(fig) -> dict:
    """Serialize one plotly figure into the canonical document shape."""
    import plotly.io as pio

    raw = json.loads(pio.to_json(fig, validate=False))
    traces_raw = raw.get("data") or []
    layout_raw = raw.get("layout") or {}

    data = []
    rejections = []
    for trace in traces_raw:
        converted, rejection = _convert_trace(trace)
        if rejection is not None:
            rejections.append(rejection)
        else:
            data.append(converted)

    layout: dict[str, Any] = {}
    title = _layout_title(layout_raw)
    if title:
        layout["title"] = title
    axis_labels = _axis_entries(layout_raw)
    if axis_labels:
        layout["axis_labels"] = axis_labels

    if layout_raw.get("showlegend", True):
        entries = [
            t["name"] for t, raw_t in zip(data, traces_raw)
            if "name" in t and raw_t.get("showlegend", True)
        ]
        if entries:
            layout["legend"] = entries

    annotations = []
    for a in layout_raw.get("annotations") or []:
        if not isinstance(a, dict) or not isinstance(a.get("text"), str):
            continue
        coord = "fraction" if a.get("xref") == "paper" else "data"
        annotations.append(
            {"text": a["text"], "x": a.get("x", 0), "y": a.get("y", 0), "coord": coord}
        )
    if annotations:
        layout["annotations"] = annotations

    subplots = _subplot_domains(layout_raw)
    if subplots:
        layout["subplots"] = subplots

    bg = layout_raw.get("paper_bgcolor")
    if _is_color_string(bg):
        layout["background_color"] = bg

    return {"data": data, "layout": layout, "rejections": rejections}
