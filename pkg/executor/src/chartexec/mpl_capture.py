"""Lower matplotlib figures to the canonical chart document.

Artist kinds map to trace records as follows:
  BarContainer              -> bar   (category positions inverted to labels)
  Line2D                    -> line, or scatter when drawn marker-only, or
                               areachart when every line is paired with a
                               fill_between polygon
  PathCollection            -> scatter (offsets are converted data coords)
  Wedge set                 -> pie    (values are angle fractions; absolute
                               magnitudes are not recoverable from wedges)
Anything else (images, quad meshes, stray polygons) is recorded as a
rejection, never an error.
"""

from __future__ import annotations

from typing import Any

from matplotlib.collections import PathCollection, PolyCollection
from matplotlib.colors import to_hex, to_rgba
from matplotlib.container import BarContainer
from matplotlib.patches import Wedge
from matplotlib.text import Annotation


def _hex(color: Any) -> str | None:
    try:
        return to_hex(to_rgba(color))
    except (ValueError, TypeError):
        return None


def _color_list(colors: list[str | None]) -> list[str]:
    seen = [c for c in colors if c]
    if not seen:
        return []
    if len(set(seen)) == 1:
        return [seen[0]]
    return seen


def _category_inverse(axis) -> dict[int, str] | None:
    mapping = getattr(axis.units, "_mapping", None)
    if isinstance(mapping, dict) and mapping:
        return {int(v): str(k) for k, v in mapping.items()}
    return None


def _map_position(value: float, inverse: dict[int, str] | None):
    if inverse is not None:
        nearest = round(float(value))
        if abs(float(value) - nearest) < 1e-6 and nearest in inverse:
            return inverse[nearest]
    return float(value)


def _scalar(value: Any):
    if isinstance(value, str):
        return value
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


def _public_label(artist) -> str | None:
    label = artist.get_label()
    if isinstance(label, str) and label and not label.startswith("_"):
        return label
    return None


def _bar_trace(container: BarContainer, ax) -> dict:
    horizontal = getattr(container, "orientation", "vertical") == "horizontal"
    inverse = _category_inverse(ax.yaxis if horizontal else ax.xaxis)
    xs, ys, colors = [], [], []
    for rect in container.patches:
        if horizontal:
            center = rect.get_y() + rect.get_height() / 2.0
            value = rect.get_width()
        else:
            center = rect.get_x() + rect.get_width() / 2.0
            value = rect.get_height()
        xs.append(_map_position(center, inverse))
        ys.append(float(value))
        colors.append(_hex(rect.get_facecolor()))
    trace = {"type": "bar", "x": xs, "y": ys}
    name = _public_label(container)
    if name:
        trace["name"] = name
    palette = _color_list(colors)
    if palette:
        trace["colors"] = palette
    return trace


def _line_trace(line, ax, as_area: bool) -> dict:
    xd = line.get_xdata(orig=True)
    yd = line.get_ydata(orig=True)
    xs = [_scalar(v) for v in xd]
    ys = [_scalar(v) for v in yd]
    marker_only = line.get_linestyle() in ("None", "none", " ", "") and \
        line.get_marker() not in (None, "None", "none", "")
    if as_area:
        ttype = "areachart"
    elif marker_only:
        ttype = "scatter"
    else:
        ttype = "line"
    trace = {"type": ttype, "x": xs, "y": ys}
    name = _public_label(line)
    if name:
        trace["name"] = name
    color = _hex(line.get_color())
    if color:
        trace["colors"] = [color]
    return trace


def _scatter_trace(coll: PathCollection, ax) -> dict:
    x_inverse = _category_inverse(ax.xaxis)
    y_inverse = _category_inverse(ax.yaxis)
    xs, ys = [], []
    offsets = coll.get_offsets()
    for ox, oy in offsets:
        xs.append(_map_position(float(ox), x_inverse))
        ys.append(_map_position(float(oy), y_inverse))
    trace = {"type": "scatter", "x": xs, "y": ys}
    name = _public_label(coll)
    if name:
        trace["name"] = name
    palette = _color_list([_hex(c) for c in coll.get_facecolor()])
    if palette:
        trace["colors"] = palette
    return trace


def _pie_trace(wedges: list[Wedge]) -> dict:
    labels, values, colors = [], [], []
    for w in wedges:
        span = (float(w.theta2) - float(w.theta1)) % 360.0
        values.append(span / 360.0)
        label = w.get_label()
        labels.append(label if label and not label.startswith("_") else "")
        colors.append(_hex(w.get_facecolor()))
    trace = {"type": "pie", "labels": labels, "values": values}
    palette = _color_list(colors)
    if palette:
        trace["colors"] = palette
    return trace


def capture_matplotlib(fig) -> dict:
    """Serialize one matplotlib figure into the canonical document shape."""
    data: list[dict] = []
    rejections: list[dict] = []
    layout: dict[str, Any] = {}
    axes = [ax for ax in fig.axes if getattr(ax, "_colorbar", None) is None]
    multi = len(axes) > 1
    subplots = []
    legend_entries: list[str] = []
    annotations = []

    for i, ax in enumerate(axes):
        subplot_id = f"ax{i}"
        if multi:
            pos = ax.get_position()
            subplots.append(
                {"id": subplot_id,
                 "domain": [float(pos.x0), float(pos.x1), float(pos.y0), float(pos.y1)]}
            )

        fills = [c for c in ax.collections if isinstance(c, PolyCollection)
                 and not isinstance(c, PathCollection)]
        lines_as_area = bool(fills) and len(fills) == len(ax.lines)

        start = len(data)
        for container in ax.containers:
            if isinstance(container, BarContainer):
                data.append(_bar_trace(container, ax))
        for line in ax.lines:
            data.append(_line_trace(line, ax, lines_as_area))
        for coll in ax.collections:
            if isinstance(coll, PathCollection):
                data.append(_scatter_trace(coll, ax))
            elif isinstance(coll, PolyCollection):
                if not lines_as_area:
                    rejections.append(
                        {"axes": i, "artist": type(coll).__name__,
                         "reason": "unpaired filled polygon"}
                    )
            else:
                rejections.append(
                    {"axes": i, "artist": type(coll).__name__,
                     "reason": "unmapped collection"}
                )
        wedges = [p for p in ax.patches if isinstance(p, Wedge)]
        if wedges:
            data.append(_pie_trace(wedges))
        for image in ax.images:
            rejections.append(
                {"axes": i, "artist": type(image).__name__, "reason": "raster artist"}
            )
        if multi:
            for t in data[start:]:
                t["subplot"] = subplot_id

        if ax.get_xlabel():
            layout.setdefault("axis_labels", {})["x" if i == 0 else f"x{i + 1}"] = ax.get_xlabel()
        if ax.get_ylabel():
            layout.setdefault("axis_labels", {})["y" if i == 0 else f"y{i + 1}"] = ax.get_ylabel()
        legend = ax.get_legend()
        if legend is not None:
            legend_entries += [t.get_text() for t in legend.get_texts()]
        for text in ax.texts:
            if isinstance(text, Annotation):
                x, y = text.xy
                annotations.append(
                    {"text": text.get_text(), "x": _scalar(x), "y": _scalar(y),
                     "coord": "data"}
                )
        if not multi and ax.get_title():
            layout["title"] = ax.get_title()

    suptitle = getattr(fig, "_suptitle", None)
    if suptitle is not None and suptitle.get_text():
        layout["title"] = suptitle.get_text()
    elif multi and "title" not in layout:
        for ax in axes:
            if ax.get_title():
                layout["title"] = ax.get_title()
                break
    if subplots:
        layout["subplots"] = subplots
    if legend_entries:
        layout["legend"] = legend_entries
    if annotations:
        layout["annotations"] = annotations
    bg = _hex(fig.get_facecolor())
    if bg:
        layout["background_color"] = bg

    return {"data": data, "layout": layout, "rejections": rejections}
