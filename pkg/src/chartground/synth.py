"""Parametric chart-script generation: style sampling, contrast enforcement,
and deterministic plotting-script emission for table/chart pairs.

Covers the five sampled chart families (bar, line, scatter, area, pie) and
two target libraries. A script embeds its data inline and is a pure function
of (table, chart type, style), so reruns are byte-identical.
"""

from __future__ import annotations

import colorsys
import random
from dataclasses import dataclass

from chartground.colors import ColorValue, relative_luminance
from chartground.extract import TupleSet
from chartground.figure import ChartType, Scalar
from chartground.qa import column_kind
from chartground.tables import Table

LINE_STYLES = ("solid", "dashed", "dotted", "dashdot")
LEGEND_POSITIONS = (
    "top-right", "top-center", "top-left",
    "bottom-right", "bottom-center", "bottom-left",
)
GRID_ON_PROBABILITY = 0.7
LEGEND_ON_PROBABILITY = 0.8
TITLE_WRAP_WIDTH = 50
MIN_CONTRAST_RATIO = 3.0

SCRIPT_CHART_TYPES = (
    ChartType.BAR, ChartType.LINE, ChartType.SCATTER,
    ChartType.AREACHART, ChartType.PIE,
)


class IncompatibleTable(ValueError):
    """The table's columns cannot encode the requested chart type."""


@dataclass(frozen=True)
class StyleConfig:
    base_hsv: tuple[float, float, float]
    hue_shift: float       # [-0.2, 0.2]
    sat_shift: float       # [-0.25, 0.25]
    val_shift: float       # [-0.25, 0.25]
    line_width: float      # [1.2, 3.5]
    line_style: str
    grid_on: bool
    grid_alpha: float      # [0.2, 0.6]
    tick_font: int         # [8, 12]
    axis_font: int         # [10, 14]
    title_font: int        # [12, 18]
    legend_on: bool
    legend_position: str
    fig_w: float           # [3, 9]
    fig_h: float           # [3, 7]
    rng_seed: int


def sample_style_config(seed: int) -> StyleConfig:
    """Deterministically sample one style from the allowed ranges."""
    rng = random.Random(seed)
    return StyleConfig(
        base_hsv=(rng.random(), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)),
        hue_shift=rng.uniform(-0.2, 0.2),
        sat_shift=rng.uniform(-0.25, 0.25),
        val_shift=rng.uniform(-0.25, 0.25),
        line_width=rng.uniform(1.2, 3.5),
        line_style=rng.choice(LINE_STYLES),
        grid_on=rng.random() < GRID_ON_PROBABILITY,
        grid_alpha=rng.uniform(0.2, 0.6),
        tick_font=rng.randint(8, 12),
        axis_font=rng.randint(10, 14),
        title_font=rng.randint(12, 18),
        legend_on=rng.random() < LEGEND_ON_PROBABILITY,
        legend_position=rng.choice(LEGEND_POSITIONS),
        fig_w=rng.uniform(3.0, 9.0),
        fig_h=rng.uniform(3.0, 7.0),
        rng_seed=seed,
    )


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


def _hsv_to_color(h: float, s: float, v: float) -> ColorValue:
    r, g, b = colorsys.hsv_to_rgb(h % 1.0, _clamp(s), _clamp(v))
    return ColorValue(round(r * 255), round(g * 255), round(b * 255))


def perturb_color(base: ColorValue, mode: str, cfg: StyleConfig) -> ColorValue:
    """same_family keeps the hue close; complementary rotates ~180 degrees."""
    h, s, v = colorsys.rgb_to_hsv(base.r / 255.0, base.g / 255.0, base.b / 255.0)
    if mode == "same_family":
        return _hsv_to_color(h + cfg.hue_shift, s + cfg.sat_shift, v + cfg.val_shift)
    if mode == "complementary":
        jitter = random.Random(cfg.rng_seed).uniform(-0.05, 0.05)
        return _hsv_to_color(h + 0.5 + jitter, s, v)
    raise ValueError(f"unknown perturbation mode {mode!r}")


def contrast_ratio(fg: ColorValue, bg: ColorValue) -> float:
    """(L_hi + 0.05) / (L_lo + 0.05) over WCAG relative luminance."""
    l1 = relative_luminance(fg)
    l2 = relative_luminance(bg)
    hi, lo = max(l1, l2), min(l1, l2)
    return (hi + 0.05) / (lo + 0.05)


def ensure_contrast(
    fg: ColorValue, bg: ColorValue, min_ratio: float = MIN_CONTRAST_RATIO
) -> ColorValue:
    """Return fg, or a value-stepped variant, or a black/white fallback.

    Steps the HSV value toward whichever pole (black or white) contrasts
    better with the background; falls back to that pole outright if value
    saturation still leaves the ratio short.
    """
    if contrast_ratio(fg, bg) >= min_ratio:
        return fg
    black = ColorValue(0, 0, 0)
    white = ColorValue(255, 255, 255)
    toward_white = contrast_ratio(white, bg) >= contrast_ratio(black, bg)
    h, s, v = colorsys.rgb_to_hsv(fg.r / 255.0, fg.g / 255.0, fg.b / 255.0)
    step = 0.05 if toward_white else -0.05
    while True:
        v = _clamp(v + step)
        candidate = _hsv_to_color(h, s, v)
        if contrast_ratio(candidate, bg) >= min_ratio:
            return candidate
        if v in (0.0, 1.0):
            break
    return white if toward_white else black


def wrap_title(text: str, width: int = TITLE_WRAP_WIDTH) -> list[str]:
    """Greedy word wrap; a single word longer than the width stays unbroken."""
    if width < 1:
        raise ValueError("width must be >= 1")
    words = text.split()
    if not words:
        return [""]
    lines = [words[0]]
    for w in words[1:]:
        if len(lines[-1]) + 1 + len(w) <= width:
            lines[-1] += " " + w
        else:
            lines.append(w)
    return lines


@dataclass(frozen=True)
class ScriptArtifact:
    script_text: str
    chart_type: ChartType
    library: str
    style: StyleConfig
    table_ref: str | None = None


# ---------------------------------------------------------------------------
# column selection and the expected-tuple mirror of the encoding
# ---------------------------------------------------------------------------

def _column(table: Table, idx: int) -> list[Scalar]:
    return [row[idx] for row in table.rows]


def _select_xy(table: Table) -> tuple[int, list[int]]:
    """x column is the first column; y columns are the other quantitative ones."""
    if table.arity < 2:
        raise IncompatibleTable("need an x column plus at least one y column")
    y_cols = [
        j for j in range(1, table.arity)
        if column_kind(_column(table, j)) == "quantitative"
    ]
    if not y_cols:
        raise IncompatibleTable("no quantitative y column")
    return 0, y_cols


def _select_pie(table: Table) -> tuple[int, int]:
    """First categorical/date column as labels, first quantitative as values."""
    label_col = None
    value_col = None
    for j in range(table.arity):
        kind = column_kind(_column(table, j))
        if kind == "quantitative" and value_col is None:
            value_col = j
        elif kind != "quantitative" and label_col is None:
            label_col = j
    if label_col is None or value_col is None:
        raise IncompatibleTable("pie needs one categorical and one quantitative column")
    for v in _column(table, value_col):
        n = v if isinstance(v, float) else None
        if n is not None and n < 0:
            raise IncompatibleTable("pie values must be non-negative")
    return label_col, value_col


def _as_float(v: Scalar) -> float | None:
    from chartground.matching import coerce_number

    if isinstance(v, float):
        return v
    if isinstance(v, str):
        return coerce_number(v)
    return None


def _xy_series(table: Table) -> tuple[list[Scalar], list[tuple[str, list[float]]]]:
    """Clean x values and named y series, rows with nulls removed."""
    x_col, y_cols = _select_xy(table)
    keep = []
    for i, row in enumerate(table.rows):
        if row[x_col] is None:
            continue
        ys = [_as_float(row[j]) for j in y_cols]
        if any(v is None for v in ys):
            continue
        keep.append(i)
    xs = [table.rows[i][x_col] for i in keep]
    series = [
        (table.headers[j], [_as_float(table.rows[i][j]) for i in keep])
        for j in y_cols
    ]
    if not xs:
        raise IncompatibleTable("no complete rows to plot")
    return xs, series


def _pie_data(table: Table) -> tuple[str, list[str], list[float]]:
    label_col, value_col = _select_pie(table)
    labels: list[str] = []
    values: list[float] = []
    for row in table.rows:
        label = row[label_col]
        value = _as_float(row[value_col])
        if label is None or value is None:
            continue
        labels.append(label if isinstance(label, str) else _format_label(label))
        values.append(value)
    if not labels:
        raise IncompatibleTable("no complete rows to plot")
    return table.headers[value_col], labels, values


def _format_label(v: Scalar) -> str:
    if isinstance(v, float):
        return str(int(v)) if v.is_integer() else repr(v)
    return str(v)


def expected_tuple_sets(table: Table, chart_type: ChartType) -> list[TupleSet]:
    """The tuple sets a faithful rendering of the table must extract to."""
    if chart_type is ChartType.PIE:
        name, labels, values = _pie_data(table)
        return [
            TupleSet(
                chart_type=ChartType.PIE,
                arity=3,
                tuples=[(name, l, v) for l, v in zip(labels, values)],
            )
        ]
    xs, series = _xy_series(table)
    return [
        TupleSet(
            chart_type=chart_type,
            arity=3,
            tuples=[(label, x, y) for x, y in zip(xs, ys)],
        )
        for label, ys in series
    ]


# ---------------------------------------------------------------------------
# style-derived colors
# ---------------------------------------------------------------------------

def series_colors(style: StyleConfig, count: int, bg: ColorValue) -> list[ColorValue]:
    """One contrast-safe color per series, hues spread around the base."""
    h, s, v = style.base_hsv
    out = []
    for i in range(count):
        spread = _hsv_to_color(h + i / max(count, 1), s, v)
        out.append(ensure_contrast(perturb_color(spread, "same_family", style), bg))
    return out


def grid_color(style: StyleConfig, bg: ColorValue) -> ColorValue:
    h, _, _ = style.base_hsv
    return ensure_contrast(_hsv_to_color(h, 0.15, 0.55), bg)


def text_color(bg: ColorValue) -> ColorValue:
    return ensure_contrast(ColorValue(0, 0, 0), bg)


# ---------------------------------------------------------------------------
# script templates
# ---------------------------------------------------------------------------

_MPL_LINESTYLE = {"solid": "-", "dashed": "--", "dotted": ":", "dashdot": "-."}
_MPL_LEGEND_LOC = {
    "top-right": "upper right", "top-center": "upper center", "top-left": "upper left",
    "bottom-right": "lower right", "bottom-center": "lower center",
    "bottom-left": "lower left",
}
_PLOTLY_DASH = {"solid": "solid", "dashed": "dash", "dotted": "dot", "dashdot": "dashdot"}
_PLOTLY_LEGEND = {
    "top-right": ("right", 1.0, "top", 1.0),
    "top-center": ("center", 0.5, "top", 1.0),
    "top-left": ("left", 0.0, "top", 1.0),
    "bottom-right": ("right", 1.0, "bottom", 0.0),
    "bottom-center": ("center", 0.5, "bottom", 0.0),
    "bottom-left": ("left", 0.0, "bottom", 0.0),
}

_BG = ColorValue(255, 255, 255)


def _default_title(table: Table, chart_type: ChartType) -> str:
    return f"{table.headers[0]} overview ({chart_type.value})"


def _mpl_script(table: Table, chart_type: ChartType, style: StyleConfig) -> str:
    fg = text_color(_BG)
    title = "\n".join(wrap_title(_default_title(table, chart_type)))
    lines = [
        "import matplotlib",
        'matplotlib.use("Agg")',
        "import matplotlib.pyplot as plt",
        "",
        f"fig, ax = plt.subplots(figsize=({style.fig_w:.2f}, {style.fig_h:.2f}))",
        'fig.patch.set_facecolor("#ffffff")',
        'ax.set_facecolor("#ffffff")',
        "",
    ]
    if chart_type is ChartType.PIE:
        _, labels, values = _pie_data(table)
        colors = series_colors(style, len(values), _BG)
        lines += [
            f"labels = {labels!r}",
            f"values = {values!r}",
            f"colors = {[c.hex() for c in colors]!r}",
            "ax.pie(values, labels=labels, colors=colors, "
            f"textprops={{'fontsize': {style.tick_font}, 'color': {fg.hex()!r}}})",
        ]
    else:
        xs, series = _xy_series(table)
        colors = series_colors(style, len(series), _BG)
        # categorical bar positions invert exactly; stacking keeps multiple
        # series at the category positions instead of offsetting them
        x_literal = (
            [_format_label(x) for x in xs] if chart_type is ChartType.BAR else xs
        )
        lines.append(f"x = {x_literal!r}")
        stacked = chart_type is ChartType.BAR and len(series) > 1
        if stacked:
            lines.append(f"bottom = [0.0] * {len(xs)}")
        for k, ((label, ys), color) in enumerate(zip(series, colors)):
            lines.append(f"y{k} = {ys!r}")
            if chart_type is ChartType.BAR:
                bottom = ", bottom=bottom" if stacked else ""
                lines.append(
                    f"ax.bar(x, y{k}, label={label!r}, color={color.hex()!r}{bottom})"
                )
                if stacked and k + 1 < len(series):
                    lines.append(f"bottom = [a + b for a, b in zip(bottom, y{k})]")
            elif chart_type is ChartType.SCATTER:
                lines.append(
                    f"ax.scatter(x, y{k}, label={label!r}, color={color.hex()!r})"
                )
            else:  # line and area share the plot call; area adds a fill
                lines.append(
                    f"ax.plot(x, y{k}, label={label!r}, color={color.hex()!r}, "
                    f"linewidth={style.line_width:.2f}, "
                    f"linestyle={_MPL_LINESTYLE[style.line_style]!r})"
                )
                if chart_type is ChartType.AREACHART:
                    lines.append(
                        f"ax.fill_between(x, y{k}, alpha=0.35, color={color.hex()!r})"
                    )
        lines += [
            f"ax.set_xlabel({table.headers[0]!r}, fontsize={style.axis_font}, color={fg.hex()!r})",
            f"ax.set_ylabel({series[0][0]!r}, fontsize={style.axis_font}, color={fg.hex()!r})",
            f"ax.tick_params(labelsize={style.tick_font}, colors={fg.hex()!r})",
        ]
        if style.grid_on:
            gc = grid_color(style, _BG)
            lines.append(
                f"ax.grid(True, alpha={style.grid_alpha:.2f}, color={gc.hex()!r})"
            )
        if style.legend_on:
            lines.append(
                f"ax.legend(loc={_MPL_LEGEND_LOC[style.legend_position]!r}, "
                f"fontsize={style.tick_font})"
            )
    lines += [
        f"ax.set_title({title!r}, fontsize={style.title_font}, color={fg.hex()!r})",
        "fig.tight_layout()",
        "",
    ]
    return "\n".join(lines)


def _plotly_trace_line(
    chart_type: ChartType, label: str, xs: list, ys: list[float],
    color: ColorValue, style: StyleConfig,
) -> str:
    if chart_type is ChartType.BAR:
        return (
            f"fig.add_trace(go.Bar(name={label!r}, x={xs!r}, y={ys!r}, "
            f"marker_color={color.hex()!r}))"
        )
    if chart_type is ChartType.SCATTER:
        return (
            f"fig.add_trace(go.Scatter(name={label!r}, x={xs!r}, y={ys!r}, "
            f"mode='markers', marker=dict(color={color.hex()!r})))"
        )
    line = (
        f"line=dict(color={color.hex()!r}, width={style.line_width:.2f}, "
        f"dash={_PLOTLY_DASH[style.line_style]!r})"
    )
    fill = ", fill='tozeroy'" if chart_type is ChartType.AREACHART else ""
    return (
        f"fig.add_trace(go.Scatter(name={label!r}, x={xs!r}, y={ys!r}, "
        f"mode='lines', {line}{fill}))"
    )


def _plotly_script(table: Table, chart_type: ChartType, style: StyleConfig) -> str:
    fg = text_color(_BG)
    title = "<br>".join(wrap_title(_default_title(table, chart_type)))
    lines = ["import plotly.graph_objects as go", "", "fig = go.Figure()"]
    if chart_type is ChartType.PIE:
        name, labels, values = _pie_data(table)
        colors = series_colors(style, len(values), _BG)
        lines.append(
            f"fig.add_trace(go.Pie(name={name!r}, labels={labels!r}, "
            f"values={values!r}, marker=dict(colors={[c.hex() for c in colors]!r}), "
            f"textfont=dict(size={style.tick_font})))"
        )
    else:
        xs, series = _xy_series(table)
        colors = series_colors(style, len(series), _BG)
        for (label, ys), color in zip(series, colors):
            lines.append(_plotly_trace_line(chart_type, label, xs, ys, color, style))

    xanchor, lx, yanchor, ly = _PLOTLY_LEGEND[style.legend_position]
    layout = [
        f"title_text={title!r}",
        f"title_font_size={style.title_font}",
        f"font=dict(color={fg.hex()!r})",
        f"width={int(round(style.fig_w * 100))}",
        f"height={int(round(style.fig_h * 100))}",
        "paper_bgcolor='#ffffff'",
        "plot_bgcolor='#ffffff'",
        f"showlegend={style.legend_on}",
    ]
    if style.legend_on:
        layout.append(
            f"legend=dict(xanchor={xanchor!r}, x={lx}, yanchor={yanchor!r}, y={ly})"
        )
    lines.append(f"fig.update_layout({', '.join(layout)})")
    if chart_type is not ChartType.PIE:
        gc = grid_color(style, _BG)
        grid_rgba = f"rgba({gc.r}, {gc.g}, {gc.b}, {style.grid_alpha:.2f})"
        show = "True" if style.grid_on else "False"
        lines.append(
            f"fig.update_xaxes(title_text={table.headers[0]!r}, "
            f"title_font_size={style.axis_font}, tickfont_size={style.tick_font}, "
            f"showgrid={show}, gridcolor={grid_rgba!r})"
        )
        lines.append(
            f"fig.update_yaxes(title_font_size={style.axis_font}, "
            f"tickfont_size={style.tick_font}, showgrid={show}, gridcolor={grid_rgba!r})"
        )
    lines.append("")
    return "\n".join(lines)


def emit_plot_script(
    table: Table,
    chart_type: ChartType,
    style: StyleConfig,
    library: str = "plotly",
    table_ref: str | None = None,
) -> ScriptArtifact:
    """Deterministic plotting script for one table/chart-type/style triple."""
    if chart_type not in SCRIPT_CHART_TYPES:
        raise IncompatibleTable(f"no script template for chart type {chart_type.value}")
    if library == "matplotlib":
        text = _mpl_script(table, chart_type, style)
    elif library == "plotly":
        text = _plotly_script(table, chart_type, style)
    else:
        raise ValueError(f"unknown library {library!r}")
    return ScriptArtifact(
        script_text=text,
        chart_type=chart_type,
        library=library,
        style=style,
        table_ref=table_ref,
    )
