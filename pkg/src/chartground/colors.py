"""Color parsing, sRGB to CIE Lab conversion, CIEDE2000, and color-set fidelity.

All conversions assume the sRGB companding curve and a D65 / 2-degree observer;
the reference white is taken from the row sums of the RGB->XYZ matrix so that
neutral grays land exactly on the L* axis.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from chartground._css_colors import CSS_NAMED_COLORS
from chartground.assignment import min_cost_assignment

# ΔE00 of the black/white anchor pair; used to normalize similarities and as
# the padding penalty for unmatched colors.
MAX_DELTA_E = 100.0


class UnparsableColor(ValueError):
    """Raised when a color string is not in any accepted notation."""


@dataclass(frozen=True)
class ColorValue:
    """An sRGB color with 8-bit channels and a 0-1 alpha."""

    r: int
    g: int
    b: int
    alpha: float = 1.0

    def __post_init__(self) -> None:
        for name in ("r", "g", "b"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v!r} outside 0..255")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha={self.alpha!r} outside 0..1")

    def hex(self) -> str:
        return f"#{self.r:02x}{self.g:02x}{self.b:02x}"


@dataclass(frozen=True)
class LabColor:
    """CIE L*a*b* coordinates (D65)."""

    L: float
    a: float
    b: float


_HEX6_RE = re.compile(r"^#([0-9a-fA-F]{6})$")
_HEX3_RE = re.compile(r"^#([0-9a-fA-F]{3})$")
_RGB_RE = re.compile(r"^rgb\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")
_RGBA_RE = re.compile(
    r"^rgba\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*([0-9.]+)\s*\)$"
)


def parse_color(text: str) -> ColorValue:
    """Parse #RRGGBB, #RGB, rgb(...), rgba(...), or a CSS named color."""
    if not isinstance(text, str):
        raise UnparsableColor(f"not a color string: {text!r}")
    s = text.strip()
    m = _HEX6_RE.match(s)
    if m:
        h = m.group(1)
        return ColorValue(int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16))
    m = _HEX3_RE.match(s)
    if m:
        h = m.group(1)
        return ColorValue(int(h[0] * 2, 16), int(h[1] * 2, 16), int(h[2] * 2, 16))
    m = _RGB_RE.match(s)
    if m:
        r, g, b = (int(m.group(i)) for i in (1, 2, 3))
        if max(r, g, b) > 255:
            raise UnparsableColor(f"rgb channel out of range: {text!r}")
        return ColorValue(r, g, b)
    m = _RGBA_RE.match(s)
    if m:
        r, g, b = (int(m.group(i)) for i in (1, 2, 3))
        try:
            a = float(m.group(4))
        except ValueError as exc:
            raise UnparsableColor(f"bad alpha in {text!r}") from exc
        if max(r, g, b) > 255 or not 0.0 <= a <= 1.0:
            raise UnparsableColor(f"rgba component out of range: {text!r}")
        return ColorValue(r, g, b, a)
    named = CSS_NAMED_COLORS.get(s.lower())
    if named is not None:
        h = named.lstrip("#")
        return ColorValue(int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16))
    raise UnparsableColor(f"unparsable color: {text!r}")


# Linear-RGB -> XYZ (sRGB primaries, D65). The reference white is the image of
# (1,1,1), i.e. the row sums, keeping grays exactly neutral in Lab.
_RGB_TO_XYZ = (
    (0.4124564, 0.3575761, 0.1804375),
    (0.2126729, 0.7151522, 0.0721750),
    (0.0193339, 0.1191920, 0.9503041),
)
_WHITE = tuple(sum(row) for row in _RGB_TO_XYZ)


def _srgb_linearize(u: float) -> float:
    return u / 12.92 if u <= 0.04045 else ((u + 0.055) / 1.055) ** 2.4


def srgb_to_lab(c: ColorValue) -> LabColor:
    """Convert an sRGB color through linear RGB and XYZ to CIE Lab."""
    rl = _srgb_linearize(c.r / 255.0)
    gl = _srgb_linearize(c.g / 255.0)
    bl = _srgb_linearize(c.b / 255.0)
    xyz = [row[0] * rl + row[1] * gl + row[2] * bl for row in _RGB_TO_XYZ]
    eps = (6.0 / 29.0) ** 3

    def f(t: float) -> float:
        return t ** (1.0 / 3.0) if t > eps else t / (3 * (6.0 / 29.0) ** 2) + 4.0 / 29.0

    fx = f(xyz[0] / _WHITE[0])
    fy = f(xyz[1] / _WHITE[1])
    fz = f(xyz[2] / _WHITE[2])
    return LabColor(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))


def delta_e_2000(x: LabColor, y: LabColor) -> float:
    """CIEDE2000 color difference with kL = kC = kH = 1."""
    l1, a1, b1 = x.L, x.a, x.b
    l2, a2, b2 = y.L, y.a, y.b

    c1 = math.hypot(a1, b1)
    c2 = math.hypot(a2, b2)
    c_bar = 0.5 * (c1 + c2)
    g = 0.5 * (1.0 - math.sqrt(c_bar**7 / (c_bar**7 + 25.0**7)))
    a1p = (1.0 + g) * a1
    a2p = (1.0 + g) * a2
    c1p = math.hypot(a1p, b1)
    c2p = math.hypot(a2p, b2)

    h1p = math.degrees(math.atan2(b1, a1p)) % 360.0 if (a1p or b1) else 0.0
    h2p = math.degrees(math.atan2(b2, a2p)) % 360.0 if (a2p or b2) else 0.0

    dlp = l2 - l1
    dcp = c2p - c1p
    if c1p * c2p == 0.0:
        dhp = 0.0
    else:
        dh = h2p - h1p
        if dh > 180.0:
            dh -= 360.0
        elif dh < -180.0:
            dh += 360.0
        dhp = dh
    dHp = 2.0 * math.sqrt(c1p * c2p) * math.sin(math.radians(dhp) / 2.0)

    l_bar = 0.5 * (l1 + l2)
    c_barp = 0.5 * (c1p + c2p)
    if c1p * c2p == 0.0:
        h_barp = h1p + h2p
    elif abs(h1p - h2p) <= 180.0:
        h_barp = 0.5 * (h1p + h2p)
    elif h1p + h2p < 360.0:
        h_barp = 0.5 * (h1p + h2p + 360.0)
    else:
        h_barp = 0.5 * (h1p + h2p - 360.0)

    t = (
        1.0
        - 0.17 * math.cos(math.radians(h_barp - 30.0))
        + 0.24 * math.cos(math.radians(2.0 * h_barp))
        + 0.32 * math.cos(math.radians(3.0 * h_barp + 6.0))
        - 0.20 * math.cos(math.radians(4.0 * h_barp - 63.0))
    )
    sl = 1.0 + 0.015 * (l_bar - 50.0) ** 2 / math.sqrt(20.0 + (l_bar - 50.0) ** 2)
    sc = 1.0 + 0.045 * c_barp
    sh = 1.0 + 0.015 * c_barp * t
    d_theta = 30.0 * math.exp(-(((h_barp - 275.0) / 25.0) ** 2))
    rc = 2.0 * math.sqrt(c_barp**7 / (c_barp**7 + 25.0**7))
    rt = -rc * math.sin(math.radians(2.0 * d_theta))

    return math.sqrt(
        (dlp / sl) ** 2
        + (dcp / sc) ** 2
        + (dHp / sh) ** 2
        + rt * (dcp / sc) * (dHp / sh)
    )


def pair_similarity(delta_e: float) -> float:
    """Map a ΔE00 to a 0-1 similarity; the black-white distance maps to 0."""
    return max(0.0, 1.0 - delta_e / MAX_DELTA_E)


def relative_luminance(c: ColorValue) -> float:
    """WCAG relative luminance of linearized sRGB."""
    return (
        0.2126 * _srgb_linearize(c.r / 255.0)
        + 0.7152 * _srgb_linearize(c.g / 255.0)
        + 0.0722 * _srgb_linearize(c.b / 255.0)
    )


def color_set_fidelity(gen: list[ColorValue], ref: list[ColorValue]) -> float:
    """Optimal-assignment color-set similarity in [0, 1].

    The shorter list is padded with sentinel entries at the maximum penalty so
    missing or extra colors count against the score. Both lists empty is
    vacuous agreement (1.0).
    """
    if not gen and not ref:
        return 1.0
    n = max(len(gen), len(ref))
    gen_lab = [srgb_to_lab(c) for c in gen]
    ref_lab = [srgb_to_lab(c) for c in ref]
    cost = np.full((n, n), MAX_DELTA_E, dtype=float)
    for i, gl in enumerate(gen_lab):
        for j, rl in enumerate(ref_lab):
            cost[i, j] = delta_e_2000(gl, rl)
    pairs = min_cost_assignment(cost)
    return sum(pair_similarity(cost[i, j]) for i, j in pairs) / n


def sample_colorscale(stops: list[tuple[float, ColorValue]], n: int = 5) -> list[ColorValue]:
    """Discretize a continuous colorscale at n evenly spaced positions.

    Interpolation is linear per sRGB channel between the bracketing stops;
    positions outside the stop range clamp to the end colors.
    """
    if not stops:
        return []
    ordered = sorted(stops, key=lambda sc: sc[0])
    out: list[ColorValue] = []
    for k in range(n):
        t = k / (n - 1) if n > 1 else 0.0
        if t <= ordered[0][0]:
            out.append(ordered[0][1])
            continue
        if t >= ordered[-1][0]:
            out.append(ordered[-1][1])
            continue
        for (t0, c0), (t1, c1) in zip(ordered, ordered[1:]):
            if t0 <= t <= t1:
                w = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
                out.append(
                    ColorValue(
                        round(c0.r + w * (c1.r - c0.r)),
                        round(c0.g + w * (c1.g - c0.g)),
                        round(c0.b + w * (c1.b - c0.b)),
                        c0.alpha + w * (c1.alpha - c0.alpha),
                    )
                )
                break
    return out
