"""Independent reference implementations used only as test oracles.

These are deliberately written from the published formulas in a different
style from the package code (degree arithmetic, explicit step locals,
itertools enumeration instead of assignment solvers) so agreement is
meaningful.
"""

from __future__ import annotations

import itertools
import math


def lab_from_srgb_reference(r8: int, g8: int, b8: int) -> tuple[float, float, float]:
    """Straight-from-formula sRGB -> Lab (D65, white = matrix row sums)."""

    def expand(c: float) -> float:
        c = c / 255.0
        return c / 12.92 if c <= 0.04045 else math.pow((c + 0.055) / 1.055, 2.4)

    rl, gl, bl = expand(r8), expand(g8), expand(b8)
    x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl
    y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl
    z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl
    xn = 0.4124564 + 0.3575761 + 0.1804375
    yn = 0.2126729 + 0.7151522 + 0.0721750
    zn = 0.0193339 + 0.1191920 + 0.9503041

    def f(t: float) -> float:
        if t > 216.0 / 24389.0:
            return math.pow(t, 1.0 / 3.0)
        return (24389.0 / 27.0 * t + 16.0) / 116.0

    fx, fy, fz = f(x / xn), f(y / yn), f(z / zn)
    return 116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)


def ciede2000_reference(
    lab1: tuple[float, float, float], lab2: tuple[float, float, float]
) -> float:
    """CIEDE2000 following the published step-by-step procedure in degrees."""
    L1, a1, b1 = lab1
    L2, a2, b2 = lab2
    kL = kC = kH = 1.0

    # step 1: C', h'
    C1ab = math.sqrt(a1 * a1 + b1 * b1)
    C2ab = math.sqrt(a2 * a2 + b2 * b2)
    Cab_mean = (C1ab + C2ab) / 2.0
    G = 0.5 * (1.0 - math.sqrt(Cab_mean**7 / (Cab_mean**7 + 25.0**7)))
    ap1, ap2 = (1.0 + G) * a1, (1.0 + G) * a2
    Cp1 = math.sqrt(ap1 * ap1 + b1 * b1)
    Cp2 = math.sqrt(ap2 * ap2 + b2 * b2)

    def hue_deg(ap: float, b: float) -> float:
        if ap == 0.0 and b == 0.0:
            return 0.0
        h = math.degrees(math.atan2(b, ap))
        return h + 360.0 if h < 0.0 else h

    hp1, hp2 = hue_deg(ap1, b1), hue_deg(ap2, b2)

    # step 2: deltas
    dLp = L2 - L1
    dCp = Cp2 - Cp1
    if Cp1 * Cp2 == 0.0:
        dhp = 0.0
    elif abs(hp2 - hp1) <= 180.0:
        dhp = hp2 - hp1
    elif hp2 - hp1 > 180.0:
        dhp = hp2 - hp1 - 360.0
    else:
        dhp = hp2 - hp1 + 360.0
    dHp = 2.0 * math.sqrt(Cp1 * Cp2) * math.sin(math.radians(dhp / 2.0))

    # step 3: means and weights
    Lp_mean = (L1 + L2) / 2.0
    Cp_mean = (Cp1 + Cp2) / 2.0
    hsum = hp1 + hp2
    if Cp1 * Cp2 == 0.0:
        hp_mean = hsum
    elif abs(hp1 - hp2) <= 180.0:
        hp_mean = hsum / 2.0
    elif hsum < 360.0:
        hp_mean = (hsum + 360.0) / 2.0
    else:
        hp_mean = (hsum - 360.0) / 2.0

    T = (
        1.0
        - 0.17 * math.cos(math.radians(hp_mean - 30.0))
        + 0.24 * math.cos(math.radians(2.0 * hp_mean))
        + 0.32 * math.cos(math.radians(3.0 * hp_mean + 6.0))
        - 0.20 * math.cos(math.radians(4.0 * hp_mean - 63.0))
    )
    d_theta = 30.0 * math.exp(-(((hp_mean - 275.0) / 25.0) ** 2))
    RC = 2.0 * math.sqrt(Cp_mean**7 / (Cp_mean**7 + 25.0**7))
    SL = 1.0 + (0.015 * (Lp_mean - 50.0) ** 2) / math.sqrt(20.0 + (Lp_mean - 50.0) ** 2)
    SC = 1.0 + 0.045 * Cp_mean
    SH = 1.0 + 0.015 * Cp_mean * T
    RT = -math.sin(math.radians(2.0 * d_theta)) * RC

    tL = dLp / (kL * SL)
    tC = dCp / (kC * SC)
    tH = dHp / (kH * SH)
    return math.sqrt(tL * tL + tC * tC + tH * tH + RT * tC * tH)


def relative_luminance_reference(r8: int, g8: int, b8: int) -> float:
    def expand(c: float) -> float:
        c = c / 255.0
        return c / 12.92 if c <= 0.04045 else math.pow((c + 0.055) / 1.055, 2.4)

    return 0.2126 * expand(r8) + 0.7152 * expand(g8) + 0.0722 * expand(b8)


def brute_force_min_cost(cost: list[list[float]]) -> float:
    """Minimum total cost over all complete assignments of a square matrix."""
    n = len(cost)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        total = sum(cost[i][perm[i]] for i in range(n))
        best = min(best, total)
    return best


def brute_force_max_weight(weight: list[list[float]]) -> float:
    """Maximum total weight over one-to-one pairings (non-negative weights)."""
    rows, cols = len(weight), len(weight[0]) if weight else 0
    k = min(rows, cols)
    best = 0.0
    for row_set in itertools.combinations(range(rows), k):
        for col_perm in itertools.permutations(range(cols), k):
            total = sum(weight[i][j] for i, j in zip(row_set, col_perm))
            best = max(best, total)
    return best


def brute_force_max_matching(adjacency: list[list[bool]]) -> int:
    """Maximum-cardinality one-to-one matching by exhaustive assignment."""
    rows = len(adjacency)
    cols = len(adjacency[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    if rows <= cols:
        small, large = rows, cols

        def edge(i: int, j: int) -> bool:
            return adjacency[i][j]
    else:
        small, large = cols, rows

        def edge(i: int, j: int) -> bool:
            return adjacency[j][i]

    best = 0
    for assignment in itertools.permutations(range(large), small):
        count = sum(1 for i, j in enumerate(assignment) if edge(i, j))
        best = max(best, count)
        if best == small:
            break
    return best
