"""Minimum-cost assignment helpers shared by the color, tuple, and layout matchers."""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

# Sentinel cost for forbidden pairs. Real edge costs stay tiny (bounded by a
# tuple's summed relative errors), so one extra admissible edge always beats a
# sentinel and the solver maximizes cardinality first. Kept moderate so the
# solver's float arithmetic still resolves sub-1e-6 tie-break differences.
INCOMPATIBLE = 1e6


def min_cost_assignment(cost: np.ndarray) -> list[tuple[int, int]]:
    """Full assignment over a cost matrix; pairs min(rows, cols) items.

    scipy's solver is deterministic for a given matrix, which gives the
    matchers their documented stable tie-breaking.
    """
    if cost.size == 0:
        return []
    rows, cols = linear_sum_assignment(cost)
    return list(zip(rows.tolist(), cols.tolist()))


def max_cardinality_min_cost(cost: np.ndarray) -> list[tuple[int, int]]:
    """Assignment restricted to compatible pairs (cost < INCOMPATIBLE).

    Pads the matrix to square with sentinel costs, solves once, and drops
    sentinel pairs. Because every admissible edge costs less than the
    sentinel, the result has maximum cardinality; among maximum-cardinality
    matchings it minimizes the summed edge cost.
    """
    n_rows, n_cols = cost.shape
    if n_rows == 0 or n_cols == 0:
        return []
    n = max(n_rows, n_cols)
    padded = np.full((n, n), INCOMPATIBLE, dtype=float)
    padded[:n_rows, :n_cols] = cost
    pairs = min_cost_assignment(padded)
    return [
        (i, j)
        for i, j in pairs
        if i < n_rows and j < n_cols and cost[i, j] < INCOMPATIBLE
    ]
