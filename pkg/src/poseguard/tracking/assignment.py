"""Minimum-cost bipartite assignment with deterministic tie-breaking.

The optimal cost comes from scipy's linear_sum_assignment; on top of it a
refinement pass selects, among all minimum-cost matchings, the one whose
pair list (sorted by row) is lexicographically smallest. Totals are
compared through math.fsum so equality of matching costs is independent
of summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import ValidationError


@dataclass(frozen=True)
class Assignment:
    pairs: tuple[tuple[int, int], ...]
    unmatched_rows: tuple[int, ...]
    unmatched_cols: tuple[int, ...]
    total_cost: float = 0.0


def _matching_cost(cost: np.ndarray, rows, cols) -> float:
    return math.fsum(float(cost[r, c]) for r, c in zip(rows, cols))


def hungarian(cost_matrix) -> Assignment:
    """Solve min-cost assignment; matching size is min(R, C).

    Ties between equal-cost optima break toward the lexicographically
    smallest (row, column) pair list, so results are reproducible.
    """
    cost = np.asarray(cost_matrix, dtype=np.float64)
    if cost.ndim != 2:
        raise ValidationError("cost matrix must be 2-dimensional")
    rows_n, cols_n = cost.shape
    if rows_n == 0 or cols_n == 0:
        return Assignment(
            pairs=(),
            unmatched_rows=tuple(range(rows_n)),
            unmatched_cols=tuple(range(cols_n)),
        )
    if not np.all(np.isfinite(cost)):
        raise ValidationError("cost matrix contains non-finite entries")

    size = min(rows_n, cols_n)
    base_rows, base_cols = linear_sum_assignment(cost)
    target = _matching_cost(cost, base_rows, base_cols)

    pairs: list[tuple[int, int]] = []
    fixed_cost: list[float] = []
    rows_avail = list(range(rows_n))
    cols_avail = list(range(cols_n))

    while len(pairs) < size:
        remaining = size - len(pairs)
        chosen = None
        for row_pos, row in enumerate(rows_avail):
            if len(rows_avail) - row_pos < remaining:
                break  # too few rows left after skipping this far
            tail_rows = rows_avail[row_pos + 1:]
            for col in cols_avail:
                tail_cols = [c for c in cols_avail if c != col]
                completion = 0.0
                if remaining > 1:
                    sub = cost[np.ix_(tail_rows, tail_cols)]
                    sub_rows, sub_cols = linear_sum_assignment(sub)
                    completion_terms = [float(sub[r, c]) for r, c in zip(sub_rows, sub_cols)]
                else:
                    completion_terms = []
                total = math.fsum(fixed_cost + [float(cost[row, col])] + completion_terms)
                if total == target:
                    chosen = (row_pos, row, col)
                    break
            if chosen is not None:
                break
        if chosen is None:  # pragma: no cover - an optimal completion always exists
            raise RuntimeError("assignment refinement failed to find an optimal pair")
        row_pos, row, col = chosen
        pairs.append((row, col))
        fixed_cost.append(float(cost[row, col]))
        rows_avail = rows_avail[row_pos + 1:]
        cols_avail.remove(col)

    matched_rows = {r for r, _ in pairs}
    matched_cols = {c for _, c in pairs}
    return Assignment(
        pairs=tuple(pairs),
        unmatched_rows=tuple(r for r in range(rows_n) if r not in matched_rows),
        unmatched_cols=tuple(c for c in range(cols_n) if c not in matched_cols),
        total_cost=math.fsum(fixed_cost),
    )
