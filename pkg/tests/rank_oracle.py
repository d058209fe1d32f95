"""Independent rank-based oracle for the empirical copula.

The hybrid estimator with empirical joint and empirical margins must
coincide with the classical rank formula.  This module derives that value
from scratch.  Rank every entry within its column counting ties upward
(the rank of x is the number of column values less than or equal to x),
so tied entries share the rank of the last of them.  Coordinate u_j then
maps to a rank threshold

    m_j = 0                                        if u_j = 0
    m_j = min{achieved rank c : float(c/n) >= u_j}  otherwise,

where the achieved ranks of a column are the ranks some entry actually
carries; without ties these are 1..n and m_j is the usual ceiling of
n*u_j.  A row contributes when its rank vector is dominated by m.  The
comparison uses the single-rounding ratios c/n, the same floats an
empirical cdf table holds, so agreement is expected bit for bit.

Rounding up to an achieved rank matters only under ties: the marginal
quantile at level u_j is a data value whose whole tie block sits at or
below it, so every entry of the block must be counted.
"""

from __future__ import annotations

import numpy as np


def rank_copula(rows, points):
    """Rank-based empirical copula of ``rows`` at ``points``, exact."""
    rows = np.asarray(rows, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, p = rows.shape
    ranks = np.empty((n, p))
    thresholds = np.empty(pts.shape)
    for j in range(p):
        col = np.sort(rows[:, j])
        ranks[:, j] = np.searchsorted(col, rows[:, j], side="right")
        achieved = np.unique(ranks[:, j])
        idx = np.searchsorted(achieved / n, pts[:, j], side="left")
        idx = np.minimum(idx, len(achieved) - 1)
        thresholds[:, j] = np.where(pts[:, j] == 0.0, 0.0, achieved[idx])
    dominated = np.all(ranks[np.newaxis, :, :] <= thresholds[:, np.newaxis, :], axis=-1)
    return np.count_nonzero(dominated, axis=-1) / n
