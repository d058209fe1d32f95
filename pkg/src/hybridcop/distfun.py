"""Distribution-function primitives on the extended real line.

Every cumulative distribution function handled by this package is a
nondecreasing, right-continuous map ``G`` from ``[-inf, +inf]`` into
``[0, 1]`` with ``G(-inf) = 0`` and ``G(+inf) = 1``.  IEEE-754 infinities
play the role of the endpoints, so the boundary conventions are exact
arithmetic facts rather than numerical approximations: an empirical cdf
evaluated at ``-inf`` counts no sample points and returns ``0.0``.

The generalized inverse used throughout is the left-continuous one,

    inverse(u) = inf{x : G(x) >= u},    with inf of the empty set = +inf,

which forces ``inverse(0) = -inf`` for every cdf, because every ``x``
satisfies ``G(x) >= 0``.  On ``(0, 1]`` it is characterized by the Galois
inequality ``inverse(u) <= x  iff  u <= G(x)``.

Empirical cdfs keep their support as sorted unique points with positive
weights summing to one; tied sample values are merged and their weights
added, so evaluation and inversion reduce to binary searches against a
cumulative weight table whose entries are exact single-rounding ratios.
"""

from __future__ import annotations

import numpy as np

__all__ = ["EmpiricalCdf", "ContinuousCdf"]


def _as_float_array(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise ValueError(f"{name} must not contain NaN")
    return arr


def _scalar_or_array(out, arr):
    return out if arr.ndim else float(out)


class EmpiricalCdf:
    """Weighted empirical cdf with merged ties.

    Parameters
    ----------
    points : array_like
        One-dimensional finite sample values.  Duplicates are merged and
        their weights summed.
    weights : array_like, optional
        Positive weights, one per point, normalized to sum to one.
        Uniform weights by default.

    Notes
    -----
    With uniform weights the cumulative table holds ``count / n`` computed
    as a single float division per entry, never an accumulated sum, so a
    lattice probability ``k/n`` compares exactly against the same ratio
    computed elsewhere.
    """

    kind = "empirical"

    def __init__(self, points, weights=None):
        pts = np.asarray(points, dtype=float).ravel()
        if pts.size == 0:
            raise ValueError("points must be nonempty")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        order = np.argsort(pts, kind="stable")
        pts = pts[order]
        keep = np.empty(pts.size, dtype=bool)
        keep[0] = True
        keep[1:] = pts[1:] > pts[:-1]
        group = np.cumsum(keep) - 1
        if weights is None:
            counts = np.zeros(int(group[-1]) + 1)
            np.add.at(counts, group, 1.0)
            total = float(pts.size)
            self.weights = counts / total
            self._cum = np.cumsum(counts) / total
        else:
            w = np.asarray(weights, dtype=float).ravel()
            if w.shape != (pts.size,):
                raise ValueError("weights must match points in length")
            if not np.all(np.isfinite(w)) or not np.all(w > 0.0):
                raise ValueError("weights must be finite and positive")
            w = w[order]
            merged = np.zeros(int(group[-1]) + 1)
            np.add.at(merged, group, w)
            cum = np.cumsum(merged)
            total = cum[-1]
            self.weights = merged / total
            self._cum = cum / total
        self.points = pts[keep]
        self._cum[-1] = 1.0

    @property
    def support_size(self):
        return self.points.size

    def eval(self, x):
        """Right-continuous value G(x) = total weight of points <= x."""
        arr = _as_float_array(x, "x")
        idx = np.searchsorted(self.points, arr, side="right")
        out = np.where(idx > 0, self._cum[np.maximum(idx, 1) - 1], 0.0)
        return _scalar_or_array(out, arr)

    def left_limit(self, x):
        """Left limit G(x-) = total weight of points strictly below x."""
        arr = _as_float_array(x, "x")
        idx = np.searchsorted(self.points, arr, side="left")
        out = np.where(idx > 0, self._cum[np.maximum(idx, 1) - 1], 0.0)
        return _scalar_or_array(out, arr)

    def inverse(self, u):
        """Left-continuous generalized inverse, smallest point with G >= u."""
        arr = _as_float_array(u, "u")
        if np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("u must lie in [0, 1]")
        idx = np.searchsorted(self._cum, arr, side="left")
        out = np.where(arr > 0.0, self.points[np.minimum(idx, self.points.size - 1)], -np.inf)
        return _scalar_or_array(out, arr)


class ContinuousCdf:
    """Cdf handle backed by a continuous parametric margin family.

    The ``kind`` tag records where the parameters came from: ``"known"``
    when the caller fixed them up front and ``"parametric"`` when they were
    estimated from data.  Evaluation is identical either way, and the left
    limit equals the value because the family is continuous.
    """

    def __init__(self, family, kind="known"):
        if kind not in ("known", "parametric"):
            raise ValueError(f"unsupported kind {kind!r}")
        self.family = family
        self.kind = kind

    def eval(self, x):
        return self.family.cdf(x)

    def left_limit(self, x):
        return self.family.cdf(x)

    def inverse(self, u):
        return self.family.quantile(u)

    def __repr__(self):
        return f"ContinuousCdf({self.family!r}, kind={self.kind!r})"
