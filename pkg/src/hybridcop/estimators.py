"""Hybrid copula estimation from possibly incomplete data matrices.

The estimator under study composes a joint cdf estimate with the
generalized inverses of separately estimated margin cdfs,

    C_hat(u) = H_hat(G_1^{-1}(u_1), ..., G_p^{-1}(u_p)),

where the margins fed into the inverses do not have to be the margins of
the joint estimate.  That freedom is the whole point: the joint part may
be a complete-case empirical cdf while each margin uses all entries
observed in its own column, or the margins may be parametric fits or even
known exactly.

Rates are always expressed in the total row count n of the data matrix,
also when the joint estimate retains only the complete rows; the retained
fraction then shows up in the limiting covariance rather than in the
normalization.

``representation_remainder`` evaluates the quantity that the asymptotic
linearization says is negligible,

    rate * (C_hat(u) - C(u))
      - rate * (H_hat(F^{-1}(u)) - C(u))
      + sum_j dC_j(u) * rate * (G_hat_j(F_j^{-1}(u_j)) - u_j) * 1{0 < u_j < 1},

with F the true margins and C the true copula.  Its supremum over a grid
should shrink as n grows; the simulation harness tracks exactly that.
"""

from __future__ import annotations

import numpy as np

from .distfun import ContinuousCdf, EmpiricalCdf

__all__ = [
    "EstimationError",
    "DataMatrix",
    "EmpiricalJointCdf",
    "HybridEstimator",
    "fit_empirical_joint",
    "fit_complete_case_joint",
    "fit_margin_cdf",
    "fit_parametric_margin",
    "known_margin",
    "process_eval",
    "representation_remainder",
]


class EstimationError(ValueError):
    """Raised when a data matrix violates the contract of an estimator."""


class DataMatrix:
    """An n-by-p data matrix with an observation mask.

    Parameters
    ----------
    values : array_like
        Numeric matrix of shape (n, p).  Entries flagged unobserved may
        hold anything, including NaN; observed entries must be finite.
    observed : array_like of bool, optional
        Mask of shape (n, p), True where the entry was observed.  All
        entries are observed by default.
    """

    def __init__(self, values, observed=None):
        vals = np.array(values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] < 1 or vals.shape[1] < 1:
            raise EstimationError("values must be a matrix with n >= 1 and p >= 1")
        if observed is None:
            mask = np.ones(vals.shape, dtype=bool)
        else:
            mask = np.array(observed, dtype=bool)
            if mask.shape != vals.shape:
                raise EstimationError("observed mask must match the value matrix")
        if not np.all(np.isfinite(vals[mask])):
            raise EstimationError("observed entries must be finite")
        vals.setflags(write=False)
        mask.setflags(write=False)
        self.values = vals
        self.observed = mask

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def dim(self):
        return self.values.shape[1]

    @property
    def complete_mask(self):
        return np.all(self.observed, axis=1)

    @property
    def all_observed(self):
        return bool(np.all(self.observed))

    def column_values(self, j):
        """Entries observed in column j, in row order."""
        if not 0 <= j < self.dim:
            raise EstimationError(f"column index {j} out of range")
        return self.values[self.observed[:, j], j]


class EmpiricalJointCdf:
    """Empirical joint cdf of a set of retained rows.

    ``kind`` is ``"empirical"`` when every row of the data matrix was
    retained and ``"complete_case"`` when only fully observed rows were.
    """

    def __init__(self, rows, kind):
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise EstimationError("need at least one retained row")
        if kind not in ("empirical", "complete_case"):
            raise ValueError(f"unsupported kind {kind!r}")
        self.rows = rows
        self.kind = kind

    @property
    def n_used(self):
        return self.rows.shape[0]

    @property
    def dim(self):
        return self.rows.shape[1]

    def eval(self, x):
        """Fraction of retained rows componentwise <= x, exact at +-inf."""
        arr = np.asarray(x, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != self.dim:
            raise ValueError(f"expected points with last axis of length {self.dim}")
        if np.any(np.isnan(arr)):
            raise ValueError("x must not contain NaN")
        below = np.all(self.rows <= arr[..., np.newaxis, :], axis=-1)
        count = np.count_nonzero(below, axis=-1)
        out = count / self.n_used
        return out if arr.ndim > 1 else float(out)


def fit_empirical_joint(data):
    """Plain empirical joint cdf; requires a fully observed matrix."""
    if not data.all_observed:
        raise EstimationError(
            "missing entries present; use the complete-case joint estimator"
        )
    return EmpiricalJointCdf(data.values, kind="empirical")


def fit_complete_case_joint(data):
    """Empirical joint cdf of the fully observed rows."""
    keep = data.complete_mask
    if not np.any(keep):
        raise EstimationError("no complete rows to estimate the joint cdf")
    return EmpiricalJointCdf(data.values[keep], kind="complete_case")


def fit_margin_cdf(data, j):
    """Empirical margin cdf from the entries observed in column j."""
    vals = data.column_values(j)
    if vals.size == 0:
        raise EstimationError(f"column {j} has no observed entries")
    return EmpiricalCdf(vals)


_PARAMETRIC_FAMILIES = {"normal", "exponential"}


def fit_parametric_margin(data, j, family):
    """Maximum-likelihood margin fit for column j.

    ``family`` is either a family name (``"normal"`` or ``"exponential"``)
    or a class with a ``fit`` classmethod.
    """
    if isinstance(family, str):
        if family not in _PARAMETRIC_FAMILIES:
            raise EstimationError(f"no parametric margin family named {family!r}")
        from . import copulas

        family = {"normal": copulas.Normal, "exponential": copulas.Exponential}[family]
    vals = data.column_values(j)
    try:
        fitted = family.fit(vals)
    except ValueError as err:
        raise EstimationError(str(err)) from err
    return ContinuousCdf(fitted, kind="parametric")


def known_margin(family):
    """Wrap a fully specified margin family as a known cdf handle."""
    return ContinuousCdf(family, kind="known")


class HybridEstimator:
    """Joint cdf estimate composed with inverted margin estimates."""

    def __init__(self, joint, margins):
        margins = tuple(margins)
        if len(margins) != joint.dim:
            raise ValueError("need one margin handle per joint coordinate")
        self.joint = joint
        self.margins = margins

    @property
    def dim(self):
        return self.joint.dim

    def cdf(self, u):
        """Evaluate the hybrid copula estimate at points u in [0, 1]^p.

        Accepts a single point of shape (p,) or a batch of shape (..., p).
        Coordinates equal to 0 or 1 are honored exactly: a zero coordinate
        inverts to -inf and forces the value 0, and u = (1, ..., 1) gives 1.
        """
        arr = np.asarray(u, dtype=float)
        if arr.ndim == 0 or arr.shape[-1] != self.dim:
            raise ValueError(f"expected points with last axis of length {self.dim}")
        if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("u must lie in [0, 1]^p")
        x = np.empty_like(arr)
        for j, margin in enumerate(self.margins):
            x[..., j] = margin.inverse(arr[..., j])
        return self.joint.eval(x)


def process_eval(estimator, truth, rate, grid):
    """Normalized deviation rate * (C_hat(u) - C(u)) over a grid of points."""
    grid = np.asarray(grid, dtype=float)
    return rate * (estimator.cdf(grid) - truth.cdf(grid))


def representation_remainder(estimator, truth, true_margins, rate, grid):
    """Remainder of the asymptotic linearization, evaluated per grid point.

    Parameters
    ----------
    estimator : HybridEstimator
        Fitted hybrid estimator.
    truth : copula model
        The copula the data was generated from.
    true_margins : sequence
        True margin family per coordinate, used for the exact quantiles.
    rate : float
        Normalization, sqrt of the total row count in the intended use.
    grid : array_like
        Points of shape (..., p) in [0, 1]^p.
    """
    grid = np.asarray(grid, dtype=float)
    squeeze = grid.ndim == 1
    pts = np.atleast_2d(grid)
    p = estimator.dim
    if pts.shape[-1] != p:
        raise ValueError(f"expected points with last axis of length {p}")

    quantiles = np.empty_like(pts)
    for j in range(p):
        quantiles[..., j] = true_margins[j].quantile(pts[..., j])

    c_true = truth.cdf(pts)
    out = rate * (estimator.cdf(pts) - c_true)
    out = out - rate * (estimator.joint.eval(quantiles) - c_true)
    for j in range(p):
        uj = pts[..., j]
        interior = (uj > 0.0) & (uj < 1.0)
        if not np.any(interior):
            continue
        dc = truth.partial(j, pts[interior])
        margin_dev = estimator.margins[j].eval(quantiles[interior, j]) - uj[interior]
        out[interior] += dc * rate * margin_dev
    return out[0] if squeeze else out
