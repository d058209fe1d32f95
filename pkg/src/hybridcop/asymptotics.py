"""Limiting covariances of the hybrid copula process.

The normalized process converges to  alpha(u) - sum_j dC_j(u) beta_j(u_j),
where alpha is the weak limit attached to the joint cdf estimator and
beta_j the one attached to margin j.  A ``SchemeSpec`` names the
estimation scheme (which joint estimator, which margin estimator per
coordinate, observation probabilities for missing data, and the true
copula), and ``LimitCovariance`` turns it into evaluable covariance
kernels plus the pointwise variance of the limit.

Closed forms, with C the true copula and p_X, p_Y, p_XY the probabilities
of observing the first coordinate, the second, and both:

* joint, empirical:        Cov(alpha(u), alpha(v)) = C(u ^ v) - C(u)C(v)
* joint, complete-case:    the same divided by p_XY
* margin, empirical:       Cov(beta_j(s), beta_j(t)) = s ^ t - s t
* margin, available-case:  the same divided by the column's probability
* margin, known:           identically zero
* margin, parametric MLE:  grad_F(q_s)' E[psi psi'] grad_F(q_t)
* cross alpha/beta_j:      (C(u ^_j s) - C(u) s) / p_column_j
* cross beta_j/beta_k:     C_jk(s, t) - s t, scaled by p_XY/(p_X p_Y)
                           in the available-case scheme

Cross terms involving a parametric margin have no closed form here; they
are computed by seeded Monte Carlo integration over draws from the scheme,
with the standard error of the integration available on request.  Gram
matrices for schemes with a parametric margin are assembled as the sample
covariance of all influence terms over one shared set of draws, which
keeps them positive semidefinite by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .copulas import Uniform01

__all__ = [
    "MarginScheme",
    "SchemeSpec",
    "LimitCovariance",
    "mcar_cell_probabilities",
    "MARGIN_SCHEME_KINDS",
    "JOINT_SCHEME_KINDS",
]

MARGIN_SCHEME_KINDS = ("empirical", "available_case", "known", "parametric")
JOINT_SCHEME_KINDS = ("empirical", "complete_case")


@dataclass(frozen=True)
class MarginScheme:
    """Estimation scheme for one margin.

    ``family`` is the true margin family.  It is required for the known
    and parametric kinds; for the rank-based kinds it only matters to the
    simulation harness and defaults to Uniform(0,1) there.
    """

    kind: str
    family: object | None = None

    def __post_init__(self):
        if self.kind not in MARGIN_SCHEME_KINDS:
            raise ValueError(f"unknown margin scheme kind {self.kind!r}")
        if self.kind in ("known", "parametric") and self.family is None:
            raise ValueError(f"margin scheme {self.kind!r} requires a family")
        if self.kind == "parametric" and getattr(self.family, "n_params", 0) < 1:
            raise ValueError("parametric margin scheme needs a family with parameters")


def mcar_cell_probabilities(p_x, p_y, p_xy):
    """Cell probabilities (both, first only, second only, neither)."""
    cells = np.array([p_xy, p_x - p_xy, p_y - p_xy, 1.0 - p_x - p_y + p_xy])
    return np.maximum(cells, 0.0)


@dataclass(frozen=True)
class SchemeSpec:
    """Complete description of one estimation scheme.

    Parameters
    ----------
    copula : copula model
        The true copula.
    joint : str
        ``"empirical"`` or ``"complete_case"``.
    margins : tuple of MarginScheme
        One scheme per coordinate; all empirical by default.
    p_x, p_y, p_xy : float
        Observation probabilities for the bivariate missing-completely-
        at-random setting: first coordinate, second coordinate, both.
        All equal to one means fully observed data.
    """

    copula: object
    joint: str = "empirical"
    margins: tuple = field(default=None)
    p_x: float = 1.0
    p_y: float = 1.0
    p_xy: float = 1.0

    def __post_init__(self):
        if self.joint not in JOINT_SCHEME_KINDS:
            raise ValueError(f"unknown joint scheme {self.joint!r}")
        dim = self.copula.dim
        margins = self.margins
        if margins is None:
            margins = tuple(MarginScheme("empirical") for _ in range(dim))
        else:
            margins = tuple(
                m if isinstance(m, MarginScheme) else MarginScheme(m) for m in margins
            )
        if len(margins) != dim:
            raise ValueError("need one margin scheme per copula coordinate")
        object.__setattr__(self, "margins", margins)

        probs = (self.p_x, self.p_y, self.p_xy)
        if any(not np.isfinite(p) for p in probs):
            raise ValueError("observation probabilities must be finite")
        if self.joint == "empirical":
            if probs != (1.0, 1.0, 1.0):
                raise ValueError(
                    "the empirical joint scheme assumes fully observed data"
                )
            bad = [m.kind for m in margins if m.kind == "available_case"]
            if bad:
                raise ValueError(
                    "available-case margins pair with the complete-case joint scheme"
                )
        else:
            if dim != 2:
                raise ValueError("the complete-case scheme is bivariate")
            if not (0.0 < self.p_xy <= min(self.p_x, self.p_y) <= 1.0):
                raise ValueError("need 0 < p_xy <= min(p_x, p_y) <= 1")
            if self.p_xy < self.p_x + self.p_y - 1.0 - 1e-15:
                raise ValueError("p_xy below its Frechet lower bound p_x + p_y - 1")
            allowed = ("available_case", "known")
            bad = [m.kind for m in margins if m.kind not in allowed]
            if bad:
                raise ValueError(
                    "the complete-case joint pairs with available-case or known "
                    f"margins, got {bad}"
                )

    @property
    def dim(self):
        return self.copula.dim

    @property
    def fully_observed(self):
        return (self.p_x, self.p_y, self.p_xy) == (1.0, 1.0, 1.0)

    @property
    def has_parametric_margin(self):
        return any(m.kind == "parametric" for m in self.margins)

    def true_margin(self, j):
        fam = self.margins[j].family
        return Uniform01() if fam is None else fam

    def margin_probability(self, j):
        """Probability of observing an entry of column j."""
        if self.joint == "empirical":
            return 1.0
        return self.p_x if j == 0 else self.p_y

    def describe(self):
        """Plain-data summary used in reports."""
        cop = self.copula
        out = {
            "copula": type(cop).__name__.lower(),
            "dim": self.dim,
            "joint": self.joint,
            "margins": [
                {
                    "kind": m.kind,
                    "family": None
                    if m.family is None
                    else type(m.family).__name__.lower(),
                    "params": None if m.family is None else list(m.family.params()),
                }
                for m in self.margins
            ],
        }
        if hasattr(cop, "theta"):
            out["theta"] = cop.theta
        if not self.fully_observed:
            out["p_x"], out["p_y"], out["p_xy"] = self.p_x, self.p_y, self.p_xy
        return out


class LimitCovariance:
    """Covariance kernels of the limiting process for one scheme.

    Parameters
    ----------
    scheme : SchemeSpec
        The estimation scheme.
    mc_draws : int
        Number of draws for Monte Carlo integrated cross terms.
    mc_seed : int
        Seed of the shared draw; fixed so results are reproducible.
    """

    def __init__(self, scheme, mc_draws=1_000_000, mc_seed=1729):
        self.scheme = scheme
        self.mc_draws = int(mc_draws)
        self.mc_seed = int(mc_seed)
        if self.mc_draws < 2:
            raise ValueError("mc_draws must be at least 2")
        self._uniforms = None
        self._mask = None

    # -- shared Monte Carlo draw ------------------------------------------

    def _draws(self):
        if self._uniforms is None:
            rng = np.random.default_rng(np.random.SeedSequence([self.mc_seed]))
            self._uniforms = self.scheme.copula.sample(self.mc_draws, rng)
            if self.scheme.fully_observed:
                if self.scheme.joint == "complete_case":
                    self._mask = np.ones((self.mc_draws, self.scheme.dim), dtype=bool)
            else:
                cells = mcar_cell_probabilities(
                    self.scheme.p_x, self.scheme.p_y, self.scheme.p_xy
                )
                draw = np.searchsorted(np.cumsum(cells), rng.random(self.mc_draws))
                self._mask = np.column_stack([draw != 2, draw != 1]) & (
                    draw[:, None] < 3
                )
        return self._uniforms, self._mask

    def _influence_alpha(self, u):
        """Influence terms of the joint estimator at u, one per draw."""
        uni, mask = self._draws()
        ind = np.all(uni <= np.asarray(u, dtype=float), axis=1).astype(float)
        c_u = float(self.scheme.copula.cdf(u))
        if self.scheme.joint == "empirical":
            return ind - c_u
        both = np.all(mask, axis=1).astype(float)
        return (ind * both - c_u * both) / self.scheme.p_xy

    def _influence_beta(self, j, s):
        """Influence terms of margin estimator j at level s, one per draw."""
        uni, mask = self._draws()
        kind = self.scheme.margins[j].kind
        if kind == "known":
            return np.zeros(self.mc_draws)
        ind = (uni[:, j] <= s).astype(float)
        if kind == "empirical":
            return ind - s
        if kind == "available_case":
            obs = mask[:, j].astype(float)
            return (ind * obs - s * obs) / self.scheme.margin_probability(j)
        family = self.scheme.margins[j].family
        x = family.quantile(np.clip(uni[:, j], np.finfo(float).tiny, 1.0))
        grad = family.cdf_gradient(family.quantile(float(s)))
        return family.influence(x) @ grad

    # -- kernels -----------------------------------------------------------

    def cov_alpha(self, u, v):
        """Covariance of the joint-estimator limit at points u and v."""
        cop = self.scheme.copula
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        value = float(cop.cdf(np.minimum(u, v)) - cop.cdf(u) * cop.cdf(v))
        if self.scheme.joint == "complete_case":
            value /= self.scheme.p_xy
        return value

    def cov_beta(self, j, s, t):
        """Covariance of the margin-j limit at levels s and t."""
        kind = self.scheme.margins[j].kind
        if kind == "known":
            return 0.0
        if kind == "empirical":
            return min(s, t) - s * t
        if kind == "available_case":
            return (min(s, t) - s * t) / self.scheme.margin_probability(j)
        family = self.scheme.margins[j].family
        gs = family.cdf_gradient(family.quantile(float(s)))
        gt = family.cdf_gradient(family.quantile(float(t)))
        return float(gs @ family.influence_outer() @ gt)

    def cov_beta_beta(self, j, k, s, t, with_error=False):
        """Cross covariance between the margin-j and margin-k limits."""
        if j == k:
            value = self.cov_beta(j, s, t)
            return (value, 0.0) if with_error else value
        kinds = (self.scheme.margins[j].kind, self.scheme.margins[k].kind)
        if "known" in kinds:
            return (0.0, 0.0) if with_error else 0.0
        if "parametric" not in kinds:
            point = np.ones(self.scheme.dim)
            point[j] = s
            point[k] = t
            value = float(self.scheme.copula.cdf(point)) - s * t
            if kinds == ("available_case", "available_case"):
                value *= self.scheme.p_xy / (
                    self.scheme.margin_probability(j) * self.scheme.margin_probability(k)
                )
            return (value, 0.0) if with_error else value
        value, err = self._mc_cov(self._influence_beta(j, s), self._influence_beta(k, t))
        return (value, err) if with_error else value

    def cov_alpha_beta(self, j, u, s, with_error=False):
        """Cross covariance between the joint limit at u and margin j at s."""
        kind = self.scheme.margins[j].kind
        if kind == "known":
            return (0.0, 0.0) if with_error else 0.0
        if kind in ("empirical", "available_case"):
            cop = self.scheme.copula
            u = np.asarray(u, dtype=float)
            capped = u.copy()
            capped[j] = min(float(u[j]), float(s))
            value = float(cop.cdf(capped) - cop.cdf(u) * s)
            value /= self.scheme.margin_probability(j)
            return (value, 0.0) if with_error else value
        value, err = self._mc_cov(self._influence_alpha(u), self._influence_beta(j, s))
        return (value, err) if with_error else value

    @staticmethod
    def _mc_cov(f, g):
        prod = f * g
        value = float(np.mean(prod))
        err = float(np.std(prod, ddof=1) / np.sqrt(prod.size))
        return value, err

    # -- assembled quantities ----------------------------------------------

    def limit_variance(self, u):
        """Pointwise variance of the limit process at an interior point u."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.scheme.dim,):
            raise ValueError(f"u must be a single point of length {self.scheme.dim}")
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            raise ValueError("limit_variance is defined for interior points only")
        cop = self.scheme.copula
        active = [j for j in range(self.scheme.dim) if self.scheme.margins[j].kind != "known"]
        weights = {j: -float(cop.partial(j, u)) for j in active}
        var = self.cov_alpha(u, u)
        for j in active:
            var += 2.0 * weights[j] * self.cov_alpha_beta(j, u, float(u[j]))
            var += weights[j] ** 2 * self.cov_beta(j, float(u[j]), float(u[j]))
        for a, j in enumerate(active):
            for k in active[a + 1 :]:
                var += (
                    2.0
                    * weights[j]
                    * weights[k]
                    * self.cov_beta_beta(j, k, float(u[j]), float(u[k]))
                )
        return var

    def gram(self, u_points, margin_grid, mode="auto"):
        """Covariance matrix of (alpha(u_i))_i plus (beta_j(s))_{j,s}.

        ``margin_grid`` is applied to every margin whose scheme is not
        known.  With ``mode="auto"`` the matrix comes from the closed-form
        kernels when possible and from the shared Monte Carlo draw when a
        parametric margin makes that necessary; ``"mc"`` forces the draw.
        """
        u_points = np.atleast_2d(np.asarray(u_points, dtype=float))
        margin_grid = np.asarray(margin_grid, dtype=float).ravel()
        if mode not in ("auto", "closed", "mc"):
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "auto":
            mode = "mc" if self.scheme.has_parametric_margin else "closed"
        if mode == "closed" and self.scheme.has_parametric_margin:
            raise ValueError("closed-form gram unavailable with parametric margins")
        active = [j for j in range(self.scheme.dim) if self.scheme.margins[j].kind != "known"]
        labels = [("alpha", tuple(pt)) for pt in u_points]
        labels += [("beta", j, float(s)) for j in active for s in margin_grid]

        if mode == "mc":
            rows = [self._influence_alpha(pt) for pt in u_points]
            rows += [
                self._influence_beta(j, float(s)) for j in active for s in margin_grid
            ]
            return np.cov(np.asarray(rows)), labels

        size = len(labels)
        out = np.empty((size, size))
        n_u = len(u_points)
        for a in range(size):
            for b in range(a, size):
                la, lb = labels[a], labels[b]
                if a < n_u and b < n_u:
                    val = self.cov_alpha(np.array(la[1]), np.array(lb[1]))
                elif a < n_u:
                    val = self.cov_alpha_beta(lb[1], np.array(la[1]), lb[2])
                else:
                    val = self.cov_beta_beta(la[1], lb[1], la[2], lb[2])
                out[a, b] = out[b, a] = val
        return out, labels
