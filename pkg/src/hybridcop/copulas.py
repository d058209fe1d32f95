"""Copula models and parametric margin families.

Copulas: the independence copula in any dimension, plus the bivariate
Clayton and Farlie-Gumbel-Morgenstern (FGM) families.  Each model exposes
the cdf, the partial derivative in one coordinate, an exact
conditional-inversion sampler returning uniform-scale observations, and
its population Kendall tau.

Partial derivatives are defined only for 0 < u_j < 1 in the differentiated
coordinate; evaluation on that boundary raises, and callers that need the
convention "drop the term when u_j is 0 or 1" apply the indicator
themselves.  The remaining coordinates may sit anywhere in [0, 1].

Margins: Uniform(0,1), Normal(mu, sigma), Exponential(rate).  Normal and
Exponential carry the gradient of the cdf in their parameters and the
influence function of the maximum-likelihood estimator, which is what the
limiting covariance of a plug-in estimated margin is built from.  The
quantile maps follow the generalized-inverse conventions of
:mod:`hybridcop.distfun`; in particular ``quantile(0) = -inf`` for every
family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "Uniform01",
    "Normal",
    "Exponential",
    "Independence",
    "Clayton",
    "Fgm",
    "margin_family",
    "copula_model",
    "MARGIN_NAMES",
    "COPULA_NAMES",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _check_unit(u, name="u"):
    arr = np.asarray(u, dtype=float)
    if np.any(np.isnan(arr)):
        raise ValueError(f"{name} must not contain NaN")
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")
    return arr


def _check_points(u, dim):
    """Validate copula arguments of shape (..., dim) with entries in [0, 1]."""
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != dim:
        raise ValueError(f"expected points with last axis of length {dim}")
    return _check_unit(arr)


def _open_uniforms(rng, size):
    """Uniform draws restricted to (0, 1) so quantile transforms stay finite."""
    u = rng.random(size)
    return np.maximum(u, np.finfo(float).tiny)


# ---------------------------------------------------------------------------
# margin families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Uniform01:
    """Standard uniform margin, the identity on [0, 1] with no parameters."""

    n_params = 0

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        if np.any(np.isnan(arr)):
            raise ValueError("x must not contain NaN")
        return np.clip(arr, 0.0, 1.0)

    def quantile(self, u):
        arr = _check_unit(u)
        return np.where(arr > 0.0, arr, -np.inf)

    def cdf_gradient(self, x):
        arr = np.asarray(x, dtype=float)
        return np.empty(arr.shape + (0,))

    def influence(self, x):
        arr = np.asarray(x, dtype=float)
        return np.empty(arr.shape + (0,))

    def influence_outer(self):
        return np.empty((0, 0))

    @classmethod
    def fit(cls, values):
        raise ValueError("the uniform margin has no free parameters to fit")

    def params(self):
        return ()


@dataclass(frozen=True)
class Normal:
    """Normal margin with mean ``mu`` and standard deviation ``sigma``."""

    mu: float = 0.0
    sigma: float = 1.0

    n_params = 2

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.sigma)):
            raise ValueError("mu and sigma must be finite")
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")

    def _z(self, x):
        arr = np.asarray(x, dtype=float)
        if np.any(np.isnan(arr)):
            raise ValueError("x must not contain NaN")
        return (arr - self.mu) / self.sigma

    def cdf(self, x):
        return special.ndtr(self._z(x))

    def quantile(self, u):
        arr = _check_unit(u)
        return self.mu + self.sigma * special.ndtri(arr)

    def cdf_gradient(self, x):
        """d/d(mu, sigma) of the cdf at x, zero at the infinite endpoints."""
        z = self._z(x)
        phi = np.exp(-0.5 * np.square(np.where(np.isinf(z), np.inf, z))) / _SQRT_2PI
        zphi = np.where(np.isinf(z), 0.0, z) * phi
        return np.stack([-phi / self.sigma, -zphi / self.sigma], axis=-1)

    def influence(self, x):
        """MLE influence function, components for mu and sigma."""
        arr = np.asarray(x, dtype=float)
        centered = arr - self.mu
        comp_sigma = (np.square(centered) - self.sigma**2) / (2.0 * self.sigma)
        return np.stack([centered, comp_sigma], axis=-1)

    def influence_outer(self):
        """Covariance matrix of the influence function under the model."""
        return np.diag([self.sigma**2, self.sigma**2 / 2.0])

    @classmethod
    def fit(cls, values):
        vals = np.asarray(values, dtype=float)
        if vals.size < 2:
            raise ValueError("normal fit needs at least two observations")
        mu = float(np.mean(vals))
        sigma = float(np.sqrt(np.mean(np.square(vals - mu))))
        if sigma <= 0.0:
            raise ValueError("normal fit is degenerate: zero sample spread")
        return cls(mu, sigma)

    def params(self):
        return (self.mu, self.sigma)


@dataclass(frozen=True)
class Exponential:
    """Exponential margin with rate ``rate``, support (0, inf)."""

    rate: float = 1.0

    n_params = 1

    def __post_init__(self):
        if not np.isfinite(self.rate) or self.rate <= 0.0:
            raise ValueError("rate must be positive and finite")

    def cdf(self, x):
        arr = np.asarray(x, dtype=float)
        if np.any(np.isnan(arr)):
            raise ValueError("x must not contain NaN")
        with np.errstate(invalid="ignore"):
            val = -np.expm1(-self.rate * arr)
        return np.where(arr > 0.0, np.where(np.isposinf(arr), 1.0, val), 0.0)

    def quantile(self, u):
        arr = _check_unit(u)
        with np.errstate(divide="ignore"):
            val = -np.log1p(-arr) / self.rate
        return np.where(arr > 0.0, val, -np.inf)

    def cdf_gradient(self, x):
        """d/d(rate) of the cdf at x, zero off the support and at +inf."""
        arr = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore"):
            val = arr * np.exp(-self.rate * arr)
        grad = np.where((arr > 0.0) & np.isfinite(arr), val, 0.0)
        return grad[..., np.newaxis]

    def influence(self, x):
        arr = np.asarray(x, dtype=float)
        return (self.rate - self.rate**2 * arr)[..., np.newaxis]

    def influence_outer(self):
        return np.array([[self.rate**2]])

    @classmethod
    def fit(cls, values):
        vals = np.asarray(values, dtype=float)
        if vals.size < 1:
            raise ValueError("exponential fit needs at least one observation")
        if np.any(vals <= 0.0):
            raise ValueError("exponential fit requires strictly positive data")
        return cls(1.0 / float(np.mean(vals)))

    def params(self):
        return (self.rate,)


# ---------------------------------------------------------------------------
# copula models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Independence:
    """Product copula in ``dim`` dimensions."""

    dim: int = 2

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError("dim must be a positive integer")

    def cdf(self, u):
        arr = _check_points(u, self.dim)
        return np.prod(arr, axis=-1)

    def partial(self, j, u):
        arr = _check_points(u, self.dim)
        _check_interior(arr, j, self.dim)
        mask = np.ones(self.dim, dtype=bool)
        mask[j] = False
        return np.prod(arr[..., mask], axis=-1)

    def sample(self, n, rng):
        return _open_uniforms(rng, (n, self.dim))

    def kendall_tau(self):
        return 0.0


@dataclass(frozen=True)
class Clayton:
    """Bivariate Clayton copula with parameter ``theta > 0``."""

    theta: float

    dim = 2

    def __post_init__(self):
        if not np.isfinite(self.theta) or self.theta <= 0.0:
            raise ValueError("theta must be positive and finite")

    def cdf(self, u):
        arr = _check_points(u, 2)
        th = self.theta
        with np.errstate(divide="ignore"):
            t = arr[..., 0] ** (-th) + arr[..., 1] ** (-th) - 1.0
        return t ** (-1.0 / th)

    def partial(self, j, u):
        arr = _check_points(u, 2)
        _check_interior(arr, j, 2)
        th = self.theta
        uj = arr[..., j]
        uk = arr[..., 1 - j]
        with np.errstate(divide="ignore"):
            t = uj ** (-th) + uk ** (-th) - 1.0
        return uj ** (-th - 1.0) * t ** (-1.0 / th - 1.0)

    def sample(self, n, rng):
        th = self.theta
        u = _open_uniforms(rng, n)
        w = _open_uniforms(rng, n)
        v = ((w ** (-th / (1.0 + th)) - 1.0) * u ** (-th) + 1.0) ** (-1.0 / th)
        return np.column_stack([u, v])

    def kendall_tau(self):
        return self.theta / (self.theta + 2.0)


@dataclass(frozen=True)
class Fgm:
    """Bivariate Farlie-Gumbel-Morgenstern copula, ``-1 <= theta <= 1``."""

    theta: float

    dim = 2

    def __post_init__(self):
        if not np.isfinite(self.theta) or abs(self.theta) > 1.0:
            raise ValueError("theta must lie in [-1, 1]")

    def cdf(self, u):
        arr = _check_points(u, 2)
        x = arr[..., 0]
        y = arr[..., 1]
        return x * y * (1.0 + self.theta * (1.0 - x) * (1.0 - y))

    def partial(self, j, u):
        arr = _check_points(u, 2)
        _check_interior(arr, j, 2)
        uj = arr[..., j]
        uk = arr[..., 1 - j]
        return uk * (1.0 + self.theta * (1.0 - 2.0 * uj) * (1.0 - uk))

    def sample(self, n, rng):
        u = _open_uniforms(rng, n)
        w = _open_uniforms(rng, n)
        a = self.theta * (1.0 - 2.0 * u)
        disc = np.square(1.0 + a) - 4.0 * a * w
        v = 2.0 * w / (1.0 + a + np.sqrt(disc))
        return np.column_stack([u, v])

    def kendall_tau(self):
        return 2.0 * self.theta / 9.0


def _check_interior(arr, j, dim):
    if not 0 <= j < dim:
        raise ValueError(f"coordinate index {j} out of range for dimension {dim}")
    uj = arr[..., j]
    if np.any(uj <= 0.0) or np.any(uj >= 1.0):
        raise ValueError(
            f"partial derivative in coordinate {j} needs 0 < u_{j} < 1 strictly"
        )


# ---------------------------------------------------------------------------
# name-based factories used by the command line layer
# ---------------------------------------------------------------------------

MARGIN_NAMES = ("uniform01", "normal", "exponential")
COPULA_NAMES = ("independence", "clayton", "fgm")


def margin_family(name, params=()):
    """Build a margin family from a name and a parameter tuple."""
    params = tuple(float(p) for p in params)
    if name == "uniform01":
        if params:
            raise ValueError("uniform01 takes no parameters")
        return Uniform01()
    if name == "normal":
        if len(params) != 2:
            raise ValueError("normal takes parameters mu,sigma")
        return Normal(*params)
    if name == "exponential":
        if len(params) != 1:
            raise ValueError("exponential takes a single rate parameter")
        return Exponential(*params)
    raise ValueError(f"unknown margin family {name!r}")


def copula_model(name, theta=None, dim=2):
    """Build a copula model from a name, a parameter and a dimension."""
    if name == "independence":
        if theta is not None:
            raise ValueError("the independence copula takes no parameter")
        return Independence(dim=dim)
    if name == "clayton":
        if theta is None:
            raise ValueError("clayton requires a parameter theta")
        if dim != 2:
            raise ValueError("clayton is implemented for dimension 2 only")
        return Clayton(float(theta))
    if name == "fgm":
        if theta is None:
            raise ValueError("fgm requires a parameter theta")
        if dim != 2:
            raise ValueError("fgm is implemented for dimension 2 only")
        return Fgm(float(theta))
    raise ValueError(f"unknown copula model {name!r}")
