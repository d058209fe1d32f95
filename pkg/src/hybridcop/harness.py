"""Simulation harness for the hybrid copula process.

The harness has two jobs.  First, Monte Carlo experiments: simulate data
from a scheme, fit the hybrid estimator, track the normalized process on a
grid together with the supremum of the linearization remainder, and
compare Monte Carlo variances against the limiting covariance kernels.
Second, deterministic verification: finite-sample inequalities for the
generalized inverse, the paired inversion identity, and difference
quotients for the composition map underlying the delta method.

Reproducibility works by derivation, not by sharing: replication r at
sample size n uses a generator seeded with the entropy triple
(master_seed, n, r), so any replication can be re-run in isolation and
results do not depend on scheduling.  Aggregation reduces arrays indexed
by replication in fixed order, which keeps reports bit-identical across
thread counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import (
    LimitCovariance,
    MarginScheme,
    SchemeSpec,
    mcar_cell_probabilities,
)
from .copulas import Clayton, Fgm, Independence, Normal, Uniform01
from .distfun import EmpiricalCdf
from .estimators import (
    DataMatrix,
    EstimationError,
    HybridEstimator,
    fit_complete_case_joint,
    fit_empirical_joint,
    fit_margin_cdf,
    fit_parametric_margin,
    known_margin,
    process_eval,
    representation_remainder,
)

__all__ = [
    "DEFAULT_AXIS",
    "default_grid",
    "simulate_dataset",
    "fit_scheme",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentError",
    "run_experiment",
    "estimate_covariance",
    "sandwich_check",
    "paired_inversion_stat",
    "paired_inversion_check",
    "Perturbation",
    "builtin_perturbations",
    "hadamard_check",
    "CheckResult",
    "run_check_suites",
]

DEFAULT_AXIS = np.array(
    [0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95]
)


def default_grid(dim):
    """Product lattice over DEFAULT_AXIS in every coordinate, shape (G, dim)."""
    axes = np.meshgrid(*([DEFAULT_AXIS] * dim), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=-1)


def _generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def replication_rng(master_seed, n, r):
    """Generator for replication r at sample size n, derived not shared."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(n), int(r)]))


def simulate_dataset(scheme, n, seed):
    """Draw an n-row data matrix from a scheme, masking entries when asked.

    The copula sample is transformed through the true margin quantiles,
    then an independent missingness pattern is drawn from the two-by-two
    cell table implied by (p_x, p_y, p_xy).  Masked entries are stored as
    NaN so nothing downstream can use them by accident.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _generator(seed)
    uniforms = scheme.copula.sample(int(n), rng)
    values = np.empty_like(uniforms)
    for j in range(scheme.dim):
        values[:, j] = scheme.true_margin(j).quantile(uniforms[:, j])
    if scheme.fully_observed:
        return DataMatrix(values)
    cells = mcar_cell_probabilities(scheme.p_x, scheme.p_y, scheme.p_xy)
    draw = np.searchsorted(np.cumsum(cells), rng.random(int(n)))
    observed = np.column_stack([draw != 2, draw != 1]) & (draw[:, None] < 3)
    values = np.where(observed, values, np.nan)
    return DataMatrix(values, observed)


def fit_scheme(scheme, data):
    """Fit the hybrid estimator that the scheme prescribes."""
    if scheme.joint == "empirical":
        joint = fit_empirical_joint(data)
    else:
        joint = fit_complete_case_joint(data)
    margins = []
    for j, ms in enumerate(scheme.margins):
        if ms.kind in ("empirical", "available_case"):
            margins.append(fit_margin_cdf(data, j))
        elif ms.kind == "known":
            margins.append(known_margin(ms.family))
        else:
            margins.append(fit_parametric_margin(data, j, type(ms.family)))
    return HybridEstimator(joint, margins)


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


class ExperimentError(RuntimeError):
    """Raised when an experiment cannot produce a trustworthy report."""


@dataclass
class ExperimentConfig:
    """Settings of one Monte Carlo experiment."""

    scheme: SchemeSpec
    sample_sizes: tuple
    replications: int
    seed: int = 0
    grid: np.ndarray = None
    threads: int = 1
    mc_draws: int = 1_000_000
    max_skip_fraction: float = 0.01

    def __post_init__(self):
        self.sample_sizes = tuple(int(n) for n in self.sample_sizes)
        if not self.sample_sizes or any(n < 1 for n in self.sample_sizes):
            raise ValueError("sample_sizes must be positive integers")
        if self.replications < 2:
            raise ValueError("need at least two replications")
        if self.grid is None:
            self.grid = default_grid(self.scheme.dim)
        else:
            self.grid = np.atleast_2d(np.asarray(self.grid, dtype=float))
            if self.grid.shape[1] != self.scheme.dim:
                raise ValueError("grid dimension does not match the scheme")
            if np.any(self.grid < 0.0) or np.any(self.grid > 1.0):
                raise ValueError("grid points must lie in [0, 1]^p")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


@dataclass
class SizeResult:
    """Aggregates for one sample size."""

    n: int
    replications: int
    skipped: int
    skip_reasons: list
    process_mean: np.ndarray
    process_variance: np.ndarray
    variance_mc_se: np.ndarray
    limit_variance: np.ndarray
    margin_variance: list
    margin_limit_variance: list
    remainder_median: float
    remainder_q90: float


@dataclass
class ExperimentReport:
    """Everything an experiment measured, plus the theoretical targets."""

    scheme_summary: dict
    seed: int
    grid: np.ndarray
    margin_grids: list
    sizes: list = field(default_factory=list)

    def size_for(self, n):
        for res in self.sizes:
            if res.n == n:
                return res
        raise KeyError(f"no results for sample size {n}")

    def to_dict(self):
        def clean(arr):
            return [None if not np.isfinite(v) else float(v) for v in np.ravel(arr)]

        return {
            "scheme": self.scheme_summary,
            "seed": self.seed,
            "grid": [[float(v) for v in row] for row in self.grid],
            "margin_grids": [[float(v) for v in g] for g in self.margin_grids],
            "sizes": [
                {
                    "n": res.n,
                    "replications": res.replications,
                    "skipped": res.skipped,
                    "skip_reasons": list(res.skip_reasons),
                    "process_mean": clean(res.process_mean),
                    "process_variance": clean(res.process_variance),
                    "variance_mc_se": clean(res.variance_mc_se),
                    "limit_variance": clean(res.limit_variance),
                    "margin_variance": [clean(v) for v in res.margin_variance],
                    "margin_limit_variance": [
                        clean(v) for v in res.margin_limit_variance
                    ],
                    "remainder_median": float(res.remainder_median),
                    "remainder_q90": float(res.remainder_q90),
                }
                for res in self.sizes
            ],
        }


def estimate_covariance(paths):
    """Sample covariance across replications of process values on a grid.

    ``paths`` has one row per replication and one column per grid point.
    """
    arr = np.asarray(paths, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2:
        raise ValueError("paths must be a (replications, points) matrix, R >= 2")
    return np.cov(arr, rowvar=False).reshape(arr.shape[1], arr.shape[1])


def run_experiment(config):
    """Run the Monte Carlo experiment described by ``config``.

    Replications that fail inside an estimator (for example a mask leaving
    no complete row) are recorded and skipped; the run aborts if more than
    ``max_skip_fraction`` of the replications at any sample size skip.
    """
    scheme = config.scheme
    grid = config.grid
    n_points = grid.shape[0]
    interior = np.all((grid > 0.0) & (grid < 1.0), axis=1)
    margin_grids = [np.unique(grid[:, j]) for j in range(scheme.dim)]
    limit = LimitCovariance(scheme, mc_draws=config.mc_draws)

    limit_var = np.full(n_points, np.nan)
    for g in range(n_points):
        if interior[g]:
            limit_var[g] = limit.limit_variance(grid[g])
    margin_limit = [
        np.array([limit.cov_beta(j, s, s) for s in margin_grids[j]])
        for j in range(scheme.dim)
    ]

    report = ExperimentReport(
        scheme_summary=scheme.describe(),
        seed=config.seed,
        grid=grid,
        margin_grids=margin_grids,
    )

    true_margins = [scheme.true_margin(j) for j in range(scheme.dim)]
    margin_quantiles = [
        true_margins[j].quantile(margin_grids[j]) for j in range(scheme.dim)
    ]

    for n in config.sample_sizes:
        rate = math.sqrt(n)
        reps = config.replications
        paths = np.full((reps, n_points), np.nan)
        margin_paths = [
            np.full((reps, len(margin_grids[j])), np.nan) for j in range(scheme.dim)
        ]
        sup_remainder = np.full(reps, np.nan)
        failed = [None] * reps

        def one_replication(r, n=n, rate=rate, paths=paths,
                            margin_paths=margin_paths, sup_remainder=sup_remainder,
                            failed=failed):
            rng = replication_rng(config.seed, n, r)
            try:
                data = simulate_dataset(scheme, n, rng)
                est = fit_scheme(scheme, data)
            except EstimationError as err:
                failed[r] = str(err)
                return
            paths[r] = process_eval(est, scheme.copula, rate, grid)
            for j in range(scheme.dim):
                margin_paths[j][r] = rate * (
                    est.margins[j].eval(margin_quantiles[j]) - margin_grids[j]
                )
            rem = representation_remainder(est, scheme.copula, true_margins, rate, grid)
            sup_remainder[r] = np.max(np.abs(rem))

        if config.threads > 1:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                list(pool.map(one_replication, range(reps)))
        else:
            for r in range(reps):
                one_replication(r)

        used = np.array([msg is None for msg in failed])
        skipped = int(reps - np.count_nonzero(used))
        if skipped > config.max_skip_fraction * reps:
            raise ExperimentError(
                f"{skipped} of {reps} replications failed at n={n}: "
                + "; ".join(sorted({msg for msg in failed if msg})[:3])
            )
        kept = int(np.count_nonzero(used))
        if kept < 2:
            raise ExperimentError(f"fewer than two usable replications at n={n}")

        proc = paths[used]
        mc_var = proc.var(axis=0, ddof=1)
        res = SizeResult(
            n=n,
            replications=kept,
            skipped=skipped,
            skip_reasons=sorted({msg for msg in failed if msg})[:3],
            process_mean=proc.mean(axis=0),
            process_variance=mc_var,
            variance_mc_se=mc_var * math.sqrt(2.0 / (kept - 1)),
            limit_variance=limit_var,
            margin_variance=[mp[used].var(axis=0, ddof=1) for mp in margin_paths],
            margin_limit_variance=margin_limit,
            remainder_median=float(np.median(sup_remainder[used])),
            remainder_q90=float(np.quantile(sup_remainder[used], 0.9)),
        )
        report.sizes.append(res)
    return report


# ---------------------------------------------------------------------------
# deterministic checks
# ---------------------------------------------------------------------------


def sandwich_check(values, truth, u_grid):
    """Worst-case slack of the generalized-inverse sandwich.

    For the empirical cdf F_n of ``values`` and each u in ``u_grid`` inside
    (0, 1], with x = F_n^{-1}(u) and gamma_n = sqrt(n) (F_n - F),

        -gamma_n(x)  <=  sqrt(n) (F(x) - u)  <=  -gamma_n(x-)

    holds exactly in finite samples.  Returns the smallest signed margin by
    which the two inequalities hold; anything at or above roughly -1e-12
    counts as a pass.
    """
    values = np.asarray(values, dtype=float)
    u = np.asarray(u_grid, dtype=float)
    if np.any(u <= 0.0) or np.any(u > 1.0):
        raise ValueError("sandwich levels must lie in (0, 1]")
    fn = EmpiricalCdf(values)
    rate = math.sqrt(values.size)
    x = fn.inverse(u)
    truth_at_x = truth.cdf(x)
    mid = rate * (truth_at_x - u)
    lower = -rate * (fn.eval(x) - truth_at_x)
    upper = -rate * (fn.left_limit(x) - truth_at_x)
    return float(min(np.min(mid - lower), np.min(upper - mid)))


def paired_inversion_stat(estimate, truth, u_grid, rate):
    """Supremum of the paired inversion sum over a grid in (0, 1).

    The two one-sided inversion errors cancel to first order:

        rate (F(G^{-1}(u)) - u) + rate (G(F^{-1}(u)) - u)

    with G the estimated cdf handle and F the continuous truth.  Feeding
    the truth as its own estimate gives zero.
    """
    u = np.asarray(u_grid, dtype=float)
    if np.any(u <= 0.0) or np.any(u >= 1.0):
        raise ValueError("paired inversion levels must lie in (0, 1)")
    first = rate * (truth.cdf(estimate.inverse(u)) - u)
    second = rate * (estimate.eval(truth.quantile(u)) - u)
    return float(np.max(np.abs(first + second)))


def paired_inversion_check(truth, u_grid, n_ladder, replications, seed):
    """Median paired-inversion supremum per sample size, for decay checks."""
    rows = []
    for n in n_ladder:
        stats = np.empty(replications)
        for r in range(replications):
            rng = replication_rng(seed, n, r)
            values = truth.quantile(
                np.maximum(rng.random(int(n)), np.finfo(float).tiny)
            )
            stats[r] = paired_inversion_stat(
                EmpiricalCdf(values), truth, u_grid, math.sqrt(n)
            )
        rows.append((int(n), float(np.median(stats))))
    return rows


# ---------------------------------------------------------------------------
# difference quotients for the composition map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Perturbation:
    """Direction (alpha, beta_1, ..., beta_p) for the difference quotient.

    ``alpha`` maps points of shape (..., p) to floats and perturbs the
    joint cdf; each entry of ``betas`` maps levels in [0, 1] to floats and
    perturbs one margin.  Either part may be None, meaning zero.
    """

    name: str
    alpha: object = None
    betas: tuple = ()


def builtin_perturbations():
    """Three smooth directions used by the difference-quotient suite.

    Each direction perturbs at least one margin, so the composed map is
    genuinely nonlinear in t and the quotient error decays with t instead
    of sitting at rounding level.
    """

    def bump(s):
        return s * (1.0 - s)

    def neg_bump(s):
        return -s * (1.0 - s)

    def skew(s):
        return s * (1.0 - s) * (1.0 - 2.0 * s)

    def joint_bump(pts, scale):
        prod = np.prod(pts, axis=-1)
        return scale * prod * (1.0 - prod)

    return [
        Perturbation("margin-bump-first", alpha=None, betas=(bump, None)),
        Perturbation("margin-skew-second", alpha=None, betas=(None, skew)),
        Perturbation(
            "combined-tilt",
            alpha=lambda pts: joint_bump(pts, 0.25),
            betas=(bump, neg_bump),
        ),
    ]


def _invert_increasing(fn, u, iterations=60):
    """Smallest x in [0, 1] with fn(x) >= u, for vector u, by bisection."""
    u = np.asarray(u, dtype=float)
    lo = np.zeros_like(u)
    hi = np.ones_like(u)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        ge = fn(mid) >= u
        hi = np.where(ge, mid, hi)
        lo = np.where(ge, lo, mid)
    return hi


def _validate_perturbation(copula, pert, t, tol=1e-12):
    """Reject directions that push the perturbed pair off the cdf manifold."""
    fine = np.linspace(0.0, 1.0, 201)
    for j, beta in enumerate(pert.betas):
        if beta is None:
            continue
        vals = np.asarray(beta(fine), dtype=float)
        if abs(vals[0]) > tol or abs(vals[-1]) > tol:
            raise ValueError(
                f"{pert.name}: margin direction {j} must vanish at 0 and 1"
            )
        if np.any(np.diff(fine + t * vals) < -tol):
            raise ValueError(
                f"{pert.name}: perturbed margin {j} is not nondecreasing at t={t}"
            )
    if pert.alpha is None:
        return
    if copula.dim != 2:
        raise ValueError("joint perturbations are validated in dimension 2 only")
    axis = np.linspace(0.0, 1.0, 201)
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    pts = np.stack([uu, vv], axis=-1)
    surface = copula.cdf(pts) + t * np.asarray(pert.alpha(pts), dtype=float)
    if np.max(np.abs(surface[0, :])) > tol or np.max(np.abs(surface[:, 0])) > tol:
        raise ValueError(f"{pert.name}: perturbed joint cdf is not grounded at t={t}")
    if abs(surface[-1, -1] - 1.0) > tol:
        raise ValueError(f"{pert.name}: perturbed joint cdf must reach 1 at t={t}")
    rect = (
        surface[1:, 1:] - surface[:-1, 1:] - surface[1:, :-1] + surface[:-1, :-1]
    )
    if np.min(rect) < -tol:
        raise ValueError(
            f"{pert.name}: perturbed joint cdf violates the rectangle "
            f"inequality at t={t}"
        )


def hadamard_check(copula, perturbation, t_ladder=(1e-1, 1e-2, 1e-3), grid=None):
    """Difference quotients of the composition map against its derivative.

    For the map sending (joint cdf, margins) to the composed copula, the
    derivative in direction (alpha, beta_1, ..., beta_p) at the true pair
    is  alpha(u) - sum_j dC_j(u) beta_j(u_j)  with boundary terms dropped.
    Returns one (t, sup distance) row per step size; the sup should shrink
    as t does.
    """
    if grid is None:
        grid = default_grid(copula.dim)
    pts = np.atleast_2d(np.asarray(grid, dtype=float))
    betas = tuple(perturbation.betas) + (None,) * (copula.dim - len(perturbation.betas))

    derivative = np.zeros(pts.shape[0])
    if perturbation.alpha is not None:
        derivative += np.asarray(perturbation.alpha(pts), dtype=float)
    for j, beta in enumerate(betas):
        if beta is None:
            continue
        uj = pts[:, j]
        inner = (uj > 0.0) & (uj < 1.0)
        if np.any(inner):
            derivative[inner] -= copula.partial(j, pts[inner]) * np.asarray(
                beta(uj[inner]), dtype=float
            )

    base = copula.cdf(pts)
    rows = []
    for t in t_ladder:
        _validate_perturbation(copula, perturbation, t)
        w = pts.copy()
        for j, beta in enumerate(betas):
            if beta is None:
                continue
            w[:, j] = _invert_increasing(lambda s, b=beta: s + t * b(s), pts[:, j])
        value = copula.cdf(w)
        if perturbation.alpha is not None:
            value = value + t * np.asarray(perturbation.alpha(w), dtype=float)
        quotient = (value - base) / t
        rows.append((float(t), float(np.max(np.abs(quotient - derivative)))))
    return rows


# ---------------------------------------------------------------------------
# check suites
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _sandwich_suite(truth, label, instances, seed):
    rng = np.random.default_rng(np.random.SeedSequence([seed, 1]))
    worst = np.inf
    for _ in range(instances):
        n = int(rng.integers(1, 1001))
        values = truth.quantile(np.maximum(rng.random(n), np.finfo(float).tiny))
        levels = np.concatenate([DEFAULT_AXIS, rng.random(10), [1.0]])
        levels = levels[levels > 0.0]
        worst = min(worst, sandwich_check(values, truth, levels))
    return CheckResult(
        name=f"sandwich-{label}",
        passed=worst >= -1e-12,
        detail=f"worst_slack={worst:.3e} over {instances} samples",
    )


def _paired_inversion_suite(replications, seed):
    rows = paired_inversion_check(
        Uniform01(), DEFAULT_AXIS, (100, 400, 1600), replications, seed
    )
    medians = [m for _, m in rows]
    passed = all(b < a for a, b in zip(medians, medians[1:]))
    detail = ", ".join(f"n={n}: {m:.4f}" for n, m in rows)
    return CheckResult("paired-inversion-decay", passed, detail)


def _hadamard_suite(perturbations=None):
    copula = Independence(2)
    results = []
    for pert in perturbations or builtin_perturbations():
        rows = hadamard_check(copula, pert)
        sups = [s for _, s in rows]
        passed = all(b < a for a, b in zip(sups, sups[1:])) and sups[-1] < 1e-2
        detail = ", ".join(f"t={t:g}: {s:.2e}" for t, s in rows)
        results.append(CheckResult(f"difference-quotient-{pert.name}", passed, detail))
    return results


def _default_models():
    return [
        Independence(2),
        Independence(3),
        Clayton(0.7),
        Clayton(2.5),
        Fgm(0.5),
        Fgm(-0.8),
    ]


def _partial_suite(points, seed, models=None, step=1e-6, tol=1e-6):
    results = []
    for model in models or _default_models():
        rng = np.random.default_rng(np.random.SeedSequence([seed, 2]))
        pts = rng.uniform(0.01, 0.99, size=(points, model.dim))
        worst = 0.0
        for j in range(model.dim):
            shift = np.zeros(model.dim)
            shift[j] = step
            numeric = (model.cdf(pts + shift) - model.cdf(pts - shift)) / (2.0 * step)
            worst = max(worst, float(np.max(np.abs(model.partial(j, pts) - numeric))))
        results.append(
            CheckResult(
                name=f"partial-derivative-{type(model).__name__.lower()}"
                + (f"-{model.theta:g}" if hasattr(model, "theta") else f"-{model.dim}d"),
                passed=worst <= tol,
                detail=f"max_err={worst:.2e} on {points} interior points",
            )
        )
    return results


def _axiom_suite(samples, seed, models=None):
    results = []
    for model in models or _default_models():
        rng = np.random.default_rng(np.random.SeedSequence([seed, 3]))
        lo = rng.uniform(0.0, 1.0, size=(samples, model.dim))
        hi = np.minimum(lo + rng.uniform(0.0, 1.0, size=lo.shape), 1.0)
        worst = 0.0
        if model.dim == 2:
            corners = (
                model.cdf(np.stack([hi[:, 0], hi[:, 1]], axis=-1))
                - model.cdf(np.stack([lo[:, 0], hi[:, 1]], axis=-1))
                - model.cdf(np.stack([hi[:, 0], lo[:, 1]], axis=-1))
                + model.cdf(np.stack([lo[:, 0], lo[:, 1]], axis=-1))
            )
            worst = max(worst, float(-np.min(corners)))
        margin_pts = rng.uniform(0.0, 1.0, size=samples)
        for j in range(model.dim):
            point = np.ones((samples, model.dim))
            point[:, j] = margin_pts
            worst = max(worst, float(np.max(np.abs(model.cdf(point) - margin_pts))))
            grounded = np.ones((samples, model.dim))
            grounded[:, j] = 0.0
            worst = max(worst, float(np.max(np.abs(model.cdf(grounded)))))
        results.append(
            CheckResult(
                name=f"copula-axioms-{type(model).__name__.lower()}"
                + (f"-{model.theta:g}" if hasattr(model, "theta") else f"-{model.dim}d"),
                passed=worst <= 1e-12,
                detail=f"max_violation={worst:.2e}",
            )
        )
    return results


def _gram_suite(mc_draws, seed):
    axis = np.array([0.25, 0.5, 0.75])
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    points = np.stack([uu.ravel(), vv.ravel()], axis=-1)
    schemes = [
        ("empirical-independence", SchemeSpec(Independence(2))),
        ("empirical-clayton", SchemeSpec(Clayton(1.0))),
        (
            "missing-independence",
            SchemeSpec(
                Independence(2),
                joint="complete_case",
                margins=("available_case", "available_case"),
                p_x=0.8,
                p_y=0.8,
                p_xy=0.64,
            ),
        ),
        (
            "parametric-fgm",
            SchemeSpec(
                Fgm(0.5),
                margins=(
                    MarginScheme("parametric", Normal(0.0, 1.0)),
                    MarginScheme("parametric", Normal(0.0, 1.0)),
                ),
            ),
        ),
    ]
    results = []
    for label, scheme in schemes:
        limit = LimitCovariance(scheme, mc_draws=mc_draws, mc_seed=seed)
        matrix, _ = limit.gram(points, axis)
        smallest = float(np.min(np.linalg.eigvalsh(matrix)))
        results.append(
            CheckResult(
                name=f"gram-psd-{label}",
                passed=smallest >= -1e-9,
                detail=f"min_eigenvalue={smallest:.3e}",
            )
        )
    return results


def run_check_suites(quick=False, seed=99):
    """Run every deterministic suite and return one result per check."""
    instances = 50 if quick else 500
    paired_reps = 40 if quick else 200
    partial_points = 1_000 if quick else 10_000
    axiom_samples = 2_000 if quick else 20_000
    gram_draws = 100_000 if quick else 400_000

    results = [
        _sandwich_suite(Uniform01(), "uniform", instances, seed),
        _sandwich_suite(Normal(0.0, 1.0), "normal", instances, seed),
        _paired_inversion_suite(paired_reps, seed),
    ]
    results.extend(_hadamard_suite())
    results.extend(_partial_suite(partial_points, seed))
    results.extend(_axiom_suite(axiom_samples, seed))
    results.extend(_gram_suite(gram_draws, seed))
    return results
