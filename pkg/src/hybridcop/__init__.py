"""Hybrid copula estimation with plug-in margins.

The estimator composes a joint distribution function estimator with
per-coordinate margin estimators through generalized inverses.  The
package provides the estimator, closed-form and Monte Carlo limiting
covariances for several estimation schemes, and a simulation harness
that measures how fast the normalized estimation error approaches its
limit.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .asymptotics import (
    JOINT_SCHEME_KINDS,
    MARGIN_SCHEME_KINDS,
    LimitCovariance,
    MarginScheme,
    SchemeSpec,
    mcar_cell_probabilities,
)
from .copulas import (
    COPULA_NAMES,
    MARGIN_NAMES,
    Clayton,
    Exponential,
    Fgm,
    Independence,
    Normal,
    Uniform01,
    copula_model,
    margin_family,
)
from .distfun import ContinuousCdf, EmpiricalCdf
from .estimators import (
    DataMatrix,
    EmpiricalJointCdf,
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
from .harness import (
    DEFAULT_AXIS,
    ExperimentConfig,
    ExperimentError,
    ExperimentReport,
    Perturbation,
    builtin_perturbations,
    default_grid,
    estimate_covariance,
    hadamard_check,
    paired_inversion_check,
    replication_rng,
    run_check_suites,
    run_experiment,
    sandwich_check,
    simulate_dataset,
)

__all__ = [
    "__version__",
    "EmpiricalCdf",
    "ContinuousCdf",
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
    "DataMatrix",
    "EmpiricalJointCdf",
    "EstimationError",
    "HybridEstimator",
    "fit_empirical_joint",
    "fit_complete_case_joint",
    "fit_margin_cdf",
    "fit_parametric_margin",
    "known_margin",
    "process_eval",
    "representation_remainder",
    "MarginScheme",
    "SchemeSpec",
    "LimitCovariance",
    "mcar_cell_probabilities",
    "MARGIN_SCHEME_KINDS",
    "JOINT_SCHEME_KINDS",
    "DEFAULT_AXIS",
    "default_grid",
    "replication_rng",
    "simulate_dataset",
    "ExperimentConfig",
    "ExperimentReport",
    "ExperimentError",
    "run_experiment",
    "estimate_covariance",
    "sandwich_check",
    "paired_inversion_check",
    "Perturbation",
    "builtin_perturbations",
    "hadamard_check",
    "run_check_suites",
]
