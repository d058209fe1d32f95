"""Command line front end.

Subcommands
-----------
simulate    draw a dataset from a copula model and write it as CSV
estimate    fit the hybrid copula estimator to a CSV file and tabulate it
limit-cov   evaluate limiting covariance kernels of a scheme on a grid
experiment  run a Monte Carlo experiment from a config file
check       run the deterministic verification suites

Data files are CSV with one numeric column per variable; a missing entry
is an empty cell or ``NA``, and that is also how missing values are
written.  Floats in delimited output carry 17 significant digits, enough
to round-trip a double exactly.

Config files for ``experiment`` are flat ``key = value`` text; repeating
a key builds a list.  Recognized keys: copula, theta, dim, joint, margin
(one per column, or once for all), px, py, pxy, n (repeated for a ladder),
reps, seed, grid, threads, mc_draws, check_variance, check_limit_match,
check_margin_variance, check_remainder_decay.  ``hybridcop experiment
--help`` shows the value syntax.

The environment variable HYBRIDCOP_SEED overrides any seed given by flag
or config.  Exit codes: 0 success, 1 internal check failure, 2 tolerance
check failure, 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .asymptotics import LimitCovariance, MarginScheme, SchemeSpec
from .copulas import copula_model, margin_family
from .estimators import (
    DataMatrix,
    EstimationError,
    HybridEstimator,
    fit_complete_case_joint,
    fit_empirical_joint,
    fit_margin_cdf,
    fit_parametric_margin,
    known_margin,
)
from .harness import (
    DEFAULT_AXIS,
    ExperimentConfig,
    ExperimentError,
    run_check_suites,
    run_experiment,
    simulate_dataset,
)

__all__ = ["main"]


class UsageError(ValueError):
    """Bad flags, bad files or bad config values; maps to exit code 3."""


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _format_value(x):
    if x is None or (isinstance(x, float) and not np.isfinite(x)):
        return "NA"
    return f"{x:.17g}"


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _read_data_csv(path):
    """Read a data matrix; empty cells and NA mark missing entries."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            rows = [row for row in csv.reader(handle) if row]
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err}") from err
    if not rows:
        raise UsageError(f"{path} holds no rows")

    def parse_row(row, lineno):
        out = []
        for col, cell in enumerate(row, 1):
            cell = cell.strip()
            if cell == "" or cell.upper() == "NA":
                out.append(np.nan)
            else:
                try:
                    out.append(float(cell))
                except ValueError:
                    raise UsageError(
                        f"{path} row {lineno} column {col}: {cell!r} is not numeric"
                    ) from None
        return out

    start = 0
    try:
        first = parse_row(rows[0], 1)
    except UsageError:
        start = 1
        first = None
    parsed = [] if first is None else [first]
    for i, row in enumerate(rows[start:], start + 1):
        parsed.append(parse_row(row, i))
    if not parsed:
        raise UsageError(f"{path}: no data rows")
    width = len(parsed[0])
    if any(len(r) != width for r in parsed):
        raise UsageError(f"{path}: rows have inconsistent column counts")
    values = np.asarray(parsed, dtype=float)
    observed = np.isfinite(values)
    return DataMatrix(values, observed)


def _parse_axis(text):
    try:
        axis = np.array(sorted(float(v) for v in text.split(",") if v.strip()))
    except ValueError as err:
        raise UsageError(f"bad grid axis {text!r}") from err
    if axis.size == 0 or np.any(axis < 0.0) or np.any(axis > 1.0):
        raise UsageError("grid axis values must lie in [0, 1]")
    return axis


def _lattice(axis, dim):
    axes = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=-1)


def _parse_family(spec):
    """Parse a margin family such as normal:0:1 or exponential:2."""
    parts = [p for p in spec.split(":") if p != ""]
    try:
        return margin_family(parts[0], parts[1:])
    except ValueError as err:
        raise UsageError(str(err)) from err


def _parse_margin_scheme(spec):
    """Parse a margin scheme entry for limit-cov, experiment or simulate.

    Syntax: empirical | available-case | known:FAMILY[:P...] |
    parametric:FAMILY:P... where the parametric parameters are the true
    values the scheme simulates from and linearizes around.
    """
    parts = spec.split(":")
    kind = parts[0].strip().replace("-", "_")
    if kind in ("empirical", "available_case"):
        if len(parts) > 1:
            raise UsageError(f"margin scheme {kind!r} takes no parameters")
        return MarginScheme(kind)
    if kind in ("known", "parametric"):
        if len(parts) < 2:
            raise UsageError(f"margin scheme {kind!r} needs a family")
        family = _parse_family(":".join(parts[1:]))
        try:
            return MarginScheme(kind, family)
        except ValueError as err:
            raise UsageError(str(err)) from err
    raise UsageError(f"unknown margin scheme {spec!r}")


SCHEME_PRESETS = {
    "empirical": ("empirical", "empirical"),
    "known": ("empirical", "known:uniform01"),
    "parametric": ("empirical", "parametric:normal:0:1"),
    "missing": ("complete-case", "available-case"),
}


def _apply_scheme_preset(args):
    """Let --scheme fill in --joint and --margins unless given explicitly."""
    if args.scheme is None:
        return
    try:
        joint, margins = SCHEME_PRESETS[args.scheme]
    except KeyError:
        names = ", ".join(sorted(SCHEME_PRESETS))
        raise UsageError(f"unknown scheme {args.scheme!r}; choose from {names}") from None
    if args.joint is None:
        args.joint = joint
    if args.margins is None:
        args.margins = margins


def _split_margin_list(text, dim):
    entries = [e.strip() for e in text.split(",") if e.strip()]
    if len(entries) == 1:
        entries = entries * dim
    if len(entries) != dim:
        raise UsageError(f"need one margin entry per column ({dim}), got {len(entries)}")
    return entries


def _build_scheme(copula_name, theta, dim, joint, margin_specs, p_x, p_y, p_xy):
    try:
        cop = copula_model(copula_name, theta, dim)
    except ValueError as err:
        raise UsageError(str(err)) from err
    margins = tuple(_parse_margin_scheme(s) for s in margin_specs)
    try:
        return SchemeSpec(
            cop,
            joint=joint.replace("-", "_"),
            margins=margins,
            p_x=p_x,
            p_y=p_y,
            p_xy=p_xy,
        )
    except ValueError as err:
        raise UsageError(str(err)) from err


def _env_seed():
    raw = os.environ.get("HYBRIDCOP_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"HYBRIDCOP_SEED={raw!r} is not an integer") from None


def _effective_seed(flag_seed, fallback=0):
    env = _env_seed()
    if env is not None:
        return env
    return fallback if flag_seed is None else flag_seed


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_simulate(args):
    dim = args.dim
    entries = _split_margin_list(args.margins, dim)
    families = tuple(_parse_family(e) for e in entries)
    fully_observed = (args.px, args.py, args.pxy) == (1.0, 1.0, 1.0)
    if fully_observed:
        margins = tuple(MarginScheme("known", f) for f in families)
        joint = "empirical"
    else:
        margins = tuple(MarginScheme("available_case", f) for f in families)
        joint = "complete_case"
    scheme = _build_scheme_from_parts(
        args.copula, args.theta, dim, joint, margins, args.px, args.py, args.pxy
    )
    seed = _effective_seed(args.seed)
    data = simulate_dataset(scheme, args.n, seed)
    header = [f"x{j + 1}" for j in range(dim)]
    rows = [
        [
            _format_value(data.values[i, j] if data.observed[i, j] else None)
            for j in range(dim)
        ]
        for i in range(data.n)
    ]
    _write_csv(args.out, header, rows)
    print(f"wrote {data.n} rows to {args.out} (seed {seed})")
    return 0


def _build_scheme_from_parts(copula_name, theta, dim, joint, margins, p_x, p_y, p_xy):
    try:
        cop = copula_model(copula_name, theta, dim)
        return SchemeSpec(cop, joint=joint, margins=margins, p_x=p_x, p_y=p_y, p_xy=p_xy)
    except ValueError as err:
        raise UsageError(str(err)) from err


def cmd_estimate(args):
    _apply_scheme_preset(args)
    joint_kind = (args.joint or "empirical").replace("-", "_")
    if joint_kind not in ("empirical", "complete_case"):
        raise UsageError(f"unknown joint scheme {args.joint!r}")
    axis = _parse_axis(args.grid)

    data = _read_data_csv(args.data)
    observed_counts = data.observed.sum(axis=0)
    print(
        f"n={data.n} complete_rows={int(np.count_nonzero(data.complete_mask))} "
        + "observed=" + ",".join(str(int(c)) for c in observed_counts),
        file=sys.stderr,
    )

    if joint_kind == "empirical":
        joint = fit_empirical_joint(data)
    else:
        joint = fit_complete_case_joint(data)

    entries = _split_margin_list(args.margins or "empirical", data.dim)
    margins = []
    for j, entry in enumerate(entries):
        parts = entry.split(":")
        kind = parts[0].replace("-", "_")
        if kind in ("empirical", "available_case"):
            margins.append(fit_margin_cdf(data, j))
        elif kind == "known":
            margins.append(known_margin(_parse_family(":".join(parts[1:]))))
        elif kind == "parametric":
            if len(parts) != 2:
                raise UsageError("estimate expects parametric:FAMILY without values")
            margins.append(fit_parametric_margin(data, j, parts[1]))
        else:
            raise UsageError(f"unknown margin scheme {entry!r}")
    est = HybridEstimator(joint, margins)

    grid = _lattice(axis, data.dim)
    values = est.cdf(grid)
    header = [f"u_{j + 1}" for j in range(data.dim)] + ["c_hat"]
    rows = [
        [_format_value(v) for v in row] + [_format_value(val)]
        for row, val in zip(grid, values)
    ]
    if args.out:
        _write_csv(args.out, header, rows)
        print(f"wrote {len(rows)} grid evaluations to {args.out}")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return 0


def _parse_point(text, dim, flag):
    try:
        point = np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated numbers") from None
    if point.shape != (dim,):
        raise UsageError(f"{flag} needs {dim} coordinates")
    if np.any(point < 0.0) or np.any(point > 1.0):
        raise UsageError(f"{flag} coordinates must lie in [0, 1]")
    return point


def _kernel_query(args, limit, dim):
    """Evaluate one named kernel; prints a single number."""
    name = args.kernel.replace("-", "_")
    j = None if args.j is None else args.j - 1
    if j is not None and not 0 <= j < dim:
        raise UsageError(f"--j must be between 1 and {dim}")
    k = None if args.k is None else args.k - 1
    if k is not None and not 0 <= k < dim:
        raise UsageError(f"--k must be between 1 and {dim}")

    if name == "cov_alpha":
        if args.u is None:
            raise UsageError("cov_alpha needs --u")
        u = _parse_point(args.u, dim, "--u")
        v = u if args.v is None else _parse_point(args.v, dim, "--v")
        value = limit.cov_alpha(u, v)
    elif name == "cov_beta":
        if j is None or args.s is None:
            raise UsageError("cov_beta needs --j and --s (and optionally --t)")
        t = args.s if args.t is None else args.t
        value = limit.cov_beta(j, args.s, t)
    elif name == "cov_beta_beta":
        if j is None or k is None or args.s is None:
            raise UsageError("cov_beta_beta needs --j, --k, --s (and optionally --t)")
        t = args.s if args.t is None else args.t
        value = limit.cov_beta_beta(j, k, args.s, t)
    elif name == "cov_alpha_beta":
        if j is None or args.u is None or args.s is None:
            raise UsageError("cov_alpha_beta needs --j, --u and --s")
        value = limit.cov_alpha_beta(j, _parse_point(args.u, dim, "--u"), args.s)
    elif name == "limit_variance":
        if args.u is None:
            raise UsageError("limit_variance needs --u")
        u = _parse_point(args.u, dim, "--u")
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            raise UsageError("limit_variance needs an interior point")
        value = limit.limit_variance(u)
    else:
        raise UsageError(f"unknown kernel {args.kernel!r}")
    print(_format_value(float(value)))
    return 0


def cmd_limit_cov(args):
    _apply_scheme_preset(args)
    dim = args.dim
    margin_specs = _split_margin_list(args.margins or "empirical", dim)
    scheme = _build_scheme(
        args.copula, args.theta, dim, args.joint or "empirical", margin_specs,
        args.px, args.py, args.pxy,
    )
    seed = _effective_seed(args.seed, fallback=1729)
    limit = LimitCovariance(scheme, mc_draws=args.mc_draws, mc_seed=seed)
    if args.kernel is not None:
        return _kernel_query(args, limit, dim)

    grid = _lattice(_parse_axis(args.grid), dim)
    header = [f"u_{j + 1}" for j in range(dim)] + ["cov_alpha"]
    for j in range(dim):
        header += [f"cov_beta_{j + 1}", f"cov_alpha_beta_{j + 1}"]
    header += ["limit_variance", "mc_se"]

    boundary_rows = 0
    rows = []
    for point in grid:
        cells = [_format_value(v) for v in point] + [
            _format_value(limit.cov_alpha(point, point))
        ]
        worst_se = 0.0
        for j in range(dim):
            sj = float(point[j])
            cells.append(_format_value(limit.cov_beta(j, sj, sj)))
            value, err = limit.cov_alpha_beta(j, point, sj, with_error=True)
            worst_se = max(worst_se, err)
            cells.append(_format_value(value))
        interior = bool(np.all((point > 0.0) & (point < 1.0)))
        if interior:
            cells.append(_format_value(limit.limit_variance(point)))
        else:
            cells.append("NA")
            boundary_rows += 1
        cells.append(_format_value(worst_se))
        rows.append(cells)

    if args.out:
        _write_csv(args.out, header, rows)
        print(f"wrote {len(rows)} kernel evaluations to {args.out}")
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    if boundary_rows:
        print(
            f"error: limit_variance undefined on {boundary_rows} boundary "
            "grid rows (marked NA)",
            file=sys.stderr,
        )
        return 3
    return 0


# -- experiment config ------------------------------------------------------


def _parse_config_text(text):
    table = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"config line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        table.setdefault(key.strip(), []).append(value.strip())
    return table


def _single(table, key, default=None):
    values = table.get(key)
    if values is None:
        return default
    if len(values) > 1:
        raise UsageError(f"config key {key!r} given more than once")
    return values[0]


def _config_float(table, key, default):
    raw = _single(table, key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"config key {key!r}: {raw!r} is not a number") from None


def _config_int(table, key, default):
    raw = _single(table, key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"config key {key!r}: {raw!r} is not an integer") from None


def _floats(text, key):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"config key {key!r}: {text!r} is not a number list") from None


def _experiment_from_config(table, args):
    known_keys = {
        "copula", "theta", "dim", "joint", "margin", "px", "py", "pxy", "n",
        "reps", "seed", "grid", "threads", "mc_draws", "check_variance",
        "check_limit_match", "check_margin_variance", "check_remainder_decay",
    }
    unknown = sorted(set(table) - known_keys)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")

    copula_name = _single(table, "copula")
    if copula_name is None:
        raise UsageError("config must set a copula")
    theta_raw = _single(table, "theta")
    theta = None if theta_raw is None else float(theta_raw)
    dim = _config_int(table, "dim", 2)
    joint = (_single(table, "joint", "empirical")).replace("-", "_")

    margin_entries = table.get("margin", ["empirical"])
    if len(margin_entries) == 1:
        margin_entries = _split_margin_list(margin_entries[0], dim)
    if len(margin_entries) != dim:
        raise UsageError(f"need one margin key per column ({dim})")

    scheme = _build_scheme(
        copula_name, theta, dim, joint, margin_entries,
        _config_float(table, "px", 1.0),
        _config_float(table, "py", 1.0),
        _config_float(table, "pxy", 1.0),
    )

    if args.n:
        sizes = tuple(int(v) for v in args.n)
    elif "n" in table:
        sizes = tuple(_config_int({"n": [v]}, "n", None) for v in table["n"])
    else:
        raise UsageError("config must set at least one sample size n")
    reps = args.reps if args.reps is not None else _config_int(table, "reps", None)
    if reps is None:
        raise UsageError("config must set reps")
    if args.quick:
        reps = max(20, reps // 10)

    seed = _effective_seed(args.seed, fallback=_config_int(table, "seed", 0))
    threads = args.threads if args.threads else _config_int(table, "threads", 1)
    grid_raw = _single(table, "grid")
    grid = None if grid_raw is None else _lattice(_parse_axis(grid_raw), dim)

    config = ExperimentConfig(
        scheme=scheme,
        sample_sizes=sizes,
        replications=reps,
        seed=seed,
        grid=grid,
        threads=threads,
        mc_draws=_config_int(table, "mc_draws", 1_000_000),
    )
    return config


def _grid_index(grid, point):
    hits = np.nonzero(np.all(np.abs(grid - point) <= 1e-12, axis=1))[0]
    if hits.size == 0:
        raise UsageError(f"check point {point} is not on the experiment grid")
    return int(hits[0])


def _evaluate_checks(table, config, report):
    """Tolerance checks from the config, measured at the largest n.

    With ``report=None`` the check lines are parsed and validated against
    the config but nothing is measured; the experiment command runs this
    dry pass first so a bad check line fails before the replications.
    """
    checks = []
    res = None if report is None else report.size_for(max(config.sample_sizes))
    dim = config.scheme.dim

    for raw in table.get("check_variance", []):
        vals = _floats(raw, "check_variance")
        if len(vals) != dim + 2:
            raise UsageError("check_variance takes u..., expected, tol")
        point, expected, tol = np.array(vals[:dim]), vals[dim], vals[dim + 1]
        g = _grid_index(config.grid, point)
        if res is None:
            continue
        measured = float(res.process_variance[g])
        checks.append(
            {
                "name": f"variance@{tuple(point.tolist())}",
                "passed": bool(abs(measured - expected) <= tol),
                "detail": f"measured={measured:.6g} expected={expected:.6g} tol={tol:.3g}",
            }
        )

    for raw in table.get("check_limit_match", []):
        vals = _floats(raw, "check_limit_match")
        if len(vals) != dim + 1:
            raise UsageError("check_limit_match takes u..., k_sigma")
        point, k = np.array(vals[:dim]), vals[dim]
        g = _grid_index(config.grid, point)
        if res is None:
            continue
        measured = float(res.process_variance[g])
        target = float(res.limit_variance[g])
        width = k * float(res.variance_mc_se[g])
        checks.append(
            {
                "name": f"limit-match@{tuple(point.tolist())}",
                "passed": bool(abs(measured - target) <= width),
                "detail": f"measured={measured:.6g} limit={target:.6g} "
                f"allowed={width:.3g}",
            }
        )

    for raw in table.get("check_margin_variance", []):
        vals = _floats(raw, "check_margin_variance")
        if len(vals) != 4:
            raise UsageError("check_margin_variance takes column, s, expected, tol")
        j = int(vals[0]) - 1
        if not 0 <= j < dim:
            raise UsageError("check_margin_variance column out of range")
        s, expected, tol = vals[1:]
        sgrid = np.unique(config.grid[:, j])
        hits = np.nonzero(np.abs(sgrid - s) <= 1e-12)[0]
        if hits.size == 0:
            raise UsageError(f"margin level {s} is not on the experiment grid")
        if res is None:
            continue
        measured = float(res.margin_variance[j][int(hits[0])])
        checks.append(
            {
                "name": f"margin-variance@({j + 1},{s})",
                "passed": bool(abs(measured - expected) <= tol),
                "detail": f"measured={measured:.6g} expected={expected:.6g} tol={tol:.3g}",
            }
        )

    toggle = _single(table, "check_remainder_decay", "off").lower()
    if toggle in ("on", "true", "yes", "strict"):
        if len(config.sample_sizes) < 2:
            raise UsageError(
                "check_remainder_decay needs at least two sample sizes"
            )
        if res is not None:
            medians = [r.remainder_median for r in report.sizes]
            checks.append(
                {
                    "name": "remainder-decay",
                    "passed": bool(all(b < a for a, b in zip(medians, medians[1:]))),
                    "detail": ", ".join(
                        f"n={r.n}: {r.remainder_median:.4f}" for r in report.sizes
                    ),
                }
            )
    elif toggle not in ("off", "false", "no"):
        raise UsageError(f"check_remainder_decay: unknown value {toggle!r}")
    return checks


def cmd_experiment(args):
    try:
        with open(args.config, "r", encoding="utf-8") as handle:
            table = _parse_config_text(handle.read())
    except OSError as err:
        raise UsageError(f"cannot read {args.config}: {err}") from err

    config = _experiment_from_config(table, args)
    _evaluate_checks(table, config, None)
    report = run_experiment(config)
    checks = _evaluate_checks(table, config, report)

    document = {
        "version": __version__,
        "config": {
            "file": {k: v for k, v in sorted(table.items())},
            "effective": {
                "seed": config.seed,
                "replications": config.replications,
                "sample_sizes": list(config.sample_sizes),
                "quick": bool(args.quick),
            },
        },
        "results": report.to_dict(),
        "checks": checks,
    }
    payload = json.dumps(document, indent=2, sort_keys=True) + "\n"

    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
        print(f"wrote report to {args.out}")
        if not args.no_figures:
            from .figures import render_report_figures

            stem = os.path.splitext(args.out)[0]
            for figure_path in render_report_figures(report, stem):
                print(f"wrote figure {figure_path}")
    else:
        sys.stdout.write(payload)

    for res in report.sizes:
        print(
            f"n={res.n}: reps={res.replications} skipped={res.skipped} "
            f"median_remainder={res.remainder_median:.5f}"
        )
    failures = 0
    for check in checks:
        status = "PASS" if check["passed"] else "FAIL"
        failures += 0 if check["passed"] else 1
        print(f"{status} {check['name']}: {check['detail']}")
    return 2 if failures else 0


def cmd_check(args):
    seed = _effective_seed(args.seed, fallback=99)
    results = run_check_suites(quick=args.quick, seed=seed)
    failures = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        failures += 0 if result.passed else 1
        print(f"{status} {result.name}: {result.detail}")
    print(f"{len(results) - failures} of {len(results)} checks passed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser():
    parser = Parser(prog="hybridcop", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="draw a dataset and write CSV")
    sim.add_argument("--copula", required=True, help="independence | clayton | fgm")
    sim.add_argument("--theta", type=float, default=None)
    sim.add_argument("--dim", type=int, default=2)
    sim.add_argument(
        "--margins",
        default="uniform01",
        help="true margins, e.g. uniform01 or normal:0:1,exponential:2",
    )
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--px", type=float, default=1.0)
    sim.add_argument("--py", type=float, default=1.0)
    sim.add_argument("--pxy", type=float, default=1.0)
    sim.add_argument("--out", required=True)
    sim.set_defaults(func=cmd_simulate)

    est = sub.add_parser("estimate", help="fit the hybrid estimator to CSV data")
    est.add_argument("--data", required=True)
    est.add_argument("--scheme", default=None,
                     help="preset: " + " | ".join(sorted(SCHEME_PRESETS)))
    est.add_argument("--joint", default=None,
                     help="empirical | complete-case")
    est.add_argument(
        "--margins",
        default=None,
        help="per-column schemes: empirical | available-case | "
        "known:FAMILY:P... | parametric:FAMILY",
    )
    est.add_argument("--grid", default=",".join(str(v) for v in DEFAULT_AXIS))
    est.add_argument("--out", default=None)
    est.set_defaults(func=cmd_estimate)

    cov = sub.add_parser("limit-cov", help="tabulate limiting covariance kernels")
    cov.add_argument("--copula", default="independence")
    cov.add_argument("--theta", type=float, default=None)
    cov.add_argument("--dim", type=int, default=2)
    cov.add_argument("--scheme", default=None,
                     help="preset: " + " | ".join(sorted(SCHEME_PRESETS)))
    cov.add_argument("--joint", default=None)
    cov.add_argument(
        "--margins",
        default=None,
        help="per-column schemes; parametric needs true values, "
        "e.g. parametric:normal:0:1",
    )
    cov.add_argument("--px", type=float, default=1.0)
    cov.add_argument("--py", type=float, default=1.0)
    cov.add_argument("--pxy", type=float, default=1.0)
    cov.add_argument("--grid", default=",".join(str(v) for v in DEFAULT_AXIS))
    cov.add_argument("--kernel", default=None,
                     help="single query: cov_alpha | cov_beta | cov_beta_beta | "
                     "cov_alpha_beta | limit_variance")
    cov.add_argument("--j", type=int, default=None, help="margin index, 1-based")
    cov.add_argument("--k", type=int, default=None, help="second margin index")
    cov.add_argument("--s", type=float, default=None)
    cov.add_argument("--t", type=float, default=None)
    cov.add_argument("--u", default=None, help="point, comma-separated")
    cov.add_argument("--v", default=None, help="second point, comma-separated")
    cov.add_argument("--seed", type=int, default=None,
                     help="seed of the Monte Carlo integration")
    cov.add_argument("--mc-draws", type=int, default=1_000_000, dest="mc_draws")
    cov.add_argument("--out", default=None)
    cov.set_defaults(func=cmd_limit_cov)

    exp = sub.add_parser(
        "experiment",
        help="run a Monte Carlo experiment",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description=(
            "Run the Monte Carlo experiment described by a flat key = value\n"
            "config file.  Keys:\n"
            "  copula      independence | clayton | fgm\n"
            "  theta       copula parameter (clayton, fgm)\n"
            "  dim         number of coordinates, default 2\n"
            "  joint       empirical | complete-case\n"
            "  margin      per-column scheme, repeat the key or give a\n"
            "              comma list: empirical | available-case |\n"
            "              known:FAMILY:P... | parametric:FAMILY:P...\n"
            "  px py pxy   observation probabilities (missing data)\n"
            "  n           sample size; repeat for a ladder\n"
            "  reps        replications per sample size\n"
            "  seed        master seed (flag/HYBRIDCOP_SEED override)\n"
            "  grid        comma list of axis levels in [0, 1]\n"
            "  threads     worker threads; results do not depend on it\n"
            "  mc_draws    draws for Monte Carlo integrated kernels\n"
            "  check_variance         u..., expected, tol\n"
            "  check_limit_match      u..., k_sigma\n"
            "  check_margin_variance  column, s, expected, tol\n"
            "  check_remainder_decay  on | off (needs an n ladder)\n"
            "Checks are evaluated at the largest sample size; any failure\n"
            "makes the exit code 2."
        ),
    )
    exp.add_argument("--config", required=True, help="key = value config file")
    exp.add_argument("--out", default=None, help="report file; figures go next to it")
    exp.add_argument("--n", type=int, action="append", default=None,
                     help="override the config sample sizes; repeatable")
    exp.add_argument("--reps", type=int, default=None,
                     help="override the config replication count")
    exp.add_argument("--threads", type=int, default=None)
    exp.add_argument("--seed", type=int, default=None)
    exp.add_argument("--quick", action="store_true",
                     help="cut replications to a tenth, at least 20")
    exp.add_argument("--no-figures", action="store_true")
    exp.set_defaults(func=cmd_experiment)

    chk = sub.add_parser("check", help="run the verification suites")
    chk.add_argument("--quick", action="store_true")
    chk.add_argument("--seed", type=int, default=None)
    chk.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except EstimationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except ExperimentError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
