"""Tests of the cdf primitives: evaluation, left limits, inversion."""

from __future__ import annotations

import numpy as np
import pytest

from hybridcop.copulas import Exponential, Normal, Uniform01
from hybridcop.distfun import ContinuousCdf, EmpiricalCdf


def brute_eval(points, weights, x):
    return float(np.sum(weights[points <= x]))


def brute_left(points, weights, x):
    return float(np.sum(weights[points < x]))


def brute_inverse(points, cum, u):
    if u == 0.0:
        return -np.inf
    hits = np.nonzero(cum >= u)[0]
    return float(points[hits[0]])


class TestEmpiricalCdf:
    def test_eval_matches_brute_force(self):
        rng = np.random.default_rng(101)
        for _ in range(30):
            n = int(rng.integers(1, 40))
            # half the samples come from a tiny lattice to force ties
            if rng.random() < 0.5:
                values = rng.integers(0, 6, size=n).astype(float)
            else:
                values = rng.normal(size=n)
            cdf = EmpiricalCdf(values)
            pts, w = cdf.points, cdf.weights
            queries = np.concatenate(
                [values, values - 1e-9, values + 1e-9, rng.normal(size=10),
                 [-np.inf, np.inf]]
            )
            for x in queries:
                assert cdf.eval(x) == pytest.approx(brute_eval(pts, w, x), abs=1e-15)
                assert cdf.left_limit(x) == pytest.approx(
                    brute_left(pts, w, x), abs=1e-15
                )

    def test_ties_merge_into_weights(self):
        cdf = EmpiricalCdf([1.0, 1.0, 2.0, 2.0, 2.0, 5.0])
        assert cdf.support_size == 3
        assert np.array_equal(cdf.points, [1.0, 2.0, 5.0])
        assert np.allclose(cdf.weights, [2 / 6, 3 / 6, 1 / 6])
        assert cdf.eval(1.0) == 2 / 6
        assert cdf.eval(2.0) == 5 / 6
        assert cdf.left_limit(2.0) == 2 / 6
        assert cdf.eval(5.0) == 1.0

    def test_cumulative_ratios_are_single_division(self):
        # the table entry for the k-th of n points must be the float k/n,
        # not an accumulated sum of 1/n terms
        cdf = EmpiricalCdf(np.arange(10.0))
        for k in range(1, 11):
            assert cdf.eval(float(k - 1)) == k / 10

    def test_inverse_matches_brute_force(self):
        rng = np.random.default_rng(102)
        for _ in range(30):
            n = int(rng.integers(1, 40))
            values = rng.normal(size=n)
            cdf = EmpiricalCdf(values)
            levels = np.concatenate([[0.0, 1.0], rng.random(20), cdf._cum])
            for u in levels:
                assert cdf.inverse(u) == brute_inverse(cdf.points, cdf._cum, u)

    def test_inverse_boundary_conventions(self):
        cdf = EmpiricalCdf([3.0, 1.0, 2.0])
        assert cdf.inverse(0.0) == -np.inf
        assert cdf.inverse(1.0) == 3.0
        assert cdf.inverse(1 / 3) == 1.0
        assert cdf.inverse(np.nextafter(1 / 3, 1.0)) == 2.0

    def test_galois_inequality(self):
        rng = np.random.default_rng(103)
        values = rng.normal(size=25)
        cdf = EmpiricalCdf(values)
        u = np.maximum(rng.random(10_000), np.finfo(float).tiny)
        x = np.concatenate([rng.normal(size=9_998), [-np.inf, np.inf]])
        left = cdf.inverse(u) <= x
        right = u <= cdf.eval(x)
        assert np.array_equal(left, right)

    def test_weighted_construction(self):
        cdf = EmpiricalCdf([3.0, 1.0, 3.0], weights=[1.0, 2.0, 3.0])
        assert np.array_equal(cdf.points, [1.0, 3.0])
        assert np.allclose(cdf.weights, [2 / 6, 4 / 6])
        assert cdf.eval(1.0) == pytest.approx(2 / 6)
        assert cdf.eval(3.0) == 1.0

    def test_scalar_in_scalar_out(self):
        cdf = EmpiricalCdf([1.0, 2.0])
        assert isinstance(cdf.eval(1.5), float)
        assert isinstance(cdf.inverse(0.5), float)
        assert cdf.eval(np.array([1.5])).shape == (1,)

    @pytest.mark.parametrize(
        "bad",
        [[], [np.nan], [np.inf], [1.0, -np.inf]],
    )
    def test_rejects_bad_points(self, bad):
        with pytest.raises(ValueError):
            EmpiricalCdf(bad)

    def test_rejects_bad_weights(self):
        with pytest.raises(ValueError):
            EmpiricalCdf([1.0, 2.0], weights=[1.0])
        with pytest.raises(ValueError):
            EmpiricalCdf([1.0, 2.0], weights=[1.0, 0.0])
        with pytest.raises(ValueError):
            EmpiricalCdf([1.0, 2.0], weights=[1.0, -2.0])

    def test_rejects_nan_queries_and_bad_levels(self):
        cdf = EmpiricalCdf([1.0, 2.0])
        with pytest.raises(ValueError):
            cdf.eval(np.nan)
        with pytest.raises(ValueError):
            cdf.inverse(-0.1)
        with pytest.raises(ValueError):
            cdf.inverse(1.1)


class TestContinuousCdf:
    def test_kind_tags(self):
        handle = ContinuousCdf(Normal(0.0, 1.0))
        assert handle.kind == "known"
        assert ContinuousCdf(Normal(0.0, 1.0), kind="parametric").kind == "parametric"
        with pytest.raises(ValueError):
            ContinuousCdf(Normal(0.0, 1.0), kind="empirical")

    def test_left_limit_equals_value(self):
        handle = ContinuousCdf(Exponential(2.0))
        x = np.linspace(-1.0, 4.0, 50)
        assert np.array_equal(handle.left_limit(x), handle.eval(x))

    def test_normal_inversion_roundtrip(self):
        handle = ContinuousCdf(Normal(1.0, 2.0))
        u = np.linspace(1e-6, 1.0 - 1e-6, 501)
        assert np.max(np.abs(handle.eval(handle.inverse(u)) - u)) <= 1e-12

    def test_uniform_inverse_is_exact(self):
        handle = ContinuousCdf(Uniform01())
        u = np.linspace(0.0, 1.0, 101)
        out = handle.inverse(u)
        assert out[0] == -np.inf
        assert np.array_equal(out[1:], u[1:])

    def test_extended_real_endpoints(self):
        handle = ContinuousCdf(Normal(0.0, 1.0))
        assert handle.eval(-np.inf) == 0.0
        assert handle.eval(np.inf) == 1.0
        assert handle.inverse(0.0) == -np.inf
        assert handle.inverse(1.0) == np.inf
