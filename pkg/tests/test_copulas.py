"""Tests of the copula models and parametric margin families."""

from __future__ import annotations

import numpy as np
import pytest
from scipy import integrate, special, stats

from hybridcop.copulas import (
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

SQRT_2PI = np.sqrt(2.0 * np.pi)


def all_models():
    return [
        Independence(2),
        Independence(3),
        Clayton(0.7),
        Clayton(2.5),
        Fgm(0.5),
        Fgm(-0.8),
    ]


# ---------------------------------------------------------------------------
# margin families
# ---------------------------------------------------------------------------


class TestUniform01:
    def test_cdf_clips(self):
        fam = Uniform01()
        x = np.array([-1.0, 0.0, 0.3, 1.0, 2.0])
        assert np.array_equal(fam.cdf(x), [0.0, 0.0, 0.3, 1.0, 1.0])

    def test_quantile_conventions(self):
        fam = Uniform01()
        assert fam.quantile(0.0) == -np.inf
        u = np.linspace(0.01, 1.0, 25)
        assert np.array_equal(fam.quantile(u), u)

    def test_no_parameters(self):
        fam = Uniform01()
        assert fam.n_params == 0
        assert fam.params() == ()
        assert fam.cdf_gradient(np.zeros(4)).shape == (4, 0)
        assert fam.influence(np.zeros(4)).shape == (4, 0)
        assert fam.influence_outer().shape == (0, 0)
        with pytest.raises(ValueError):
            Uniform01.fit([0.1, 0.9])


class TestNormal:
    def test_validation(self):
        with pytest.raises(ValueError):
            Normal(0.0, 0.0)
        with pytest.raises(ValueError):
            Normal(0.0, -1.0)
        with pytest.raises(ValueError):
            Normal(np.inf, 1.0)

    def test_quantile_roundtrip(self):
        fam = Normal(2.0, 0.5)
        u = np.linspace(1e-8, 1 - 1e-8, 301)
        assert np.max(np.abs(fam.cdf(fam.quantile(u)) - u)) <= 1e-12
        x = np.linspace(0.0, 4.0, 301)
        assert np.max(np.abs(fam.quantile(fam.cdf(x)) - x)) <= 1e-9

    def test_quantile_endpoints(self):
        fam = Normal(0.0, 1.0)
        assert fam.quantile(0.0) == -np.inf
        assert fam.quantile(1.0) == np.inf

    def test_gradient_matches_finite_differences(self):
        x = np.array([-1.3, 0.0, 0.4, 2.2])
        mu, sigma, h = 0.3, 1.7, 1e-6
        grad = Normal(mu, sigma).cdf_gradient(x)
        fd_mu = (Normal(mu + h, sigma).cdf(x) - Normal(mu - h, sigma).cdf(x)) / (2 * h)
        fd_sigma = (Normal(mu, sigma + h).cdf(x) - Normal(mu, sigma - h).cdf(x)) / (
            2 * h
        )
        assert np.max(np.abs(grad[:, 0] - fd_mu)) <= 1e-6
        assert np.max(np.abs(grad[:, 1] - fd_sigma)) <= 1e-6

    def test_gradient_vanishes_at_infinite_endpoints(self):
        grad = Normal(0.0, 1.0).cdf_gradient(np.array([-np.inf, np.inf]))
        assert np.array_equal(grad, np.zeros((2, 2)))

    def test_influence_at_one_standard_deviation(self):
        # components are x - mu and ((x - mu)^2 - sigma^2) / (2 sigma)
        psi = Normal(0.0, 1.0).influence(np.array([1.0]))
        assert np.array_equal(psi, [[1.0, 0.0]])

    def test_influence_moments(self):
        fam = Normal(1.0, 2.0)
        rng = np.random.default_rng(7)
        x = rng.normal(1.0, 2.0, size=200_000)
        psi = fam.influence(x)
        assert np.max(np.abs(psi.mean(axis=0))) <= 0.03
        outer = psi.T @ psi / x.size
        assert np.max(np.abs(outer - fam.influence_outer())) <= 0.06

    def test_fit_is_exact_mle(self):
        values = np.array([1.0, 2.0, 3.0, 4.0])
        fit = Normal.fit(values)
        assert fit.mu == 2.5
        assert fit.sigma == np.sqrt(np.mean((values - 2.5) ** 2))
        symmetric = Normal.fit([-1.0, 1.0])
        assert (symmetric.mu, symmetric.sigma) == (0.0, 1.0)

    def test_fit_errors(self):
        with pytest.raises(ValueError):
            Normal.fit([1.0])
        with pytest.raises(ValueError):
            Normal.fit([5.0, 5.0, 5.0])


class TestExponential:
    def test_validation(self):
        with pytest.raises(ValueError):
            Exponential(0.0)
        with pytest.raises(ValueError):
            Exponential(-2.0)

    def test_cdf_support(self):
        fam = Exponential(1.5)
        assert fam.cdf(-1.0) == 0.0
        assert fam.cdf(0.0) == 0.0
        assert fam.cdf(np.inf) == 1.0
        x = np.linspace(0.01, 5.0, 100)
        assert np.allclose(fam.cdf(x), 1.0 - np.exp(-1.5 * x), atol=1e-15)

    def test_quantile_roundtrip(self):
        fam = Exponential(0.7)
        u = np.linspace(1e-9, 1 - 1e-12, 200)
        assert np.max(np.abs(fam.cdf(fam.quantile(u)) - u)) <= 1e-12
        assert fam.quantile(0.0) == -np.inf
        assert fam.quantile(1.0) == np.inf

    def test_gradient_matches_finite_differences(self):
        x = np.array([0.2, 1.0, 3.5])
        rate, h = 1.3, 1e-7
        grad = Exponential(rate).cdf_gradient(x)[:, 0]
        fd = (Exponential(rate + h).cdf(x) - Exponential(rate - h).cdf(x)) / (2 * h)
        assert np.max(np.abs(grad - fd)) <= 1e-6

    def test_gradient_vanishes_off_support(self):
        grad = Exponential(1.0).cdf_gradient(np.array([-3.0, 0.0, np.inf]))
        assert np.array_equal(grad, np.zeros((3, 1)))

    def test_influence_vanishes_at_the_mean(self):
        assert np.array_equal(Exponential(2.0).influence(np.array([0.5])), [[0.0]])

    def test_influence_moments(self):
        fam = Exponential(2.0)
        rng = np.random.default_rng(8)
        x = rng.exponential(0.5, size=200_000)
        psi = fam.influence(x)[:, 0]
        assert abs(psi.mean()) <= 0.02
        assert abs(np.mean(psi**2) - 4.0) <= 0.1
        assert np.allclose(fam.influence_outer(), [[4.0]], atol=1e-15)

    def test_fit_inverts_the_mean(self):
        assert Exponential.fit([2.0, 2.0, 2.0, 2.0]).rate == 0.5

    def test_fit_errors(self):
        with pytest.raises(ValueError):
            Exponential.fit([])
        with pytest.raises(ValueError):
            Exponential.fit([1.0, 0.0])
        with pytest.raises(ValueError):
            Exponential.fit([1.0, -2.0])


# ---------------------------------------------------------------------------
# copula models
# ---------------------------------------------------------------------------


class TestCdfValues:
    def test_independence(self):
        cop = Independence(3)
        assert cop.cdf(np.array([0.2, 0.5, 0.8])) == pytest.approx(0.08)

    def test_clayton_hand_value(self):
        # (u^-t + v^-t - 1)^(-1/t) at theta=2, u=v=0.5: (4+4-1)^(-1/2)
        assert Clayton(2.0).cdf(np.array([0.5, 0.5])) == pytest.approx(
            7.0 ** (-0.5), abs=1e-15
        )

    def test_fgm_hand_value(self):
        value = Fgm(0.5).cdf(np.array([0.3, 0.6]))
        assert value == pytest.approx(0.18 * (1.0 + 0.5 * 0.7 * 0.4), abs=1e-15)

    @pytest.mark.parametrize("model", all_models())
    def test_boundary_values(self, model):
        dim = model.dim
        zero = np.full(dim, 0.5)
        zero[0] = 0.0
        assert model.cdf(zero) == 0.0
        assert model.cdf(np.ones(dim)) == 1.0
        point = np.ones(dim)
        point[-1] = 0.37
        assert model.cdf(point) == pytest.approx(0.37, abs=1e-15)

    @pytest.mark.parametrize("model", all_models())
    def test_input_validation(self, model):
        with pytest.raises(ValueError):
            model.cdf(np.full(model.dim, -0.1))
        with pytest.raises(ValueError):
            model.cdf(np.full(model.dim, 1.1))
        with pytest.raises(ValueError):
            model.cdf(np.full(model.dim + 1, 0.5))
        with pytest.raises(ValueError):
            model.cdf(np.full(model.dim, np.nan))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            Clayton(0.0)
        with pytest.raises(ValueError):
            Clayton(-1.0)
        with pytest.raises(ValueError):
            Fgm(1.5)
        with pytest.raises(ValueError):
            Independence(0)


class TestPartialDerivatives:
    @pytest.mark.parametrize("model", all_models())
    def test_matches_central_differences(self, model):
        rng = np.random.default_rng(21)
        pts = rng.uniform(0.01, 0.99, size=(300, model.dim))
        step = 1e-6
        for j in range(model.dim):
            shift = np.zeros(model.dim)
            shift[j] = step
            numeric = (model.cdf(pts + shift) - model.cdf(pts - shift)) / (2 * step)
            assert np.max(np.abs(model.partial(j, pts) - numeric)) <= 1e-6

    @pytest.mark.parametrize("model", [Independence(2), Clayton(1.0), Fgm(0.5)])
    def test_differentiated_coordinate_must_be_interior(self, model):
        for bad in (0.0, 1.0):
            point = np.array([bad, 0.5])
            with pytest.raises(ValueError):
                model.partial(0, point)

    @pytest.mark.parametrize("model", [Independence(2), Clayton(1.0), Fgm(0.5)])
    def test_other_coordinates_may_touch_the_boundary(self, model):
        # C(u, 1) = u, so the derivative in u is 1 there; C(u, 0) = 0
        assert model.partial(0, np.array([0.3, 1.0])) == pytest.approx(1.0, abs=1e-12)
        assert model.partial(0, np.array([0.3, 0.0])) == pytest.approx(0.0, abs=1e-12)

    def test_index_validation(self):
        with pytest.raises(ValueError):
            Independence(2).partial(2, np.array([0.5, 0.5]))
        with pytest.raises(ValueError):
            Independence(2).partial(-1, np.array([0.5, 0.5]))


class TestSamplers:
    @pytest.mark.parametrize("theta", [0.4, 1.0, 3.0])
    def test_clayton_conditional_inversion_roundtrip(self, theta):
        # reconstruct the sampler transform literally and check that the
        # conditional cdf (the partial derivative in u) recovers the w draw
        u, w = np.meshgrid(np.linspace(0.05, 0.95, 9), np.linspace(0.05, 0.95, 9))
        u, w = u.ravel(), w.ravel()
        v = ((w ** (-theta / (1.0 + theta)) - 1.0) * u ** (-theta) + 1.0) ** (
            -1.0 / theta
        )
        back = Clayton(theta).partial(0, np.stack([u, v], axis=-1))
        assert np.max(np.abs(back - w)) <= 1e-9

    @pytest.mark.parametrize("theta", [-0.9, 0.5, 1.0])
    def test_fgm_conditional_inversion_roundtrip(self, theta):
        u, w = np.meshgrid(np.linspace(0.05, 0.95, 9), np.linspace(0.05, 0.95, 9))
        u, w = u.ravel(), w.ravel()
        a = theta * (1.0 - 2.0 * u)
        v = 2.0 * w / (1.0 + a + np.sqrt((1.0 + a) ** 2 - 4.0 * a * w))
        back = Fgm(theta).partial(0, np.stack([u, v], axis=-1))
        assert np.max(np.abs(back - w)) <= 1e-9

    @pytest.mark.parametrize("model", [Independence(2), Clayton(1.5), Fgm(0.8)])
    def test_samples_live_in_the_open_cube(self, model):
        sample = model.sample(50_000, np.random.default_rng(31))
        assert sample.shape == (50_000, model.dim)
        assert np.all(sample > 0.0)
        assert np.all(sample < 1.0)

    @pytest.mark.parametrize("model", [Clayton(1.0), Fgm(0.5), Fgm(-0.8)])
    def test_sample_cdf_matches_model_cdf(self, model):
        n = 200_000
        sample = model.sample(n, np.random.default_rng(32))
        for point in ([0.3, 0.4], [0.5, 0.5], [0.8, 0.2]):
            point = np.array(point)
            frac = np.mean(np.all(sample <= point, axis=1))
            target = model.cdf(point)
            bound = 4.0 * np.sqrt(target * (1.0 - target) / n)
            assert abs(frac - target) <= bound

    @pytest.mark.parametrize(
        "model", [Independence(2), Clayton(1.0), Clayton(3.0), Fgm(0.5), Fgm(-1.0)]
    )
    def test_sample_kendall_tau(self, model):
        sample = model.sample(4_000, np.random.default_rng(33))
        tau = stats.kendalltau(sample[:, 0], sample[:, 1]).statistic
        assert abs(tau - model.kendall_tau()) <= 0.05


class TestKendallTau:
    def test_clayton_tau_against_numerical_integration(self):
        # tau = 4 E[C(U,V)] - 1; the theta=1 density is 2uv (u+v-uv)^-3
        def density(v, u):
            s = u + v - u * v
            return 2.0 * u * v / s**3

        def c_times_density(v, u):
            s = u + v - u * v
            return (u * v / s) * density(v, u)

        mass, _ = integrate.dblquad(density, 0.0, 1.0, 0.0, 1.0)
        assert mass == pytest.approx(1.0, abs=1e-8)
        mean_c, _ = integrate.dblquad(c_times_density, 0.0, 1.0, 0.0, 1.0)
        tau = 4.0 * mean_c - 1.0
        assert tau == pytest.approx(1.0 / 3.0, abs=1e-7)
        assert Clayton(1.0).kendall_tau() == pytest.approx(1.0 / 3.0, abs=1e-15)

    @pytest.mark.parametrize("theta", [-1.0, 0.25, 1.0])
    def test_fgm_tau_against_numerical_integration(self, theta):
        def c_times_density(v, u):
            c = u * v * (1.0 + theta * (1.0 - u) * (1.0 - v))
            dens = 1.0 + theta * (1.0 - 2.0 * u) * (1.0 - 2.0 * v)
            return c * dens

        mean_c, _ = integrate.dblquad(c_times_density, 0.0, 1.0, 0.0, 1.0)
        tau = 4.0 * mean_c - 1.0
        assert tau == pytest.approx(2.0 * theta / 9.0, abs=1e-8)
        assert Fgm(theta).kendall_tau() == pytest.approx(2.0 * theta / 9.0)

    def test_independence_tau(self):
        assert Independence(2).kendall_tau() == 0.0


class TestFactories:
    def test_margin_names_roundtrip(self):
        assert margin_family("uniform01") == Uniform01()
        assert margin_family("normal", ("1.5", "2")) == Normal(1.5, 2.0)
        assert margin_family("exponential", (3,)) == Exponential(3.0)
        assert set(MARGIN_NAMES) == {"uniform01", "normal", "exponential"}

    def test_margin_errors(self):
        with pytest.raises(ValueError):
            margin_family("uniform01", (1.0,))
        with pytest.raises(ValueError):
            margin_family("normal", (1.0,))
        with pytest.raises(ValueError):
            margin_family("exponential", ())
        with pytest.raises(ValueError):
            margin_family("cauchy")

    def test_copula_names_roundtrip(self):
        assert copula_model("independence", dim=3) == Independence(3)
        assert copula_model("clayton", 1.5) == Clayton(1.5)
        assert copula_model("fgm", -0.5) == Fgm(-0.5)
        assert set(COPULA_NAMES) == {"independence", "clayton", "fgm"}

    def test_copula_errors(self):
        with pytest.raises(ValueError):
            copula_model("independence", theta=1.0)
        with pytest.raises(ValueError):
            copula_model("clayton")
        with pytest.raises(ValueError):
            copula_model("clayton", 1.0, dim=3)
        with pytest.raises(ValueError):
            copula_model("gumbel", 2.0)


def test_normal_cdf_agrees_with_scipy():
    fam = Normal(0.3, 1.2)
    x = np.linspace(-4.0, 5.0, 200)
    assert np.max(np.abs(fam.cdf(x) - special.ndtr((x - 0.3) / 1.2))) == 0.0
