from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from harmball.errors import CoefficientOverflowError, DomainError, UnsupportedError
from harmball.specialfn import (
    angle_rule,
    dim_sph,
    gamma_ratio,
    gauss_jacobi,
    gegenbauer_all,
    log_gamma,
    normalized_gegenbauer,
    radial_rule,
    sphere_rule,
    surface_area,
    zonal_eval,
    zonal_reduction_rule,
)


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (5.0, math.log(24.0)), (0.5, 0.5 * math.log(math.pi))])
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-14)


@given(st.floats(min_value=1e-3, max_value=1e6))
@settings(max_examples=200, deadline=None)
def test_log_gamma_matches_mpmath(x):
    ref = float(mpmath.loggamma(mpmath.mpf(x)))
    assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", [0.0, -1.0, float("nan"), float("inf")])
def test_log_gamma_rejects_non_positive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_gamma_ratio_against_mpmath():
    for n, s in [(2, 1.0), (3, 0.5), (5, 2.5), (4, 7.0)]:
        k = np.arange(0, 200, 7)
        got = gamma_ratio(n, s, k)
        for kk, g in zip(k, got):
            ref = mpmath.gamma(kk + n / 2 + s) / (mpmath.gamma(kk + n / 2) * mpmath.gamma(s))
            assert g == pytest.approx(float(ref), rel=1e-11)


def test_gamma_ratio_simple_cases():
    k = np.arange(10)
    np.testing.assert_allclose(gamma_ratio(2, 1.0, k), k + 1.0, rtol=1e-13)
    with pytest.raises(CoefficientOverflowError):
        gamma_ratio(3, 400.0, np.array([10**6]))


@pytest.mark.parametrize("n, k, d", [(3, 0, 1), (3, 5, 11), (4, 2, 9), (2, 0, 1), (2, 7, 2), (6, 1, 6)])
def test_dim_sph_values(n, k, d):
    assert dim_sph(n, k) == d


@given(st.integers(2, 9), st.integers(0, 60))
def test_dim_sph_matches_binomial_difference(n, k):
    ref = math.comb(n + k - 1, n - 1) - (math.comb(n + k - 3, n - 1) if k >= 2 else 0)
    assert dim_sph(n, k) == ref


def test_dim_sph_errors():
    with pytest.raises(DomainError):
        dim_sph(1, 2)
    with pytest.raises(DomainError):
        dim_sph(3, -1)


def test_surface_area_values():
    assert surface_area(2) == pytest.approx(2 * math.pi, rel=1e-15)
    assert surface_area(3) == pytest.approx(4 * math.pi, rel=1e-15)
    assert surface_area(4) == pytest.approx(2 * math.pi**2, rel=1e-15)


def test_gegenbauer_small_cases():
    vals = gegenbauer_all(1.0, 2, np.array([0.5]))
    assert vals[0, 0] == 1.0
    assert vals[1, 0] == pytest.approx(1.0, abs=1e-15)
    assert vals[2, 0] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5, 2.5, 4.0])
def test_gegenbauer_matches_scipy(each_backend, lam):
    t = np.linspace(-1, 1, 41)
    tab = gegenbauer_all(lam, 30, t)
    for k in range(31):
        np.testing.assert_allclose(tab[k], special.eval_gegenbauer(k, lam, t), rtol=1e-11, atol=1e-11)


def test_chebyshev_limit_normalized(each_backend):
    t = np.linspace(-1, 1, 17)
    tab = normalized_gegenbauer(0.0, 12, t)
    for k in range(13):
        np.testing.assert_allclose(tab[k], np.cos(k * np.arccos(t)), atol=1e-13)


def test_zonal_eval_values():
    assert zonal_eval(3, 1, np.array([0.3]))[0] == pytest.approx(3 * 0.3 / (4 * math.pi), rel=1e-14)
    assert zonal_eval(2, 2, np.array([0.0]))[0] == pytest.approx(-1 / math.pi, rel=1e-14)


@given(st.integers(2, 7), st.integers(0, 40))
def test_zonal_at_pole_is_dimension(n, k):
    assert zonal_eval(n, k, np.array([1.0]))[0] * surface_area(n) == pytest.approx(dim_sph(n, k), rel=1e-10)


def test_gauss_jacobi_examples():
    r = gauss_jacobi(1)
    assert r.nodes[0] == pytest.approx(0.0, abs=1e-15) and r.weights[0] == pytest.approx(2.0)
    assert gauss_jacobi(5).integrate(gauss_jacobi(5).nodes ** 4) == pytest.approx(0.4, abs=1e-15)
    ch = gauss_jacobi(20, -0.5, -0.5)
    assert ch.integrate(np.ones(20)) == pytest.approx(math.pi, abs=1e-12)


@given(st.floats(-0.99, 3.0), st.floats(-0.99, 3.0), st.integers(1, 30))
@settings(max_examples=60, deadline=None)
def test_gauss_jacobi_exact_on_monomials(a, b, N):
    rule = gauss_jacobi(N, a, b)
    x = rule.nodes
    with mpmath.workdps(40):
        a, b = mpmath.mpf(a), mpmath.mpf(b)  # the alternating sum below cancels heavily
        for j in (0, 1, 2 * N - 1):
            # x = 2u - 1 turns the moment into a signed sum of Beta integrals
            ref = 2 ** (a + b + 1) * mpmath.fsum(
                mpmath.binomial(j, i) * (-1) ** (j - i) * 2**i * mpmath.beta(i + b + 1, a + 1) for i in range(j + 1))
            scale = float(2 ** (a + b + 1) * mpmath.beta(b + 1, a + 1))
            assert abs(rule.integrate(x**j) - float(ref)) <= 1e-11 * scale


def test_gauss_jacobi_matches_scipy():
    for N, a, b in [(7, 0.3, -0.4), (40, 2.0, 0.5), (120, -0.5, 1.5)]:
        x, w = special.roots_jacobi(N, a, b)
        rule = gauss_jacobi(N, a, b)
        np.testing.assert_allclose(np.sort(rule.nodes), np.sort(x), atol=1e-12)
        np.testing.assert_allclose(rule.weights[np.argsort(rule.nodes)], w[np.argsort(x)], rtol=1e-10)


def test_gauss_jacobi_unit_interval():
    rule = gauss_jacobi(12, 1.5, 2.0, (0.0, 1.0))
    # int_0^1 (1-u)^1.5 u^2 du = B(3, 2.5)
    assert rule.integrate(np.ones(12)) == pytest.approx(special.beta(3, 2.5), rel=1e-13)


def test_gauss_jacobi_errors():
    with pytest.raises(DomainError):
        gauss_jacobi(0)
    with pytest.raises(DomainError):
        gauss_jacobi(4, -1.0, 0.0)
    with pytest.raises(DomainError):
        gauss_jacobi(4, 0.0, 0.0, (0.0, 2.0))


def test_sphere_rule_examples():
    r2 = sphere_rule(2, 10)
    assert r2.integrate(np.ones(len(r2.weights))) == pytest.approx(2 * math.pi, rel=1e-14)
    r3 = sphere_rule(3, 10)
    assert r3.integrate(r3.points[:, 2] ** 2) == pytest.approx(4 * math.pi / 3, rel=1e-13)
    assert abs(r3.integrate(r3.points[:, 0])) < 1e-12
    with pytest.raises(UnsupportedError):
        sphere_rule(4, 4)


def test_zonal_reduction_total_mass():
    for n in range(2, 8):
        rule = zonal_reduction_rule(n, 10)
        assert rule.integrate(np.ones(10)) == pytest.approx(surface_area(n), rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_angle_rule_integrates_sharp_kernel(n):
    # int_S (1 - 2 r t + r^2)^{-n/2} (1 - r^2) / sigma = 1 (Poisson kernel)
    for r in (0.5, 0.99, 0.9999):
        g = angle_rule(n, 1 - r, 8, 16)
        val = g.weights @ ((1 - r * r) / ((1 - r) ** 2 + 2 * r * g.one_minus_t) ** (n / 2)) / surface_area(n)
        assert val == pytest.approx(1.0, rel=1e-10)


@pytest.mark.parametrize("a", [-0.5, 0.0, 1.0, 2.5])
def test_radial_rule_weighted_integral(a):
    rho = 1 - 2.0**-20
    g = radial_rule(a, 2.0**-20, 8, 16)
    got = g.weights @ (1.0 / (1.0 - rho * g.r) ** (a + 2.0))
    ref = float(mpmath.quad(lambda d: d**a / (1 - rho + rho * d) ** (a + 2), [0, 2**-20, 2**-10, 1]))
    assert got == pytest.approx(ref, rel=1e-9)
    np.testing.assert_array_equal(g.r, 1.0 - g.d)
