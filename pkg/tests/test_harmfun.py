from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmball import bases, harmfun
from harmball.errors import DomainError, PreconditionError, TruncationBudgetError, UnsupportedError
from harmball.harmfun import (
    EvalPoint,
    GeneralExpansion,
    KernelFunction,
    ZonalExpansion,
    bergman_Qm,
    convolve_with_poisson,
    expansion_from_json,
    expansion_to_json,
    frac_derivative,
    frac_integral,
    gradient_eval,
    multiplier_apply,
    poisson_closed,
    poisson_series,
    test_function as make_test_function,
)
from harmball.multipliers import MultiplierSequence
from harmball.specialfn import gamma_ratio, sphere_rule, surface_area, zonal_reduction_rule

from conftest import random_unit, unit


def _point(r, direction):
    return EvalPoint(r, unit(direction))


def _random_zonal(rng, n, K=8):
    return ZonalExpansion(n, random_unit(rng, n), rng.standard_normal(K + 1))


# --- evaluation -----------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 5])
def test_constant_expansion_is_one(n, rng):
    f = ZonalExpansion(n, unit(np.ones(n)), [surface_area(n)])
    assert f.eval(_point(0.4, random_unit(rng, n))) == pytest.approx(1.0, rel=1e-14)


def test_linear_function_n3():
    # <x, p> = r t: its degree-1 zonal coefficient is sigma / d_1
    p = unit([1.0, 2.0, 2.0])
    f = ZonalExpansion(3, p, [0.0, surface_area(3) / 3.0])
    x = unit([0.3, -1.0, 0.5])
    assert f.eval(EvalPoint(0.6, x)) == pytest.approx(0.6 * float(x @ p), abs=1e-14)


def test_eval_outside_ball_raises():
    with pytest.raises(DomainError):
        EvalPoint(1.0, [1.0, 0.0])
    with pytest.raises(DomainError):
        EvalPoint(0.5, [1.0, 1.0])


def test_certified_series_refuses_beyond_radius():
    f = make_test_function(0.5, [0.0, 0.0, 0.9], r_max=0.9)
    f.eval(EvalPoint(0.9, [1.0, 0.0, 0.0]))
    with pytest.raises(TruncationBudgetError):
        f.eval(EvalPoint(0.95, [1.0, 0.0, 0.0]))


# --- Poisson kernel --------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_poisson_at_origin(n):
    assert poisson_closed(n, EvalPoint(0.0, np.eye(n)[0]), np.eye(n)[1]) == pytest.approx(1 / surface_area(n), rel=1e-15)


def test_poisson_n3_origin_is_one_over_4pi():
    assert poisson_closed(3, np.zeros(3), [0, 0, 1.0]) == pytest.approx(1 / (4 * math.pi), rel=1e-15)


def test_poisson_direct_arithmetic_n2():
    got = poisson_closed(2, EvalPoint(0.9, [1.0, 0.0]), [1.0, 0.0])
    assert got == pytest.approx(0.19 / (2 * math.pi * 0.01), rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_poisson_integrates_to_one(n):
    rule = zonal_reduction_rule(n, 200)
    x = EvalPoint(0.7, np.eye(n)[0])
    vals = [poisson_closed(n, x, _direction_with_cosine(n, t)) for t in rule.nodes]
    assert rule.integrate(vals) == pytest.approx(1.0, rel=1e-12)


def _direction_with_cosine(n, t):
    v = np.zeros(n)
    v[0] = t
    v[1] = math.sqrt(max(0.0, 1 - t * t))
    return v


def test_poisson_series_degree_zero():
    assert poisson_series(4, EvalPoint(0.8, np.eye(4)[0]), np.eye(4)[2], K=0) == pytest.approx(1 / surface_area(4))


@pytest.mark.parametrize("n,t", [(3, 1.0), (2, 0.0)])
def test_poisson_series_matches_closed(n, t):
    x = EvalPoint(0.5, np.eye(n)[0])
    yp = _direction_with_cosine(n, t)
    assert poisson_series(n, x, yp) == pytest.approx(poisson_closed(n, x, yp), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 5), r=st.floats(0.0, 0.95), seed=st.integers(0, 2**31))
def test_poisson_series_closed_property(n, r, seed):
    rng = np.random.default_rng(seed)
    x = EvalPoint(r, random_unit(rng, n))
    yp = random_unit(rng, n)
    assert poisson_series(n, x, yp) == pytest.approx(poisson_closed(n, x, yp), rel=1e-8)


# --- Bergman kernel and test functions ------------------------------------


def test_bergman_origin_n2_m0():
    assert bergman_Qm(0, np.zeros(2), np.zeros(2)) == pytest.approx(1 / math.pi, rel=1e-14)


@pytest.mark.parametrize("m", [0.0, 0.5, 2.0])
def test_bergman_constant_when_y_zero(m, rng):
    n = 3
    want = 2 * gamma_ratio(n, m + 1, 0) / surface_area(n)
    x = EvalPoint(0.8, random_unit(rng, n))
    assert bergman_Qm(m, x, np.zeros(n)) == pytest.approx(float(want), rel=1e-13)


def test_test_function_at_origin_matches_kernel():
    y = 0.6 * unit([1.0, 2.0, -1.0])
    f = make_test_function(0.5, y)
    assert f.eval(np.zeros(3)) == pytest.approx(bergman_Qm(0.5, np.zeros(3), y), rel=1e-13)


@pytest.mark.parametrize("n,m", [(2, 0), (3, 1), (4, 2), (5, 3)])
def test_closed_kernel_matches_series(n, m, rng):
    y = 0.7 * random_unit(rng, n)
    closed = make_test_function(m, y, "closed")
    series = make_test_function(m, y, "series", r_max=0.9)
    for _ in range(10):
        x = EvalPoint(rng.uniform(0, 0.9), random_unit(rng, n))
        assert closed.eval(x) == pytest.approx(series.eval(x), rel=1e-9, abs=1e-12)


def test_test_function_coefficients():
    n, m, rho = 3, 1.5, 0.4
    f = make_test_function(m, [0, 0, rho], r_max=0.5)
    k = np.arange(f.K + 1)
    np.testing.assert_allclose(f.coeffs, 2 * gamma_ratio(n, m + 1, k) * rho**k, rtol=1e-13)


def test_bergman_errors():
    with pytest.raises(DomainError):
        bergman_Qm(-1.0, np.zeros(2), np.zeros(2))
    with pytest.raises(DomainError):
        make_test_function(0, [1.0, 0.0])
    with pytest.raises(UnsupportedError):
        make_test_function(0.5, [0.5, 0.0], "closed")


# --- fractional operators -------------------------------------------------


def test_frac_derivative_n2_order_one():
    f = ZonalExpansion(2, [1.0, 0.0], [1.0, 2.0, 3.0, 4.0])
    np.testing.assert_allclose(frac_derivative(f, 1).coeffs, [1.0, 4.0, 9.0, 16.0], rtol=1e-14)


@pytest.mark.parametrize("n,t", [(2, 0.5), (3, 2.5), (6, 1.0)])
def test_frac_derivative_degree_zero_factor(n, t):
    f = ZonalExpansion(n, np.eye(n)[0], [1.0])
    want = math.gamma(n / 2 + t) / (math.gamma(n / 2) * math.gamma(t))
    assert frac_derivative(f, t).coeffs[0] == pytest.approx(want, rel=1e-13)


def test_frac_derivative_reproduces_bergman_weights():
    n, m, rho = 3, 0.5, 0.5
    f = make_test_function(m, [0, 0, rho], r_max=0.5)
    k = np.arange(f.K + 1)
    stripped = f.replace(coeffs=np.ones(f.K + 1))
    np.testing.assert_allclose(frac_derivative(stripped, m + 1).coeffs, f.coeffs / (2 * rho**k), rtol=1e-12)


def test_frac_integral_examples():
    f = ZonalExpansion(2, [1.0, 0.0], [2.0, 4.0, 6.0])
    np.testing.assert_allclose(frac_integral(f, 1).coeffs, [2.0, 2.0, 2.0], rtol=1e-14)
    c = ZonalExpansion(3, [0, 0, 1.0], [1.0])
    b = 2.5
    assert frac_integral(c, b).coeffs[0] == pytest.approx(math.gamma(1.5) * math.gamma(b) / math.gamma(1.5 + b))


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 6), b=st.floats(0.1, 6.0), seed=st.integers(0, 2**31))
def test_frac_integral_inverts_derivative(n, b, seed):
    f = _random_zonal(np.random.default_rng(seed), n, 20)
    np.testing.assert_allclose(frac_integral(frac_derivative(f, b), b).coeffs, f.coeffs, rtol=1e-13)


def test_frac_order_errors():
    f = ZonalExpansion(2, [1.0, 0.0], [1.0])
    with pytest.raises(DomainError):
        frac_derivative(f, 0)
    with pytest.raises(DomainError):
        frac_integral(f, -1)


# --- convolution and multipliers ------------------------------------------


def test_convolve_delta_is_constant(rng):
    n = 4
    c = MultiplierSequence(n, "zonal", [1.0])
    g = convolve_with_poisson(c, random_unit(rng, n))
    assert g.eval(EvalPoint(0.7, random_unit(rng, n))) == pytest.approx(1 / surface_area(n), rel=1e-14)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_convolve_one_is_poisson(n, rng):
    c = MultiplierSequence.from_rule(n, "one", K=200)
    xp = random_unit(rng, n)
    g = convolve_with_poisson(c, xp)
    y = EvalPoint(0.6, random_unit(rng, n))
    assert g.eval(y) == pytest.approx(poisson_closed(n, y, xp), rel=1e-10)


def test_convolve_general_matches_zonal(rng):
    n = 2
    c = MultiplierSequence.from_rule(n, "one", K=80)
    xp = random_unit(rng, n)
    zonal = convolve_with_poisson(c, xp)
    # b_k^j = c_k Y_j(x') in the fixed basis
    vals = bases.basis_values(n, c.K, xp[None, :])
    general = GeneralExpansion(n, [ck * v[:, 0] for ck, v in zip(c.coeffs, vals)])
    for _ in range(5):
        y = EvalPoint(0.7, random_unit(rng, n))
        assert general.eval(y) == pytest.approx(zonal.eval(y), abs=1e-10)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_convolution_symmetry(n, rng):
    c = MultiplierSequence(n, "zonal", rng.standard_normal(15))
    xp, yp = random_unit(rng, n), random_unit(rng, n)
    r = 0.8
    a = convolve_with_poisson(c, yp).eval(EvalPoint(r, xp))
    b = convolve_with_poisson(c, xp).eval(EvalPoint(r, yp))
    assert a == pytest.approx(b, abs=1e-12)


def test_multiplier_identity_and_projection(rng):
    f = _random_zonal(rng, 3, 10)
    one = MultiplierSequence(3, "zonal", np.ones(11))
    np.testing.assert_array_equal(multiplier_apply(one, f).coeffs, f.coeffs)
    delta = MultiplierSequence(3, "zonal", [1.0])
    np.testing.assert_array_equal(multiplier_apply(delta, f).coeffs, f.coeffs[:1])


def test_multiplier_as_lambda(rng):
    n, m = 3, 1.5
    f = _random_zonal(rng, n, 12)
    c = MultiplierSequence(n, "zonal", gamma_ratio(n, m + 1, np.arange(13)))
    np.testing.assert_allclose(multiplier_apply(c, f).coeffs, frac_derivative(f, m + 1).coeffs, rtol=1e-14)


def test_lambda_commutes_with_multiplier(rng):
    n, t = 3, 0.75
    f = _random_zonal(rng, n, 12)
    c = MultiplierSequence(n, "zonal", rng.standard_normal(13))
    left = frac_derivative(multiplier_apply(c, f), t).coeffs
    right = multiplier_apply(c, frac_derivative(f, t)).coeffs
    np.testing.assert_allclose(left, right, rtol=1e-15)


def test_convolve_index_dependent_sequence(rng):
    n = 3
    blocks = [rng.standard_normal(2 * k + 1) for k in range(5)]
    c = MultiplierSequence(n, "general", blocks)
    xp = random_unit(rng, n)
    g = convolve_with_poisson(c, xp)
    assert isinstance(g, GeneralExpansion)
    y = EvalPoint(0.6, random_unit(rng, n))
    bx = bases.basis_values(n, 4, xp[None, :])
    by = bases.basis_values(n, 4, y.direction[None, :])
    want = sum(y.r**k * np.sum(blocks[k] * bx[k][:, 0] * by[k][:, 0]) for k in range(5))
    assert g.eval(y) == pytest.approx(want, abs=1e-13)


def test_general_sequence_on_zonal_function_is_unsupported(rng):
    f = _random_zonal(rng, 2, 2)
    c = MultiplierSequence(2, "general", [[1.0], [1.0, 2.0], [0.5, 0.5]])
    with pytest.raises(UnsupportedError):
        multiplier_apply(c, f)


def test_general_multiplier_action(rng):
    f = _random_zonal(rng, 3, 3).to_general()
    blocks = [rng.standard_normal(2 * k + 1) for k in range(4)]
    c = MultiplierSequence(3, "general", blocks)
    g = multiplier_apply(c, f)
    for k in range(4):
        np.testing.assert_allclose(g.coeffs[k], f.coeffs[k] * blocks[k])


def test_zonal_to_general_same_function(rng):
    for n in (2, 3):
        f = _random_zonal(rng, n, 6)
        g = f.to_general()
        x = EvalPoint(0.75, random_unit(rng, n))
        assert g.eval(x) == pytest.approx(f.eval(x), abs=1e-12)


def test_general_expansion_shape_checked():
    with pytest.raises(DomainError):
        GeneralExpansion(3, [[1.0], [1.0, 2.0]])
    with pytest.raises(UnsupportedError):
        GeneralExpansion(4, [[1.0]])


# --- gradients and harmonicity --------------------------------------------


def test_gradient_of_linear_function(rng):
    p = random_unit(rng, 3)
    f = ZonalExpansion(3, p, [0.0, surface_area(3) / 3.0])
    x = EvalPoint(0.5, random_unit(rng, 3))
    np.testing.assert_allclose(gradient_eval(f, x), p, atol=1e-14)


def test_gradient_of_constant(rng):
    f = ZonalExpansion(4, random_unit(rng, 4), [3.0])
    np.testing.assert_allclose(gradient_eval(f, EvalPoint(0.3, random_unit(rng, 4))), 0.0, atol=1e-15)


def _fd_gradient(f, x, h=1e-5):
    g = np.zeros(x.size)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = h
        g[i] = (f.eval(x + e) - f.eval(x - e)) / (2 * h)
    return g


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gradient_finite_difference(n, rng):
    f = _random_zonal(rng, n, 10)
    for _ in range(5):
        x = rng.uniform(0.1, 0.85) * random_unit(rng, n)
        np.testing.assert_allclose(gradient_eval(f, x), _fd_gradient(f, x), atol=1e-6)


@pytest.mark.parametrize("n", [2, 3])
def test_general_gradient_finite_difference(n, rng):
    f = _random_zonal(rng, n, 6).to_general()
    blocks = [b + rng.standard_normal(b.size) for b in f.coeffs]
    f = GeneralExpansion(n, blocks)
    x = 0.6 * random_unit(rng, n)
    np.testing.assert_allclose(gradient_eval(f, x), _fd_gradient(f, x), atol=1e-6)


def test_kernel_gradient_finite_difference(rng):
    f = KernelFunction(3, random_unit(rng, 3), 2, 0.8, 2.0)
    x = 0.5 * random_unit(rng, 3)
    np.testing.assert_allclose(gradient_eval(f, x), _fd_gradient(f, x), rtol=1e-6, atol=1e-6)


def _laplacian(f, x, h=1e-3):
    total = -2 * x.size * f.eval(x)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = h
        total += f.eval(x + e) + f.eval(x - e)
    return total / h**2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_harmonicity(n, rng):
    f = _random_zonal(rng, n, 8)
    x = 0.5 * random_unit(rng, n)
    scale = np.max(np.abs(f.coeffs))
    assert abs(_laplacian(f, x)) < 1e-3 * scale


def test_kernel_function_harmonic(rng):
    f = KernelFunction(3, random_unit(rng, 3), 1, 0.7, 2.0)
    x = 0.4 * random_unit(rng, 3)
    assert abs(_laplacian(f, x)) < 1e-4 * abs(f.eval(x)) + 1e-6


# --- serialization -------------------------------------------------------


def test_json_round_trip(rng):
    z = ZonalExpansion(3, random_unit(rng, 3), rng.standard_normal(7) * 1e-300)
    back = expansion_from_json(expansion_to_json(z))
    np.testing.assert_array_equal(back.coeffs, z.coeffs)
    np.testing.assert_array_equal(back.pole, z.pole)
    g = z.to_general()
    back = expansion_from_json(expansion_to_json(g))
    for a, b in zip(back.coeffs, g.coeffs):
        np.testing.assert_array_equal(a, b)


def test_json_unknown_kind():
    with pytest.raises(PreconditionError):
        expansion_from_json('{"n": 2, "kind": "radial", "coeffs": []}')


def test_eval_function_dispatches(rng):
    f = _random_zonal(rng, 3)
    x = EvalPoint(0.2, random_unit(rng, 3))
    assert harmfun.eval(f, x) == f.eval(x)
