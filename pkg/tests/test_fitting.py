from __future__ import annotations

import numpy as np
import pytest

from harmball.errors import DomainError
from harmball.fitting import fit_exponent, tail_verdict


def test_exact_power_law():
    d = 2.0 ** -np.arange(1, 12)
    fit = fit_exponent(np.column_stack([d, 3.0 * d**-1.75]))
    assert fit.slope == pytest.approx(-1.75, abs=1e-12)
    assert fit.intercept == pytest.approx(np.log(3.0), abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0)
    assert fit.npoints == 11


def test_constant_has_zero_slope():
    d = np.linspace(0.01, 0.5, 9)
    fit = fit_exponent(np.column_stack([d, np.full(9, 4.0)]))
    assert fit.slope == pytest.approx(0.0, abs=1e-12)


def test_noisy_power_law(rng):
    d = 2.0 ** -np.arange(1, 25)
    v = d**-1.5 * np.exp(rng.normal(0, 0.01, d.size))
    fit = fit_exponent(np.column_stack([d, v]))
    assert abs(fit.slope + 1.5) < 0.01
    assert 0 < fit.stderr < 0.01


def test_affine_equivariance(rng):
    # rescaling values multiplies by a constant: slope unchanged, intercept shifted
    d = rng.uniform(1e-4, 0.5, 15)
    v = rng.uniform(1, 2, 15) * d**-0.7
    a = fit_exponent(np.column_stack([d, v]))
    b = fit_exponent(np.column_stack([d, 5.0 * v]))
    assert b.slope == pytest.approx(a.slope, abs=1e-12)
    assert b.intercept - a.intercept == pytest.approx(np.log(5.0), abs=1e-12)


def test_correction_removes_smooth_prefactor():
    d = 2.0 ** -np.arange(1, 10)
    v = d**-2.0 * (1.0 + 0.8 * d - 0.3 * d**2)
    plain = fit_exponent(np.column_stack([d, v]))
    corrected = fit_exponent(np.column_stack([d, v]), correction=2)
    assert abs(corrected.slope + 2.0) < abs(plain.slope + 2.0)
    assert corrected.slope == pytest.approx(-2.0, abs=1e-3)


@pytest.mark.parametrize(
    "samples",
    [[(0.1, 1.0), (0.2, 2.0)], [(0.1, 1.0), (0.2, -1.0), (0.3, 1.0)], [(0.1, 1.0), (0.1, 2.0), (0.3, 1.0)], [[1, 2, 3]]],
)
def test_invalid_samples(samples):
    with pytest.raises(DomainError):
        fit_exponent(samples)


def test_tail_verdicts():
    d = 2.0 ** -np.arange(1, 16)
    assert tail_verdict(d, np.ones_like(d))[2] == "finite"
    assert tail_verdict(d, d**-0.5)[2] == "infinite"
    assert tail_verdict(d, d**-0.1)[2] == "inconclusive"
    assert tail_verdict(d, np.zeros_like(d))[2] == "finite"
    # the exponent weight turns growth into boundedness
    assert tail_verdict(d, d**-0.5, exponent=0.5)[2] == "finite"


def test_tail_uses_only_small_deltas():
    d = 2.0 ** -np.arange(1, 12)
    v = np.where(d > 0.125, d**-3.0, 1.0)
    assert tail_verdict(d, v)[2] == "finite"


def test_tail_too_few_points():
    slope, _, verdict = tail_verdict([0.5, 0.25, 0.1], [1.0, 2.0, 3.0])
    assert verdict == "inconclusive" and np.isnan(slope)
