from __future__ import annotations

import numpy as np
import pytest
from scipy import special

from harmball import _kernels_py, kernels


def _oracle_table(lam, K, t):
    if lam == 0:
        return np.cos(np.arange(K + 1)[:, None] * np.arccos(t)[None, :])
    rows = [special.eval_gegenbauer(k, lam, t) / special.eval_gegenbauer(k, lam, 1.0) for k in range(K + 1)]
    return np.vstack(rows)


@pytest.mark.parametrize("lam", [0.0, 0.5, 1.0, 1.5, 3.0])
def test_table_matches_scipy(each_backend, lam):
    t = np.linspace(-1, 1, 41)
    got = kernels.gegenbauer_table(lam, 30, t)
    assert got.shape == (31, 41)
    np.testing.assert_allclose(got, _oracle_table(lam, 30, t), atol=1e-12)


@pytest.mark.parametrize("lam", [0.0, 0.5, 2.5])
def test_sum_matches_table(each_backend, rng, lam):
    t = rng.uniform(-1, 1, 57)
    c = rng.standard_normal(25)
    got = kernels.gegenbauer_sum(c, lam, t)
    want = c @ _oracle_table(lam, 24, t)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_sum_edge_sizes(each_backend):
    t = np.array([0.3, -0.7])
    np.testing.assert_array_equal(kernels.gegenbauer_sum(np.array([]), 0.5, t), [0.0, 0.0])
    np.testing.assert_array_equal(kernels.gegenbauer_sum(np.array([2.0]), 0.5, t), [2.0, 2.0])
    np.testing.assert_allclose(kernels.gegenbauer_sum(np.array([1.0, 3.0]), 0.5, t), 1 + 3 * t)


def test_backends_agree(rng):
    if "compiled" not in kernels.available_backends():
        pytest.skip("compiled kernels not built")
    from harmball import _ckernels

    t = rng.uniform(-1, 1, 200)
    c = rng.standard_normal(300)
    for lam in (0.0, 0.5, 1.0, 7.5):
        np.testing.assert_allclose(
            _ckernels.gegenbauer_table(lam, 80, t), _kernels_py.gegenbauer_table(lam, 80, t), rtol=1e-13, atol=1e-14
        )
        np.testing.assert_allclose(
            _ckernels.gegenbauer_sum(c, lam, t), _kernels_py.gegenbauer_sum(c, lam, t), rtol=1e-12, atol=1e-12
        )


def test_use_backend_switches_and_rejects_unknown():
    previous = kernels.backend()
    try:
        kernels.use_backend("python")
        assert kernels.backend() == "python"
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")
    finally:
        kernels.use_backend(previous)
