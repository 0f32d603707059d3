"""Pure numpy implementation of the hot kernels.

Both functions work with *normalized* Gegenbauer polynomials
``P_k(t) = C_k^lam(t) / C_k^lam(1)``, which satisfy

    P_k = 2(k+lam-1)/(k+2lam-1) t P_{k-1} - (k-1)/(k+2lam-1) P_{k-2},  k >= 2

with ``P_0 = 1`` and ``P_1 = t``.  At ``lam = 0`` this is the Chebyshev
recurrence, so ``P_k(cos x) = cos(k x)``.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def gegenbauer_table(lam: float, K: int, t) -> np.ndarray:
    """Return the ``(K+1, len(t))`` table of normalized Gegenbauer values."""
    t = np.ascontiguousarray(t, dtype=float)
    out = np.empty((K + 1, t.size))
    out[0] = 1.0
    if K >= 1:
        out[1] = t
    for k in range(2, K + 1):
        d = k + 2.0 * lam - 1.0
        out[k] = (2.0 * (k + lam - 1.0) / d) * t * out[k - 1] - ((k - 1.0) / d) * out[k - 2]
    return out


def gegenbauer_sum(coeffs, lam: float, t) -> np.ndarray:
    """Return ``sum_k coeffs[k] P_k(t)`` for every entry of ``t``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=float)
    t = np.ascontiguousarray(t, dtype=float)
    K = coeffs.size - 1
    if K < 0:
        return np.zeros_like(t)
    acc = np.full_like(t, coeffs[0])
    if K == 0:
        return acc
    p_prev = np.ones_like(t)
    p_cur = t.copy()
    acc += coeffs[1] * p_cur
    for k in range(2, K + 1):
        d = k + 2.0 * lam - 1.0
        p_next = (2.0 * (k + lam - 1.0) / d) * t * p_cur - ((k - 1.0) / d) * p_prev
        acc += coeffs[k] * p_next
        p_prev, p_cur = p_cur, p_next
    return acc
