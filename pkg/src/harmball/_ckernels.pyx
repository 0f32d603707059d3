# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the normalized Gegenbauer kernels.

Same contracts as ``harmball._kernels_py``.
"""
import numpy as np

BACKEND = "compiled"


def gegenbauer_table(double lam, Py_ssize_t K, t):
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64).ravel()
    cdef Py_ssize_t T = tv.shape[0]
    out_arr = np.empty((K + 1, T), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double a, b, d
    for i in range(T):
        out[0, i] = 1.0
    if K >= 1:
        for i in range(T):
            out[1, i] = tv[i]
    for k in range(2, K + 1):
        d = k + 2.0 * lam - 1.0
        a = 2.0 * (k + lam - 1.0) / d
        b = (k - 1.0) / d
        for i in range(T):
            out[k, i] = a * tv[i] * out[k - 1, i] - b * out[k - 2, i]
    return out_arr


def gegenbauer_sum(coeffs, double lam, t):
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64).ravel()
    t_arr = np.ascontiguousarray(t, dtype=np.float64)
    cdef double[::1] tv = t_arr.ravel()
    cdef Py_ssize_t K = c.shape[0] - 1
    cdef Py_ssize_t T = tv.shape[0]
    out_arr = np.zeros(T, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double x, p_prev, p_cur, p_next, acc, d
    if K < 0:
        return out_arr.reshape(t_arr.shape)
    for i in range(T):
        x = tv[i]
        acc = c[0]
        if K >= 1:
            p_prev = 1.0
            p_cur = x
            acc += c[1] * x
            for k in range(2, K + 1):
                d = k + 2.0 * lam - 1.0
                p_next = (2.0 * (k + lam - 1.0) / d) * x * p_cur - ((k - 1.0) / d) * p_prev
                acc += c[k] * p_next
                p_prev = p_cur
                p_cur = p_next
        out[i] = acc
    return out_arr.reshape(t_arr.shape)
