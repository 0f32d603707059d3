"""Fixed real orthonormal spherical-harmonic bases for n = 2 and n = 3.

Orthonormality is with respect to the unnormalized surface measure.

n = 2, degree k >= 1:  ``cos(k phi)/sqrt(pi), sin(k phi)/sqrt(pi)``; degree 0
is ``1/sqrt(2 pi)``.

n = 3, degree l:  index 0 is order 0; indices ``2m-1, 2m`` are the cosine
and sine partners of order ``m`` (no Condon-Shortley phase):

    Y = N_lm sin^m(theta) D_l^m(cos theta) {cos, sin}(m phi),

where ``D_l^m = d^m P_l / dx^m = (2m-1)!! C_{l-m}^{m+1/2}``.  Keeping the
``sin^m`` factor explicit makes the surface gradient finite at the poles.
"""
from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import UnsupportedError


def _check(n):
    if n not in (2, 3):
        raise UnsupportedError(f"general expansions support n = 2, 3 only, got n={n}")


def _polar(points):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    z = np.clip(pts[:, 2], -1.0, 1.0)
    rho = np.hypot(pts[:, 0], pts[:, 1])
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    return z, rho, phi


def _log_dfact(m):
    # log (2m-1)!!
    return math.lgamma(2 * m + 1) - m * math.log(2.0) - math.lgamma(m + 1)


def _legendre_derivs(l, m, z):
    """``D_l^m(z)`` for a single (l, m); zero when m > l."""
    if m > l:
        return np.zeros_like(z)
    lam = m + 0.5
    deg = l - m
    # C_deg^lam(1) = Gamma(deg + 2 lam) / (deg! Gamma(2 lam))
    log_c1 = math.lgamma(deg + 2 * lam) - math.lgamma(deg + 1) - math.lgamma(2 * lam)
    table = kernels.gegenbauer_table(lam, deg, z)
    return np.exp(_log_dfact(m) + log_c1) * table[deg]


def _log_norm(l, m):
    base = math.log((2 * l + 1) / (4 * math.pi))
    if m == 0:
        return 0.5 * base
    return 0.5 * (math.log(2.0) + base + math.lgamma(l - m + 1) - math.lgamma(l + m + 1))


def basis_values(n: int, K: int, points) -> list[np.ndarray]:
    """Basis values per degree: entry k has shape ``(d_k, M)``."""
    _check(n)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    out = []
    if n == 2:
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        out.append(np.full((1, phi.size), 1.0 / math.sqrt(2 * math.pi)))
        for k in range(1, K + 1):
            out.append(np.vstack([np.cos(k * phi), np.sin(k * phi)]) / math.sqrt(math.pi))
        return out
    z, s, phi = _polar(pts)
    for l in range(K + 1):
        rows = [math.exp(_log_norm(l, 0)) * _legendre_derivs(l, 0, z)]
        for m in range(1, l + 1):
            f = math.exp(_log_norm(l, m)) * s**m * _legendre_derivs(l, m, z)
            rows.append(f * np.cos(m * phi))
            rows.append(f * np.sin(m * phi))
        out.append(np.vstack(rows))
    return out


def basis_surface_gradients(n: int, K: int, points) -> list[np.ndarray]:
    """Surface gradients per degree: entry k has shape ``(d_k, M, n)``."""
    _check(n)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    M = pts.shape[0]
    out = []
    if n == 2:
        phi = np.arctan2(pts[:, 1], pts[:, 0])
        e_phi = np.column_stack([-np.sin(phi), np.cos(phi)])
        out.append(np.zeros((1, M, 2)))
        for k in range(1, K + 1):
            dc = -k * np.sin(k * phi) / math.sqrt(math.pi)
            ds = k * np.cos(k * phi) / math.sqrt(math.pi)
            out.append(np.stack([dc[:, None] * e_phi, ds[:, None] * e_phi]))
        return out
    z, s, phi = _polar(pts)
    cp, sp = np.cos(phi), np.sin(phi)
    e_theta = np.column_stack([z * cp, z * sp, -s])
    e_phi = np.column_stack([-sp, cp, np.zeros(M)])
    for l in range(K + 1):
        nrm = math.exp(_log_norm(l, 0))
        d_theta = -nrm * s * _legendre_derivs(l, 1, z)
        rows = [d_theta[:, None] * e_theta]
        for m in range(1, l + 1):
            nrm = math.exp(_log_norm(l, m))
            D = _legendre_derivs(l, m, z)
            D1 = _legendre_derivs(l, m + 1, z)
            F_theta = nrm * (m * s ** (m - 1) * z * D - s ** (m + 1) * D1)
            F_over_s = nrm * s ** (m - 1) * D
            c, si = np.cos(m * phi), np.sin(m * phi)
            rows.append(F_theta[:, None] * c[:, None] * e_theta - (m * F_over_s * si)[:, None] * e_phi)
            rows.append(F_theta[:, None] * si[:, None] * e_theta + (m * F_over_s * c)[:, None] * e_phi)
        out.append(np.stack(rows))
    return out
