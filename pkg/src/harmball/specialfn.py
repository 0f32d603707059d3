"""Special functions and quadrature rules.

Sphere integrals use the unnormalized surface measure, whose total mass is
``surface_area(n) = 2 pi^{n/2} / Gamma(n/2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import kernels
from .errors import CoefficientOverflowError, DomainError, UnsupportedError

__all__ = [
    "log_gamma",
    "gamma_ratio",
    "dim_sph",
    "dim_sph_array",
    "surface_area",
    "sphere_measure",
    "gegenbauer_all",
    "normalized_gegenbauer",
    "zonal_eval",
    "zonal_coeff_factor",
    "QuadratureRule",
    "gauss_jacobi",
    "SphereRule",
    "sphere_rule",
    "zonal_reduction_rule",
    "AngleGrid",
    "angle_rule",
    "RadialGrid",
    "radial_rule",
]

OVERFLOW_LOG = 700.0


def _check_dim(n: int) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"dimension must be an integer n >= 2, got {n}")


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for x > 0."""
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"log_gamma requires finite x > 0, got {x}")
    return math.lgamma(x)


def gamma_ratio(n: int, s: float, k) -> np.ndarray:
    """Fractional-derivative weights ``Gamma(k+n/2+s) / (Gamma(k+n/2) Gamma(s))``.

    Computed as a difference of log-Gamma values; ``k`` may be an array.
    """
    if not s > 0:
        raise DomainError(f"order must be positive, got {s}")
    k = np.asarray(k, dtype=float)
    h = n / 2.0
    lg = np.vectorize(math.lgamma, otypes=[float])
    logs = lg(k + h + s) - lg(k + h) - math.lgamma(s)
    if logs.size and np.max(np.abs(logs)) > OVERFLOW_LOG:
        raise CoefficientOverflowError("Gamma-ratio coefficient beyond exp(+-700)")
    return np.exp(logs)


def dim_sph(n: int, k: int) -> int:
    """Dimension of the space of degree-k spherical harmonics in R^n."""
    _check_dim(n)
    if int(k) != k or k < 0:
        raise DomainError(f"degree must be a non-negative integer, got {k}")
    n, k = int(n), int(k)
    hi = math.comb(k + n - 1, n - 1)
    lo = math.comb(k + n - 3, n - 1) if k + n - 3 >= n - 1 else 0
    return hi - lo


@lru_cache(maxsize=64)
def dim_sph_array(n: int, K: int) -> np.ndarray:
    """``[d_0, ..., d_K]`` as a read-only float array (exact below 2**53)."""
    out = np.array([dim_sph(n, k) for k in range(K + 1)], dtype=float)
    out.setflags(write=False)
    return out


def sphere_measure(n: int) -> float:
    """Total measure of the unit sphere in R^n, allowing n = 1 (two points)."""
    if n < 1:
        raise DomainError(f"sphere_measure needs n >= 1, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def surface_area(n: int) -> float:
    """Surface area of the unit sphere S^{n-1} in R^n."""
    _check_dim(n)
    return sphere_measure(n)


def _as_cosine(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + 1e-14):
        raise DomainError("cosine argument must satisfy |t| <= 1")
    return np.clip(t, -1.0, 1.0)


def gegenbauer_all(lam: float, K: int, t) -> np.ndarray:
    """``[C_0^lam(t), ..., C_K^lam(t)]`` by the three-term recurrence.

    For ``lam == 0`` the Chebyshev values ``cos(k arccos t)`` are returned.
    A vector ``t`` gives an array of shape ``(K+1, len(t))``.
    """
    if not lam > -0.5:
        raise DomainError(f"Gegenbauer parameter must exceed -1/2, got {lam}")
    if K < 0:
        raise DomainError("K must be non-negative")
    t = _as_cosine(t)
    if lam == 0:
        k = np.arange(K + 1).reshape((-1,) + (1,) * t.ndim)
        return np.cos(k * np.arccos(t))
    out = np.empty((K + 1,) + t.shape)
    out[0] = 1.0
    if K >= 1:
        out[1] = 2.0 * lam * t
    for k in range(2, K + 1):
        out[k] = (2.0 * (k + lam - 1.0) * t * out[k - 1] - (k + 2.0 * lam - 2.0) * out[k - 2]) / k
    return out


def normalized_gegenbauer(lam: float, K: int, t) -> np.ndarray:
    """Table of ``C_k^lam(t) / C_k^lam(1)``, shape ``(K+1, len(t))``."""
    t = _as_cosine(np.atleast_1d(t))
    return kernels.gegenbauer_table(lam, K, t.ravel())


def zonal_coeff_factor(n: int, K: int) -> np.ndarray:
    """``d_k / sigma_{n-1}``: the value of the zonal harmonic at the pole."""
    return dim_sph_array(n, K) / surface_area(n)


def zonal_eval(n: int, k: int, t):
    """Zonal harmonic Z^{(k)} as a function of the cosine ``t = <x', y'>``."""
    d = dim_sph(n, k)
    t = _as_cosine(t)
    if n == 2:
        vals = np.cos(k * np.arccos(t))
    else:
        vals = normalized_gegenbauer((n - 2) / 2.0, k, t)[k].reshape(t.shape)
    out = d / surface_area(n) * vals
    return float(out) if out.ndim == 0 else out


# --------------------------------------------------------------------------
# one-dimensional rules


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights for ``int f(x) w(x) dx`` on an interval."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple
    a: float = 0.0
    b: float = 0.0

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))

    def __len__(self) -> int:
        return self.nodes.size


def _jacobi_p(N: int, a: float, b: float, x: np.ndarray) -> np.ndarray:
    p0 = np.ones_like(x)
    if N == 0:
        return p0
    p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(2, N + 1):
        c = 2.0 * k + a + b
        num = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p1 - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p0
        p0, p1 = p1, num / (2.0 * k * (k + a + b) * (c - 2.0))
    return p1


def _jacobi_dp(N: int, a: float, b: float, x: np.ndarray) -> np.ndarray:
    return 0.5 * (N + a + b + 1.0) * _jacobi_p(N - 1, a + 1.0, b + 1.0, x)


def _golub_welsch_nodes(N: int, a: float, b: float) -> np.ndarray:
    k = np.arange(N, dtype=float)
    s = 2.0 * k + a + b
    diag = np.empty(N)
    diag[0] = (b - a) / (a + b + 2.0)
    if N > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
    if N == 1:
        return diag
    k = np.arange(1, N, dtype=float)
    s = 2.0 * k + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0))
    off2[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
    return eigh_tridiagonal(diag, np.sqrt(off2), eigvals_only=True)


def _endpoint_series(N: int, ab1: float, c: float, u: float):
    """``F(u) = 2F1(-N, N+a+b+1; c; u)`` and ``F'(u)`` with the sum of |terms|.

    Near an endpoint ``P_N`` is a multiple of F in the half-distance u to
    that endpoint, so u (and hence ``1 -+ x``) is resolved to full relative
    precision.
    """
    t, F, dF, mag = 1.0, 1.0, 0.0, 1.0
    for k in range(N):
        t *= (k - N) * (ab1 + k) / ((c + k) * (k + 1.0)) * u
        F += t
        dF += (k + 1.0) * t
        mag += abs(t)
    return F, dF / u, mag


def _refine_endpoint(N, ab1, c, u):
    for _ in range(30):
        F, dF, mag = _endpoint_series(N, ab1, c, u)
        if mag > 1e6:
            return None
        du = F / dF
        u -= du
        if abs(du) <= 1e-17 * u:
            break
    return u, abs(_endpoint_series(N, ab1, c, u)[1])


@lru_cache(maxsize=256)
def _gauss_jacobi_ref(N: int, a: float, b: float):
    """Nodes, weights and the distances ``1 + x``, ``1 - x`` to both endpoints."""
    x = _golub_welsch_nodes(N, a, b)
    for _ in range(50):
        dx = _jacobi_p(N, a, b, x) / _jacobi_dp(N, a, b, x)
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-14:
            break
    x = np.sort(x)
    logc = (
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(N + a + 1.0)
        + math.lgamma(N + b + 1.0)
        - math.lgamma(N + a + b + 1.0)
        - math.lgamma(N + 1.0)
    )
    dp = _jacobi_dp(N, a, b, x)
    res = _jacobi_p(N, a, b, x) / dp
    opx, omx = (1.0 + x) - res, (1.0 - x) + res
    logdp = np.log(np.abs(dp))
    # the recurrence leaves ~1e-15 absolute error in the outermost nodes,
    # which is large relative to 1 -+ x; redo them in the endpoint variable
    ab1 = N + a + b + 1.0
    near = 4.0 / (N * N)
    for i in range(N):
        for side, e, dist in ((1, a, omx), (-1, b, opx)):
            u0 = dist[i] / 2.0
            if u0 >= near:
                continue
            got = _refine_endpoint(N, ab1, e + 1.0, u0)
            if got is None:
                continue
            u, dF = got
            log_pend = math.lgamma(N + e + 1.0) - math.lgamma(e + 1.0) - math.lgamma(N + 1.0)
            logdp[i] = log_pend + math.log(dF / 2.0)
            if side == 1:
                omx[i], opx[i] = 2.0 * u, 2.0 - 2.0 * u
                x[i] = 1.0 - 2.0 * u
            else:
                opx[i], omx[i] = 2.0 * u, 2.0 - 2.0 * u
                x[i] = 2.0 * u - 1.0
    w = np.exp(logc - np.log(omx) - np.log(opx) - 2.0 * logdp)
    for arr in (x, w, opx, omx):
        arr.setflags(write=False)
    return x, w, opx, omx


def gauss_jacobi(N: int, a: float = 0.0, b: float = 0.0, interval=(-1.0, 1.0)) -> QuadratureRule:
    """Gauss-Jacobi rule exact to degree ``2N-1`` against ``(1-x)^a (1+x)^b``.

    On ``[0, 1]`` the weight becomes ``(1-u)^a u^b`` (the exponent ``a``
    sits at the right endpoint).
    """
    if N < 1:
        raise DomainError(f"need at least one node, got N={N}")
    if not (a > -1.0 and b > -1.0):
        raise DomainError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    x, w, _, _ = _gauss_jacobi_ref(int(N), float(a), float(b))
    lo, hi = float(interval[0]), float(interval[1])
    if (lo, hi) == (-1.0, 1.0):
        return QuadratureRule(x, w, (lo, hi), a, b)
    if (lo, hi) != (0.0, 1.0):
        raise DomainError("interval must be [-1, 1] or [0, 1]")
    return QuadratureRule((x + 1.0) / 2.0, w / 2.0 ** (a + b + 1.0), (lo, hi), a, b)


# --------------------------------------------------------------------------
# sphere rules


@dataclass(frozen=True, eq=False)
class SphereRule:
    n: int
    points: np.ndarray
    weights: np.ndarray
    degree: int

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def sphere_rule(n: int, degree: int) -> SphereRule:
    """Product rule on S^1 or S^2 exact for spherical harmonics up to ``degree``."""
    if n not in (2, 3):
        raise UnsupportedError("sphere_rule supports n = 2, 3; use the zonal reduction otherwise")
    if degree < 0:
        raise DomainError("degree must be non-negative")
    M = degree + 1
    phi = 2.0 * np.pi * np.arange(M) / M
    if n == 2:
        pts = np.column_stack([np.cos(phi), np.sin(phi)])
        return SphereRule(2, pts, np.full(M, 2.0 * np.pi / M), degree)
    gl = gauss_jacobi(degree // 2 + 1)
    z = gl.nodes
    s = np.sqrt((1.0 - z) * (1.0 + z))
    Z, P = np.meshgrid(z, phi, indexing="ij")
    S, _ = np.meshgrid(s, phi, indexing="ij")
    pts = np.column_stack([(S * np.cos(P)).ravel(), (S * np.sin(P)).ravel(), Z.ravel()])
    w = np.repeat(gl.weights * (2.0 * np.pi / M), M)
    return SphereRule(3, pts, w, degree)


def zonal_reduction_rule(n: int, N: int) -> QuadratureRule:
    """Rule in the cosine ``t`` with ``int_S F(<x',p>) = sum w_i F(t_i)``.

    Weight ``sigma_{n-2} (1-t^2)^{(n-3)/2}``; exact when ``F`` is a
    polynomial of degree ``<= 2N-1``.
    """
    _check_dim(n)
    e = (n - 3) / 2.0
    gj = gauss_jacobi(N, e, e)
    return QuadratureRule(gj.nodes, gj.weights * sphere_measure(n - 1), (-1.0, 1.0), e, e)


# --------------------------------------------------------------------------
# graded composite rules for peaked integrands


@lru_cache(maxsize=32)
def _gl_unit(N: int):
    r = gauss_jacobi(N, 0.0, 0.0, (0.0, 1.0))
    return r.nodes, r.weights


def _levels(scale: float, top: float) -> int:
    return max(1, int(math.ceil(math.log2(max(top, 1e-300) * 32.0 / max(scale, 1e-300)))))


@dataclass(frozen=True, eq=False)
class AngleGrid:
    """Nodes in the polar angle from a pole, with sphere weights attached.

    ``weights`` integrate zonal functions over the sphere in R^n;
    ``one_minus_t`` and ``one_plus_t`` are computed without cancellation.
    """

    n: int
    theta: np.ndarray
    weights: np.ndarray
    t: np.ndarray
    one_minus_t: np.ndarray
    one_plus_t: np.ndarray

    def __len__(self) -> int:
        return self.theta.size


def _panels_1d(edges, N):
    x, w = _gl_unit(N)
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1, None], edges[1:, None]
    return (lo + (hi - lo) * x).ravel(), ((hi - lo) * w).ravel()


@lru_cache(maxsize=128)
def angle_rule(n: int, scale: float = 0.05, bandwidth: int = 8, N: int = 8) -> AngleGrid:
    """Composite Gauss-Legendre rule in the polar angle on ``[0, pi]``.

    Uniform panels resolve oscillations up to ``bandwidth``; the end panels
    are refined geometrically toward both poles until their width is below
    ``scale / 32``.
    """
    _check_dim(n)
    U = max(4, int(math.ceil(bandwidth)))
    h = math.pi / U
    J = _levels(scale, h)
    geo = h * 2.0 ** -np.arange(1, J + 1)
    edges = np.unique(np.concatenate([np.linspace(0.0, math.pi, U + 1), geo, math.pi - geo]))
    theta, w = _panels_1d(edges, N)
    half = theta / 2.0
    s = np.sin(theta)
    weights = w * sphere_measure(n - 1) * s ** (n - 2)
    return AngleGrid(n, theta, weights, np.cos(theta), 2.0 * np.sin(half) ** 2, 2.0 * np.cos(half) ** 2)


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Nodes on [0, 1) for ``int g(r) (1-r)^a dr``; ``d = 1 - r`` exactly."""

    r: np.ndarray
    d: np.ndarray
    weights: np.ndarray
    a: float

    def __len__(self) -> int:
        return self.r.size


@lru_cache(maxsize=256)
def radial_rule(a: float, scale: float = 0.05, bandwidth: int = 8, N: int = 8) -> RadialGrid:
    """Dyadic composite rule toward r = 1 with a Gauss-Jacobi end panel.

    Panels are ``d in [2^{-j-1}, 2^{-j}]`` in the distance ``d = 1 - r``,
    each split so its width is at most ``2 / bandwidth``; the last panel
    ``[0, 2^{-J}]`` carries the exact weight ``d^a``.
    """
    if not a > -1.0:
        raise DomainError(f"radial weight exponent must exceed -1, got {a}")
    J = _levels(scale, 1.0)
    x, w = _gl_unit(N)
    ds, ws = [], []
    for j in range(J):
        hi, lo = 2.0 ** -j, 2.0 ** -(j + 1)
        m = max(1, int(math.ceil((hi - lo) * bandwidth / 2.0)))
        e = lo + (hi - lo) * np.arange(m + 1) / m
        d, wd = _panels_1d(e, N)
        ds.append(d)
        ws.append(wd * d ** a)
    h = 2.0 ** -J
    gj = gauss_jacobi(N, a, 0.0, (0.0, 1.0))
    # on [1-h, 1]: r = 1 - h + h u, so d = h (1 - u)
    ds.append(h * (1.0 - gj.nodes))
    ws.append(gj.weights * h ** (a + 1.0))
    d = np.concatenate(ds)
    order = np.argsort(-d)
    d = d[order]
    return RadialGrid(1.0 - d, d, np.concatenate(ws)[order], a)
