"""Harmonic functions on the unit ball and the operators acting on them.

Three representations share one small protocol (``n``, ``kind``,
``r_max``, ``eval``, ``scale``, ``bandwidth``):

``ZonalExpansion``
    ``f(r x') = sum_k a_k r^k Z_k(<x', pole>)`` for any n >= 2.
``GeneralExpansion``
    ``f(r x') = sum_k r^k sum_j b_k^j Y_j^k(x')`` for n in {2, 3}, in the
    bases of :mod:`harmball.bases`.
``KernelFunction``
    Closed form of ``x -> factor * (Lambda_N P)(rho r, <x', pole>)`` for an
    integer order ``N >= 0``.  This covers the Poisson kernel (N = 0) and
    the weighted Bergman kernels ``f_{m,y}`` (N = m + 1), which must be
    evaluated far closer to the sphere than any truncated series allows.

``r_max`` is the radius up to which a truncated series is certified.  An
exact polynomial or closed form has ``r_max = 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import bases, kernels
from .errors import DomainError, PreconditionError, TruncationBudgetError, UnsupportedError
from .specialfn import dim_sph, dim_sph_array, gamma_ratio, surface_area

DEFAULT_EPS = 1e-10
TERM_CAP = 4096
DEFAULT_R_MAX = 0.995

__all__ = [
    "EvalPoint",
    "ZonalExpansion",
    "GeneralExpansion",
    "KernelFunction",
    "certify_degree",
    "certified_zonal",
    "lambda_weights",
    "eval",
    "poisson_closed",
    "poisson_series",
    "bergman_Qm",
    "test_function",
    "frac_derivative",
    "frac_integral",
    "convolve_with_poisson",
    "multiplier_apply",
    "gradient_eval",
    "expansion_to_json",
    "expansion_from_json",
]


def _unit(v, what="direction") -> np.ndarray:
    v = np.asarray(v, dtype=float).ravel()
    nv = np.linalg.norm(v)
    if not abs(nv - 1.0) <= 1e-9:
        raise DomainError(f"{what} must be a unit vector, |v| = {nv}")
    return v / nv


@dataclass(frozen=True, eq=False)
class EvalPoint:
    """A point ``x = r x'`` of the open ball."""

    r: float
    direction: np.ndarray

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise DomainError(f"evaluation radius must satisfy 0 <= r < 1, got {self.r}")
        object.__setattr__(self, "direction", _unit(self.direction))

    @classmethod
    def from_vector(cls, x) -> "EvalPoint":
        x = np.asarray(x, dtype=float).ravel()
        r = float(np.linalg.norm(x))
        if r == 0.0:
            e = np.zeros_like(x)
            e[-1] = 1.0
            return cls(0.0, e)
        return cls(r, x / r)

    @property
    def vector(self) -> np.ndarray:
        return self.r * self.direction


def _as_point(x) -> EvalPoint:
    return x if isinstance(x, EvalPoint) else EvalPoint.from_vector(x)


def lambda_weights(n: int, s: float, K: int) -> np.ndarray:
    """Multiplier weights of ``Lambda_s`` for degrees ``0..K``; ``s = 0`` is the identity."""
    if s == 0:
        return np.ones(K + 1)
    return gamma_ratio(n, s, np.arange(K + 1))


def certify_degree(term_bound, eps: float = DEFAULT_EPS, cap: int = TERM_CAP) -> int:
    """Smallest K with ``sum_{k>K} term_bound(k) <= eps``.

    ``term_bound`` maps an integer array to non-negative bounds on the
    size of each term.  The infinite tail past ``cap`` is bounded by a
    geometric series using the ratio of the last two terms.
    """
    k = np.arange(cap + 1)
    with np.errstate(over="ignore", invalid="ignore"):
        terms = np.asarray(term_bound(k), dtype=float)
    if not np.all(np.isfinite(terms)):
        raise TruncationBudgetError("series terms are not finite")
    last = terms[-1]
    if last == 0.0:
        beyond = 0.0
    else:
        # subnormal terms lose their ratio, so take it from the last normal pair
        normal = np.nonzero(terms > 1e-290)[0]
        j = normal[-1] if normal.size and normal[-1] >= 1 else cap
        q = terms[j] / terms[j - 1] if terms[j - 1] > 0 else np.inf
        beyond = last * q / (1.0 - q) if q < 1.0 else np.inf
    tails = np.cumsum(terms[::-1])[::-1]  # tails[K] = sum_{k >= K}
    tails = np.append(tails[1:], 0.0) + beyond  # sum_{k > K}
    ok = np.nonzero(tails <= eps)[0]
    if ok.size == 0:
        raise TruncationBudgetError(f"tail exceeds {eps:g} with {cap} terms")
    return int(ok[0])


def certified_zonal(n: int, pole, coef, r_max: float | None = None, eps: float = DEFAULT_EPS, cap: int = TERM_CAP):
    """Zonal expansion with coefficients ``coef(k)`` and the smallest certified degree.

    ``coef`` maps an integer array of degrees to coefficients.  With
    ``r_max=None`` the closed ball (r_max = 1) is tried first, then
    ``DEFAULT_R_MAX``.
    """
    sig = surface_area(n)
    candidates = [r_max] if r_max is not None else [1.0, DEFAULT_R_MAX]
    err = None
    for rm in candidates:
        try:
            K = certify_degree(
                lambda k: np.abs(coef(k)) * dim_sph_array(n, int(k.max())) * rm ** k.astype(float) / sig, eps, cap
            )
            return ZonalExpansion(n, pole, coef(np.arange(K + 1)), rm)
        except TruncationBudgetError as exc:
            err = exc
    raise TruncationBudgetError(f"series needs more than {cap} terms at r_max={candidates[-1]}: {err}", candidates[-1])


def _sign_changes(a) -> int:
    s = np.sign(a[np.abs(a) > 0])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _kernel_like(a) -> bool:
    if a.size < 3:
        return True
    alt = a * (-1.0) ** np.arange(a.size)
    return min(_sign_changes(a), _sign_changes(alt)) <= 2


# --------------------------------------------------------------------------
# representations


class ZonalExpansion:
    """``f(r x') = sum_k a_k r^k Z_k(<x', pole>)``, truncated at degree K."""

    kind = "zonal"

    def __init__(self, n: int, pole, coeffs, r_max: float = 1.0):
        if int(n) != n or n < 2:
            raise DomainError(f"dimension must be an integer n >= 2, got {n}")
        self.n = int(n)
        self.pole = _unit(pole, "pole")
        if self.pole.size != self.n:
            raise DomainError("pole dimension does not match n")
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            c = np.zeros(1)
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        c.setflags(write=False)
        self.coeffs = c
        self.r_max = float(r_max)

    def __repr__(self):
        return f"ZonalExpansion(n={self.n}, K={self.K}, r_max={self.r_max})"

    @property
    def K(self) -> int:
        return self.coeffs.size - 1

    @property
    def lam(self) -> float:
        return (self.n - 2) / 2.0

    def replace(self, coeffs=None, pole=None, r_max=None) -> "ZonalExpansion":
        return ZonalExpansion(
            self.n,
            self.pole if pole is None else pole,
            self.coeffs if coeffs is None else coeffs,
            self.r_max if r_max is None else r_max,
        )

    def check_radius(self, r) -> None:
        r = np.asarray(r, dtype=float)
        if r.size and (np.min(r) < 0.0 or np.max(r) >= 1.0):
            raise DomainError("evaluation radius must satisfy 0 <= r < 1")
        if r.size and np.max(r) > self.r_max + 1e-15:
            raise TruncationBudgetError(
                f"radius {np.max(r):.6g} beyond the certified r_max = {self.r_max:.6g}", self.r_max
            )

    def scale(self, r_hi: float = 1.0) -> float:
        return 1.0 / (self.K + 1.0)

    def bandwidth(self) -> int:
        return 8 if _kernel_like(self.coeffs) else max(8, self.K)

    def radial_weights(self, r) -> np.ndarray:
        """``a_k r^k d_k / sigma`` as an array of shape ``(len(r), K+1)``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        k = np.arange(self.K + 1)
        with np.errstate(under="ignore"):
            pw = r[:, None] ** k[None, :]
        return pw * (self.coeffs * dim_sph_array(self.n, self.K) / surface_area(self.n))[None, :]

    def values(self, r, t, one_minus_t=None) -> np.ndarray:
        """Values on the grid ``radii x cosines``, shape ``(len(r), len(t))``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        self.check_radius(r)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        W = self.radial_weights(r)
        if r.size == 1:
            return kernels.gegenbauer_sum(W[0], self.lam, t)[None, :]
        return W @ kernels.gegenbauer_table(self.lam, self.K, t)

    def values_at(self, r, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return self.values(r, np.clip(pts @ self.pole, -1.0, 1.0))

    def eval(self, x) -> float:
        p = _as_point(x)
        return float(self.values([p.r], [np.clip(p.direction @ self.pole, -1.0, 1.0)])[0, 0])

    def gradient(self, x) -> np.ndarray:
        p = _as_point(x)
        self.check_radius(p.r)
        t = float(np.clip(p.direction @ self.pole, -1.0, 1.0))
        k = np.arange(self.K + 1)
        base = self.coeffs * dim_sph_array(self.n, self.K) / surface_area(self.n)
        rk1 = np.where(k >= 1, p.r ** np.maximum(k - 1, 0), 0.0)
        g_r = float(kernels.gegenbauer_sum(base * k * rk1, self.lam, np.array([t]))[0])
        if self.K >= 1:
            # d/dt P_k^lam = k (k + 2 lam) / (2 lam + 1) P_{k-1}^{lam+1}
            dw = (base * rk1 * k * (k + 2.0 * self.lam) / (2.0 * self.lam + 1.0))[1:]
            g_t = float(kernels.gegenbauer_sum(dw, self.lam + 1.0, np.array([t]))[0])
        else:
            g_t = 0.0
        return g_r * p.direction + g_t * (self.pole - t * p.direction)

    def gradient_norms(self, r, t) -> np.ndarray:
        """``|grad f|`` on the grid ``radii x cosines``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        self.check_radius(r)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        k = np.arange(self.K + 1)
        base = self.coeffs * dim_sph_array(self.n, self.K) / surface_area(self.n)
        with np.errstate(under="ignore"):
            rk1 = np.where(k[None, :] >= 1, r[:, None] ** np.maximum(k - 1, 0)[None, :], 0.0)
        g_r = (base * k * rk1) @ kernels.gegenbauer_table(self.lam, self.K, t)
        if self.K >= 1:
            dw = (base * rk1 * k * (k + 2.0 * self.lam) / (2.0 * self.lam + 1.0))[:, 1:]
            g_t = dw @ kernels.gegenbauer_table(self.lam + 1.0, self.K - 1, t)
        else:
            g_t = np.zeros_like(g_r)
        return np.sqrt(g_r**2 + g_t**2 * np.clip(1.0 - t * t, 0.0, None)[None, :])

    def to_general(self) -> "GeneralExpansion":
        """Same function in the fixed basis (n = 2, 3): ``b_k^j = a_k Y_j(pole)``."""
        vals = bases.basis_values(self.n, self.K, self.pole[None, :])
        return GeneralExpansion(self.n, [a * v[:, 0] for a, v in zip(self.coeffs, vals)], self.r_max)


class GeneralExpansion:
    """``f(r x') = sum_k r^k sum_j b_k^j Y_j^k(x')`` for n in {2, 3}."""

    kind = "general"

    def __init__(self, n: int, coeffs, r_max: float = 1.0):
        if n not in (2, 3):
            raise UnsupportedError(f"general expansions support n = 2, 3 only, got n={n}")
        self.n = int(n)
        blocks = []
        for k, b in enumerate(coeffs):
            b = np.array(b, dtype=float).ravel()
            if b.size != dim_sph(n, k):
                raise DomainError(f"degree {k} needs {dim_sph(n, k)} coefficients, got {b.size}")
            if not np.all(np.isfinite(b)):
                raise DomainError("coefficients must be finite")
            b.setflags(write=False)
            blocks.append(b)
        if not blocks:
            blocks = [np.zeros(1)]
        self.coeffs = blocks
        self.r_max = float(r_max)

    def __repr__(self):
        return f"GeneralExpansion(n={self.n}, K={self.K})"

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def replace(self, coeffs=None, r_max=None) -> "GeneralExpansion":
        return GeneralExpansion(self.n, self.coeffs if coeffs is None else coeffs, self.r_max if r_max is None else r_max)

    check_radius = ZonalExpansion.check_radius

    def scale(self, r_hi: float = 1.0) -> float:
        return 1.0 / (self.K + 1.0)

    def bandwidth(self) -> int:
        return max(8, self.K)

    def flat(self) -> np.ndarray:
        return np.concatenate(self.coeffs)

    def degrees(self) -> np.ndarray:
        return np.concatenate([np.full(b.size, k) for k, b in enumerate(self.coeffs)])

    def values_at(self, r, points, basis=None) -> np.ndarray:
        """Values on ``radii x points``, shape ``(len(r), len(points))``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        self.check_radius(r)
        if basis is None:
            basis = np.vstack(bases.basis_values(self.n, self.K, points))
        with np.errstate(under="ignore"):
            W = r[:, None] ** self.degrees()[None, :] * self.flat()[None, :]
        return W @ basis

    def eval(self, x) -> float:
        p = _as_point(x)
        return float(self.values_at([p.r], p.direction[None, :])[0, 0])

    def gradient(self, x) -> np.ndarray:
        p = _as_point(x)
        self.check_radius(p.r)
        return self.gradients_at([p.r], p.direction[None, :])[0, 0]

    def gradients_at(self, r, points) -> np.ndarray:
        """Gradients on ``radii x points``, shape ``(len(r), len(points), n)``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        vals = np.vstack(bases.basis_values(self.n, self.K, pts))
        grads = np.concatenate(bases.basis_surface_gradients(self.n, self.K, pts))
        k = self.degrees()
        b = self.flat()
        with np.errstate(under="ignore"):
            rk1 = np.where(k[None, :] >= 1, r[:, None] ** np.maximum(k - 1, 0)[None, :], 0.0)
        radial = (rk1 * k * b) @ vals  # (R, M)
        tang = np.einsum("rd,dmi->rmi", rk1 * b, grads)
        return radial[:, :, None] * pts[None, :, :] + tang

    def gradient_norms_at(self, r, points) -> np.ndarray:
        return np.linalg.norm(self.gradients_at(r, points), axis=-1)


def _binom_gen(a: float, i: int) -> float:
    out = 1.0
    for l in range(i):
        out *= (a - l) / (l + 1)
    return out


def _lambda_poisson(n: int, N: int, w, one_minus_w, u) -> np.ndarray:
    """``(Lambda_N P)(w, t)`` in closed form with ``u = 1 - t``.

    Uses ``Lambda_N = w^{1-n/2} d^N/dw^N w^{n/2+N-1} / (N-1)!`` on the
    Poisson kernel, with the derivative taken by truncated Taylor series
    in ``w`` (the ``w^{1-n/2}`` factor is absorbed, so w = 0 is regular).
    """
    sigma = surface_area(n)
    q0 = one_minus_w**2 + 2.0 * w * u
    if N == 0:
        return one_minus_w * (1.0 + w) / q0 ** (n / 2.0) / sigma
    beta = -n / 2.0
    q1 = 2.0 * (u - one_minus_w)
    C = [q0**beta]
    for k in range(1, N + 1):
        acc = ((beta + 1.0) - k) * q1 * C[k - 1]
        if k >= 2:
            acc = acc + (2.0 * (beta + 1.0) - k) * C[k - 2]
        C.append(acc / (k * q0))
    B = [one_minus_w * (1.0 + w), -2.0 * w, -np.ones_like(w)]
    a = n / 2.0 + N - 1.0
    total = 0.0
    for i in range(N + 1):
        Ai = _binom_gen(a, i) * w ** (N - i)
        for j in range(min(2, N - i) + 1):
            total = total + Ai * B[j] * C[N - i - j]
    return N * total / sigma


class KernelFunction:
    """``x -> factor * (Lambda_order P)(rho r, <x', pole>)`` in closed form.

    ``order = 0`` is the Poisson kernel ``P_{pole}`` dilated by ``rho``;
    ``order = m + 1, factor = 2`` is the Bergman kernel ``f_{m,y}`` with
    ``y = rho * pole``.
    """

    kind = "zonal"
    r_max = 1.0

    def __init__(self, n: int, pole, order: int, rho: float = 1.0, factor: float = 1.0):
        if int(n) != n or n < 2:
            raise DomainError(f"dimension must be an integer n >= 2, got {n}")
        if int(order) != order or order < 0:
            raise UnsupportedError("closed forms exist for integer orders >= 0 only")
        if not 0.0 <= rho <= 1.0:
            raise DomainError(f"dilation must lie in [0, 1], got {rho}")
        self.n = int(n)
        self.pole = _unit(pole, "pole")
        self.order = int(order)
        self.rho = float(rho)
        self.factor = float(factor)

    def __repr__(self):
        return f"KernelFunction(n={self.n}, order={self.order}, rho={self.rho}, factor={self.factor})"

    def replace(self, **kw) -> "KernelFunction":
        args = dict(n=self.n, pole=self.pole, order=self.order, rho=self.rho, factor=self.factor)
        args.update(kw)
        return KernelFunction(**args)

    def coefficient_fn(self):
        n, s, rho, fac = self.n, self.order, self.rho, self.factor

        def coef(k):
            k = np.asarray(k)
            with np.errstate(under="ignore"):
                return fac * lambda_weights(n, s, int(k.max()))[k] * rho**k

        return coef

    def check_radius(self, r) -> None:
        r = np.asarray(r, dtype=float)
        if r.size and (np.min(r) < 0.0 or np.max(r) >= 1.0):
            raise DomainError("evaluation radius must satisfy 0 <= r < 1")

    def scale(self, r_hi: float = 1.0) -> float:
        return max(1.0 - self.rho * r_hi, 1e-14)

    def bandwidth(self) -> int:
        return 8

    def values(self, r, t, one_minus_t=None, d=None) -> np.ndarray:
        r = np.atleast_1d(np.asarray(r, dtype=float))
        self.check_radius(r)
        t = np.atleast_1d(np.asarray(t, dtype=float))
        u = 1.0 - t if one_minus_t is None else np.atleast_1d(one_minus_t)
        d = 1.0 - r if d is None else np.atleast_1d(np.asarray(d, dtype=float))
        w = (self.rho * r)[:, None]
        omw = ((1.0 - self.rho) + self.rho * d)[:, None]
        return self.factor * _lambda_poisson(self.n, self.order, w, omw, u[None, :])

    def values_at(self, r, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return self.values(r, np.clip(pts @ self.pole, -1.0, 1.0))

    def eval(self, x) -> float:
        p = _as_point(x)
        return float(self.values([p.r], [np.clip(p.direction @ self.pole, -1.0, 1.0)])[0, 0])

    def to_expansion(self, r_max: float | None = None, eps: float = DEFAULT_EPS, cap: int = TERM_CAP) -> ZonalExpansion:
        """Truncated series certified up to ``r_max``.

        With ``r_max=None`` the whole closed ball is certified when the
        dilation allows it, otherwise ``DEFAULT_R_MAX`` is used.
        """
        return certified_zonal(self.n, self.pole, self.coefficient_fn(), r_max, eps, cap)

    def gradient(self, x) -> np.ndarray:
        p = _as_point(x)
        rm = max(DEFAULT_R_MAX, p.r)
        return self.to_expansion(r_max=rm).gradient(p)


# --------------------------------------------------------------------------
# operations


def eval(f, x) -> float:  # noqa: A001 - mirrors the mathematical name
    """Value of ``f`` at ``x`` (an :class:`EvalPoint` or a vector with |x| < 1)."""
    return f.eval(x)


def poisson_closed(n: int, x, yprime) -> float:
    """``(1/sigma) (1 - |x|^2) / |x - y'|^n``."""
    p = _as_point(x)
    yp = _unit(yprime)
    t = float(np.clip(p.direction @ yp, -1.0, 1.0))
    u = float(np.sum((p.direction - yp) ** 2)) / 2.0  # 1 - t without cancellation
    return float(_lambda_poisson(int(n), 0, np.array(p.r), np.array(1.0 - p.r), np.array(u if t > 0 else 1.0 - t)))


def poisson_series(n: int, x, yprime, K: int | None = None, rel_eps: float = 1e-12) -> float:
    """Partial sum ``sum_{k<=K} r^k Z_k(t)`` of the Poisson expansion.

    With ``K=None`` the degree is chosen so that the worst-case tail is
    below ``rel_eps`` times the Harnack lower bound
    ``(1-r) / ((1+r)^{n-1} sigma)`` of the kernel.
    """
    p = _as_point(x)
    yp = _unit(yprime)
    sig = surface_area(n)
    if K is None:
        floor = (1.0 - p.r) / ((1.0 + p.r) ** (n - 1) * sig)
        K = certify_degree(lambda k: dim_sph_array(n, int(k.max())) * p.r**k / sig, rel_eps * floor)
    f = ZonalExpansion(n, yp, np.ones(K + 1))
    return f.eval(p)


def _point_in_ball(y, n=None):
    y = np.asarray(y, dtype=float).ravel()
    rho = float(np.linalg.norm(y))
    if not rho < 1.0:
        raise DomainError(f"|y| must be < 1, got {rho}")
    if rho == 0.0:
        e = np.zeros(y.size)
        e[-1] = 1.0
        return 0.0, e
    return rho, y / rho


def test_function(m: float, y, form: str = "series", r_max: float | None = None):
    """The Bergman-kernel test function ``f_{m,y} = Q_m(., y)``.

    ``form="series"`` returns a :class:`ZonalExpansion` with
    ``a_k = 2 gamma_k(m+1) rho^k`` (pole ``y'``); ``"closed"`` returns the
    :class:`KernelFunction` (integer m only); ``"auto"`` prefers the
    closed form.
    """
    if not m > -1:
        raise DomainError(f"m must exceed -1, got {m}")
    rho, yp = _point_in_ball(y)
    integer = float(m).is_integer()
    if form in ("closed", "auto") and integer:
        return KernelFunction(yp.size, yp, int(m) + 1, rho, 2.0)
    if form == "closed":
        raise UnsupportedError("closed form needs an integer m")
    if form not in ("series", "auto"):
        raise ValueError(f"unknown form {form!r}")
    n = yp.size
    return certified_zonal(
        n, yp, lambda k: 2.0 * lambda_weights(n, m + 1.0, int(np.max(k)))[k] * rho ** np.asarray(k, dtype=float), r_max
    )


def bergman_Qm(m: float, x, y) -> float:
    """Weighted harmonic Bergman kernel ``Q_m(x, y)``."""
    if not m > -1:
        raise DomainError(f"m must exceed -1, got {m}")
    p = _as_point(x)
    rho, yp = _point_in_ball(y)
    if p.direction.size != yp.size:
        raise DomainError("x and y live in different dimensions")
    if float(m).is_integer():
        return KernelFunction(yp.size, yp, int(m) + 1, rho, 2.0).eval(p)
    return test_function(m, y, "series", r_max=max(p.r, 0.0) if p.r > 0 else 0.5).eval(p)


def _coefficientwise(f, w_fn):
    if isinstance(f, KernelFunction):
        f = f.to_expansion()
    if isinstance(f, ZonalExpansion):
        return f.replace(coeffs=f.coeffs * w_fn(f.n, f.K))
    if isinstance(f, GeneralExpansion):
        w = w_fn(f.n, f.K)
        return f.replace(coeffs=[b * w[k] for k, b in enumerate(f.coeffs)])
    raise TypeError(f"not an expansion: {type(f).__name__}")


def frac_derivative(f, t: float):
    """``Lambda_t f``: degree-k coefficients times ``gamma_k(t)``."""
    if not t > 0:
        raise DomainError(f"fractional derivative order must be positive, got {t}")
    return _coefficientwise(f, lambda n, K: lambda_weights(n, t, K))


def frac_integral(f, b: float):
    """``I_b f``: the exact coefficientwise inverse of ``Lambda_b``."""
    if not b > 0:
        raise DomainError(f"fractional integral order must be positive, got {b}")
    return _coefficientwise(f, lambda n, K: 1.0 / lambda_weights(n, b, K))


def convolve_with_poisson(c, xprime):
    """``g_c * P_{x'}`` for a multiplier sequence ``c``."""
    xp = _unit(xprime)
    if xp.size != c.n:
        raise DomainError("direction dimension does not match the sequence")
    if c.is_zonal:
        return ZonalExpansion(c.n, xp, c.zonal_coeffs())
    if c.n not in (2, 3):
        raise UnsupportedError("general sequences need n in {2, 3}")
    vals = bases.basis_values(c.n, c.K, xp[None, :])
    return GeneralExpansion(c.n, [ck * v[:, 0] for ck, v in zip(c.coeffs, vals)])


def multiplier_apply(c, f):
    """``c * f``: coefficientwise product; degree truncated to the shorter one."""
    if c.n != f.n:
        raise DomainError("sequence and function dimensions differ")
    if isinstance(f, KernelFunction):
        closed = c.closed_action(f) if hasattr(c, "closed_action") else None
        if closed is not None:
            return closed
        cf = c.coefficient_fn() if hasattr(c, "coefficient_fn") else None
        if cf is not None:
            ff = f.coefficient_fn()
            return certified_zonal(f.n, f.pole, lambda k: cf(k) * ff(k))
        f = f.to_expansion()
    elif hasattr(c, "extend") and c.coefficient_fn() is not None and c.K < f.K:
        c = c.extend(f.K)
    if c.is_zonal:
        cz = c.zonal_coeffs()
        K = min(c.K, f.K)
        if isinstance(f, ZonalExpansion):
            return f.replace(coeffs=f.coeffs[: K + 1] * cz[: K + 1])
        return f.replace(coeffs=[f.coeffs[k] * cz[k] for k in range(K + 1)])
    if isinstance(f, ZonalExpansion):
        raise UnsupportedError("a degree-and-index dependent sequence has no zonal action")
    K = min(c.K, f.K)
    return f.replace(coeffs=[f.coeffs[k] * c.coeffs[k] for k in range(K + 1)])


def gradient_eval(f, x) -> np.ndarray:
    """Exact gradient of the (truncated) harmonic function at ``x``."""
    return f.gradient(x)


# --------------------------------------------------------------------------
# serialization


def expansion_to_json(f) -> str:
    if isinstance(f, ZonalExpansion):
        obj = {"n": f.n, "kind": "zonal", "pole": f.pole.tolist(), "coeffs": f.coeffs.tolist()}
    elif isinstance(f, GeneralExpansion):
        obj = {"n": f.n, "kind": "general", "coeffs": [b.tolist() for b in f.coeffs]}
    else:
        raise TypeError(f"cannot serialize {type(f).__name__}")
    if f.r_max < 1.0:
        obj["r_max"] = f.r_max
    return json.dumps(obj)


def expansion_from_json(text: str):
    obj = json.loads(text)
    kind = obj.get("kind")
    r_max = obj.get("r_max", 1.0)
    if kind == "zonal":
        return ZonalExpansion(obj["n"], obj["pole"], obj["coeffs"], r_max)
    if kind == "general":
        return GeneralExpansion(obj["n"], obj["coeffs"], r_max)
    raise PreconditionError(f"unknown expansion kind {kind!r}")
