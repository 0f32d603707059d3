"""Mixed (quasi)norms of harmonic functions computed by quadrature.

All norms use the unnormalized surface measure.  Zonal functions (zonal
expansions and closed-form kernels) are integrated in the polar angle on a
graded composite rule, general expansions (n = 2, 3) on a product sphere
rule.  Radial integrals use a dyadic composite rule toward r = 1 whose
last panel is Gauss-Jacobi with the exact endpoint weight.  Every
``NormResult`` carries the difference between the base rule and the rule
with doubled node counts as its error estimate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .harmfun import GeneralExpansion, KernelFunction, ZonalExpansion
from .specialfn import angle_rule, radial_rule, sphere_rule

INF = math.inf
BASE_NODES = 8
HARDY_STEPS = 4  # radii per octave of 1 - r for grid suprema
FAMILIES = ("Bpq", "Hardy", "TL", "Bloch")

__all__ = [
    "SpaceSpec",
    "NormResult",
    "mean_Mp",
    "means",
    "norm",
    "norm_bpq",
    "norm_hardy",
    "norm_tl",
    "norm_bloch",
]


def _param(x) -> float:
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "+inf"):
        return INF
    return float(x)


def _fmt(x) -> float | str:
    return "inf" if x == INF else x


@dataclass(frozen=True)
class SpaceSpec:
    """Descriptor of ``B^{p,q}_alpha``, ``H^p_alpha``, ``F^{p,q}_alpha`` or the Bloch space."""

    family: str
    p: float = 1.0
    q: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "p", _param(self.p))
        object.__setattr__(self, "q", _param(self.q))
        object.__setattr__(self, "alpha", float(self.alpha))
        fam, p, q, a = self.family, self.p, self.q, self.alpha
        if fam not in FAMILIES:
            raise DomainError(f"unknown space family {fam!r}; expected one of {FAMILIES}")
        if fam == "Bloch":
            return
        if not p > 0:
            raise DomainError(f"{fam}: need p > 0, got {p}")
        if fam == "Hardy":
            if not a >= 0:
                raise DomainError(f"Hardy: need alpha >= 0, got {a}")
            return
        if not q > 0:
            raise DomainError(f"{fam}: need q > 0, got {q}")
        if not a > 0:
            raise DomainError(f"{fam}: need alpha > 0, got {a}")
        if fam == "TL" and not (p < INF and q < INF):
            raise DomainError("TL: need finite p and q")

    @classmethod
    def bpq(cls, p, q, alpha) -> "SpaceSpec":
        return cls("Bpq", p, q, alpha)

    @classmethod
    def hardy(cls, p, alpha=0.0) -> "SpaceSpec":
        return cls("Hardy", p, 1.0, alpha)

    @classmethod
    def tl(cls, p, q, alpha) -> "SpaceSpec":
        return cls("TL", p, q, alpha)

    @classmethod
    def bloch(cls) -> "SpaceSpec":
        return cls("Bloch", 1.0, 1.0, 0.0)

    @property
    def inner(self) -> float:
        """Exponent of the spherical mean (``t`` in the criterion exponents)."""
        if self.family == "Hardy":
            return self.p
        if self.family == "Bloch":
            return 1.0
        return self.q

    @property
    def effective(self) -> "SpaceSpec":
        """``B^{inf,q}_alpha`` is the Hardy space ``H^q_alpha``."""
        if self.family == "Bpq" and self.p == INF:
            return SpaceSpec.hardy(self.q, self.alpha)
        return self

    def label(self) -> str:
        f = lambda x: "inf" if x == INF else f"{x:g}"
        if self.family == "Bloch":
            return "Bloch"
        if self.family == "Hardy":
            return f"H^{f(self.p)}_{f(self.alpha)}"
        return f"{'B' if self.family == 'Bpq' else 'F'}^{{{f(self.p)},{f(self.q)}}}_{f(self.alpha)}"

    def to_dict(self) -> dict:
        return {"family": self.family, "p": _fmt(self.p), "q": _fmt(self.q), "alpha": self.alpha}

    @classmethod
    def from_dict(cls, d: dict) -> "SpaceSpec":
        unknown = set(d) - {"family", "p", "q", "alpha"}
        if unknown:
            raise DomainError(f"unknown space keys {sorted(unknown)}")
        return cls(d["family"], d.get("p", 1.0), d.get("q", 1.0), d.get("alpha", 0.0))


@dataclass(frozen=True)
class NormResult:
    value: float
    certified_error: float
    quadrature_sizes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "certified_error": self.certified_error,
            "quadrature_sizes": [int(s) for s in self.quadrature_sizes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# --------------------------------------------------------------------------
# grids and values


def _bucket(scale: float) -> float:
    """Round a length scale down to a power of two so cached rules are shared."""
    return 2.0 ** math.floor(math.log2(max(scale, 1e-15)))


def _is_zonal(f) -> bool:
    return isinstance(f, (ZonalExpansion, KernelFunction))


def _angle_grid(f, r_hi: float, N: int):
    return angle_rule(f.n, _bucket(f.scale(r_hi)), int(f.bandwidth()), N)


def _zonal_values(f, r, d, t, u) -> np.ndarray:
    if isinstance(f, KernelFunction):
        return f.values(r, t, u, d)
    return f.values(r, t)


def _sphere_nodes(f, N: int):
    rule = sphere_rule(f.n, (2 * f.K + 8) * N // BASE_NODES)
    return rule.points, rule.weights


def _powmean(vals: np.ndarray, w: np.ndarray, p: float) -> np.ndarray:
    a = np.abs(vals)
    if p == INF:
        return a.max(axis=-1)
    return (a**p @ w) ** (1.0 / p)


def _means(f, r, d, p: float, N: int) -> np.ndarray:
    """``M_p(f, r_i)`` for each radius, on the rule of size ``N``."""
    r = np.atleast_1d(np.asarray(r, dtype=float))
    d = 1.0 - r if d is None else np.atleast_1d(np.asarray(d, dtype=float))
    if r.size == 0:
        return np.zeros(0)
    if _is_zonal(f):
        g = _angle_grid(f, float(r.max()), N)
        t, u, w = g.t, g.one_minus_t, g.weights
        if p == INF:  # the extremes of zonal functions often sit at the poles
            t = np.concatenate([t, [1.0, -1.0]])
            u = np.concatenate([u, [0.0, 2.0]])
        vals = _zonal_values(f, r, d, t, u)
        return _powmean(vals, w, p)
    if isinstance(f, GeneralExpansion):
        pts, w = _sphere_nodes(f, N)
        return _powmean(f.values_at(r, pts), w, p)
    raise TypeError(f"not a harmonic function representation: {type(f).__name__}")


def _check_p(p):
    p = _param(p)
    if not p > 0:
        raise DomainError(f"exponent must be positive, got {p}")
    return p


def means(f, radii, p, nodes: int = BASE_NODES) -> np.ndarray:
    """Vector of ``M_p(f, r)`` over ``radii`` on the rule with ``nodes`` per panel."""
    return _means(f, radii, None, _check_p(p), nodes)


def mean_Mp(f, r: float, p) -> float:
    """Integral mean ``M_p(f, r) = (int_S |f(r x')|^p dsigma)^{1/p}``; sup for p = inf.

    For p = inf the maximum over the nodes is taken on the base rule and on
    the rule with doubled nodes, and the larger one is returned.
    """
    p = _check_p(p)
    if not 0.0 <= r < 1.0:
        raise DomainError(f"radius must satisfy 0 <= r < 1, got {r}")
    base = float(_means(f, [r], None, p, BASE_NODES)[0])
    if p != INF:
        return base
    return max(base, float(_means(f, [r], None, p, 2 * BASE_NODES)[0]))


def _floor_distance(f) -> float:
    """Smallest 1 - r used by grid suprema over the radius."""
    if f.r_max < 1.0:
        return 1.0 - f.r_max
    if isinstance(f, KernelFunction):
        return max((1.0 - f.rho) * 2.0**-12, 2.0**-30)
    return 2.0**-12 / (f.K + 1.0)


def _radial_sup_grid(f, steps: int):
    dmin = _floor_distance(f)
    imax = int(math.floor(-math.log2(dmin) * steps + 1e-9))
    d = 2.0 ** (-np.arange(imax + 1) / steps)
    d = d[d >= dmin * (1 - 1e-12)]
    return np.concatenate([[0.0], 1.0 - d[1:]]), np.concatenate([[1.0], d[1:]])


def _result(coarse: float, fine: float, sizes) -> NormResult:
    return NormResult(float(fine), float(abs(fine - coarse)), tuple(int(s) for s in sizes))


# --------------------------------------------------------------------------
# norms


def norm_hardy(f, spec: SpaceSpec, nodes: int = BASE_NODES) -> NormResult:
    """``sup_r (1 - r)^alpha M_p(f, r)`` over a geometric grid in ``1 - r``.

    The base grid has ``HARDY_STEPS`` radii per octave; the refined one
    doubles both the radii and the sphere nodes.
    """
    spec = spec.effective
    if spec.family != "Hardy":
        raise DomainError("norm_hardy needs a Hardy space")
    vals = []
    steps0 = HARDY_STEPS * nodes // BASE_NODES
    for steps, N in ((steps0, nodes), (2 * steps0, 2 * nodes)):
        r, d = _radial_sup_grid(f, steps)
        m = _means(f, r, d, spec.p, N)
        vals.append(float(np.max(d**spec.alpha * m)))
    return _result(vals[0], vals[1], (r.size, _sphere_size(f, 2 * nodes)))


def _sphere_size(f, N) -> int:
    if _is_zonal(f):
        return len(_angle_grid(f, 1.0 - _floor_distance(f), N))
    return sphere_rule(f.n, (2 * f.K + 8) * N // BASE_NODES).points.shape[0]


def _radial_grid(f, a: float, N: int):
    return radial_rule(float(a), _bucket(f.scale(1.0)), int(min(f.bandwidth(), 256)), N)


def norm_bpq(f, spec: SpaceSpec, nodes: int = BASE_NODES) -> NormResult:
    """``(int_0^1 M_q(f,r)^p (1-r^2)^{alpha p - 1} r^{n-1} dr)^{1/p}``.

    The factor ``(1-r)^{alpha p - 1}`` is the weight of the radial rule;
    ``(1+r)^{alpha p - 1} r^{n-1}`` is part of the integrand.  ``p = inf``
    is the Hardy space ``H^q_alpha``.
    """
    if spec.family != "Bpq":
        raise DomainError("norm_bpq needs a Bpq space")
    if spec.p == INF:
        return norm_hardy(f, spec, nodes)
    p, q, alpha = spec.p, spec.q, spec.alpha
    a = alpha * p - 1.0
    if not a > -1.0:
        raise DomainError("alpha * p must be positive for the radial weight to be integrable")
    vals = []
    for N in (nodes, 2 * nodes):
        g = _radial_grid(f, a, N)
        m = _means(f, g.r, g.d, q, N)
        integrand = m**p * (1.0 + g.r) ** a * g.r ** (f.n - 1)
        vals.append(float(g.weights @ integrand) ** (1.0 / p))
    return _result(vals[0], vals[1], (len(g), _sphere_size(f, 2 * nodes)))


def norm_tl(f, spec: SpaceSpec, nodes: int = BASE_NODES) -> NormResult:
    """``(int_S (int_0^1 |f(r x')|^p (1-r)^{alpha p-1} dr)^{q/p} dsigma)^{1/q}``.

    The inner weight is ``(1-r)^{alpha p - 1}`` with no ``r^{n-1}`` factor.
    """
    if spec.family != "TL":
        raise DomainError("norm_tl needs a TL space")
    p, q, alpha = spec.p, spec.q, spec.alpha
    a = alpha * p - 1.0
    vals = []
    for N in (nodes, 2 * nodes):
        g = _radial_grid(f, a, N)
        if _is_zonal(f):
            ag = _angle_grid(f, float(g.r.max()), N)
            V = _zonal_values(f, g.r, g.d, ag.t, ag.one_minus_t)
            w_s = ag.weights
            ssize = len(ag)
        else:
            pts, w_s = _sphere_nodes(f, N)
            V = f.values_at(g.r, pts)
            ssize = pts.shape[0]
        inner = g.weights @ np.abs(V) ** p
        vals.append(float(w_s @ inner ** (q / p)) ** (1.0 / q))
    return _result(vals[0], vals[1], (len(g), ssize))


def _gradient_sup(f, r, N) -> float:
    if isinstance(f, KernelFunction):
        f = f.to_expansion()
    if isinstance(f, ZonalExpansion):
        g = _angle_grid(f, float(r.max()), N)
        t = np.concatenate([g.t, [1.0, -1.0]])
        G = f.gradient_norms(r, t)
    else:
        pts, _ = _sphere_nodes(f, N)
        G = f.gradient_norms_at(r, pts)
    return float(np.max((1.0 - r * r)[:, None] * G))


def norm_bloch(f, spec: SpaceSpec | None = None, nodes: int = BASE_NODES) -> NormResult:
    """``|f(0)| + sup (1 - |x|^2) |grad f(x)|`` over a radius-by-sphere grid."""
    f0 = abs(f.eval(np.zeros(f.n)))
    vals = []
    steps0 = HARDY_STEPS * nodes // BASE_NODES
    for steps, N in ((steps0, nodes), (2 * steps0, 2 * nodes)):
        r, _ = _radial_sup_grid(f, steps)
        vals.append(f0 + _gradient_sup(f, r, N))
    return _result(vals[0], vals[1], (r.size, _sphere_size(f, 2 * nodes)))


def norm(f, spec: SpaceSpec, nodes: int = BASE_NODES) -> NormResult:
    """Dispatch on the space family; ``nodes`` is the base node count per panel."""
    spec = spec.effective
    if spec.family == "Bpq":
        return norm_bpq(f, spec, nodes)
    if spec.family == "Hardy":
        return norm_hardy(f, spec, nodes)
    if spec.family == "TL":
        return norm_tl(f, spec, nodes)
    return norm_bloch(f, spec, nodes)

