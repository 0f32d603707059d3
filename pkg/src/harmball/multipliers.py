"""Coefficient multipliers: sequences, criterion profiles and operator ratios.

A multiplier sequence ``c = {c_k^j}`` acts on harmonic functions by
multiplying the degree-k, index-j coefficient.  Sequences built from a
formula (``MultiplierSequence.from_rule``) know their coefficients for
every degree, so they can act on closed-form kernels without an a priori
truncation; some of them also act on kernels in closed form.

The criterion attached to ``c`` is the profile

    v(rho) = sup_{y'} ( int_S |Lambda_{m+1}(g_c * P_{x'})(rho y')|^s dsigma(x') )^{1/s}

weighted by ``(1 - rho)^e``, where ``e`` comes from :func:`criterion_exponent`.
For zonal ``c`` the integrand equals ``(c * Lambda_{m+1} P_{y'})(rho x')``,
so ``v(rho)`` is an integral mean of one zonal function.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import bases
from .errors import DomainError, PreconditionError, TruncationBudgetError, UnsupportedError
from .fitting import FitResult, fit_exponent, tail_verdict
from .harmfun import (
    GeneralExpansion,
    KernelFunction,
    ZonalExpansion,
    certified_zonal,
    convolve_with_poisson,
    lambda_weights,
    multiplier_apply,
    test_function,
)
from .norms import INF, SpaceSpec, mean_Mp, norm
from .specialfn import dim_sph, sphere_rule

__all__ = [
    "MultiplierSequence",
    "g_of_c",
    "criterion_exponent",
    "CriterionSpec",
    "CriterionProfile",
    "criterion_profile",
    "default_rho_grid",
    "operator_ratio",
    "TestFamily",
    "test_family",
    "catalog",
    "Theorem",
    "THEOREMS",
    "get_theorem",
]


# --------------------------------------------------------------------------
# sequences


def _rule_coeffs(name: str, param: float, n: int):
    """Coefficient function ``k -> c_k`` of a named zonal rule."""
    if name == "one":
        return lambda k: np.ones(np.shape(k))
    if name == "zero":
        return lambda k: np.zeros(np.shape(k))
    if name == "reflect":
        return lambda k: np.where(np.asarray(k) % 2 == 0, 1.0, -1.0)
    if name == "power":  # (1 + k)^param
        return lambda k: (1.0 + np.asarray(k, dtype=float)) ** param
    if name == "smooth":  # 1 / gamma_k(param)
        return lambda k: 1.0 / lambda_weights(n, param, int(np.max(k)))[np.asarray(k)]
    raise DomainError(f"unknown sequence rule {name!r}")


class MultiplierSequence:
    """A double-indexed sequence, zonal (``c_k``) or general (``c_k^j``, n = 2, 3)."""

    def __init__(self, n: int, kind: str, coeffs, rule: tuple | None = None, scale: float = 1.0):
        if int(n) != n or n < 2:
            raise DomainError(f"dimension must be an integer n >= 2, got {n}")
        self.n = int(n)
        if kind == "zonal":
            c = np.array(coeffs, dtype=float).ravel()
            if c.size == 0:
                raise DomainError("empty sequence")
            if not np.all(np.isfinite(c)):
                raise DomainError("sequence entries must be finite")
            c.setflags(write=False)
            self.coeffs = c
        elif kind == "general":
            if self.n not in (2, 3):
                raise UnsupportedError("general sequences need n in {2, 3}")
            blocks = []
            for k, b in enumerate(coeffs):
                b = np.array(b, dtype=float).ravel()
                if b.size != dim_sph(self.n, k):
                    raise DomainError(f"degree {k} needs {dim_sph(self.n, k)} entries, got {b.size}")
                if not np.all(np.isfinite(b)):
                    raise DomainError("sequence entries must be finite")
                b.setflags(write=False)
                blocks.append(b)
            if not blocks:
                raise DomainError("empty sequence")
            self.coeffs = blocks
        else:
            raise DomainError(f"sequence kind must be 'zonal' or 'general', got {kind!r}")
        self.kind = kind
        self.rule = rule
        self.scale = float(scale)

    def __repr__(self):
        tag = f", rule={self.rule}" if self.rule else ""
        return f"MultiplierSequence(n={self.n}, kind={self.kind}, K={self.K}{tag})"

    @classmethod
    def from_rule(cls, n: int, name: str, param: float = 0.0, K: int = 64, scale: float = 1.0):
        f = _rule_coeffs(name, param, n)
        return cls(n, "zonal", scale * f(np.arange(K + 1)), rule=(name, float(param)), scale=scale)

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    @property
    def name(self) -> str:
        if self.rule is None:
            return f"{self.kind}-file"
        nm, p = self.rule
        base = {"power": f"(1+k)^{p:g}", "smooth": f"1/gamma_k({p:g})"}.get(nm, nm)
        return base if self.scale == 1.0 else f"{self.scale:g}*{base}"

    @property
    def is_zonal(self) -> bool:
        if self.kind == "zonal":
            return True
        return all(np.all(b == b[0]) for b in self.coeffs)

    def zonal_coeffs(self) -> np.ndarray:
        if self.kind == "zonal":
            return self.coeffs
        if not self.is_zonal:
            raise UnsupportedError("sequence depends on the index j")
        return np.array([b[0] for b in self.coeffs])

    def coefficient_fn(self):
        """``k -> c_k`` for every degree, or None for a finite table."""
        if self.rule is None:
            return None
        f = _rule_coeffs(self.rule[0], self.rule[1], self.n)
        s = self.scale
        return lambda k: s * f(k)

    def extend(self, K: int) -> "MultiplierSequence":
        fn = self.coefficient_fn()
        if fn is None:
            raise UnsupportedError("a tabulated sequence cannot be extended")
        return MultiplierSequence(self.n, "zonal", fn(np.arange(K + 1)), self.rule, self.scale)

    def scaled(self, a: float) -> "MultiplierSequence":
        if self.kind == "zonal":
            return MultiplierSequence(self.n, "zonal", a * self.coeffs, self.rule, a * self.scale)
        return MultiplierSequence(self.n, "general", [a * b for b in self.coeffs])

    def compose(self, other: "MultiplierSequence") -> "MultiplierSequence":
        """Coefficientwise product, truncated to the shorter sequence."""
        if other.n != self.n:
            raise DomainError("sequence dimensions differ")
        K = min(self.K, other.K)
        if self.kind == "zonal" and other.kind == "zonal":
            return MultiplierSequence(self.n, "zonal", self.coeffs[: K + 1] * other.coeffs[: K + 1])
        a, b = self.to_general(), other.to_general()
        return MultiplierSequence(self.n, "general", [a.coeffs[k] * b.coeffs[k] for k in range(K + 1)])

    def to_general(self) -> "MultiplierSequence":
        if self.kind == "general":
            return self
        return MultiplierSequence(self.n, "general", [np.full(dim_sph(self.n, k), ck) for k, ck in enumerate(self.coeffs)])

    def closed_action(self, f: KernelFunction):
        """``c * f`` as a closed-form kernel when one exists, else None."""
        if self.rule is None:
            return None
        name, p = self.rule
        a = self.scale
        if name == "one":
            return f.replace(factor=a * f.factor)
        if name == "zero":
            return f.replace(factor=0.0)
        if name == "reflect":
            return f.replace(pole=-f.pole, factor=a * f.factor)
        if name == "smooth" and float(p) == f.order:
            return f.replace(order=0, factor=a * f.factor)
        return None

    def to_dict(self) -> dict:
        coeffs = self.coeffs.tolist() if self.kind == "zonal" else [b.tolist() for b in self.coeffs]
        return {"n": self.n, "kind": self.kind, "K": self.K, "coeffs": coeffs}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "MultiplierSequence":
        unknown = set(d) - {"n", "kind", "K", "coeffs"}
        if unknown:
            raise DomainError(f"unknown sequence keys {sorted(unknown)}")
        c = cls(d["n"], d["kind"], d["coeffs"])
        if "K" in d and int(d["K"]) != c.K:
            raise DomainError(f"K = {d['K']} does not match {c.K + 1} coefficient blocks")
        return c

    @classmethod
    def from_json(cls, text: str) -> "MultiplierSequence":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class GcHandle:
    """Symbolic ``g_c``; only its convolutions with Poisson kernels are materialized."""

    c: MultiplierSequence

    def convolve(self, xprime):
        return convolve_with_poisson(self.c, xprime)


def g_of_c(c: MultiplierSequence) -> GcHandle:
    return GcHandle(c)


# --------------------------------------------------------------------------
# criterion


def _exponent_parts(X: SpaceSpec, Y: SpaceSpec, t=None):
    X, Y = X.effective, Y.effective
    t = X.inner if t is None else float(t)
    alpha = X.alpha
    beta = alpha if Y.family == "Bloch" else Y.alpha
    return t, alpha, beta


def criterion_exponent(X: SpaceSpec, Y: SpaceSpec, m: float, n: int | None = None, t: float | None = None) -> float:
    """``e = beta - alpha + m + n - (n-1)/t`` with ``t`` the inner exponent of X.

    At ``t = 1`` this is ``beta - alpha + m + 1`` and needs no dimension.
    ``t`` overrides the inner exponent for statements whose criterion is
    phrased with ``t = 1`` although X has another one (domains
    ``B^{p,inf}_alpha``).
    """
    t, alpha, beta = _exponent_parts(X, Y, t)
    if t == 1.0:
        nd = 1.0 if n is None else float(n)
        tail = 1.0
    else:
        if n is None:
            raise PreconditionError("the dimension n is needed when the inner exponent differs from 1")
        nd = float(n)
        tail = nd - (nd - 1.0) / t if t != INF else nd
    bound = max(alpha + (nd - 1.0) / t - nd if t != INF else alpha - nd, -1.0)
    if not m > bound:
        raise PreconditionError(f"need m > max(alpha + (n-1)/t - n, -1) = {bound:g}, got m = {m:g}")
    return beta - alpha + m + tail


def default_rho_grid(imax: int = 10) -> list[float]:
    return [0.0] + [1.0 - 2.0**-i for i in range(1, imax + 1)]


@dataclass
class CriterionSpec:
    m: float
    s: float
    e: float
    rho_grid: list = field(default_factory=default_rho_grid)
    yprime_grid: list | None = None

    def __post_init__(self):
        self.s = INF if isinstance(self.s, str) else float(self.s)
        if not self.m > -1:
            raise DomainError(f"m must exceed -1, got {self.m}")
        if not self.s >= 1:
            raise UnsupportedError("criterion exponents s < 1 are not supported")
        if any(not 0.0 <= r < 1.0 for r in self.rho_grid):
            raise DomainError("criterion radii must lie in [0, 1)")


@dataclass
class CriterionProfile:
    rho: np.ndarray
    v: np.ndarray
    weighted_v: np.ndarray
    e: float
    sup_estimate: float
    slope_fit: FitResult | None
    tail_slope: float
    tail_stderr: float
    verdict: str
    dropped: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "sup_estimate": self.sup_estimate,
            "slope": None if self.slope_fit is None else self.slope_fit.slope,
            "slope_stderr": None if self.slope_fit is None else self.slope_fit.stderr,
            "verdict": self.verdict,
        }

    def rows(self):
        return [(float(r), float(v), float(w)) for r, v, w in zip(self.rho, self.v, self.weighted_v)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rho", "v", "weighted_v"])
        for row in self.rows():
            w.writerow([f"{x:.12g}" for x in row])
        return buf.getvalue()


def _criterion_function(c: MultiplierSequence, m: float, pole, rho: float):
    """``x -> (c * Lambda_{m+1} P_{pole})(x)``, valid at radius ``rho``."""
    n = c.n
    if float(m).is_integer():
        closed = c.closed_action(KernelFunction(n, pole, int(m) + 1, 1.0, 1.0))
        if closed is not None:
            return closed
    cf = c.coefficient_fn()
    if cf is None:
        cz = c.zonal_coeffs()
        return ZonalExpansion(n, pole, cz * lambda_weights(n, m + 1.0, c.K))
    return certified_zonal(n, pole, lambda k: cf(k) * lambda_weights(n, m + 1.0, int(np.max(k)))[k], r_max=rho)


def _probe_directions(n: int, count: int):
    if n == 2:
        phi = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        return np.column_stack([np.cos(phi), np.sin(phi)])
    rule = sphere_rule(3, max(2, int(math.sqrt(count))))
    return rule.points


def _general_v(c: MultiplierSequence, m: float, rho: float, s: float, ygrid) -> float:
    lw = lambda_weights(c.n, m + 1.0, c.K)
    vals = bases.basis_values(c.n, c.K, ygrid)
    best = 0.0
    for i in range(ygrid.shape[0]):
        h = GeneralExpansion(c.n, [lw[k] * c.coeffs[k] * vals[k][:, i] for k in range(c.K + 1)])
        best = max(best, mean_Mp(h, rho, s))
    return best


def criterion_profile(c: MultiplierSequence, spec: CriterionSpec) -> CriterionProfile:
    """Weighted criterion profile of ``c`` on ``spec.rho_grid``.

    Radii beyond the truncation budget of a formula sequence are dropped
    (reported in ``dropped``) rather than evaluated inaccurately.
    """
    n = c.n
    rhos, vs, dropped = [], [], []
    general = not c.is_zonal
    if general:
        ygrid = np.asarray(spec.yprime_grid, dtype=float) if spec.yprime_grid else _probe_directions(n, 16)
    pole = np.zeros(n)
    pole[-1] = 1.0
    for rho in sorted(spec.rho_grid):
        if dropped:
            dropped.append(rho)
            continue
        try:
            if general:
                v = _general_v(c, spec.m, rho, spec.s, ygrid)
            else:
                F = _criterion_function(c, spec.m, pole, rho)
                v = mean_Mp(F, rho, spec.s)
        except TruncationBudgetError:
            dropped.append(rho)
            continue
        rhos.append(rho)
        vs.append(v)
    rho = np.array(rhos)
    v = np.array(vs)
    d = 1.0 - rho
    w = d**spec.e * v
    fit = None
    pos = v > 0
    if np.count_nonzero(pos) >= 3 and np.unique(d[pos]).size >= 3:
        fit = fit_exponent(np.column_stack([d[pos], v[pos]]))
    slope, stderr, verdict = tail_verdict(d, w)
    return CriterionProfile(rho, v, w, spec.e, float(w.max()) if w.size else 0.0, fit, slope, stderr, verdict, dropped)


# --------------------------------------------------------------------------
# test families and operator ratios


@dataclass
class TestFamily:
    kind: str
    params: dict
    seed: int
    members: list
    deltas: list  # scale parameter of each member (1 - |y|, or 1/degree)

    __test__ = False  # not a pytest class

    def __len__(self):
        return len(self.members)


def _random_unit(rng, n):
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_family(kind: str, params: dict, seed: int = 0) -> TestFamily:
    """Deterministic families of test functions.

    ``bergman_kernels``: ``f_{m,y}`` for ``|y|`` in ``params["radii"]``
    (pole ``e_n`` unless ``params["poles"]``); ``random_zonal``: ``count``
    expansions with ``a_k = +-(1+k)^{-gamma} u_k``, ``u_k`` uniform in
    [0.5, 1]; ``poisson``: dilated Poisson kernels; ``degree_ladder``:
    single zonal harmonics of the listed degrees.
    """
    n = int(params.get("n", 3))
    rng = np.random.default_rng(seed)
    members, deltas = [], []
    e = np.zeros(n)
    e[-1] = 1.0
    if kind == "bergman_kernels":
        m = float(params.get("m", 1.0))
        radii = list(params.get("radii", []))
        poles = [np.asarray(p, dtype=float) for p in params.get("poles", [e])]
        if not radii or not poles:
            raise DomainError("bergman_kernels needs nonempty radii and poles")
        for p in poles:
            for rho in radii:
                members.append(test_function(m, rho * np.asarray(p) / np.linalg.norm(p), "auto"))
                deltas.append(1.0 - rho)
    elif kind == "random_zonal":
        K = int(params.get("K", 32))
        gamma = float(params.get("gamma", 3.0))
        count = int(params.get("count", 10))
        if count < 1:
            raise DomainError("random_zonal needs count >= 1")
        k = np.arange(K + 1)
        for _ in range(count):
            sign = rng.choice([-1.0, 1.0], size=K + 1)
            u = rng.uniform(0.5, 1.0, size=K + 1)
            members.append(ZonalExpansion(n, _random_unit(rng, n), sign * (1.0 + k) ** -gamma * u))
            deltas.append(1.0 / (K + 1.0))
    elif kind == "poisson":
        radii = list(params.get("radii", []))
        if not radii:
            raise DomainError("poisson family needs nonempty radii")
        for rho in radii:
            members.append(KernelFunction(n, e, 0, rho, 1.0))
            deltas.append(1.0 - rho)
    elif kind == "degree_ladder":
        degrees = list(params.get("degrees", []))
        if not degrees:
            raise DomainError("degree_ladder needs nonempty degrees")
        for k in degrees:
            a = np.zeros(int(k) + 1)
            a[-1] = 1.0
            members.append(ZonalExpansion(n, e, a))
            deltas.append(1.0 / max(int(k), 1))
    else:
        raise DomainError(f"unknown family kind {kind!r}")
    return TestFamily(kind, dict(params), seed, members, deltas)


def _fkey(f):
    if isinstance(f, KernelFunction):
        return ("kernel", f.n, f.order, f.rho, f.factor, tuple(f.pole))
    if isinstance(f, ZonalExpansion):
        return ("zonal", f.n, f.r_max, tuple(f.pole), f.coeffs.tobytes())
    return ("general", f.n, f.r_max, b"".join(b.tobytes() for b in f.coeffs))


@lru_cache(maxsize=4096)
def _cached_norm(key, spec: SpaceSpec, f_holder):
    return norm(f_holder.f, spec).value


class _Holder:
    """Carries a function through the cache without hashing it."""

    def __init__(self, f):
        self.f = f

    def __hash__(self):
        return 0

    def __eq__(self, other):
        return True


def norm_value(f, spec: SpaceSpec) -> float:
    """``norm(f, spec).value`` with caching across repeated calls."""
    return _cached_norm(_fkey(f), spec, _Holder(f))


@dataclass
class RatioResult:
    sup_ratio: float
    rows: list  # (delta, x_norm, y_norm, ratio)
    excluded: int
    slope: float
    slope_stderr: float
    verdict: str  # bounded | unbounded | inconclusive


def operator_ratio(c: MultiplierSequence, X: SpaceSpec, Y: SpaceSpec, family: TestFamily) -> RatioResult:
    """``sup_f ||c * f||_Y / ||f||_X`` over the family, with a growth verdict.

    Members with zero X-norm, or whose image exceeds the truncation
    budget, are excluded and counted.  The verdict applies the tail rule
    to the ratios against each member's scale parameter.
    """
    rows, excluded = [], 0
    for f, delta in zip(family.members, family.deltas):
        try:
            nx = norm_value(f, X)
            if nx == 0.0:
                excluded += 1
                continue
            ny = norm_value(multiplier_apply(c, f), Y)
        except TruncationBudgetError:
            excluded += 1
            continue
        rows.append((float(delta), nx, ny, ny / nx))
    if not rows:
        return RatioResult(math.nan, rows, excluded, math.nan, math.nan, "inconclusive")
    arr = np.array(rows)
    slope, stderr, verdict = tail_verdict(arr[:, 0], arr[:, 3])
    verdict = {"finite": "bounded", "infinite": "unbounded"}.get(verdict, verdict)
    return RatioResult(float(arr[:, 3].max()), rows, excluded, slope, stderr, verdict)


def catalog(n: int) -> list[MultiplierSequence]:
    """Sequences spanning criterion-finite and criterion-infinite cases."""
    seqs = [
        MultiplierSequence.from_rule(n, "one"),
        MultiplierSequence.from_rule(n, "zero"),
        MultiplierSequence.from_rule(n, "reflect"),
        MultiplierSequence.from_rule(n, "smooth", 1.0),
    ]
    seqs += [MultiplierSequence.from_rule(n, "power", -g) for g in (0.5, 1.0, 2.0, 4.0)]
    seqs.append(MultiplierSequence.from_rule(n, "power", 1.0))
    return seqs


# --------------------------------------------------------------------------
# theorem registry


def _fin(x):
    return x < INF


@dataclass(frozen=True)
class Theorem:
    """A multiplier characterization and its hypotheses.

    ``spaces(row)`` builds ``(X, Y)``; ``criterion_s(row)`` is the
    integrability exponent of the criterion; ``hypotheses(row)`` returns a
    list of violated conditions (empty when the statement applies).
    ``necessity``/``sufficiency`` record which directions the statement
    asserts.
    """

    id: str
    title: str
    spaces: object
    criterion_s: object
    hypotheses: object
    necessity: bool
    sufficiency: bool
    rows: tuple
    family: str = "bergman_kernels"
    criterion_t: float | None = None

    def exponent(self, row: dict) -> float:
        X, Y = self.spaces(row)
        return criterion_exponent(X, Y, row["m"], row["n"], self.criterion_t)

    def check_row(self, row: dict) -> list[str]:
        return list(self.hypotheses(row))


def _req(cond, text):
    return [] if cond else [text]


def _m_bound(row, alpha, t):
    n = row["n"]
    b = max(alpha + ((n - 1) / t if t != INF else 0.0) - n, -1.0)
    return _req(row["m"] > b, f"m > {b:g}")


def _hyp_btoh(r):
    return (_req(0 < r["t"] <= 1, "0 < t <= 1") + _req(0 < r["p"] <= 1, "0 < p <= 1")
            + _req(1 <= r["s"], "s >= 1") + _m_bound(r, r["alpha"], r["t"]))


def _hyp_ftoh(r):
    return (_req(0 < r["t"] <= r["p"] <= 1 <= r["s"], "0 < t <= p <= 1 <= s") + _m_bound(r, r["alpha"], r["t"]))


def _hyp_hth_w(r):
    return (_req(0 < r["t"] <= 1 <= r["s"], "0 < t <= 1 <= s") + _req(r["alpha"] >= 0, "alpha >= 0")
            + _req(r["beta"] > 0, "beta > 0") + _m_bound(r, r["alpha"], r["t"]))


def _hyp_hth_u(r):
    return _req(0 < r["t"] < 1 <= r["s"], "0 < t < 1 <= s") + _m_bound(r, 0.0, r["t"])


def _hyp_btof(r):
    return (_req(0 < r["p"] <= 1 <= r["q"] < INF, "0 < p <= 1 <= q < inf")
            + _req(r["m"] > r["alpha"] - 1, "m > alpha - 1"))


def _hyp_bpbp(r):
    return (_req(1 <= r["p"] <= r["q"], "1 <= p <= q") + _req(r["s"] >= 1, "s >= 1")
            + _req(r["m"] > r["alpha"] - 1, "m > alpha - 1"))


def _hyp_bpinf(r):
    # the duality argument runs through the previous theorem, which needs p <= q
    return (_req(1 < r["p"] <= r["q"] < INF, "1 < p <= q < inf") + _req(r["m"] > r["alpha"] - 1, "m > alpha - 1"))


def _hyp_bloch(r):
    return _req(r["m"] > -1, "m > -1")


def _hyp_bpibpi(r):
    return (_req(0 < r["p"] <= 1, "0 < p <= 1") + _req(r["p"] <= r["q"], "p <= q")
            + _req(r["m"] > r["alpha"] - 1, "m > alpha - 1"))


def _hyp_bpbpi(r):
    return _req(0 < r["p"] <= r["q"], "0 < p <= q") + _req(r["m"] > r["alpha"] - 1, "m > alpha - 1")


B, H, F = SpaceSpec.bpq, SpaceSpec.hardy, SpaceSpec.tl

THEOREMS = {
    t.id: t
    for t in [
        Theorem(
            "btoh", "B^{p,t}_alpha -> H^s_beta",
            lambda r: (B(r["p"], r["t"], r["alpha"]), H(r["s"], r["beta"])),
            lambda r: r["s"], _hyp_btoh, True, True,
            ({"n": 3, "p": 1.0, "t": 1.0, "alpha": 1.0, "s": 1.0, "beta": 1.0, "m": 1.0},
             {"n": 2, "p": 0.5, "t": 1.0, "alpha": 1.0, "s": 2.0, "beta": 1.5, "m": 1.0}),
        ),
        Theorem(
            "ftoh", "F^{p,t}_alpha -> H^s_beta",
            lambda r: (F(r["p"], r["t"], r["alpha"]), H(r["s"], r["beta"])),
            lambda r: r["s"], _hyp_ftoh, True, True,
            ({"n": 3, "p": 1.0, "t": 1.0, "alpha": 1.0, "s": 1.0, "beta": 1.0, "m": 1.0},),
        ),
        Theorem(
            "hth_weighted", "H^t_alpha -> H^s_beta (beta > 0)",
            lambda r: (H(r["t"], r["alpha"]), H(r["s"], r["beta"])),
            lambda r: r["s"], _hyp_hth_w, True, True,
            ({"n": 3, "t": 1.0, "alpha": 0.5, "s": 1.0, "beta": 0.5, "m": 1.0},
             {"n": 2, "t": 1.0, "alpha": 0.0, "s": 2.0, "beta": 1.0, "m": 1.0}),
        ),
        Theorem(
            "hth_unweighted", "H^t -> H^s",
            lambda r: (H(r["t"], 0.0), H(r["s"], 0.0)),
            lambda r: r["s"], _hyp_hth_u, True, True,
            ({"n": 2, "t": 0.5, "s": 1.0, "m": 1.0},),
        ),
        Theorem(
            "btof", "B^{p,1}_alpha -> F^{q,1}_beta",
            lambda r: (B(r["p"], 1.0, r["alpha"]), F(r["q"], 1.0, r["beta"])),
            lambda r: 1.0, _hyp_btof, True, True,
            ({"n": 3, "p": 1.0, "q": 1.0, "alpha": 1.0, "beta": 1.0, "m": 1.0},
             {"n": 2, "p": 0.5, "q": 2.0, "alpha": 1.0, "beta": 1.5, "m": 1.0}),
        ),
        Theorem(
            "bpbp", "B^{p,1}_alpha -> B^{q,s}_beta",
            lambda r: (B(r["p"], 1.0, r["alpha"]), B(r["q"], r["s"], r["beta"])),
            lambda r: r["s"], _hyp_bpbp, True, True,
            ({"n": 3, "p": 1.0, "q": 1.0, "s": 1.0, "alpha": 1.0, "beta": 1.0, "m": 1.0},
             {"n": 3, "p": 1.0, "q": 2.0, "s": 2.0, "alpha": 1.0, "beta": 1.0, "m": 1.0}),
        ),
        Theorem(
            "bpinf", "B^{p,inf}_alpha -> B^{q,inf}_alpha",
            lambda r: (B(r["p"], INF, r["alpha"]), B(r["q"], INF, r["alpha"])),
            lambda r: 1.0, _hyp_bpinf, True, True,
            ({"n": 3, "p": 2.0, "q": 2.0, "alpha": 1.0, "m": 1.0},),
            criterion_t=1.0,
        ),
        Theorem(
            "bloch0", "little Bloch -> little Bloch",
            lambda r: (SpaceSpec.bloch(), SpaceSpec.bloch()),
            lambda r: 1.0, _hyp_bloch, True, True,
            ({"n": 3, "m": 1.0},),
            family="degree_ladder",
        ),
        Theorem(
            "bpibpi", "B^{p,inf}_alpha -> B^{q,inf}_beta (sufficiency)",
            lambda r: (B(r["p"], INF, r["alpha"]), B(r["q"], INF, r["beta"])),
            lambda r: 1.0, _hyp_bpibpi, False, True,
            ({"n": 3, "p": 1.0, "q": 1.0, "alpha": 1.0, "beta": 1.0, "m": 1.0},),
            criterion_t=1.0,
        ),
        Theorem(
            "bpbpi", "B^{p,1}_alpha -> B^{q,inf}_beta",
            lambda r: (B(r["p"], 1.0, r["alpha"]), B(r["q"], INF, r["beta"])),
            lambda r: INF, _hyp_bpbpi, True, True,
            ({"n": 2, "p": 0.5, "q": 1.0, "alpha": 1.0, "beta": 2.0, "m": 1.0},),
        ),
    ]
}


def get_theorem(theorem_id: str) -> Theorem:
    try:
        return THEOREMS[theorem_id]
    except KeyError:
        raise DomainError(f"unknown theorem {theorem_id!r}; known: {sorted(THEOREMS)}") from None
