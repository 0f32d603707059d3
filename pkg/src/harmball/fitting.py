"""Log-log exponent fits and the tail rule for deciding growth."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError

FINITE_TOL = 0.05
INFINITE_TOL = 0.15
TAIL_DELTA = 2.0**-3
TAIL_POINTS = 5


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    stderr: float
    npoints: int

    def to_dict(self) -> dict:
        return asdict(self)


def fit_exponent(samples, correction: int = 0) -> FitResult:
    """Least-squares fit of ``log value = slope * log delta + intercept``.

    ``samples`` is a sequence of ``(delta, value)`` pairs.  With
    ``correction = c > 0`` the model gains the analytic terms
    ``delta, ..., delta^c`` so that smooth prefactors such as ``1/r`` or
    ``(1 + r)^a`` do not bias the slope; ``r_squared`` and ``stderr`` then
    refer to the enlarged model.
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("samples must be (delta, value) pairs")
    d, v = arr[:, 0], arr[:, 1]
    npts = d.size
    if npts < 3 + correction:
        raise DomainError(f"need at least {3 + correction} samples, got {npts}")
    if np.any(d <= 0) or np.any(v <= 0) or not np.all(np.isfinite(arr)):
        raise DomainError("deltas and values must be positive and finite")
    if np.unique(d).size != npts:
        raise DomainError("deltas must be distinct")
    x, y = np.log(d), np.log(v)
    cols = [x, np.ones_like(x)] + [d**j for j in range(1, correction + 1)]
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    dof = npts - A.shape[1]
    sst = float(np.sum((y - y.mean()) ** 2))
    sse = float(resid @ resid)
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    if dof > 0:
        cov = np.linalg.pinv(A.T @ A) * (sse / dof)
        stderr = math.sqrt(max(cov[0, 0], 0.0))
    else:
        stderr = 0.0
    return FitResult(float(coef[0]), float(coef[1]), float(min(max(r2, 0.0), 1.0)), stderr, int(npts))


def tail_verdict(deltas, values, exponent: float = 0.0):
    """Classify ``(delta^exponent) * value`` as bounded or divergent as delta -> 0.

    The slope of the weighted values is fitted over the last
    ``TAIL_POINTS`` grid points with ``delta <= TAIL_DELTA``.  A slope of at
    least ``-FINITE_TOL`` reads as bounded ("finite"), one at or below
    ``-INFINITE_TOL`` as a power-type divergence ("infinite"); the band in
    between (logarithmic growth, pre-asymptotic data) is "inconclusive".
    Returns ``(slope, stderr, verdict)``.
    """
    d = np.asarray(deltas, dtype=float)
    v = np.asarray(values, dtype=float)
    if v.size and np.all(v == 0.0):
        return 0.0, 0.0, "finite"
    keep = (d <= TAIL_DELTA) & (v > 0)
    d, v = d[keep], v[keep]
    order = np.argsort(-d)
    d, v = d[order][-TAIL_POINTS:], v[order][-TAIL_POINTS:]
    if d.size < 3:
        return math.nan, math.nan, "inconclusive"
    fit = fit_exponent(np.column_stack([d, d**exponent * v]))
    if fit.slope >= -FINITE_TOL:
        verdict = "finite"
    elif fit.slope <= -INFINITE_TOL:
        verdict = "infinite"
    else:
        verdict = "inconclusive"
    return fit.slope, fit.stderr, verdict
