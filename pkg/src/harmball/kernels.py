"""Backend selection for the Gegenbauer kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback is used.  ``use_backend`` switches explicitly (benchmarks and
tests exercise both).
"""
from __future__ import annotations

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_active = _ckernels if _ckernels is not None else _kernels_py


def available_backends() -> list[str]:
    names = ["python"]
    if _ckernels is not None:
        names.append("compiled")
    return names


def backend() -> str:
    return _active.BACKEND


def use_backend(name: str) -> None:
    global _active
    if name == "python":
        _active = _kernels_py
    elif name == "compiled":
        if _ckernels is None:
            raise ImportError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def gegenbauer_table(lam, K, t):
    return _active.gegenbauer_table(float(lam), int(K), t)


def gegenbauer_sum(coeffs, lam, t):
    return _active.gegenbauer_sum(coeffs, float(lam), t)
