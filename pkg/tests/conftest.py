from __future__ import annotations

import numpy as np
import pytest

from harmball import kernels


@pytest.fixture(params=kernels.available_backends())
def each_backend(request):
    """Run the test once per available Gegenbauer backend."""
    previous = kernels.backend()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def random_unit(rng, n):
    return unit(rng.standard_normal(n))
