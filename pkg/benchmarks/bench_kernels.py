"""Time the compiled and numpy Gegenbauer kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, size, backend) with the best wall time and
the speedup of the compiled backend, after checking that both agree.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from harmball import kernels

CASES = [
    # (degree K, number of cosines, lam)
    (64, 256, 0.5),
    (512, 1024, 0.5),
    (2048, 2048, 1.5),
]


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the numpy backend is timed")
    rng = np.random.default_rng(0)
    previous = kernels.backend()
    print(f"{'kernel':<8} {'K':>5} {'points':>6} {'backend':<9} {'seconds':>10} {'speedup':>8}")
    try:
        for K, M, lam in CASES:
            t = rng.uniform(-1.0, 1.0, M)
            c = rng.standard_normal(K + 1)
            for name, call in (("table", lambda: kernels.gegenbauer_table(lam, K, t)),
                               ("sum", lambda: kernels.gegenbauer_sum(c, lam, t))):
                times, outs = {}, {}
                for b in backends:
                    kernels.use_backend(b)
                    outs[b] = call()
                    times[b] = _time(call, args.repeat)
                if len(outs) == 2:
                    np.testing.assert_allclose(outs["compiled"], outs["python"], rtol=1e-10, atol=1e-10)
                for b in backends:
                    speed = times["python"] / times[b]
                    print(f"{name:<8} {K:>5} {M:>6} {b:<9} {times[b]:>10.5f} {speed:>7.1f}x")
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
