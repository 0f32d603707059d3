"""Acceptance suite: one check and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed
even when output is captured) or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import json
import os
import sys
import tempfile
import time
from pathlib import Path

import pytest

from harmball import cli, verify
from harmball.multipliers import THEOREMS, catalog

REPO = Path(__file__).resolve().parent.parent


def _emit(number, title, ok, detail, capsys=None):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def criterion_kernel_identity(capsys=None):
    t0 = time.perf_counter()
    rep = verify.check_poisson_agreement(ns=(2, 3, 4, 5), pairs=100, r_hi=0.95, tol=1e-8, seed=0)
    dt = time.perf_counter() - t0
    ok = rep.verdict == "pass" and dt <= 10.0
    return _emit(1, "Poisson series vs closed form", ok,
                 f"max rel err {rep.metrics['max_rel_error']:.2e} <= 1e-8, {dt:.1f} s <= 10 s", capsys)


def criterion_addition(capsys=None):
    rep = verify.check_addition(kmax=12, tol_repro=1e-9, tol_total=1e-10)
    m = rep.metrics
    return _emit(2, "addition theorem", rep.verdict == "pass",
                 f"reproducing {m['reproducing_error']:.1e} <= 1e-9, total {m['total_integral_error']:.1e} <= 1e-10",
                 capsys)


def criterion_rro(capsys=None):
    reports = [verify.check_rro(a, lam) for a, lam in verify.RRO_PAIRS]
    exact = reports[0].metrics["exact_case_error"]
    worst = max(abs(r.metrics["slope"] - r.metrics["predicted"]) for r in reports)
    ok = all(r.verdict == "pass" for r in reports) and exact <= 1e-10 and worst <= 0.05 and len(reports) >= 6
    return _emit(3, "radial integral lemma", ok,
                 f"exact case err {exact:.1e} <= 1e-10, worst slope gap {worst:.3f} <= 0.05 over {len(reports)} pairs",
                 capsys)


def criterion_testfn(capsys=None):
    t0 = time.perf_counter()
    grid = [1.0 - 2.0**-i for i in range(2, 10)]
    reports = []
    for combo in verify.TESTFN_COMBOS:
        params = dict(combo)
        kind = params.pop("norm_kind")
        reports.append((kind, params, verify.check_testfn_norms(kind, params, grid)))
    dt = time.perf_counter() - t0
    kinds = {k for k, _, _ in reports}
    hardy_inf = any(k == "Hardy" and p["t"] == float("inf") for k, p, _ in reports)
    passed = sum(r.verdict == "pass" for _, _, r in reports)
    worst = max(abs(r.metrics["slope"] - r.metrics["predicted"]) for _, _, r in reports)
    ok = passed >= 6 and passed == len(reports) and kinds >= {"Bpq", "Hardy", "TL"} and hardy_inf and dt <= 60.0
    return _emit(4, "test-function exponents", ok,
                 f"{passed}/{len(reports)} combos within 0.05 (worst {worst:.3f}), B/H/F with t = inf, {dt:.1f} s <= 60 s",
                 capsys)


def criterion_intcon(capsys=None):
    rep = verify.check_intcon_suite(count=20, seed=0)
    m = rep.metrics
    worst8 = max(m["pairing_error"], m["convolution_error"], m["kernel_image_error"])
    return _emit(5, "convolution identities", rep.verdict == "pass",
                 f"{m['instances']} instances, worst {worst8:.1e} <= 1e-8, radial form {m['radial_form_error']:.1e} <= 1e-6",
                 capsys)


def criterion_embeddings(capsys=None):
    family = verify.embedding_family(n=3, count=200, seed=0)
    reports = [verify.check_embedding(e, family=family) for e in verify.EMBEDDINGS]
    drift = max(r.metrics["drift"] for r in reports)
    ok = len(reports) == 5 and all(r.verdict == "pass" for r in reports) and drift <= 0.05
    consts = ", ".join(f"{r.check_id[10:]} C={r.metrics['fitted_C']:.3g}" for r in reports)
    return _emit(6, "embedding suite", ok, f"200 samples, max drift {drift:.1e} <= 5%; {consts}", capsys)


def criterion_theorems(capsys=None):
    reports = [verify.check_theorem(tid) for tid in sorted(THEOREMS)]
    contradictions = sum(r.metrics["contradictions"] for r in reports)
    entries = sum(r.metrics["entries"] for r in reports)
    conclusive = sum(r.metrics["conclusive"] for r in reports)
    ident = max(r.metrics["identity_ratio_error"] for r in reports)
    each = min(r.metrics["conclusive_fraction"] for r in reports)
    ok = (all(r.verdict == "pass" for r in reports) and contradictions == 0 and len(catalog(3)) >= 8
          and ident <= 1e-9 and each >= 0.8)
    return _emit(7, "multiplier theorems", ok,
                 f"{len(reports)} theorems, {contradictions} contradictions, {conclusive}/{entries} conclusive "
                 f"(min {each:.0%}), identity ratio err {ident:.1e}", capsys)


def criterion_determinism(capsys=None):
    config = REPO / "configs" / "suite.json"
    with tempfile.TemporaryDirectory() as tmp:
        times, codes = [], []
        for name in ("a", "b"):
            t0 = time.perf_counter()
            with open(os.devnull, "w") as sink:
                codes.append(cli.run("suite", config, Path(tmp) / name, stream=sink))
            times.append(time.perf_counter() - t0)
        same = _identical_trees(Path(tmp) / "a", Path(tmp) / "b")
        checks = len(json.loads((Path(tmp) / "a" / "report.json").read_text())["checks"])
    ok = codes == [0, 0] and same and max(times) <= 300.0
    return _emit(8, "suite determinism", ok,
                 f"exit codes {codes}, {checks} checks, byte-identical = {same}, {max(times):.0f} s <= 300 s", capsys)


def _identical_trees(a: Path, b: Path) -> bool:
    fa = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
    fb = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
    return fa == fb and all((a / r).read_bytes() == (b / r).read_bytes() for r in fa)


CRITERIA = [
    criterion_kernel_identity,
    criterion_addition,
    criterion_rro,
    criterion_testfn,
    criterion_intcon,
    criterion_embeddings,
    criterion_theorems,
    criterion_determinism,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"{i}-{c.__name__[10:]}" for i, c in enumerate(CRITERIA, 1)])
def test_acceptance(criterion, capsys):
    assert criterion(capsys)


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
