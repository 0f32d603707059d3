"""Command-line front end: ``harmball <subcommand> --config <path> [--out <dir>] [--seed <int>]``.

A run parses and validates the JSON config, executes the checks, and only
then writes ``report.json`` and ``tables/*.csv`` into the output directory.
Every file is written through a temporary file and renamed into place.
Exit codes: 0 when no check failed (inconclusive is not a failure), 1 when
a check failed, 2 on a configuration error (nothing is written).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import verify
from .errors import HarmballError
from .multipliers import (
    THEOREMS,
    CriterionSpec,
    MultiplierSequence,
    criterion_exponent,
    criterion_profile,
    default_rho_grid,
)
from .norms import INF, SpaceSpec

COMMANDS = ("kernels", "embeddings", "testfn", "criterion", "theorem", "suite")


class ConfigError(Exception):
    """Invalid configuration; maps to exit code 2."""


# --------------------------------------------------------------------------
# output


def format_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.12g}"
    if v is None:
        return ""
    return str(v)


def table_csv(header, rows) -> str:
    """CSV text with a header row, 12 significant digits and ``\\n`` newlines."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for row in rows:
        w.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def atomic_write(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as err:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise OSError(f"cannot write {path}: {err}") from err


def emit_table(obj, path) -> None:
    """Write a CriterionProfile or a ``(header, rows)`` pair as CSV."""
    if hasattr(obj, "to_csv"):
        text = obj.to_csv()
    else:
        header, rows = obj
        text = table_csv(header, rows)
    atomic_write(path, text)


# --------------------------------------------------------------------------
# config validation


def _expect_keys(d, allowed, where):
    if not isinstance(d, dict):
        raise ConfigError(f"{where} must be a JSON object")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) {unknown} in {where}")


def _num(v, where, integer=False, allow_inf=False):
    if allow_inf and v in ("inf", "infinity"):
        return INF
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where} must be a number, got {v!r}")
    if integer and int(v) != v:
        raise ConfigError(f"{where} must be an integer, got {v!r}")
    return int(v) if integer else float(v)


def _num_list(v, where, integer=False):
    if not isinstance(v, list) or not v:
        raise ConfigError(f"{where} must be a non-empty list")
    return [_num(x, f"{where}[{i}]", integer) for i, x in enumerate(v)]


def _pairs(v, where):
    if not isinstance(v, list) or not v:
        raise ConfigError(f"{where} must be a non-empty list of pairs")
    out = []
    for i, p in enumerate(v):
        if not isinstance(p, list) or len(p) != 2:
            raise ConfigError(f"{where}[{i}] must be a pair")
        out.append((_num(p[0], f"{where}[{i}][0]"), _num(p[1], f"{where}[{i}][1]")))
    return out


def _dims(v, where, lo=2, hi=None):
    ns = _num_list(v, where, integer=True)
    for n in ns:
        if n < lo or (hi is not None and n > hi):
            raise ConfigError(f"{where}: dimension {n} outside [{lo}, {hi or 'any'}]")
    return ns


KERNELS_KEYS = ("ns", "pairs", "r_max", "kmax", "bound_cases", "growth_cases", "rro_pairs")
EMBEDDINGS_KEYS = ("n", "samples", "kernels", "embeddings", "qlo")
TESTFN_KEYS = ("combos", "y_exponents")
COMBO_KEYS = ("norm_kind", "n", "p", "t", "alpha", "m")
CRITERION_KEYS = ("n", "m", "s", "e", "X", "Y", "multiplier", "rho_imax", "expect")
THEOREM_KEYS = ("theorems", "rows")
INTCON_KEYS = ("instances",)
SUITE_KEYS = ("kernels", "embeddings", "testfn", "theorem", "intcon")
TOP_KEYS = ("command", "seed")


def _plan_kernels(cfg, seed, where="config"):
    _expect_keys(cfg, KERNELS_KEYS + (TOP_KEYS if where == "config" else ()), where)
    ns = _dims(cfg.get("ns", [2, 3, 4, 5]), f"{where}.ns")
    pairs = _num(cfg.get("pairs", 100), f"{where}.pairs", integer=True)
    r_max = _num(cfg.get("r_max", 0.95), f"{where}.r_max")
    kmax = _num(cfg.get("kmax", 12), f"{where}.kmax", integer=True)
    if pairs < 1 or not 0 <= r_max < 1 or kmax < 0:
        raise ConfigError(f"{where}: need pairs >= 1, 0 <= r_max < 1 and kmax >= 0")
    bound = _pairs(cfg.get("bound_cases", [[2, 0], [3, 1], [3, 2], [4, 3], [5, 0], [2, 0.5], [3, -0.5]]),
                   f"{where}.bound_cases")
    growth = _pairs(cfg.get("growth_cases", [[2, 2], [2, 3], [3, 4], [3, 5], [4, 5], [5, 7.5]]),
                    f"{where}.growth_cases")
    rro = _pairs(cfg.get("rro_pairs", [list(p) for p in verify.RRO_PAIRS]), f"{where}.rro_pairs")
    for n, m in bound:
        if int(n) != n or n < 2 or not m > -1:
            raise ConfigError(f"{where}.bound_cases: need integer n >= 2 and m > -1, got ({n:g}, {m:g})")
    for n, m in growth:
        if int(n) != n or n < 2 or not m > n - 1:
            raise ConfigError(f"{where}.growth_cases: need m > n - 1, got ({n:g}, {m:g})")
    for a, lam in rro:
        if not (a > -1 and lam > a + 1):
            raise ConfigError(f"{where}.rro_pairs: need alpha > -1 and lambda > alpha + 1, got ({a:g}, {lam:g})")
    jobs = [
        lambda: verify.check_poisson_agreement(tuple(ns), pairs, r_max, seed=seed),
        lambda: verify.check_bergman_agreement(tuple(ns), seed=seed),
        lambda: verify.check_addition(kmax, seed=seed),
    ]
    jobs += [lambda n=n, m=m: verify.check_kernel_bound(int(n), m) for n, m in bound]
    jobs += [lambda n=n, m=m: verify.check_kernel_growth(int(n), m) for n, m in growth]
    jobs += [lambda a=a, lam=lam: verify.check_rro(a, lam) for a, lam in rro]
    return jobs


def _plan_embeddings(cfg, seed, where="config"):
    _expect_keys(cfg, EMBEDDINGS_KEYS + (TOP_KEYS if where == "config" else ()), where)
    n = _num(cfg.get("n", 3), f"{where}.n", integer=True)
    samples = _num(cfg.get("samples", 200), f"{where}.samples", integer=True)
    kernels = _num(cfg.get("kernels", 50), f"{where}.kernels", integer=True)
    ids = cfg.get("embeddings", list(verify.EMBEDDINGS))
    if not isinstance(ids, list) or any(i not in verify.EMBEDDINGS for i in ids):
        raise ConfigError(f"{where}.embeddings must list ids from {sorted(verify.EMBEDDINGS)}")
    qlo = cfg.get("qlo", [[1, 2]])
    qlo = _pairs(qlo, f"{where}.qlo") if qlo != [] else []
    if n < 2 or not 0 <= kernels <= samples or kernels % 5:
        raise ConfigError(f"{where}: need n >= 2 and 0 <= kernels <= samples with kernels divisible by 5")
    for s, t in qlo:
        if not 0 < s <= t:
            raise ConfigError(f"{where}.qlo: need 0 < s <= t, got ({s:g}, {t:g})")
    cache = {}

    def family():
        if "f" not in cache:
            cache["f"] = verify.embedding_family(n, samples, seed, kernels)
        return cache["f"]

    jobs = [lambda e=e: verify.check_embedding(e, n, family=family()) for e in ids]
    jobs += [lambda s=s, t=t: verify.check_qlo(s, t, n, family=family()) for s, t in qlo]
    return jobs


def _combo(d, where):
    _expect_keys(d, COMBO_KEYS, where)
    for k in ("norm_kind", "n", "m"):
        if k not in d:
            raise ConfigError(f"{where} needs {k!r}")
    kind = d["norm_kind"]
    if kind not in ("Bpq", "Hardy", "TL", "Mt", "radial"):
        raise ConfigError(f"{where}.norm_kind must be one of Bpq, Hardy, TL, Mt, radial")
    params = {
        "n": _num(d["n"], f"{where}.n", integer=True),
        "p": _num(d.get("p", 1.0), f"{where}.p", allow_inf=True),
        "t": _num(d.get("t", 1.0), f"{where}.t", allow_inf=True),
        "alpha": _num(d.get("alpha", 0.0), f"{where}.alpha"),
        "m": _num(d["m"], f"{where}.m"),
    }
    try:
        verify._testfn_guard(kind, params["n"], params["t"], params["alpha"], params["m"], params["p"])
        if kind in ("Bpq", "Hardy", "TL"):
            verify.testfn_space(kind, params["p"], params["t"], params["alpha"])
    except HarmballError as err:
        raise ConfigError(f"{where}: {err}") from err
    return kind, params


def _plan_testfn(cfg, seed, where="config"):
    _expect_keys(cfg, TESTFN_KEYS + (TOP_KEYS if where == "config" else ()), where)
    combos = cfg.get("combos", [dict(c) for c in verify.TESTFN_COMBOS])
    if not isinstance(combos, list) or not combos:
        raise ConfigError(f"{where}.combos must be a non-empty list")
    parsed = [_combo(c, f"{where}.combos[{i}]") for i, c in enumerate(combos)]
    exps = _num_list(cfg.get("y_exponents", list(range(2, 10))), f"{where}.y_exponents", integer=True)
    if any(i < 1 or i > 40 for i in exps):
        raise ConfigError(f"{where}.y_exponents must lie in 1..40")
    grid = [1.0 - 2.0**-i for i in exps]
    return [lambda k=k, p=p: verify.check_testfn_norms(k, p, grid) for k, p in parsed]


def _load_multiplier(spec, n, base_dir, where):
    if isinstance(spec, str):
        spec = {"rule": spec}
    if not isinstance(spec, dict):
        raise ConfigError(f"{where} must be a rule name or an object")
    if "file" in spec:
        _expect_keys(spec, ("file",), where)
        path = Path(spec["file"])
        if not path.is_absolute():
            path = base_dir / path
        try:
            c = MultiplierSequence.from_json(path.read_text())
        except OSError as err:
            raise ConfigError(f"{where}: cannot read {path}: {err}") from err
        except (ValueError, KeyError, HarmballError) as err:
            raise ConfigError(f"{where}: invalid sequence file {path}: {err}") from err
    elif "rule" in spec:
        _expect_keys(spec, ("rule", "param", "K", "scale"), where)
        try:
            c = MultiplierSequence.from_rule(n, spec["rule"], _num(spec.get("param", 0.0), f"{where}.param"),
                                             _num(spec.get("K", 64), f"{where}.K", integer=True),
                                             _num(spec.get("scale", 1.0), f"{where}.scale"))
        except HarmballError as err:
            raise ConfigError(f"{where}: {err}") from err
    else:
        if "coeffs" not in spec:
            raise ConfigError(f"{where} needs one of 'rule', 'file' or 'coeffs'")
        try:
            c = MultiplierSequence.from_dict({"n": n, "kind": "zonal", **spec})
        except (KeyError, TypeError, ValueError, HarmballError) as err:
            raise ConfigError(f"{where}: {err}") from err
    if c.n != n:
        raise ConfigError(f"{where}: sequence dimension {c.n} differs from n = {n}")
    return c


def _space(d, where):
    try:
        return SpaceSpec.from_dict(d)
    except (KeyError, TypeError, ValueError, HarmballError) as err:
        raise ConfigError(f"{where}: {err}") from err


def _plan_criterion(cfg, seed, base_dir):
    _expect_keys(cfg, CRITERION_KEYS + TOP_KEYS, "config")
    for k in ("n", "m", "multiplier"):
        if k not in cfg:
            raise ConfigError(f"config needs {k!r}")
    n = _num(cfg["n"], "config.n", integer=True)
    m = _num(cfg["m"], "config.m")
    s = _num(cfg.get("s", 1.0), "config.s", allow_inf=True)
    if n < 2:
        raise ConfigError("config.n must be >= 2")
    if "e" in cfg:
        e = _num(cfg["e"], "config.e")
    elif "X" in cfg and "Y" in cfg:
        X, Y = _space(cfg["X"], "config.X"), _space(cfg["Y"], "config.Y")
        try:
            e = criterion_exponent(X, Y, m, n)
        except HarmballError as err:
            raise ConfigError(f"config: {err}") from err
    else:
        raise ConfigError("config needs 'e' or both 'X' and 'Y'")
    imax = _num(cfg.get("rho_imax", 10), "config.rho_imax", integer=True)
    if not 1 <= imax <= 30:
        raise ConfigError("config.rho_imax must lie in 1..30")
    expect = cfg.get("expect")
    if expect not in (None, "finite", "infinite"):
        raise ConfigError("config.expect must be 'finite' or 'infinite'")
    c = _load_multiplier(cfg["multiplier"], n, base_dir, "config.multiplier")
    try:
        spec = CriterionSpec(m, s, e, default_rho_grid(imax))
    except HarmballError as err:
        raise ConfigError(f"config: {err}") from err

    def job():
        prof = criterion_profile(c, spec)
        ok = True if expect is None else prof.verdict == expect
        metrics = {"criterion": prof.verdict, "e": e, "m": m, "s": s, "sequence": c.name,
                   "sup_estimate": prof.sup_estimate, "tail_slope": prof.tail_slope, "dropped": len(prof.dropped)}
        rep = verify._report("criterion", ok, metrics, inconclusive=expect is not None and prof.verdict == "inconclusive")
        rep.tables["criterion_profile"] = (["rho", "v", "weighted_v"], prof.rows())
        return rep

    return [job]


def _theorem_row(row, th, where):
    if not isinstance(row, dict):
        raise ConfigError(f"{where} must be an object")
    base = th.rows[0]
    _expect_keys(row, tuple(base), where)
    missing = sorted(set(base) - set(row))
    if missing:
        raise ConfigError(f"{where} misses {missing}")
    out = {}
    for k, v in row.items():
        out[k] = _num(v, f"{where}.{k}", integer=(k == "n"), allow_inf=True)
    try:
        th.spaces(out)
        th.exponent(out)
    except HarmballError as err:
        raise ConfigError(f"{where}: {err}") from err
    return out


def _plan_theorem(cfg, seed, where="config"):
    _expect_keys(cfg, THEOREM_KEYS + (TOP_KEYS if where == "config" else ()), where)
    ids = cfg.get("theorems", list(THEOREMS))
    if isinstance(ids, str):
        ids = [ids]
    if not isinstance(ids, list) or not ids or any(i not in THEOREMS for i in ids):
        raise ConfigError(f"{where}.theorems must list ids from {sorted(THEOREMS)}")
    rows = cfg.get("rows")
    if rows is not None:
        if len(ids) != 1 or not isinstance(rows, list) or not rows:
            raise ConfigError(f"{where}.rows needs exactly one theorem and a non-empty list")
        rows = [_theorem_row(r, THEOREMS[ids[0]], f"{where}.rows[{i}]") for i, r in enumerate(rows)]
    return [lambda t=t: verify.check_theorem(t, rows=rows) for t in ids]


def _plan_intcon(cfg, seed, where):
    _expect_keys(cfg, INTCON_KEYS, where)
    count = _num(cfg.get("instances", 20), f"{where}.instances", integer=True)
    if count < 1:
        raise ConfigError(f"{where}.instances must be >= 1")
    return [lambda: verify.check_intcon_suite(count, seed)]


def _plan_suite(cfg, seed):
    _expect_keys(cfg, SUITE_KEYS + TOP_KEYS, "config")
    jobs = []
    jobs += _plan_kernels(cfg.get("kernels", {}), seed, "config.kernels")
    jobs += _plan_testfn(cfg.get("testfn", {}), seed, "config.testfn")
    jobs += _plan_embeddings(cfg.get("embeddings", {}), seed, "config.embeddings")
    jobs += _plan_intcon(cfg.get("intcon", {}), seed, "config.intcon")
    jobs += _plan_theorem(cfg.get("theorem", {}), seed, "config.theorem")
    return jobs


def load_config(path, command: str, seed_override=None):
    """Parse and validate; returns ``(config, seed, jobs)`` or raises ConfigError."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot read config {path}: {err}") from err
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"malformed JSON in {path}: {err}") from err
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if cfg.get("command", command) != command:
        raise ConfigError(f"config is for {cfg['command']!r}, not {command!r}")
    seed = _num(cfg.get("seed", 0), "config.seed", integer=True)
    if seed_override is not None:
        seed = int(seed_override)
    if seed < 0:
        raise ConfigError("seed must be non-negative")
    if command == "kernels":
        jobs = _plan_kernels(cfg, seed)
    elif command == "embeddings":
        jobs = _plan_embeddings(cfg, seed)
    elif command == "testfn":
        jobs = _plan_testfn(cfg, seed)
    elif command == "criterion":
        jobs = _plan_criterion(cfg, seed, path.parent)
    elif command == "theorem":
        jobs = _plan_theorem(cfg, seed)
    else:
        jobs = _plan_suite(cfg, seed)
    return cfg, seed, jobs


# --------------------------------------------------------------------------
# running


def run(command: str, config_path, out_dir, seed=None, stream=None) -> int:
    stream = sys.stderr if stream is None else stream
    try:
        cfg, seed, jobs = load_config(config_path, command, seed)
        reports = [job() for job in jobs]
    except ConfigError as err:
        print(f"harmball: config error: {err}", file=stream)
        return 2
    except HarmballError as err:
        print(f"harmball: precondition violated: {err}", file=stream)
        return 2
    digest = verify.config_digest({"config": cfg, "seed": seed})
    for rep in reports:
        rep.config_digest = digest
    ok = verify.overall_ok(reports)
    out = Path(out_dir)
    tables = {}
    for rep in reports:
        tables.update(rep.tables)
    try:
        for name, tab in sorted(tables.items()):
            emit_table(tab, out / "tables" / f"{name}.csv")
        atomic_write(out / "tables" / "summary.csv", verify.reports_csv(reports))
        bundle = {
            "command": command,
            "config": cfg,
            "seed": seed,
            "config_digest": digest,
            "ok": ok,
            "checks": [rep.to_dict() for rep in reports],
        }
        atomic_write(out / "report.json", json.dumps(bundle, indent=2, sort_keys=True) + "\n")
    except OSError as err:
        print(f"harmball: {err}", file=stream)
        return 2
    for rep in reports:
        print(f"{rep.verdict:>12}  {rep.check_id}", file=stream)
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="harmball", description="Numerical checks for harmonic function spaces on the ball.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="JSON run configuration")
    ap.add_argument("--out", default="harmball-out", help="output directory (default: harmball-out)")
    ap.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    args = ap.parse_args(argv)
    return run(args.command, args.config, args.out, args.seed)


if __name__ == "__main__":
    sys.exit(main())
