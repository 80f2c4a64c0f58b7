"""Command-line front end.

Exit codes: 0 success, 1 configuration or validation failure, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
import tempfile
import time
import warnings
from math import comb
from pathlib import Path

import numpy as np

from . import config as cfg
from .analysis import (divisors, cycle_class_count, enumerate_cycle_representatives, expected_err_cond,
                       expected_err_total, expected_unaccessed_per_partition, monte_carlo_err,
                       simulate_unaccessed)
from .coding import build
from .shuffling import ShuffleStrategy
from .training import NumericalError, run_experiment
from .validation import run_validation

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2
SIG_DIGITS = 10


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item())
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=2) + "\n"


def cmd_analyze(args) -> int:
    doc, _ = cfg.load(args.config)
    scheme, n, s = cfg.coding_params(doc)
    params = cfg.straggler_params(doc)
    fixed = cfg.fixed_assignment(doc, n)
    if fixed is not None:
        report = expected_err_cond(scheme, n, fixed.m, s, params.p_ss, params.p_as)
    else:
        report = expected_err_total(scheme, n, s, params.p_hat, params.p_ss, params.p_as)
    out = report.to_json()
    if args.monte_carlo:
        if fixed is not None:
            raise cfg.ConfigError("--monte-carlo estimates the marginal over classes; drop m_fixed/labels")
        seed = cfg.seed_of(doc, args.seed)
        est, se = monte_carlo_err(scheme, n, s, params, args.monte_carlo, seed=seed, workers=args.workers)
        out["monte_carlo"] = {"trials": args.monte_carlo, "seed": seed, "estimate": est, "stderr": se}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc, _ = cfg.load(args.config)
    scheme, n, s = cfg.coding_params(doc)
    params = cfg.straggler_params(doc)
    fixed = cfg.fixed_assignment(doc, n)
    L = cfg._int(doc, "L", 100)
    if L < 1:
        raise cfg.ConfigError(f"L must be positive, got {L}")
    try:
        shuffle = ShuffleStrategy.parse(doc.get("shuffle", "random"))
    except ValueError as exc:
        raise cfg.ConfigError(str(exc)) from None
    seed = cfg.seed_of(doc, args.seed)
    B = build(scheme, n, s)
    counts = simulate_unaccessed(B, params, L, args.experiments, shuffle=shuffle, seed=seed, assignment=fixed)
    mean = counts.mean(axis=0)
    se = counts.std(axis=0, ddof=1) / np.sqrt(len(counts)) if len(counts) > 1 else np.full(n, np.nan)
    expected = expected_unaccessed_per_partition(B, params, L, shuffle, fixed)
    rows = [{"partition": i + 1, "mean_unaccessed": mean[i], "stderr": se[i], "expected": expected[i]}
            for i in range(n)]
    out = {"scheme": scheme.value, "n": n, "s": s, "shuffle": shuffle.value, "L": L,
           "experiments": args.experiments, "seed": seed, "p_hat": params.p_hat, "p_ss": params.p_ss,
           "p_as": params.p_as, "classes": fixed.to_json() if fixed is not None else None, "partitions": rows}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_train(args) -> int:
    doc, base = cfg.load(args.config)
    config = cfg.experiment_config(doc, base_dir=base, seed=args.seed)
    out_dir = Path(args.out)
    created = not out_dir.exists()
    out_dir.mkdir(parents=True, exist_ok=True)
    # written into a scratch directory first so a failure leaves nothing half-done
    tmp = Path(tempfile.mkdtemp(prefix=".partial-", dir=out_dir))
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                result = run_experiment(config)
            except (OSError, ValueError) as exc:
                raise cfg.ConfigError(str(exc)) from None
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        (tmp / "iterations.csv").write_text(result.iterations_csv())
        (tmp / "summary.json").write_text(dumps(result.summary))
        for name in ("iterations.csv", "summary.json"):
            (tmp / name).replace(out_dir / name)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        if created:
            shutil.rmtree(out_dir, ignore_errors=True)
        raise
    shutil.rmtree(tmp, ignore_errors=True)
    print(f"wrote {out_dir / 'iterations.csv'} and {out_dir / 'summary.json'}", file=sys.stderr)
    return EXIT_OK


def cmd_necklaces(args) -> int:
    n, r = args.n, args.r
    if not 1 <= n <= 24 or not 0 <= r <= n:
        raise cfg.ConfigError(f"need 0 <= r <= n <= 24 and n >= 1 (got n={n}, r={r})")
    classes = enumerate_cycle_representatives(n, r)
    print(f"{'representative':<{max(n, 14)}}  weight  order")
    for c in classes:
        print(f"{c.bits:<{max(n, 14)}}  {c.weight:>6}  {c.order:>5}")
    counted = sum(cycle_class_count(n, r, e) for e in divisors(n))
    total = sum(e * cycle_class_count(n, r, e) for e in divisors(n))
    ok = total == comb(n, r) and counted == len(classes)
    print(f"N_r={len(classes)} (counted {counted}); sum e*N(r,e) = {total} {'=' if total == comb(n, r) else '!='} "
          f"C({n},{r}) = {comb(n, r)} {'ok' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_CONFIG


def cmd_validate(args) -> int:
    start = time.perf_counter()
    checks = run_validation(args.max_n)
    for c in checks:
        line = f"{'PASS' if c.ok else 'FAIL'}  {c.name}  ({c.cases} cases)"
        if not c.ok:
            line += f"\n      counterexample: {c.counterexample}"
        print(line)
    ok = all(c.ok for c in checks)
    print(f"{'all checks passed' if ok else 'validation FAILED'} (max_n={args.max_n})")
    # timing goes to stderr so stdout stays byte-reproducible
    print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_CONFIG


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hetgc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="closed-form expected decoding error (JSON on stdout)")
    a.add_argument("--config", required=True)
    a.add_argument("--monte-carlo", type=int, metavar="TRIALS", default=0)
    a.add_argument("--seed", type=int)
    a.add_argument("--workers", type=int, default=1)
    a.set_defaults(func=cmd_analyze)

    si = sub.add_parser("simulate", help="Monte-Carlo partition access counts (JSON on stdout)")
    si.add_argument("--config", required=True)
    si.add_argument("--experiments", type=int, default=1000)
    si.add_argument("--seed", type=int)
    si.set_defaults(func=cmd_simulate)

    t = sub.add_parser("train", help="coded gradient descent; writes iterations.csv and summary.json")
    t.add_argument("--config", required=True)
    t.add_argument("--out", required=True, metavar="DIR")
    t.add_argument("--seed", type=int)
    t.set_defaults(func=cmd_train)

    nk = sub.add_parser("necklaces", help="cycle-class representatives of weight r")
    nk.add_argument("n", type=int)
    nk.add_argument("r", type=int)
    nk.set_defaults(func=cmd_necklaces)

    v = sub.add_parser("validate", help="closed forms vs exhaustive oracles")
    v.add_argument("--max-n", type=int, default=10, metavar="K",
                   help="largest n swept (default 10; 12 finishes in about a second, 16 in under a minute)")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except cfg.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
