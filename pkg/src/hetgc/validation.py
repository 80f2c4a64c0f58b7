"""Oracle-equivalence sweep behind ``hetgc validate``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .analysis.combinatorics import cycle_class_count, divisors, enumerate_cycle_representatives
from .analysis.expected import crc_conditional_error, frc_conditional_error, prob_nonstragglers
from .analysis.oracles import brute_force_conditional_err
from .coding import build_crc, build_frc

TOL = 1e-9
PROB_TOL = 1e-12
PROB_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass
class Check:
    name: str
    ok: bool
    cases: int
    counterexample: str = ""


def _closed_form_sweep(name, build_fn, closed_form, max_n, needs_divisor):
    cases = 0
    for n in range(2, max_n + 1):
        for s in (2, 3):
            if s > n or (needs_divisor and n % s):
                continue
            B = build_fn(n, s)
            for r in range(0, n - s + 1):
                want = brute_force_conditional_err(B, r)
                got = closed_form(n, s, r)
                cases += 1
                if not abs(got - want) <= TOL:
                    return Check(name, False, cases, f"n={n} s={s} r={r}: closed form {got!r} vs brute force {want!r}")
    return Check(name, True, cases)


def check_frc(max_n):
    return _closed_form_sweep("frc-closed-form-vs-brute-force", build_frc, frc_conditional_error, max_n, True)


def check_crc(max_n):
    return _closed_form_sweep("crc-cycle-classes-vs-brute-force", build_crc, crc_conditional_error, max_n, False)


def check_normalization(max_n):
    cases = 0
    for n in range(1, max_n + 1):
        for m in range(n + 1):
            for p_ss in PROB_GRID:
                for p_as in PROB_GRID:
                    total = math.fsum(prob_nonstragglers(n, m, p_ss, p_as, r) for r in range(n + 1))
                    cases += 1
                    if not abs(total - 1.0) <= PROB_TOL:
                        return Check("p_r-normalization", False, cases,
                                     f"n={n} m={m} p_ss={p_ss} p_as={p_as}: sum P_r = {total!r}")
    return Check("p_r-normalization", True, cases)


def check_cycle_identity(max_n):
    cases = 0
    for n in range(1, max_n + 1):
        for r in range(n + 1):
            counts = {e: cycle_class_count(n, r, e) for e in divisors(n)}
            total = sum(e * c for e, c in counts.items())
            listed = len(enumerate_cycle_representatives(n, r))
            cases += 1
            if total != comb(n, r) or listed != sum(counts.values()):
                return Check("cycle-class-identity", False, cases,
                             f"n={n} r={r}: sum e*N(r,e) = {total}, C(n,r) = {comb(n, r)}, "
                             f"enumerated {listed} classes vs {sum(counts.values())} counted")
    return Check("cycle-class-identity", True, cases)


def run_validation(max_n: int = 10) -> list[Check]:
    """Each check stops at its first counterexample."""
    if max_n < 2:
        raise ValueError(f"max_n must be at least 2, got {max_n}")
    return [check_frc(max_n), check_crc(max_n), check_normalization(max_n), check_cycle_identity(max_n)]
