"""Closed-form expected optimal decoding error under random column shuffling."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from ..coding import Scheme, build_crc, nonstraggler_submatrix
from ..decoding import EXACT_TOL, optimal_decode
from ..stragglers import check_probability
from .combinatorics import enumerate_cycle_representatives


def prob_nonstragglers(n: int, m: int, p_ss: float, p_as: float, r: int) -> float:
    """P(exactly r non-stragglers) when m of the n workers are slow.

    Sums over the number i of slow non-stragglers, restricted to the window
    where both binomials are nonzero.
    """
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= n (m={m}, n={n})")
    p_ss = check_probability("p_ss", p_ss)
    p_as = check_probability("p_as", p_as)
    if not 0 <= r <= n:
        return 0.0
    q_ss, q_as = 1.0 - p_ss, 1.0 - p_as
    terms = []
    for i in range(max(0, r - (n - m)), min(r, m) + 1):
        terms.append(comb(m, i) * comb(n - m, r - i)
                     * q_ss**i * p_ss**(m - i) * q_as**(r - i) * p_as**(n - m - r + i))
    return math.fsum(terms)


def prob_slow_count(n: int, p_hat: float, m: int) -> float:
    p_hat = check_probability("p_hat", p_hat)
    return comb(n, m) * p_hat**m * (1.0 - p_hat)**(n - m)


def frc_conditional_error(n: int, s: int, r: int) -> float:
    """Mean FRC decoding error over all r-column subsets: n C(n-s, r) / C(n, r)."""
    if n % s:
        raise ValueError(f"FRC requires s to divide n (n={n}, s={s})")
    if r > n - s:
        return 0.0
    return n * comb(n - s, r) / comb(n, r)


@lru_cache(maxsize=None)
def _crc_conditional_errors(n: int, s: int) -> tuple[float, ...]:
    B = build_crc(n, s)
    out = []
    for r in range(n + 1):
        total = comb(n, r)
        parts = []
        for cls in enumerate_cycle_representatives(n, r):
            res = optimal_decode(nonstraggler_submatrix(B, cls.columns))
            if not res.exact:
                parts.append(cls.order * res.err / total)
        out.append(math.fsum(parts))
    return tuple(out)


def crc_conditional_error(n: int, s: int, r: int) -> float:
    """Mean CRC decoding error over all r-column subsets, one decode per cycle class."""
    build_crc(n, s)  # parameter validation
    if not 0 <= r <= n:
        raise ValueError(f"r must satisfy 0 <= r <= n (r={r}, n={n})")
    return _crc_conditional_errors(int(n), int(s))[r]


def conditional_error(scheme, n: int, s: int, r: int) -> float:
    scheme = Scheme.parse(scheme)
    if scheme is Scheme.FRC:
        return frc_conditional_error(n, s, r)
    return crc_conditional_error(n, s, r)


@dataclass(frozen=True)
class BreakdownRow:
    r: int
    P_r: float
    cond_err: float


@dataclass
class ErrorReport:
    scheme: Scheme
    n: int
    s: int
    p_ss: float
    p_as: float
    expected_err: float
    breakdown: list[BreakdownRow]
    m: int | None = None
    p_hat: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def nonzero_tail(self) -> list[int]:
        """Values of r >= n-s+1 where decoding is still inexact on average."""
        return [row.r for row in self.breakdown if row.r > self.n - self.s and row.cond_err > EXACT_TOL]

    def to_json(self) -> dict:
        out = {
            "scheme": self.scheme.value,
            "n": self.n,
            "s": self.s,
            "p_hat": self.p_hat,
            "p_ss": self.p_ss,
            "p_as": self.p_as,
            "expected_err": self.expected_err,
            "breakdown": [{"r": b.r, "P_r": b.P_r, "cond_err": b.cond_err} for b in self.breakdown],
            "nonzero_tail": self.nonzero_tail,
        }
        if self.m is not None:
            out["m"] = self.m
        out.update(self.extra)
        return out


def _report(scheme, n, s, p_ss, p_as, probs, m=None, p_hat=None) -> ErrorReport:
    rows = [BreakdownRow(r, probs[r], conditional_error(scheme, n, s, r)) for r in range(n + 1)]
    expected = math.fsum(row.P_r * row.cond_err for row in rows)
    return ErrorReport(Scheme.parse(scheme), n, s, p_ss, p_as, expected, rows, m=m, p_hat=p_hat)


def expected_err_cond(scheme, n: int, m: int, s: int, p_ss: float, p_as: float) -> ErrorReport:
    """Expected error with m slow workers out of n.

    Every r contributes, including r >= n-s+1: the term is zero for FRC and
    for CRC whenever s divides n, but is kept rather than assumed away.
    """
    conditional_error(scheme, n, s, 0)
    probs = [prob_nonstragglers(n, m, p_ss, p_as, r) for r in range(n + 1)]
    return _report(scheme, n, s, p_ss, p_as, probs, m=m)


def expected_err_frc_cond(n: int, m: int, s: int, p_ss: float, p_as: float) -> ErrorReport:
    return expected_err_cond(Scheme.FRC, n, m, s, p_ss, p_as)


def expected_err_crc_cond(n: int, m: int, s: int, p_ss: float, p_as: float) -> ErrorReport:
    return expected_err_cond(Scheme.CRC, n, m, s, p_ss, p_as)


def expected_err_total(scheme, n: int, s: int, p_hat: float, p_ss: float, p_as: float) -> ErrorReport:
    """Expected error with the number of slow workers drawn Binomial(n, p_hat)."""
    conditional_error(scheme, n, s, 0)
    probs = [math.fsum(prob_slow_count(n, p_hat, m) * prob_nonstragglers(n, m, p_ss, p_as, r)
                       for m in range(n + 1))
             for r in range(n + 1)]
    return _report(scheme, n, s, p_ss, p_as, probs, p_hat=p_hat)


def unaccessed_expectation(L: int, s: int, k: int, p_hat: float, p_ss: float, p_as: float,
                           shuffled: bool) -> float:
    """Expected number of iterations (out of L) in which a given partition is not accessed.

    ``k`` is how many of the partition's s workers are slow; it only matters
    without shuffling.
    """
    if L < 1:
        raise ValueError(f"L must be positive, got {L}")
    if not 0 <= k <= s:
        raise ValueError(f"k must satisfy 0 <= k <= s (k={k}, s={s})")
    if shuffled:
        return L * (p_hat * p_ss + (1.0 - p_hat) * p_as) ** s
    return L * p_ss**k * p_as**(s - k)


def expected_unaccessed_per_partition(B, params, L: int, shuffle, assignment=None) -> np.ndarray:
    """Exact expected unaccessed count for each partition over L iterations.

    Covers the cases the simulator runs: classes drawn from ``p_hat`` (no
    ``assignment``) or held fixed, under none, cyclic or uniform shuffling.
    """
    from ..shuffling import ShuffleStrategy, next_permutation

    shuffle = ShuffleStrategy.parse(shuffle)
    n, s = B.n, B.s
    if assignment is None:
        return np.full(n, unaccessed_expectation(L, s, 0, params.p_hat, params.p_ss, params.p_as, shuffled=True))
    p = assignment.straggle_probs(params)
    if shuffle is ShuffleStrategy.RANDOM:
        # the s workers holding a partition form a uniform random s-subset
        m = assignment.m
        per_iter = math.fsum(comb(m, k) * comb(n - m, s - k) / comb(n, s) * params.p_ss**k * params.p_as**(s - k)
                             for k in range(0, s + 1))
        return np.full(n, L * per_iter)
    out = np.zeros(n)
    for ell in range(1, L + 1):
        perm = next_permutation(shuffle, n, ell)
        # worker j holds partition i iff B[i, perm[j]] != 0
        holders = B.entries[:, perm] != 0
        out += np.prod(np.where(holders, p[None, :], 1.0), axis=1)
    return out
