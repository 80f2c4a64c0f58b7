import itertools
import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from conftest import exact_lstsq_err
from hetgc.analysis import (crc_conditional_error, expected_err_cond, expected_err_crc_cond,
                            expected_err_frc_cond, expected_err_total, expected_unaccessed_per_partition,
                            frc_conditional_error, prob_nonstragglers, unaccessed_expectation)
from hetgc.coding import build_crc, build_frc
from hetgc.stragglers import StragglerParams, assign_classes_fixed


def enumerate_pr(n, m, p_ss, p_as):
    """Sum over all 2^n straggle patterns."""
    p = [p_ss] * m + [p_as] * (n - m)
    out = [0.0] * (n + 1)
    for alive in itertools.product([0, 1], repeat=n):
        prob = 1.0
        for a, pj in zip(alive, p):
            prob *= (1 - pj) if a else pj
        out[sum(alive)] += prob
    return out


def exact_mean_err(B, r):
    subsets = list(itertools.combinations(range(B.n), r))
    return sum(exact_lstsq_err(B.entries[:, list(c)]) for c in subsets) / len(subsets)


def test_pr_all_slow_always_straggle():
    assert prob_nonstragglers(5, 5, 1.0, 0.0, 0) == 1.0
    assert all(prob_nonstragglers(5, 5, 1.0, 0.0, r) == 0.0 for r in range(1, 6))


def test_pr_two_workers():
    want = enumerate_pr(2, 1, 0.8, 0.2)
    assert want == pytest.approx([0.16, 0.68, 0.16])
    got = [prob_nonstragglers(2, 1, 0.8, 0.2, r) for r in range(3)]
    assert got == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize("n,m", [(3, 1), (5, 2), (6, 0), (6, 6), (7, 4)])
def test_pr_matches_enumeration(n, m):
    got = [prob_nonstragglers(n, m, 0.7, 0.15, r) for r in range(n + 1)]
    assert got == pytest.approx(enumerate_pr(n, m, 0.7, 0.15), abs=1e-14)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.93, 1.0])
def test_pr_iid_reduces_to_binomial(p):
    n = 9
    for m in range(n + 1):
        for r in range(n + 1):
            assert prob_nonstragglers(n, m, p, p, r) == pytest.approx(comb(n, r) * (1 - p) ** r * p ** (n - r), abs=1e-12)


def test_pr_out_of_range_r_is_zero():
    assert prob_nonstragglers(4, 2, 0.5, 0.1, 5) == 0.0


def test_frc_conditional_examples():
    assert Fraction(frc_conditional_error(4, 2, 2)).limit_denominator(100) == exact_mean_err(build_frc(4, 2), 2) == Fraction(2, 3)
    assert exact_mean_err(build_frc(8, 2), 6) == Fraction(2, 7)
    assert frc_conditional_error(8, 2, 6) == pytest.approx(2 / 7, abs=1e-15)
    assert frc_conditional_error(8, 2, 7) == 0.0


def test_crc_conditional_examples():
    assert exact_mean_err(build_crc(4, 2), 2) == Fraction(8, 9)
    assert crc_conditional_error(4, 2, 2) == pytest.approx(8 / 9, abs=1e-12)


def test_cond_with_certain_r():
    # m=2 slow always straggle, 2 active never: r = 2 surely
    assert expected_err_frc_cond(4, 2, 2, 1.0, 0.0).expected_err == pytest.approx(2 / 3, abs=1e-12)
    assert expected_err_crc_cond(4, 2, 2, 1.0, 0.0).expected_err == pytest.approx(8 / 9, abs=1e-12)


@pytest.mark.parametrize("scheme", ["frc", "crc"])
def test_no_stragglers_no_error(scheme):
    assert expected_err_cond(scheme, 8, 3, 2, 0.0, 0.0).expected_err == 0.0
    assert expected_err_total(scheme, 8, 2, 0.3, 0.0, 0.0).expected_err == 0.0


@pytest.mark.parametrize("scheme", ["frc", "crc"])
def test_total_with_no_slow_workers_is_m0(scheme):
    total = expected_err_total(scheme, 8, 2, 0.0, 0.8, 0.01)
    cond = expected_err_cond(scheme, 8, 0, 2, 0.8, 0.01)
    assert total.expected_err == pytest.approx(cond.expected_err, abs=1e-15)


@pytest.mark.parametrize("scheme", ["frc", "crc"])
def test_total_is_mixture_over_m(scheme):
    n, s, ph = 6, 2, 0.4
    mix = math.fsum(comb(n, m) * ph**m * (1 - ph) ** (n - m) * expected_err_cond(scheme, n, m, s, 0.7, 0.05).expected_err
                    for m in range(n + 1))
    assert expected_err_total(scheme, n, s, ph, 0.7, 0.05).expected_err == pytest.approx(mix, abs=1e-13)


def test_report_breakdown_consistent():
    rep = expected_err_total("crc", 8, 2, 0.3, 0.8, 0.01)
    assert math.fsum(b.P_r for b in rep.breakdown) == pytest.approx(1.0, abs=1e-12)
    assert rep.expected_err == pytest.approx(math.fsum(b.P_r * b.cond_err for b in rep.breakdown), abs=1e-15)
    assert all(b.cond_err <= 1e-9 for b in rep.breakdown if b.r >= 7)
    assert rep.nonzero_tail == []
    js = rep.to_json()
    assert set(js) >= {"scheme", "n", "s", "p_hat", "p_ss", "p_as", "expected_err", "breakdown"}
    assert js["scheme"] == "crc" and set(js["breakdown"][0]) == {"r", "P_r", "cond_err"}


def test_report_exposes_nonzero_crc_tail():
    # binary CRC with odd n and s=2 cannot decode every single-straggler pattern
    rep = expected_err_crc_cond(5, 2, 2, 0.5, 0.1)
    assert rep.nonzero_tail == [4]


def test_unaccessed_examples():
    assert unaccessed_expectation(100, 2, 2, 0.3, 0.8, 0.01, shuffled=False) == pytest.approx(64.0)
    assert unaccessed_expectation(100, 2, 0, 0.3, 0.8, 0.01, shuffled=True) == pytest.approx(100 * 0.247**2)
    assert 100 * 0.247**2 == pytest.approx(6.1009)
    for k in range(3):
        assert unaccessed_expectation(50, 2, 2, 1.0, 0.6, 0.1, True) == pytest.approx(
            unaccessed_expectation(50, 2, 2, 1.0, 0.6, 0.1, False))
    with pytest.raises(ValueError):
        unaccessed_expectation(100, 2, 3, 0.3, 0.8, 0.01, False)


def test_expected_unaccessed_fixed_labels_no_shuffle():
    B = build_crc(8, 2)
    a = assign_classes_fixed(8, 3)  # workers 0,1,2 slow
    params = StragglerParams(0.0, 0.8, 0.01)
    got = expected_unaccessed_per_partition(B, params, 100, "none", a)
    # partition i is held by workers i-1 and i (mod 8)
    k = [1, 2, 2, 1, 0, 0, 0, 0]
    want = [unaccessed_expectation(100, 2, ki, 0, 0.8, 0.01, shuffled=False) for ki in k]
    np.testing.assert_allclose(got, want, rtol=1e-12)
