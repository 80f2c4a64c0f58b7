from math import comb

import pytest

from conftest import rotation_classes
from hetgc.analysis import (cycle_class_count, divisors, enumerate_cycle_representatives, moebius,
                            num_cycle_classes)


@pytest.mark.parametrize("k,mu", [(1, 1), (2, -1), (3, -1), (4, 0), (5, -1), (6, 1), (8, 0), (12, 0),
                                  (30, -1), (210, 1), (49, 0)])
def test_moebius(k, mu):
    assert moebius(k) == mu


def test_moebius_domain():
    with pytest.raises(ValueError):
        moebius(0)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]


def _counts_by_order(n, r):
    by_order = {}
    for _, e in rotation_classes(n, r).items():
        by_order[e] = by_order.get(e, 0) + 1
    return by_order


def test_cycle_count_4_2():
    assert _counts_by_order(4, 2) == {4: 1, 2: 1}
    assert cycle_class_count(4, 2, 2) == 1
    assert cycle_class_count(4, 2, 4) == 1
    assert cycle_class_count(4, 2, 1) == 0


def test_cycle_count_weight_zero():
    for n in range(1, 12):
        assert cycle_class_count(n, 0, 1) == 1


def test_non_divisor_order_is_zero():
    assert cycle_class_count(6, 2, 4) == 0


@pytest.mark.parametrize("n", range(1, 13))
def test_cycle_counts_match_enumeration_oracle(n):
    for r in range(n + 1):
        by_order = _counts_by_order(n, r)
        for e in divisors(n):
            assert cycle_class_count(n, r, e) == by_order.get(e, 0)


def test_orbit_identity_exact_to_20():
    for n in range(1, 21):
        for r in range(n + 1):
            assert sum(e * cycle_class_count(n, r, e) for e in divisors(n)) == comb(n, r)


def test_representatives_4_2():
    reps = enumerate_cycle_representatives(4, 2)
    assert [(c.bits, c.order) for c in reps] == [("0011", 4), ("0101", 2)]
    assert reps[0].columns == (2, 3) and reps[0].representative == (0, 0, 1, 1)


def test_representatives_weight_zero():
    for n in (1, 5, 9):
        (c,) = enumerate_cycle_representatives(n, 0)
        assert c.bits == "0" * n and c.order == 1


def test_representatives_prime_length():
    reps = enumerate_cycle_representatives(5, 2)
    assert len(reps) == 2 and all(c.order == 5 for c in reps)


@pytest.mark.parametrize("n", range(1, 13))
def test_representatives_match_oracle(n):
    for r in range(n + 1):
        reps = enumerate_cycle_representatives(n, r)
        assert {c.bits: c.order for c in reps} == rotation_classes(n, r)


def test_representative_count_matches_formula_to_16():
    for n in range(1, 17):
        for r in range(n + 1):
            assert len(enumerate_cycle_representatives(n, r)) == num_cycle_classes(n, r)


def test_representatives_are_minimal_rotations():
    for c in enumerate_cycle_representatives(10, 4):
        s = c.bits
        assert s == min(s[k:] + s[:k] for k in range(10))
        assert c.weight == s.count("1") == 4
        assert 10 % c.order == 0
