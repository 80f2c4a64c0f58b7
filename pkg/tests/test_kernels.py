"""Compiled kernels and the numpy fallback must agree."""

import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hetgc import _kernels
from hetgc.coding import build_crc, build_frc
from hetgc.decoding import optimal_decode

backends = [pytest.param(_kernels.python, id="python")]
if _kernels.compiled is not None:
    backends.append(pytest.param(_kernels.compiled, id="cython"))


def test_backend_reported():
    assert _kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("K", backends)
@pytest.mark.parametrize("n,r", [(1, 0), (1, 1), (4, 2), (6, 0), (6, 6), (10, 3)])
def test_weight_words(K, n, r):
    words = K.weight_words(n, r)
    want = sorted(sum(1 << (n - 1 - i) for i in c) for c in itertools.combinations(range(n), r))
    assert words.tolist() == want
    assert len(words) == comb(n, r)


@pytest.mark.parametrize("K", backends)
def test_min_rotations_small(K):
    canon, order = K.min_rotations(np.array([0b0110, 0b1010, 0b0000, 0b1111, 0b1000], dtype=np.int64), 4)
    assert canon.tolist() == [0b0011, 0b0101, 0, 0b1111, 0b0001]
    assert order.tolist() == [4, 2, 1, 1, 4]


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 2**n - 1), min_size=1, max_size=20))))
def test_min_rotations_backends_agree_with_strings(case):
    n, words = case
    arr = np.array(words, dtype=np.int64)
    for K in [p.values[0] for p in backends]:
        canon, order = K.min_rotations(arr, n)
        for w, c, e in zip(words, canon, order):
            s = format(w, f"0{n}b")
            rots = {s[k:] + s[:k] for k in range(n)}
            assert format(int(c), f"0{n}b") == min(rots)
            assert e == len(rots)


@pytest.mark.parametrize("K", backends)
@pytest.mark.parametrize("B", [build_crc(6, 2), build_crc(7, 3), build_frc(8, 2), build_frc(6, 3)], ids=str)
def test_subset_errors_match_svd_decode(K, B):
    n = B.n
    masks = np.arange(2**n, dtype=np.int64)
    errs = K.subset_errors(np.ascontiguousarray(B.entries), masks)
    for m, e in zip(masks, errs):
        cols = [j for j in range(n) if (m >> j) & 1]
        assert e == pytest.approx(optimal_decode(B.entries[:, cols]).err, abs=1e-9)


def test_backends_agree_on_large_sweep():
    if _kernels.compiled is None:
        pytest.skip("compiled kernels not built")
    B = np.ascontiguousarray(build_crc(12, 3).entries)
    masks = _kernels.python.weight_words(12, 5)
    np.testing.assert_allclose(_kernels.compiled.subset_errors(B, masks),
                               _kernels.python.subset_errors(B, masks), atol=1e-12)
