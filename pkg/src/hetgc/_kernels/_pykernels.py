"""Pure-Python/numpy fallback for the compiled kernels (same contracts)."""

from itertools import combinations

import numpy as np


def subset_errors(B, masks, rank_tol=1e-8):
    B = np.ascontiguousarray(B, dtype=np.float64)
    masks = np.asarray(masks, dtype=np.int64)
    n, ncols = B.shape
    out = np.empty(len(masks), dtype=np.float64)
    for t, m in enumerate(masks.tolist()):
        basis = []
        res = np.ones(n)
        for j in range(ncols):
            if not (m >> j) & 1:
                continue
            v = B[:, j].copy()
            nrm0 = np.sqrt(v @ v)
            if nrm0 == 0.0:
                continue
            for _ in range(2):
                for q in basis:
                    v -= (q @ v) * q
            nrm = np.sqrt(v @ v)
            if nrm <= rank_tol * nrm0:
                continue
            q = v / nrm
            res -= (q @ res) * q
            basis.append(q)
        for q in basis:
            res -= (q @ res) * q
        out[t] = res @ res
    return out


def min_rotations(words, n):
    words = np.asarray(words, dtype=np.int64)
    full = np.int64((1 << n) - 1)
    w = words & full
    best = w.copy()
    order = np.full(len(w), n, dtype=np.int64)
    found = np.zeros(len(w), dtype=bool)
    cur = w.copy()
    for k in range(1, n + 1):
        cur = ((cur << 1) | (cur >> (n - 1))) & full
        hit = (cur == w) & ~found
        order[hit] = k
        found |= hit
        np.minimum(best, cur, out=best)
    return best, order


def weight_words(n, r):
    if r < 0 or r > n:
        return np.empty(0, dtype=np.int64)
    out = np.fromiter(
        (sum(1 << (n - 1 - i) for i in c) for c in combinations(range(n), r)),
        dtype=np.int64,
    )
    out.sort()
    return out
