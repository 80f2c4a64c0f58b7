# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: batched subset decoding error and rotation canonicalization."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef cnp.int64_t i64


def subset_errors(const double[:, ::1] B, const i64[::1] masks, double rank_tol=1e-8):
    """Squared residual of projecting 1_n onto the span of masked columns of B.

    Bit j of each mask selects column j. Gram-Schmidt with one
    re-orthogonalization pass; columns whose remainder falls below
    ``rank_tol`` times their norm are treated as dependent.
    """
    cdef Py_ssize_t n = B.shape[0], ncols = B.shape[1]
    cdef Py_ssize_t t, j, k, i, rank
    cdef Py_ssize_t T = masks.shape[0]
    cdef double[:, ::1] Q = np.zeros((ncols, n), dtype=np.float64)
    cdef double[::1] v = np.zeros(n, dtype=np.float64)
    cdef double[::1] res = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = np.empty(T, dtype=np.float64)
    cdef double dot, nrm, nrm0, acc
    cdef int sweep
    cdef i64 m

    for t in range(T):
        m = masks[t]
        rank = 0
        for i in range(n):
            res[i] = 1.0
        for j in range(ncols):
            if not ((m >> j) & 1):
                continue
            nrm0 = 0.0
            for i in range(n):
                v[i] = B[i, j]
                nrm0 += v[i] * v[i]
            nrm0 = sqrt(nrm0)
            if nrm0 == 0.0:
                continue
            for sweep in range(2):
                for k in range(rank):
                    dot = 0.0
                    for i in range(n):
                        dot += Q[k, i] * v[i]
                    for i in range(n):
                        v[i] -= dot * Q[k, i]
            nrm = 0.0
            for i in range(n):
                nrm += v[i] * v[i]
            nrm = sqrt(nrm)
            if nrm <= rank_tol * nrm0:
                continue
            for i in range(n):
                Q[rank, i] = v[i] / nrm
            dot = 0.0
            for i in range(n):
                dot += Q[rank, i] * res[i]
            for i in range(n):
                res[i] -= dot * Q[rank, i]
            rank += 1
        # second projection pass removes drift accumulated in res
        for k in range(rank):
            dot = 0.0
            for i in range(n):
                dot += Q[k, i] * res[i]
            for i in range(n):
                res[i] -= dot * Q[k, i]
        acc = 0.0
        for i in range(n):
            acc += res[i] * res[i]
        out[t] = acc
    return np.asarray(out)


def min_rotations(const i64[::1] words, int n):
    """Smallest cyclic rotation of each n-bit word, and its number of distinct rotations."""
    cdef Py_ssize_t T = words.shape[0], t
    cdef i64 full = (<i64>1 << n) - 1
    cdef i64 w, cur, best
    cdef int k, order
    canon_arr = np.empty(T, dtype=np.int64)
    order_arr = np.empty(T, dtype=np.int64)
    cdef i64[::1] canon = canon_arr
    cdef i64[::1] orders = order_arr
    for t in range(T):
        w = words[t] & full
        best = w
        cur = w
        order = n
        for k in range(1, n + 1):
            cur = ((cur << 1) | (cur >> (n - 1))) & full
            if cur == w:
                order = k
                break
            if cur < best:
                best = cur
        canon[t] = best
        orders[t] = order
    return canon_arr, order_arr


def weight_words(int n, int r):
    """All n-bit words with exactly r ones, ascending."""
    from math import comb
    cdef Py_ssize_t total = comb(n, r), idx
    out_arr = np.empty(total, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64 w, c, rr
    if total == 0:
        return out_arr
    if r == 0:
        out[0] = 0
        return out_arr
    w = (<i64>1 << r) - 1
    for idx in range(total):
        out[idx] = w
        if idx + 1 == total:
            break
        # Gosper's hack
        c = w & -w
        rr = w + c
        w = (((rr ^ w) >> 2) // c) | rr
    return out_arr
