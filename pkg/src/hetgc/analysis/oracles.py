"""Exhaustive and Monte-Carlo oracles for the closed-form results.

Decoding errors here go through the batched subset kernel (Gram-Schmidt
projection), not through :func:`hetgc.decoding.optimal_decode`, so the
closed forms and the oracles share no numerical path.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from math import comb

import numpy as np

from .. import _kernels, rng as rngmod
from ..coding import EncodingMatrix, build
from ..decoding import EXACT_TOL
from ..shuffling import ShuffleStrategy
from ..stragglers import ClassAssignment, StragglerParams

MAX_SUBSETS = 10**7
_CHUNK = 1 << 16


def subset_errors(B: EncodingMatrix, masks) -> np.ndarray:
    """Decoding error for each column mask (bit j selects worker column j)."""
    masks = np.asarray(masks, dtype=np.int64)
    uniq, inv = np.unique(masks, return_inverse=True)
    errs = _kernels.subset_errors(np.ascontiguousarray(B.entries), uniq)
    return errs[inv]


def brute_force_conditional_err(B: EncodingMatrix, r: int) -> float:
    """Mean decoding error over every r-column subset of B."""
    n = B.n
    if not 0 <= r <= n:
        raise ValueError(f"r must satisfy 0 <= r <= n (r={r}, n={n})")
    total = comb(n, r)
    if total > MAX_SUBSETS:
        raise ValueError(f"C({n},{r}) = {total} subsets exceeds the enumeration limit {MAX_SUBSETS}")
    # the set of all weight-r masks is closed under bit reversal, so the
    # kernel's word order doubles as a column-mask enumeration
    masks = _kernels.weight_words(n, r)
    entries = np.ascontiguousarray(B.entries)
    parts = [math.fsum(_kernels.subset_errors(entries, masks[i:i + _CHUNK]))
             for i in range(0, len(masks), _CHUNK)]
    return math.fsum(parts) / total


def _mc_chunk(scheme, n, s, params, seed, sizes, index):
    """Trials of one chunk; the substream depends only on (seed, index)."""
    B = build(scheme, n, s)
    T = sizes[index]
    g = rngmod.substream(seed, rngmod.MONTE_CARLO, index)
    slow = g.random((T, n)) < params.p_hat
    straggle = g.random((T, n)) < np.where(slow, params.p_ss, params.p_as)
    perms = g.permuted(np.tile(np.arange(n, dtype=np.int64), (T, 1)), axis=1)
    masks = ((~straggle).astype(np.int64) << perms).sum(axis=1)
    errs = subset_errors(B, masks)
    errs[errs <= EXACT_TOL] = 0.0
    return math.fsum(errs), math.fsum(errs * errs), T


def _chunk_sizes(trials: int, chunk: int) -> list[int]:
    full, rest = divmod(trials, chunk)
    return [chunk] * full + ([rest] if rest else [])


def monte_carlo_err(scheme, n: int, s: int, params: StragglerParams, trials: int, seed: int = 0,
                    workers: int = 1, chunk: int = 10_000) -> tuple[float, float]:
    """Sample mean and standard error of the decoding error.

    Each trial draws fresh worker classes, a straggler pattern and a uniform
    column shuffle. Chunking is fixed by ``chunk`` alone, so results do not
    depend on ``workers``.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    build(scheme, n, s)
    sizes = _chunk_sizes(int(trials), int(chunk))
    job = partial(_mc_chunk, scheme, n, s, params, rngmod.check_seed(seed), sizes)
    if workers > 1 and len(sizes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(job, range(len(sizes))))
    else:
        results = [job(i) for i in range(len(sizes))]
    s1 = math.fsum(r[0] for r in results)
    s2 = math.fsum(r[1] for r in results)
    mean = s1 / trials
    if trials < 2:
        return mean, float("nan")
    var = max(s2 - trials * mean * mean, 0.0) / (trials - 1)
    return mean, math.sqrt(var / trials)


def _access_chunk(B, params, L, shuffle, fixed_slow, seed, sizes, index):
    n = B.n
    E = sizes[index]
    g = rngmod.substream(seed, rngmod.ACCESS, index)
    if fixed_slow is None:
        slow = g.random((E, 1, n)) < params.p_hat
    else:
        slow = np.broadcast_to(fixed_slow, (E, 1, n))
    straggle = g.random((E, L, n)) < np.where(slow, params.p_ss, params.p_as)
    if shuffle is ShuffleStrategy.RANDOM:
        perms = g.permuted(np.tile(np.arange(n), (E, L, 1)), axis=2)
    elif shuffle is ShuffleStrategy.CYCLIC:
        ell = np.arange(1, L + 1)[:, None]
        perms = np.broadcast_to((np.arange(n) + ell) % n, (E, L, n))
    else:
        perms = np.broadcast_to(np.arange(n), (E, L, n))
    live_cols = np.zeros((E, L, n))
    np.put_along_axis(live_cols, np.ascontiguousarray(perms), (~straggle).astype(float), axis=2)
    accessed = (live_cols @ B.entries.T) > 0
    return (~accessed).sum(axis=1)


def simulate_unaccessed(B: EncodingMatrix, params: StragglerParams, L: int, experiments: int,
                        shuffle="random", seed: int = 0, assignment: ClassAssignment | None = None,
                        chunk: int = 500) -> np.ndarray:
    """Per-experiment count of iterations each partition went unaccessed.

    Returns an ``(experiments, n)`` integer array. Without ``assignment``
    each experiment draws its own classes from ``params.p_hat``; with it the
    labels are held fixed across experiments.
    """
    shuffle = ShuffleStrategy.parse(shuffle)
    if L < 1 or experiments < 1:
        raise ValueError("L and experiments must be positive")
    fixed = None
    if assignment is not None:
        if assignment.n != B.n:
            raise ValueError(f"assignment has {assignment.n} workers, B has {B.n}")
        fixed = assignment.slow
    sizes = _chunk_sizes(int(experiments), int(chunk))
    seed = rngmod.check_seed(seed)
    return np.concatenate([_access_chunk(B, params, int(L), shuffle, fixed, seed, sizes, i)
                           for i in range(len(sizes))])
