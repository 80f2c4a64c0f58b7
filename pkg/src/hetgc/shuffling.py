"""Per-iteration reassignment of encoding-matrix columns to workers."""

from __future__ import annotations

import enum

import numpy as np

from .coding import EncodingMatrix


class ShuffleStrategy(str, enum.Enum):
    NONE = "none"
    RANDOM = "random"
    CYCLIC = "cyclic"

    @classmethod
    def parse(cls, value) -> "ShuffleStrategy":
        try:
            return cls(value.lower() if isinstance(value, str) else value)
        except ValueError:
            raise ValueError(f"unknown shuffle strategy {value!r}; expected none, random or cyclic") from None


def next_permutation(strategy, n: int, iteration: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """Worker j runs column ``perm[j]`` of B in this iteration.

    ``cyclic`` rotates by one column per iteration; ``random`` is uniform over
    all n! permutations and needs ``rng``.
    """
    strategy = ShuffleStrategy.parse(strategy)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if strategy is ShuffleStrategy.NONE:
        return np.arange(n)
    if strategy is ShuffleStrategy.CYCLIC:
        return (np.arange(n) + iteration) % n
    if rng is None:
        raise ValueError("random shuffling needs a random generator")
    return rng.permutation(n)


def apply_permutation(B, perm) -> np.ndarray:
    entries = B.entries if isinstance(B, EncodingMatrix) else np.asarray(B)
    perm = np.asarray(perm)
    n = entries.shape[1]
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise ValueError(f"permutation of length {n} expected, got {perm.tolist()}")
    return entries[:, perm]


def inverse(perm) -> np.ndarray:
    perm = np.asarray(perm)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return inv
