"""Cycle classes of binary words under rotation.

Words are stored as integers with position 1 (the first character of the
bit string) as the most significant bit, so the lexicographically smallest
rotation is also the numerically smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .. import _kernels


def moebius(k: int) -> int:
    if int(k) != k or k < 1:
        raise ValueError(f"Moebius function is defined for positive integers, got {k!r}")
    k = int(k)
    sign = 1
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            sign = -sign
        p += 1
    if k > 1:
        sign = -sign
    return sign


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def cycle_class_count(n: int, r: int, e: int) -> int:
    """Number of rotation classes of length-n binary words with weight r and order e.

    Coefficient of x^r in ``(1/e) * sum_{d|e} mu(e/d) (1 + x^(n/d))^d``, in
    exact integer arithmetic. Zero when e does not divide n.
    """
    if n < 1 or e < 1:
        raise ValueError(f"n and e must be positive (n={n}, e={e})")
    if not 0 <= r <= n:
        raise ValueError(f"weight r must satisfy 0 <= r <= n (r={r}, n={n})")
    if n % e:
        return 0
    total = 0
    for d in divisors(e):
        step = n // d
        if r % step == 0:
            total += moebius(e // d) * comb(d, r // step)
    q, rem = divmod(total, e)
    assert rem == 0, (n, r, e, total)
    return q


def num_cycle_classes(n: int, r: int) -> int:
    return sum(cycle_class_count(n, r, e) for e in divisors(n))


@dataclass(frozen=True)
class CycleClass:
    n: int
    word: int
    weight: int
    order: int

    @property
    def bits(self) -> str:
        return format(self.word, f"0{self.n}b") if self.n else ""

    @property
    def representative(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.bits)

    @property
    def columns(self) -> tuple[int, ...]:
        """0-based positions of the ones (columns of B the representative selects)."""
        return tuple(i for i, c in enumerate(self.bits) if c == "1")


@lru_cache(maxsize=256)
def _representatives(n: int, r: int) -> tuple[CycleClass, ...]:
    words = _kernels.weight_words(n, r)
    canon, order = _kernels.min_rotations(words, n)
    uniq, first = np.unique(canon, return_index=True)
    return tuple(CycleClass(n, int(w), r, int(order[i])) for w, i in zip(uniq, first))


def enumerate_cycle_representatives(n: int, r: int) -> list[CycleClass]:
    """One canonical (smallest-rotation) representative per class of weight r, ascending."""
    if n < 1 or n > 62:
        raise ValueError(f"n must satisfy 1 <= n <= 62, got {n}")
    if not 0 <= r <= n:
        raise ValueError(f"weight r must satisfy 0 <= r <= n (r={r}, n={n})")
    return list(_representatives(int(n), int(r)))
