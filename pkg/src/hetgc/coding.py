"""FRC and CRC encoding matrices.

Rows are data partitions, columns are workers: ``B[i, j] == 1`` iff worker
``j`` computes the partial gradient of partition ``i``. All indices in the
Python API are 0-based.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class Scheme(str, enum.Enum):
    FRC = "frc"
    CRC = "crc"

    @classmethod
    def parse(cls, value: "str | Scheme") -> "Scheme":
        try:
            return cls(value.lower() if isinstance(value, str) else value)
        except ValueError:
            raise ValueError(f"unknown scheme {value!r}; expected 'frc' or 'crc'") from None


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, order="C")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class EncodingMatrix:
    scheme: Scheme
    n: int
    s: int
    entries: np.ndarray = field(repr=False)

    def column(self, j: int) -> np.ndarray:
        return self.entries[:, j]

    def to_csv(self) -> str:
        """Dense CSV, one row per partition."""
        buf = io.StringIO()
        for row in self.entries:
            buf.write(",".join(str(int(v)) for v in row))
            buf.write("\n")
        return buf.getvalue()


@dataclass(frozen=True)
class NonStragglerMatrix:
    source: EncodingMatrix
    workers: tuple[int, ...]
    entries: np.ndarray = field(repr=False)

    @property
    def r(self) -> int:
        return len(self.workers)

    @property
    def n(self) -> int:
        return self.source.n


def _check_ns(n: int, s: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if int(s) != s or s < 1 or s > n:
        raise ValueError(f"s must satisfy 1 <= s <= n, got s={s!r}, n={n}")


def build_frc(n: int, s: int) -> EncodingMatrix:
    """Block-diagonal fractional repetition code: n/s all-ones s-by-s blocks."""
    _check_ns(n, s)
    if n % s:
        raise ValueError(f"FRC requires s to divide n (n={n}, s={s})")
    B = np.kron(np.eye(n // s), np.ones((s, s)))
    return EncodingMatrix(Scheme.FRC, int(n), int(s), _frozen(B))


def build_crc(n: int, s: int) -> EncodingMatrix:
    """Cyclic repetition code: column j covers partitions j, ..., j+s-1 (mod n)."""
    _check_ns(n, s)
    B = np.zeros((n, n))
    for j in range(n):
        B[(j + np.arange(s)) % n, j] = 1.0
    return EncodingMatrix(Scheme.CRC, int(n), int(s), _frozen(B))


def build(scheme: "str | Scheme", n: int, s: int) -> EncodingMatrix:
    scheme = Scheme.parse(scheme)
    return build_frc(n, s) if scheme is Scheme.FRC else build_crc(n, s)


def _check_indices(idx: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    out = tuple(int(i) for i in idx)
    for i in out:
        if not 0 <= i < n:
            raise IndexError(f"{what} index {i} out of range 0..{n - 1}")
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate {what} index in {list(out)}")
    return out


def nonstraggler_submatrix(B: EncodingMatrix, workers: Iterable[int]) -> NonStragglerMatrix:
    """Columns of ``B`` for the listed workers, in the listed order."""
    idx = _check_indices(list(workers), B.n, "worker")
    A = B.entries[:, list(idx)] if idx else np.zeros((B.n, 0))
    return NonStragglerMatrix(B, idx, _frozen(A))


def assigned_workers(B: EncodingMatrix, partition: int) -> tuple[int, ...]:
    """Workers holding ``partition`` (support of its row), ascending."""
    (i,) = _check_indices([partition], B.n, "partition")
    return tuple(int(j) for j in np.flatnonzero(B.entries[i]))
