"""Optimal decoding: least-squares combination of non-straggler outputs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coding import NonStragglerMatrix

EXACT_TOL = 1e-9
# relative singular-value cutoff for the pseudo-inverse
RCOND = 1e-10


@dataclass(frozen=True)
class DecodeResult:
    x: np.ndarray
    err: float
    exact: bool


def _as_array(A) -> np.ndarray:
    if isinstance(A, NonStragglerMatrix):
        return A.entries
    return np.asarray(A, dtype=np.float64)


def optimal_decode(A) -> DecodeResult:
    """Minimum-norm minimizer of ``||A x - 1||^2`` and the residual it leaves.

    ``A`` is a :class:`NonStragglerMatrix` or any n-by-r array. With no
    columns the error is ``n``.
    """
    A = _as_array(A)
    n, r = A.shape
    ones = np.ones(n)
    if r == 0:
        return DecodeResult(np.zeros(0), float(n), n == 0)
    U, sv, Vt = np.linalg.svd(A, full_matrices=False)
    keep = sv > RCOND * sv[0] if sv[0] > 0 else np.zeros_like(sv, dtype=bool)
    coef = U[:, keep].T @ ones
    x = Vt[keep].T @ (coef / sv[keep])
    resid = A @ x - ones
    err = float(resid @ resid)
    return DecodeResult(x, err, is_exact(err))


def reconstruct_gradient(F, x) -> np.ndarray:
    """Master-side combination ``F^T x`` of the r worker outputs (rows of F)."""
    F = np.asarray(F, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if F.ndim != 2 or x.ndim != 1 or F.shape[0] != x.shape[0]:
        raise ValueError(f"shape mismatch: F {F.shape} vs x {x.shape}")
    return F.T @ x


def is_exact(err: float) -> bool:
    if err < 0:
        raise ValueError(f"decoding error must be nonnegative, got {err}")
    return err <= EXACT_TOL
