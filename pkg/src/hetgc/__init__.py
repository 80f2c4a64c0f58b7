"""Approximate gradient coding with per-iteration data shuffling under a
heterogeneous (slow/active) straggler model."""

from ._kernels import BACKEND
from .coding import EncodingMatrix, build_crc, build_frc, nonstraggler_submatrix, assigned_workers
from .decoding import DecodeResult, optimal_decode, reconstruct_gradient, is_exact
from .stragglers import StragglerParams, ClassAssignment, Realization

__version__ = "0.1.0"
