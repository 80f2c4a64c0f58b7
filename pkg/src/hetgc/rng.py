"""Deterministic random substreams keyed by (seed, purpose, index)."""

import numpy as np

# purpose tags; part of the substream key, so never renumber
CLASSES = 0
STRAGGLE = 1
SHUFFLE = 2
DATA = 3
MONTE_CARLO = 4
ACCESS = 5

_MAX_SEED = 2**64 - 1


def check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= _MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def substream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(check_seed(seed), spawn_key=tuple(key))))
