"""Heterogeneous straggler model: persistent slow/active classes, iid straggling per iteration."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class WorkerClass(str, enum.Enum):
    SLOW = "slow"
    ACTIVE = "active"


def check_probability(name: str, p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")
    return p


@dataclass(frozen=True)
class StragglerParams:
    p_hat: float
    p_ss: float
    p_as: float

    def __post_init__(self):
        for name in ("p_hat", "p_ss", "p_as"):
            object.__setattr__(self, name, check_probability(name, getattr(self, name)))
        if self.p_ss < self.p_as:
            raise ValueError(f"slow workers must straggle at least as often as active ones (p_ss={self.p_ss} < p_as={self.p_as})")

    @property
    def marginal(self) -> float:
        """Straggle probability of a worker whose class is unknown."""
        return self.p_hat * self.p_ss + (1.0 - self.p_hat) * self.p_as


@dataclass(frozen=True)
class ClassAssignment:
    slow: np.ndarray  # bool, length n

    def __post_init__(self):
        a = np.array(self.slow, dtype=bool)
        a.setflags(write=False)
        object.__setattr__(self, "slow", a)

    @property
    def n(self) -> int:
        return len(self.slow)

    @property
    def m(self) -> int:
        return int(self.slow.sum())

    @property
    def labels(self) -> list[WorkerClass]:
        return [WorkerClass.SLOW if x else WorkerClass.ACTIVE for x in self.slow]

    def to_json(self) -> list[str]:
        return [c.value for c in self.labels]

    @classmethod
    def from_labels(cls, labels) -> "ClassAssignment":
        try:
            return cls(np.array([WorkerClass(str(x).lower()) is WorkerClass.SLOW for x in labels], dtype=bool))
        except ValueError:
            raise ValueError(f"labels must be 'slow' or 'active', got {list(labels)}") from None

    def straggle_probs(self, params: StragglerParams) -> np.ndarray:
        return np.where(self.slow, params.p_ss, params.p_as)


@dataclass(frozen=True)
class Realization:
    iteration: int
    nonstragglers: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.nonstragglers)


def assign_classes(n: int, p_hat: float, rng: np.random.Generator) -> ClassAssignment:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p_hat = check_probability("p_hat", p_hat)
    return ClassAssignment(rng.random(n) < p_hat)


def assign_classes_fixed(n: int, m: int) -> ClassAssignment:
    """First ``m`` workers slow, the rest active."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= m <= n:
        raise ValueError(f"m must satisfy 0 <= m <= n, got m={m}, n={n}")
    return ClassAssignment(np.arange(n) < m)


def draw_realization(assignment: ClassAssignment, params: StragglerParams, iteration: int,
                     rng: np.random.Generator) -> Realization:
    straggle = rng.random(assignment.n) < assignment.straggle_probs(params)
    return Realization(int(iteration), tuple(int(j) for j in np.flatnonzero(~straggle)))
