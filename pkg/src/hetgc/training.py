"""Coded distributed gradient descent under the straggler model.

Each iteration: pick the column permutation, draw which workers return,
decode the survivors' combination, and take a plain gradient step with the
reconstructed gradient.
"""

from __future__ import annotations

import csv
import enum
import io
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import rng as rngmod
from .coding import Scheme, build, nonstraggler_submatrix
from .decoding import is_exact, optimal_decode
from .shuffling import ShuffleStrategy, apply_permutation, next_permutation
from .stragglers import (ClassAssignment, StragglerParams, assign_classes, assign_classes_fixed,
                         draw_realization)


class Task(str, enum.Enum):
    LINEAR = "linear"
    LOGISTIC = "logistic"

    @classmethod
    def parse(cls, value) -> "Task":
        try:
            return cls(value.lower() if isinstance(value, str) else value)
        except ValueError:
            raise ValueError(f"unknown model {value!r}; expected linear or logistic") from None


class NumericalError(RuntimeError):
    """Raised when the optimizer produces a non-finite gradient."""


@dataclass(frozen=True)
class Dataset:
    X: np.ndarray
    y: np.ndarray
    task: Task

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        y = np.asarray(self.y, dtype=np.float64).reshape(-1)
        if X.shape[0] != y.shape[0]:
            raise ValueError(f"{X.shape[0]} feature rows but {y.shape[0]} labels")
        if X.shape[0] == 0:
            raise ValueError("dataset is empty")
        task = Task.parse(self.task)
        if task is Task.LOGISTIC and not np.isin(y, (0.0, 1.0)).all():
            raise ValueError("logistic regression labels must be 0 or 1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "task", task)

    @property
    def N(self) -> int:
        return self.X.shape[0]

    @property
    def a(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class PartitionedDataset:
    parts: tuple[tuple[np.ndarray, np.ndarray], ...]
    task: Task

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def X(self) -> np.ndarray:
        return np.concatenate([p[0] for p in self.parts])

    @property
    def y(self) -> np.ndarray:
        return np.concatenate([p[1] for p in self.parts])


def load_csv(path, task) -> Dataset:
    """Headerless CSV: feature columns first, label last."""
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    if data.shape[1] < 2:
        raise ValueError(f"{path}: need at least one feature column and a label column")
    return Dataset(data[:, :-1], data[:, -1], Task.parse(task))


def synthetic(kind, N: int, a: int, noise: float, rng: np.random.Generator) -> tuple[Dataset, np.ndarray]:
    """Gaussian features with a random ground-truth parameter vector.

    Linear labels are ``X beta* + noise * eps``; logistic labels are drawn
    from ``Bernoulli(sigmoid(X beta*))``. Returns the dataset and ``beta*``.
    """
    kind = Task.parse(kind)
    if N < 1 or a < 1:
        raise ValueError(f"N and a must be positive (N={N}, a={a})")
    beta_star = rng.standard_normal(a)
    X = rng.standard_normal((N, a))
    z = X @ beta_star
    if kind is Task.LINEAR:
        y = z + noise * rng.standard_normal(N)
    else:
        y = (rng.random(N) < _sigmoid(z)).astype(np.float64)
    return Dataset(X, y, kind), beta_star


def partition_dataset(D: Dataset, n: int) -> PartitionedDataset:
    """Contiguous equal blocks; trailing points are dropped when n does not divide N."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    size = D.N // n
    if size == 0:
        raise ValueError(f"cannot split {D.N} points into {n} nonempty partitions")
    if size * n != D.N:
        warnings.warn(f"dropping {D.N - size * n} trailing points so {n} partitions have {size} points each",
                      stacklevel=2)
    parts = tuple((D.X[j * size:(j + 1) * size], D.y[j * size:(j + 1) * size]) for j in range(n))
    return PartitionedDataset(parts, D.task)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def partial_gradient(task, X: np.ndarray, y: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """Unregularized loss gradient summed over one partition."""
    task = Task.parse(task)
    if X.shape[1] != beta.shape[0]:
        raise ValueError(f"features have dimension {X.shape[1]}, beta has {beta.shape[0]}")
    if task is Task.LINEAR:
        return 2.0 * (X.T @ (X @ beta - y))
    return X.T @ (_sigmoid(X @ beta) - y)


def loss(task, X: np.ndarray, y: np.ndarray, beta: np.ndarray, lam: float = 0.0) -> float:
    """Full objective: summed per-point loss plus ``lam/2 ||beta||^2``."""
    task = Task.parse(task)
    z = X @ beta
    if task is Task.LINEAR:
        data = float(np.sum((z - y) ** 2))
    else:
        data = float(np.sum(np.logaddexp(0.0, z) - y * z))
    return data + 0.5 * lam * float(beta @ beta)


def gd_step(beta: np.ndarray, g: np.ndarray, eta: float) -> np.ndarray:
    if not np.all(np.isfinite(g)):
        raise NumericalError(f"non-finite gradient encountered: {g}")
    return beta - eta * g


def default_eta(task, X: np.ndarray) -> float:
    if Task.parse(task) is Task.LINEAR:
        return 1.0 / (2.0 * float(np.linalg.eigvalsh(X.T @ X)[-1]))
    return 0.1


@dataclass
class ExperimentConfig:
    scheme: Scheme
    n: int
    s: int
    params: StragglerParams
    shuffle: ShuffleStrategy = ShuffleStrategy.RANDOM
    L: int = 100
    seed: int = 0
    model: Task = Task.LINEAR
    eta: float | None = None
    lam: float = 0.0
    m_fixed: int | None = None
    labels: list[str] | None = None
    dataset: dict[str, Any] = field(default_factory=lambda: {"synthetic": {"kind": "linear", "N": 800, "a": 10, "noise": 1.0}})
    base_dir: Path | None = None

    def __post_init__(self):
        self.scheme = Scheme.parse(self.scheme)
        self.shuffle = ShuffleStrategy.parse(self.shuffle)
        self.model = Task.parse(self.model)
        rngmod.check_seed(self.seed)
        if self.L < 1:
            raise ValueError(f"L must be positive, got {self.L}")
        if self.lam < 0:
            raise ValueError(f"lambda must be nonnegative, got {self.lam}")
        if self.eta is not None and not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        build(self.scheme, self.n, self.s)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(f"labels has {len(self.labels)} entries, expected n={self.n}")
        if self.m_fixed is not None and not 0 <= self.m_fixed <= self.n:
            raise ValueError(f"m_fixed must satisfy 0 <= m_fixed <= n, got {self.m_fixed}")

    def echo(self) -> dict:
        return {
            "scheme": self.scheme.value, "n": self.n, "s": self.s, "shuffle": self.shuffle.value,
            "L": self.L, "p_hat": self.params.p_hat, "p_ss": self.params.p_ss, "p_as": self.params.p_as,
            "m_fixed": self.m_fixed, "labels": self.labels, "seed": self.seed, "model": self.model.value,
            "eta": self.eta, "lambda": self.lam, "dataset": self.dataset,
        }


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    r: int
    err: float
    loss: float
    accessed: np.ndarray
    exact: bool

    @property
    def num_unaccessed(self) -> int:
        return int((~self.accessed).sum())


@dataclass
class ExperimentResult:
    records: list[IterationRecord]
    summary: dict

    def iterations_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "r", "err", "loss", "num_unaccessed"])
        for rec in self.records:
            w.writerow([rec.iteration, rec.r, f"{rec.err:.10g}", f"{rec.loss:.10g}", rec.num_unaccessed])
        return buf.getvalue()

    @property
    def losses(self) -> np.ndarray:
        return np.array([rec.loss for rec in self.records])


def decode_weights(A) -> tuple[np.ndarray, float]:
    """Per-partition weights ``A x`` of the optimal decode, and its error.

    The master's estimate ``F^T x`` (F = A^T G, the workers' outputs) equals
    ``sum_i w_i g_i`` with ``w = A x``. Exact decodes have ``w = 1_n`` up to
    rounding; the weights are snapped to integers so the exact regime
    reproduces the plain gradient sum bit for bit; their error is reported as 0.
    """
    res = optimal_decode(A)
    entries = A.entries if hasattr(A, "entries") else np.asarray(A, dtype=np.float64)
    weights = entries @ res.x if entries.shape[1] else np.zeros(entries.shape[0])
    if res.exact:
        return np.rint(weights), 0.0
    return weights, res.err


def load_dataset(config: ExperimentConfig) -> tuple[Dataset, np.ndarray | None]:
    spec = config.dataset
    if "path" in spec:
        path = Path(spec["path"])
        if config.base_dir is not None and not path.is_absolute():
            path = config.base_dir / path
        return load_csv(path, config.model), None
    syn = spec["synthetic"]
    g = rngmod.substream(config.seed, rngmod.DATA)
    return synthetic(syn.get("kind", config.model.value), int(syn["N"]), int(syn["a"]),
                     float(syn.get("noise", 1.0)), g)


def class_assignment(config: ExperimentConfig) -> ClassAssignment:
    if config.labels is not None:
        return ClassAssignment.from_labels(config.labels)
    if config.m_fixed is not None:
        return assign_classes_fixed(config.n, config.m_fixed)
    return assign_classes(config.n, config.params.p_hat, rngmod.substream(config.seed, rngmod.CLASSES))


def run_experiment(config: ExperimentConfig, dataset: Dataset | None = None) -> ExperimentResult:
    beta_star = None
    if dataset is None:
        dataset, beta_star = load_dataset(config)
    if dataset.task is not config.model:
        raise ValueError(f"dataset task {dataset.task.value} does not match model {config.model.value}")
    parts = partition_dataset(dataset, config.n)
    X_all, y_all = parts.X, parts.y
    B = build(config.scheme, config.n, config.s)
    assignment = class_assignment(config)
    eta = config.eta if config.eta is not None else default_eta(config.model, X_all)
    lam = config.lam

    beta = np.zeros(dataset.a)
    access_counts = np.zeros(config.n, dtype=np.int64)
    records = []
    # keyed by the set of live columns: A x (the projection of 1_n) does not
    # depend on column order
    decoded: dict[tuple[int, ...], tuple[np.ndarray, float]] = {}

    for ell in range(1, config.L + 1):
        perm = next_permutation(config.shuffle, config.n, ell, rngmod.substream(config.seed, rngmod.SHUFFLE, ell))
        real = draw_realization(assignment, config.params, ell, rngmod.substream(config.seed, rngmod.STRAGGLE, ell))
        live = tuple(sorted(int(c) for c in perm[list(real.nonstragglers)]))
        if live not in decoded:
            decoded[live] = decode_weights(nonstraggler_submatrix(B, live))
        weights, err = decoded[live]
        shuffled = apply_permutation(B, perm)
        accessed = shuffled[:, list(real.nonstragglers)].any(axis=1) if real.r else np.zeros(config.n, dtype=bool)
        access_counts += accessed

        # g_hat = F^T x with F = A^T G, i.e. sum_i (A x)_i g_i, in partition order
        g = np.zeros_like(beta)
        for i, (Xi, yi) in enumerate(parts.parts):
            if weights[i] != 0.0:
                g = g + weights[i] * partial_gradient(config.model, Xi, yi, beta)
        g = g + lam * beta
        beta = gd_step(beta, g, eta)
        records.append(IterationRecord(ell, real.r, float(err), loss(config.model, X_all, y_all, beta, lam),
                                       accessed, is_exact(float(err))))

    summary = {
        "final_beta": beta.tolist(),
        "final_loss": records[-1].loss,
        "access_counts": access_counts.tolist(),
        "classes": assignment.to_json(),
        "N": int(X_all.shape[0]),
        "eta": eta,
        "config": config.echo(),
        "seed": config.seed,
    }
    if beta_star is not None:
        summary["beta_star"] = beta_star.tolist()
    return ExperimentResult(records, summary)
