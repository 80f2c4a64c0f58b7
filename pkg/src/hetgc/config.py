"""JSON configuration shared by the analyze, simulate and train commands."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .coding import Scheme, build
from .stragglers import ClassAssignment, StragglerParams, assign_classes_fixed
from .training import ExperimentConfig

KEYS = frozenset({
    "scheme", "n", "s", "shuffle", "L", "p_hat", "p_ss", "p_as", "m_fixed", "labels",
    "seed", "model", "eta", "lambda", "dataset",
})
DATASET_KEYS = frozenset({"path", "synthetic"})
SYNTHETIC_KEYS = frozenset({"kind", "N", "a", "noise"})


class ConfigError(ValueError):
    pass


def _int(doc, key, default=None):
    v = doc.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{key} must be an integer, got {v!r}")
    return v


def _float(doc, key, default=None):
    v = doc.get(key, default)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key} must be a number, got {v!r}")
    return float(v)


def _require(doc, *keys):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")


def load(path) -> tuple[dict[str, Any], Path]:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    validate_keys(doc)
    return doc, path.parent


def validate_keys(doc: dict) -> None:
    unknown = sorted(set(doc) - KEYS)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    ds = doc.get("dataset")
    if ds is not None:
        if not isinstance(ds, dict) or len(set(ds) & DATASET_KEYS) != 1 or set(ds) - DATASET_KEYS:
            raise ConfigError("dataset must be {\"path\": ...} or {\"synthetic\": {...}}")
        if "synthetic" in ds:
            syn = ds["synthetic"]
            if not isinstance(syn, dict):
                raise ConfigError("dataset.synthetic must be an object")
            bad = sorted(set(syn) - SYNTHETIC_KEYS)
            if bad:
                raise ConfigError(f"unknown dataset.synthetic key(s): {', '.join(bad)}")
            _require(syn, "N", "a")


def coding_params(doc: dict) -> tuple[Scheme, int, int]:
    _require(doc, "scheme", "n", "s")
    try:
        scheme = Scheme.parse(doc["scheme"])
        n, s = _int(doc, "n"), _int(doc, "s")
        build(scheme, n, s)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return scheme, n, s


def straggler_params(doc: dict) -> StragglerParams:
    _require(doc, "p_ss", "p_as")
    fixed = doc.get("m_fixed") is not None or doc.get("labels") is not None
    if not fixed:
        _require(doc, "p_hat")
    try:
        return StragglerParams(_float(doc, "p_hat", 0.0), _float(doc, "p_ss"), _float(doc, "p_as"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def fixed_assignment(doc: dict, n: int) -> ClassAssignment | None:
    """Explicit labels win over m_fixed; None means classes are drawn from p_hat."""
    try:
        if doc.get("labels") is not None:
            labels = doc["labels"]
            if not isinstance(labels, list) or len(labels) != n:
                raise ConfigError(f"labels must be a list of {n} 'slow'/'active' strings")
            return ClassAssignment.from_labels(labels)
        m = _int(doc, "m_fixed")
        if m is not None:
            return assign_classes_fixed(n, m)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return None


def seed_of(doc: dict, override: int | None = None) -> int:
    seed = override if override is not None else _int(doc, "seed", 0)
    if not 0 <= seed < 2**64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def experiment_config(doc: dict, base_dir: Path | None = None, seed: int | None = None) -> ExperimentConfig:
    scheme, n, s = coding_params(doc)
    params = straggler_params(doc)
    _require(doc, "dataset")
    labels = doc.get("labels")
    if labels is not None:
        fixed_assignment(doc, n)
    try:
        return ExperimentConfig(
            scheme=scheme, n=n, s=s, params=params,
            shuffle=doc.get("shuffle", "random"),
            L=_int(doc, "L", 100),
            seed=seed_of(doc, seed),
            model=doc.get("model", "linear"),
            eta=_float(doc, "eta"),
            lam=_float(doc, "lambda", 0.0),
            m_fixed=_int(doc, "m_fixed"),
            labels=[str(x).lower() for x in labels] if labels is not None else None,
            dataset=doc["dataset"],
            base_dir=base_dir,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
