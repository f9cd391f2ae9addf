"""Shared machinery for the sampled constant estimators.

Each estimator registers a ratio function under its constant name.  A
:class:`ConstantReport` stores the inputs that achieved the maximum, and
:meth:`ConstantReport.recompute` replays them through the registered ratio so
that every reported estimate can be checked independently of the sampler.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import FAMILIES, trial_rng

RATIOS: dict[str, Callable[[dict, float], float]] = {}


def register_ratio(name: str):
    def deco(fn):
        RATIOS[name] = fn
        return fn

    return deco


@dataclass(frozen=True)
class ConstantReport:
    constant_name: str
    alpha: float
    dim: int
    trials: int
    seed: int
    estimate: float
    witness: dict = field(compare=False)
    families: tuple = FAMILIES

    def recompute(self) -> float:
        return RATIOS[self.constant_name](self.witness, self.alpha)

    def witness_json(self) -> dict:
        return {k: encode_value(v) for k, v in self.witness.items()}


def encode_value(v):
    """Arrays become nested lists of [re, im] pairs; scalars pass through."""
    if isinstance(v, np.ndarray):
        if v.ndim == 0:
            return [float(v.real), float(v.imag)]
        return [encode_value(row) for row in v] if v.ndim > 1 else [
            [float(z.real), float(z.imag)] for z in v
        ]
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    return v


def decode_array(pairs) -> np.ndarray:
    """Inverse of :func:`encode_value`; exact, including signed zeros."""
    a = np.asarray(pairs, dtype=np.float64)
    if a.size == 0:
        return np.zeros(a.shape[:-1] if a.ndim > 1 else (0,), dtype=np.complex128)
    out = np.empty(a.shape[:-1], dtype=np.complex128)
    out.real = a[..., 0]
    out.imag = a[..., 1]
    return out


def witness_array(v) -> np.ndarray:
    return v if isinstance(v, np.ndarray) else decode_array(v)


def maximize(
    name: str,
    alpha: float,
    n: int,
    trials: int,
    seed: int,
    families,
    trial_fn,
) -> ConstantReport:
    """Run ``trial_fn(rng, trial)`` for each trial and keep the largest ratio.

    ``trial_fn`` returns ``(ratio, witness)`` or ``None`` for a skipped trial
    (vanishing denominator).  Ties keep the earliest trial.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    families = tuple(families)
    for fam in families:
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {fam!r}")
    best, best_w = -np.inf, {}
    for t in range(trials):
        out = trial_fn(trial_rng(seed, t), t)
        if out is None:
            continue
        ratio, w = out
        if ratio > best:
            best, best_w = ratio, w
    if not np.isfinite(best):
        best = 0.0
    return ConstantReport(
        constant_name=name,
        alpha=float(alpha),
        dim=n,
        trials=trials,
        seed=seed,
        estimate=float(best),
        witness=best_w,
        families=families,
    )
