"""Complex vectors, dense operators, norms and seeded sampling.

Vectors are plain ``complex128`` numpy arrays; operators are 2-D ``complex128``
arrays.  Every numeric module in the package goes through :func:`as_vector`
and :func:`as_operator` so that NaN/Inf never leak into the estimators.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FAMILIES",
    "RandomSpec",
    "apply",
    "as_operator",
    "as_vector",
    "draw_vector",
    "draw_vectors",
    "l2_norm",
    "linf_norm",
    "sample",
    "trial_rng",
]

FAMILIES = ("gaussian", "flat", "spike", "geometric-decay")


class DimensionError(ValueError):
    """Raised when vector/operator shapes do not line up."""


def as_vector(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128)
    if v.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_operator(T) -> np.ndarray:
    M = np.asarray(T, dtype=np.complex128)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-D operator, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("operator entries must be finite")
    return M


def l2_norm(x, axis=-1):
    """sqrt(sum |x_k|^2) along ``axis``; works on batches."""
    x = np.asarray(x)
    return np.sqrt(np.sum(x.real**2 + x.imag**2, axis=axis))


def linf_norm(s) -> float:
    """max |s_k|, with 0 for the empty vector."""
    s = np.asarray(s)
    if s.size == 0:
        return 0.0
    return float(np.max(np.abs(s)))


def apply(T, x) -> np.ndarray:
    T = as_operator(T)
    x = as_vector(x)
    if T.shape[1] != x.shape[0]:
        raise DimensionError(
            f"operator has {T.shape[1]} columns but vector has length {x.shape[0]}"
        )
    return T @ x


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    family: str
    dim: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


def sample(spec: RandomSpec) -> np.ndarray:
    """Canonical member of a family; only ``gaussian`` consumes the seed."""
    n = spec.dim
    if spec.family == "gaussian":
        rng = np.random.default_rng(spec.seed)
        return _complex_normal(rng, n)
    if spec.family == "flat":
        return np.ones(n, dtype=np.complex128)
    if spec.family == "spike":
        v = np.zeros(n, dtype=np.complex128)
        v[0] = 1.0
        return v
    # geometric-decay, 1-based exponent: 2^(-1/2), 2^(-1), ...
    k = np.arange(1, n + 1)
    return (2.0 ** (-k / 2.0)).astype(np.complex128)


def _complex_normal(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.sqrt(2.0)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent substream for one trial.

    Keyed on (seed, trial) only, so a run with more trials extends a run with
    fewer and the result does not depend on evaluation order.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def draw_vector(rng: np.random.Generator, family: str, n: int) -> np.ndarray:
    """A randomised member of ``family`` for the constant estimators.

    Structured families keep their modulus profile but get a random support,
    random coordinate order, random phases and a random overall scale.
    """
    if family == "gaussian":
        v = _complex_normal(rng, n)
    elif family == "flat":
        k = int(np.clip(np.round(np.exp(rng.uniform(0.0, np.log(n)))), 1, n))
        v = np.zeros(n, dtype=np.complex128)
        v[rng.choice(n, size=k, replace=False)] = 1.0
    elif family == "spike":
        v = np.zeros(n, dtype=np.complex128)
        v[rng.integers(n)] = 1.0
    elif family == "geometric-decay":
        v = rng.permutation(sample(RandomSpec(0, family, n)))
    else:
        raise ValueError(f"unknown family {family!r}")
    if family != "gaussian":
        v = v * np.exp(2j * np.pi * rng.random(n))
    return v * np.exp(rng.normal(0.0, 1.0))


def draw_vectors(rng: np.random.Generator, count: int, n: int, families=FAMILIES) -> np.ndarray:
    """Batch version of :func:`draw_vector`: a ``(count, n)`` array, one family per row.

    Same distributions as :func:`draw_vector`, different consumption of the
    generator, so rows do not coincide with single draws.
    """
    families = tuple(families)
    which = rng.integers(len(families), size=count)
    out = np.zeros((count, n), dtype=np.complex128)
    for i, fam in enumerate(families):
        rows = np.flatnonzero(which == i)
        m = rows.size
        if m == 0:
            continue
        if fam == "gaussian":
            out[rows] = _complex_normal(rng, m * n).reshape(m, n)
            continue
        if fam == "flat":
            k = np.clip(np.round(np.exp(rng.uniform(0.0, np.log(n), size=m))), 1, n)
            block = (np.arange(n) < k[:, None]).astype(np.complex128)
        elif fam == "spike":
            block = np.zeros((m, n), dtype=np.complex128)
            block[:, 0] = 1.0
        elif fam == "geometric-decay":
            block = np.tile(sample(RandomSpec(0, fam, n)), (m, 1))
        else:
            raise ValueError(f"unknown family {fam!r}")
        block = rng.permuted(block, axis=1)
        out[rows] = block * np.exp(2j * np.pi * rng.random((m, n)))
    return out * np.exp(rng.normal(0.0, 1.0, size=(count, 1)))
