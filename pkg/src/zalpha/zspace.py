"""Points of finite sections of Z_alpha, the quasi-norm, conjugation and direct sums."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centralizer import omega
from .estimation import ConstantReport, maximize, register_ratio, witness_array
from .linalg import FAMILIES, as_vector, draw_vector, draw_vectors, l2_norm

__all__ = [
    "ConstantReport",
    "ZPoint",
    "add",
    "conjugate_point",
    "direct_sum_norm",
    "draw_point",
    "draw_points",
    "pad",
    "quasi_triangle_estimate",
    "scale",
    "zero_point",
    "znorm",
    "znorm_arrays",
]


def _frozen(v: np.ndarray) -> np.ndarray:
    v = v.copy()
    v.setflags(write=False)
    return v


@dataclass(frozen=True, eq=False)
class ZPoint:
    """A pair (x, y) in the n-dimensional section of Z_alpha."""

    x: np.ndarray
    y: np.ndarray
    alpha: float

    def __post_init__(self):
        x, y = as_vector(self.x), as_vector(self.y)
        if x.shape != y.shape:
            raise ValueError(f"x and y lengths differ: {x.shape[0]} != {y.shape[0]}")
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "x", _frozen(x))
        object.__setattr__(self, "y", _frozen(y))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def dim(self) -> int:
        return self.x.shape[0]

    def __eq__(self, other):
        if not isinstance(other, ZPoint):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.y, other.y)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not (np.any(self.x) or np.any(self.y))


def zero_point(n: int, alpha: float) -> ZPoint:
    z = np.zeros(n, dtype=np.complex128)
    return ZPoint(z, z, alpha)


def znorm_arrays(x, y, alpha: float):
    """||x||_2 + ||y - Omega_alpha(x)||_2 for single points or batches (last axis)."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    return l2_norm(x) + l2_norm(y - omega(x, alpha))


def znorm(p: ZPoint) -> float:
    return float(znorm_arrays(p.x, p.y, p.alpha))


def conjugate_point(p: ZPoint) -> ZPoint:
    """The same vectors read in the conjugate space, which is the section of Z_{-alpha}."""
    return ZPoint(np.conj(p.x), np.conj(p.y), -p.alpha)


def _check_compatible(p: ZPoint, q: ZPoint):
    if p.alpha != q.alpha:
        raise ValueError(f"points live in different spaces: alpha {p.alpha} vs {q.alpha}")
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")


def add(p: ZPoint, q: ZPoint) -> ZPoint:
    _check_compatible(p, q)
    return ZPoint(p.x + q.x, p.y + q.y, p.alpha)


def scale(lam: complex, p: ZPoint) -> ZPoint:
    return ZPoint(lam * p.x, lam * p.y, p.alpha)


def pad(p: ZPoint, n: int) -> ZPoint:
    """Append zero coordinates up to length ``n``."""
    if n < p.dim:
        raise ValueError(f"cannot pad a length-{p.dim} point down to {n}")
    extra = np.zeros(n - p.dim, dtype=np.complex128)
    return ZPoint(np.concatenate([p.x, extra]), np.concatenate([p.y, extra]), p.alpha)


def direct_sum_norm(p: ZPoint, q: ZPoint) -> float:
    """Quasi-norm on Z_alpha (+) Z_alpha, taken as the sum of the component quasi-norms."""
    if p.alpha != q.alpha:
        raise ValueError(f"points live in different spaces: alpha {p.alpha} vs {q.alpha}")
    return znorm(p) + znorm(q)


Y_MODES = ("zero", "free", "graph")


def draw_point(rng: np.random.Generator, n: int, families, alpha: float) -> ZPoint:
    """Random point for the estimators.

    x comes from one of ``families``; y is either 0, an independent draw, or
    Omega_alpha(x) (a point on the twisted graph, where ||p|| = ||x||).
    """
    families = tuple(families)
    x = draw_vector(rng, families[rng.integers(len(families))], n)
    mode = Y_MODES[rng.integers(len(Y_MODES))]
    if mode == "zero":
        y = np.zeros(n, dtype=np.complex128)
    elif mode == "free":
        y = draw_vector(rng, families[rng.integers(len(families))], n)
    else:
        y = omega(x, alpha)
    return ZPoint(x, y, alpha)


def draw_points(rng: np.random.Generator, count: int, n: int, families, alpha: float):
    """Batch of ``count`` points as ``(X, Y)`` arrays of shape ``(count, n)``.

    Rows follow the same recipe as :func:`draw_point`.
    """
    X = draw_vectors(rng, count, n, families)
    mode = rng.integers(len(Y_MODES), size=count)
    Y = np.zeros_like(X)
    free = mode == Y_MODES.index("free")
    graph = mode == Y_MODES.index("graph")
    Y[free] = draw_vectors(rng, int(free.sum()), n, families)
    Y[graph] = omega(X[graph], alpha)
    return X, Y


def point_witness(prefix: str, p: ZPoint) -> dict:
    return {f"{prefix}x": np.array(p.x), f"{prefix}y": np.array(p.y)}


def point_from_witness(w: dict, prefix: str, alpha: float) -> ZPoint:
    return ZPoint(witness_array(w[f"{prefix}x"]), witness_array(w[f"{prefix}y"]), alpha)


@register_ratio("quasi_triangle")
def quasi_triangle_ratio(w: dict, alpha: float) -> float:
    p = point_from_witness(w, "p_", alpha)
    q = point_from_witness(w, "q_", alpha)
    return znorm(add(p, q)) / (znorm(p) + znorm(q))


def quasi_triangle_estimate(
    n: int,
    alpha: float,
    trials: int,
    seed: int = 0,
    families=FAMILIES,
    include_diagonal: bool = True,
) -> ConstantReport:
    """Sampled lower bound for the quasi-triangle constant sup ||p+q|| / (||p|| + ||q||).

    With ``include_diagonal`` trial 0 uses the pair (p, p), whose ratio is
    exactly 1, so the estimate never drops below 1.
    """
    families = tuple(families)

    def trial(rng, t):
        p = draw_point(rng, n, families, alpha)
        q = p if (include_diagonal and t == 0) else draw_point(rng, n, families, alpha)
        if znorm(p) + znorm(q) == 0:
            return None
        w = {**point_witness("p_", p), **point_witness("q_", q)}
        return quasi_triangle_ratio(w, alpha), w

    return maximize("quasi_triangle", alpha, n, trials, seed, families, trial)
