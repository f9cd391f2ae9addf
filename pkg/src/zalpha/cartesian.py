"""Odd/even splitting of Z_alpha onto its Cartesian square, and diagonal multipliers.

Coordinates are numbered from 1, so the "odd" part is x_1, x_3, ... which is
``x[0::2]`` in numpy indexing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimation import ConstantReport, maximize, register_ratio, witness_array
from .linalg import FAMILIES, as_vector, linf_norm
from .zspace import (
    ZPoint,
    direct_sum_norm,
    draw_point,
    pad,
    point_from_witness,
    point_witness,
    znorm,
)

__all__ = [
    "DiagonalMultiplier",
    "indicator",
    "interleave_order",
    "multiplier_apply",
    "multiplier_constant_estimate",
    "split_bound",
    "u_merge",
    "u_norm_estimate",
    "u_split",
]


@dataclass(frozen=True, eq=False)
class DiagonalMultiplier:
    s: np.ndarray

    def __post_init__(self):
        s = as_vector(self.s).copy()
        s.setflags(write=False)
        object.__setattr__(self, "s", s)

    @property
    def sup_norm(self) -> float:
        return linf_norm(self.s)

    def __mul__(self, other: "DiagonalMultiplier") -> "DiagonalMultiplier":
        return DiagonalMultiplier(self.s * other.s)


def indicator(n: int, parity: str) -> DiagonalMultiplier:
    """0/1 multiplier keeping the odd (1-based) or even coordinates."""
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    s = np.zeros(n, dtype=np.complex128)
    s[0 if parity == "odd" else 1 :: 2] = 1.0
    return DiagonalMultiplier(s)


def u_split(p: ZPoint) -> tuple[ZPoint, ZPoint]:
    if p.dim % 2:
        p = pad(p, p.dim + 1)
    return (
        ZPoint(p.x[0::2], p.y[0::2], p.alpha),
        ZPoint(p.x[1::2], p.y[1::2], p.alpha),
    )


def interleave_order(n1: int, n2: int) -> np.ndarray:
    """Source index (into ``concat(a, b)``) of each merged coordinate.

    The first ``2 * min(n1, n2)`` coordinates alternate a_1, b_1, a_2, b_2, ...
    and the tail of the longer input follows in order.  For n1 == n2 this is
    exactly the inverse of the odd/even split.
    """
    m = min(n1, n2)
    head = np.empty(2 * m, dtype=np.intp)
    head[0::2] = np.arange(m)
    head[1::2] = n1 + np.arange(m)
    tail = np.arange(m, n1) if n1 > n2 else n1 + np.arange(m, n2)
    return np.concatenate([head, tail]).astype(np.intp)


def u_merge(p_odd: ZPoint, p_even: ZPoint) -> ZPoint:
    if p_odd.alpha != p_even.alpha:
        raise ValueError(f"alpha mismatch: {p_odd.alpha} vs {p_even.alpha}")
    if p_odd.dim != p_even.dim:
        raise ValueError(f"halves have different lengths: {p_odd.dim} vs {p_even.dim}")
    order = interleave_order(p_odd.dim, p_even.dim)
    x = np.concatenate([p_odd.x, p_even.x])[order]
    y = np.concatenate([p_odd.y, p_even.y])[order]
    return ZPoint(x, y, p_odd.alpha)


def multiplier_apply(m: DiagonalMultiplier, p: ZPoint) -> ZPoint:
    if m.s.shape[0] != p.dim:
        raise ValueError(f"multiplier length {m.s.shape[0]} != point dimension {p.dim}")
    return ZPoint(m.s * p.x, m.s * p.y, p.alpha)


def split_bound(p: ZPoint) -> tuple[float, float]:
    """Both sides of ||U p||_(+) <= (r_odd + r_even) * ||p||.

    r_odd and r_even are the norm ratios of the two indicator multipliers on p.
    Returns ``(lhs, rhs)``; p must be nonzero.
    """
    norm = znorm(p)
    if norm == 0:
        raise ValueError("split_bound needs a nonzero point")
    q = pad(p, p.dim + p.dim % 2)
    r_odd = znorm(multiplier_apply(indicator(q.dim, "odd"), q)) / norm
    r_even = znorm(multiplier_apply(indicator(q.dim, "even"), q)) / norm
    return direct_sum_norm(*u_split(p)), (r_odd + r_even) * norm


@register_ratio("multiplier")
def multiplier_ratio(w: dict, alpha: float) -> float:
    p = point_from_witness(w, "p_", alpha)
    m = DiagonalMultiplier(witness_array(w["s"]))
    return znorm(multiplier_apply(m, p)) / znorm(p)


S_KINDS = ("phases", "mask")


def _draw_multiplier(rng: np.random.Generator, n: int, t: int) -> np.ndarray:
    if t == 0:
        return np.ones(n, dtype=np.complex128)
    if S_KINDS[rng.integers(len(S_KINDS))] == "phases":
        return np.exp(2j * np.pi * rng.random(n))
    return (rng.random(n) < rng.random()).astype(np.complex128)


def multiplier_constant_estimate(
    n: int, alpha: float, trials: int, seed: int = 0, families=FAMILIES
) -> ConstantReport:
    """Sampled lower bound for sup ||(sx, sy)|| / ||(x, y)|| over ||s||_inf <= 1.

    Each trial draws a point p and scores three multipliers on it: a random one
    (unimodular phases or a 0/1 mask; all-ones on trial 0) and the odd and even
    indicators.  Scoring the indicators on every p makes the estimate dominate
    half of the sampled forward norm of U for the same seed.
    """
    families = tuple(families)
    odd, even = np.array(indicator(n, "odd").s), np.array(indicator(n, "even").s)

    def trial(rng, t):
        p = draw_point(rng, n, families, alpha)
        if p.is_zero():
            return None
        best = None
        for s in (_draw_multiplier(rng, n, t), odd, even):
            w = {"s": s, **point_witness("p_", p)}
            r = multiplier_ratio(w, alpha)
            if best is None or r > best[0]:
                best = (r, w)
        return best

    return maximize("multiplier", alpha, n, trials, seed, families, trial)


@register_ratio("u_forward")
def u_forward_ratio(w: dict, alpha: float) -> float:
    p = point_from_witness(w, "p_", alpha)
    return direct_sum_norm(*u_split(p)) / znorm(p)


@register_ratio("u_inverse")
def u_inverse_ratio(w: dict, alpha: float) -> float:
    a = point_from_witness(w, "a_", alpha)
    b = point_from_witness(w, "b_", alpha)
    return znorm(u_merge(a, b)) / direct_sum_norm(a, b)


def u_norm_estimate(
    n: int, alpha: float, trials: int, seed: int = 0, families=FAMILIES
) -> tuple[ConstantReport, ConstantReport]:
    """Sampled norms of U : Z -> Z (+) Z and of its inverse, on the n-section.

    Returns ``(forward, inverse)`` reports.
    """
    if n < 2 or n % 2:
        raise ValueError(f"u_norm_estimate needs an even dimension, got {n}")
    families = tuple(families)

    def forward(rng, _):
        p = draw_point(rng, n, families, alpha)
        if p.is_zero():
            return None
        w = point_witness("p_", p)
        return u_forward_ratio(w, alpha), w

    def inverse(rng, _):
        a = draw_point(rng, n // 2, families, alpha)
        b = draw_point(rng, n // 2, families, alpha)
        if a.is_zero() and b.is_zero():
            return None
        w = {**point_witness("a_", a), **point_witness("b_", b)}
        return u_inverse_ratio(w, alpha), w

    return (
        maximize("u_forward", alpha, n, trials, seed, families, forward),
        maximize("u_inverse", alpha, n, trials, seed, families, inverse),
    )
