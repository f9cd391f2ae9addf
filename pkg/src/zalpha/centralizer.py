"""The Kalton centralizer and the scalar twist function behind it."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .estimation import ConstantReport, maximize, register_ratio, witness_array
from .linalg import FAMILIES, draw_vector, l2_norm

__all__ = ["f_alpha", "log_ratios", "omega", "quasilinearity_estimate"]

# |xi_k| / ||x||_2 below this is treated as xi_k = 0 (ln would overflow).
TINY_RATIO = 1e-300


def f_alpha(t: float, alpha: float) -> complex:
    """t^(1 + i*alpha) for t >= 0, with the continuous value 0 at t = 0."""
    if t < 0:
        raise ValueError(f"f_alpha is defined for t >= 0, got {t}")
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    if t == 0:
        return 0j
    return cmath.exp(complex(1.0, alpha) * math.log(t))


def log_ratios(x) -> np.ndarray:
    """ln(||x||_2 / |x_k|) along the last axis, 0 where x_k is (numerically) 0.

    Moduli are rescaled by the largest one, which becomes exactly 1.  For that
    entry the value is 0.5 * log1p(mass of the others), so it keeps full
    relative accuracy when x is close to a multiple of a basis vector.
    """
    mod = np.abs(np.asarray(x))
    if mod.shape[-1] == 0:
        return np.zeros(mod.shape)
    k = np.argmax(mod, axis=-1)[..., None]
    top = np.take_along_axis(mod, k, axis=-1)
    nonzero = top > 0
    r = mod / np.where(nonzero, top, 1.0)
    r2 = r * r
    np.put_along_axis(r2, k, 0.0, axis=-1)
    rest = np.sum(r2, axis=-1, keepdims=True)
    norm = np.sqrt(1.0 + rest)
    live = r > TINY_RATIO * norm
    t = np.where(live, np.log(norm / np.where(live, r, 1.0)), 0.0)
    np.put_along_axis(t, k, np.where(nonzero, 0.5 * np.log1p(rest), 0.0), axis=-1)
    return t


def _twist(t: np.ndarray, alpha: float) -> np.ndarray:
    # t * exp(i alpha ln t), written with cos/sin so that alpha -> -alpha is an
    # exact conjugation.
    with np.errstate(divide="ignore", invalid="ignore"):
        phase = alpha * np.log(np.where(t > 0, t, 1.0))
    return np.where(t > 0, t * (np.cos(phase) + 1j * np.sin(phase)), 0.0)


def omega(x, alpha: float) -> np.ndarray:
    """Kalton's centralizer: x_k * f_alpha(ln(||x||_2 / |x_k|)), 0 where x_k = 0.

    Accepts a single vector or a batch of vectors along the last axis.
    """
    x = np.asarray(x, dtype=np.complex128)
    if not np.all(np.isfinite(x)):
        raise ValueError("vector entries must be finite")
    if not math.isfinite(alpha):
        raise ValueError("alpha must be finite")
    return x * _twist(log_ratios(x), alpha)


@register_ratio("quasilinearity")
def quasilinearity_ratio(witness: dict, alpha: float) -> float:
    x, y = witness_array(witness["x"]), witness_array(witness["y"])
    defect = omega(x + y, alpha) - omega(x, alpha) - omega(y, alpha)
    return float(l2_norm(defect) / (l2_norm(x) + l2_norm(y)))


def quasilinearity_estimate(
    n: int, alpha: float, trials: int, families=FAMILIES, seed: int = 0
) -> ConstantReport:
    """Sampled lower bound for sup ||Omega(x+y) - Omega(x) - Omega(y)|| / (||x|| + ||y||)."""
    families = tuple(families)

    def trial(rng, _):
        x = draw_vector(rng, families[rng.integers(len(families))], n)
        y = draw_vector(rng, families[rng.integers(len(families))], n)
        if l2_norm(x) + l2_norm(y) == 0:
            return None
        w = {"x": x, "y": y}
        return quasilinearity_ratio(w, alpha), w

    return maximize("quasilinearity", alpha, n, trials, seed, families, trial)
