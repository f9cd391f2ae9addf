"""Finite sections of Kalton's twisted Hilbert spaces Z_alpha.

Quasi-norm and centralizer numerics, the Cartesian-square isomorphism,
factorization certificates for the ideal of operators factoring through
Z_alpha, and a witness search for the decomposition method.
"""
from .centralizer import f_alpha, omega, quasilinearity_estimate
from .estimation import ConstantReport
from .linalg import RandomSpec, apply, l2_norm, linf_norm, sample
from .zspace import (
    ZPoint,
    add,
    conjugate_point,
    direct_sum_norm,
    quasi_triangle_estimate,
    scale,
    znorm,
)

__all__ = [
    "ConstantReport",
    "RandomSpec",
    "ZPoint",
    "add",
    "apply",
    "conjugate_point",
    "direct_sum_norm",
    "f_alpha",
    "l2_norm",
    "linf_norm",
    "omega",
    "quasi_triangle_estimate",
    "quasilinearity_estimate",
    "sample",
    "scale",
    "znorm",
]
__version__ = "0.1.0"
