"""Factorization certificates for the ideal of operators that factor through Z_alpha.

A certificate (T, A, B) claims T = B A where A maps into the section of
Z_alpha of half-length ``zdim`` and B maps out of it.  Section coordinates are
ordered (x_1..x_n, y_1..y_n), so A has 2*zdim rows and B has 2*zdim columns.

The alpha tag is bookkeeping: at finite rank nothing distinguishes a
factorization through Z_alpha from one through Z_{-alpha}, and nothing here
pretends otherwise.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .cartesian import interleave_order
from .estimation import decode_array, encode_value
from .linalg import as_operator

__all__ = [
    "FactorizationCertificate",
    "ShapeError",
    "compose_certificate",
    "conjugate_certificate",
    "identity_certificate",
    "interleave_matrix",
    "random_certificate",
    "residual",
    "sum_certificate",
    "verify_certificate",
]

DEFAULT_TOL = 1e-9


class ShapeError(ValueError):
    """Operator shapes are incompatible (as opposed to a failed verification)."""


def _frozen(M) -> np.ndarray:
    M = as_operator(M).copy()
    M.setflags(write=False)
    return M


@dataclass(frozen=True, eq=False)
class FactorizationCertificate:
    T: np.ndarray
    A: np.ndarray
    B: np.ndarray
    alpha: float
    zdim: int

    def __post_init__(self):
        for name in ("T", "A", "B"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", float(self.alpha))
        m, k = self.T.shape
        if self.A.shape != (2 * self.zdim, k):
            raise ShapeError(f"A has shape {self.A.shape}, expected {(2 * self.zdim, k)}")
        if self.B.shape != (m, 2 * self.zdim):
            raise ShapeError(f"B has shape {self.B.shape}, expected {(m, 2 * self.zdim)}")

    @property
    def domain_dim(self) -> int:
        return self.T.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.T.shape[0]

    def __eq__(self, other):
        if not isinstance(other, FactorizationCertificate):
            return NotImplemented
        return (
            self.alpha == other.alpha
            and self.zdim == other.zdim
            and all(np.array_equal(getattr(self, n), getattr(other, n)) for n in "TAB")
        )

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "zdim": self.zdim,
            "T": encode_value(np.array(self.T)),
            "A": encode_value(np.array(self.A)),
            "B": encode_value(np.array(self.B)),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, doc: dict) -> "FactorizationCertificate":
        zdim = int(doc["zdim"])
        A = decode_array(doc["A"]) if len(doc["A"]) and len(doc["A"][0]) else None
        k = 0 if A is None else A.shape[1]
        T = _decode_matrix(doc["T"], k)
        B = _decode_matrix(doc["B"], 2 * zdim)
        if A is None:
            A = np.zeros((2 * zdim, T.shape[1]), dtype=np.complex128)
        return cls(T=T, A=A, B=B, alpha=float(doc["alpha"]), zdim=zdim)

    @classmethod
    def loads(cls, text: str) -> "FactorizationCertificate":
        return cls.from_json(json.loads(text))


def _decode_matrix(rows, ncols: int) -> np.ndarray:
    if len(rows) == 0 or all(len(r) == 0 for r in rows):
        return np.zeros((len(rows), ncols), dtype=np.complex128)
    return decode_array(rows)


def residual(c: FactorizationCertificate) -> float:
    """||B A - T||_F / (1 + ||T||_F)."""
    return float(np.linalg.norm(c.B @ c.A - c.T) / (1.0 + np.linalg.norm(c.T)))


def verify_certificate(c: FactorizationCertificate, tol: float = DEFAULT_TOL) -> bool:
    """True iff ||B A - T||_F <= tol * (1 + ||T||_F).

    Shape problems raise :class:`ShapeError`; they are never reported as False.
    """
    if c.A.shape[0] != c.B.shape[1] or c.B.shape[0] != c.T.shape[0] or c.A.shape[1] != c.T.shape[1]:
        raise ShapeError("certificate operators do not compose to T's shape")
    return residual(c) <= tol


def identity_certificate(k: int, alpha: float, zdim: int | None = None) -> FactorizationCertificate:
    """Id on C^k factored through the section: embed into the x-block, then project back."""
    zdim = k if zdim is None else zdim
    if zdim < k:
        raise ShapeError(f"section half-length {zdim} too small for C^{k}")
    A = np.zeros((2 * zdim, k), dtype=np.complex128)
    A[:k, :k] = np.eye(k)
    return FactorizationCertificate(T=np.eye(k), A=A, B=A.conj().T, alpha=alpha, zdim=zdim)


def random_certificate(
    rng: np.random.Generator, domain: int, codomain: int, zdim: int, alpha: float
) -> FactorizationCertificate:
    def cn(*shape):
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)

    A, B = cn(2 * zdim, domain), cn(codomain, 2 * zdim)
    return FactorizationCertificate(T=B @ A, A=A, B=B, alpha=alpha, zdim=zdim)


def compose_certificate(R, c: FactorizationCertificate, S) -> FactorizationCertificate:
    """Certificate for R T S with A' = A S and B' = R B."""
    R, S = as_operator(R), as_operator(S)
    if R.shape[1] != c.codomain_dim:
        raise ShapeError(f"R has {R.shape[1]} columns, T has {c.codomain_dim} rows")
    if S.shape[0] != c.domain_dim:
        raise ShapeError(f"S has {S.shape[0]} rows, T has {c.domain_dim} columns")
    return FactorizationCertificate(
        T=R @ c.T @ S, A=c.A @ S, B=R @ c.B, alpha=c.alpha, zdim=c.zdim
    )


def interleave_matrix(n1: int, n2: int) -> np.ndarray:
    """Permutation P taking (x1, y1, x2, y2) to the merged point (x, y) of half-length n1+n2.

    x and y are each interleaved with the same coordinate rule as u_merge.
    """
    order = interleave_order(n1, n2)
    n = n1 + n2
    # position of x1, x2, y1, y2 blocks inside the stacked vector (x1, y1, x2, y2)
    x_src = np.concatenate([np.arange(n1), 2 * n1 + np.arange(n2)])
    y_src = np.concatenate([n1 + np.arange(n1), 2 * n1 + n2 + np.arange(n2)])
    src = np.concatenate([x_src[order], y_src[order]])
    P = np.zeros((2 * n, 2 * n))
    P[np.arange(2 * n), src] = 1.0
    return P


def sum_certificate(c1: FactorizationCertificate, c2: FactorizationCertificate) -> FactorizationCertificate:
    """Certificate for T1 + T2 through a single section of half-length zdim1 + zdim2.

    x goes to (A1 x, A2 x) in the direct sum of the two sections, the
    interleaving permutation P lands it in one section, and B' = [B1 B2] P^T
    undoes the interleaving before summing.
    """
    if c1.alpha != c2.alpha:
        raise ShapeError(f"alpha mismatch: {c1.alpha} vs {c2.alpha}")
    if c1.T.shape != c2.T.shape:
        raise ShapeError(f"operators have different shapes: {c1.T.shape} vs {c2.T.shape}")
    P = interleave_matrix(c1.zdim, c2.zdim)
    A = P @ np.vstack([c1.A, c2.A])
    B = np.hstack([c1.B, c2.B]) @ P.T
    return FactorizationCertificate(
        T=c1.T + c2.T, A=A, B=B, alpha=c1.alpha, zdim=c1.zdim + c2.zdim
    )


def conjugate_certificate(c: FactorizationCertificate) -> FactorizationCertificate:
    """Entrywise conjugate; the through-space becomes the section of Z_{-alpha}."""
    return FactorizationCertificate(
        T=np.conj(c.T), A=np.conj(c.A), B=np.conj(c.B), alpha=-c.alpha, zdim=c.zdim
    )
