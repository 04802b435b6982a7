"""Finite-dimensional Krein spaces given by Hermitian invertible Gram forms.

The indefinite inner product is ``<x, y> = x^dagger @ gram @ y`` (linear in
the second slot).  Fundamental symmetries are derived from the Gram form,
never stored with the space.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg

from .errors import ConstructionError, InputError
from .matrix_core import DEFAULT_TOL, as_matrix, dagger, op_norm

__all__ = [
    "FundamentalDecomposition",
    "KreinSpace",
    "all_symmetry_check",
    "canonical_decomposition",
    "decomposition_from_symmetry",
    "decomposition_residuals",
    "j_norm",
    "krein_adjoint",
    "norm_equivalence",
    "symmetry_residuals",
]


@dataclass(frozen=True)
class KreinSpace:
    """A dimension plus a Hermitian, invertible Gram form."""

    gram: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        G = as_matrix(self.gram, "gram")
        if G.shape[0] != G.shape[1]:
            raise InputError(f"gram must be square, got {G.shape}")
        scale = 1.0 + op_norm(G)
        if op_norm(G - dagger(G)) > self.tol * scale:
            raise InputError("gram is not Hermitian")
        G = 0.5 * (G + dagger(G))
        if G.shape[0] and np.min(np.abs(np.linalg.eigvalsh(G))) < self.tol * scale:
            raise InputError("gram is singular (an eigenvalue is within tol of zero)")
        G.setflags(write=False)
        object.__setattr__(self, "gram", G)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def inner(self, x, y) -> complex:
        return complex(np.conj(x) @ self.gram @ y)

    @classmethod
    def signature_form(cls, n_plus: int, n_minus: int) -> "KreinSpace":
        return cls(np.diag([1.0] * n_plus + [-1.0] * n_minus).astype(complex))


@dataclass(frozen=True)
class FundamentalDecomposition:
    J: np.ndarray
    p_plus: np.ndarray
    p_minus: np.ndarray
    signature: Tuple[int, int]


def canonical_decomposition(space: KreinSpace, tol: float = DEFAULT_TOL) -> FundamentalDecomposition:
    """Spectral sign decomposition of the Gram form."""
    w, V = np.linalg.eigh(space.gram)
    scale = 1.0 + op_norm(space.gram)
    if space.dim and np.min(np.abs(w)) < tol * scale:
        raise InputError("canonical_decomposition: gram is singular")
    pos, neg = V[:, w > 0], V[:, w < 0]
    p_plus = pos @ dagger(pos)
    p_minus = neg @ dagger(neg)
    return FundamentalDecomposition(p_plus - p_minus, p_plus, p_minus, (pos.shape[1], neg.shape[1]))


def symmetry_residuals(space: KreinSpace, J) -> Dict[str, float]:
    """Residuals of the three defining conditions of a fundamental symmetry.

    ``positivity`` is ``-min eig(gram @ J)`` relative to scale; it is
    non-positive exactly when the J-inner product is positive definite.
    """
    J = as_matrix(J, "J")
    G = space.gram
    n = space.dim
    if J.shape != (n, n):
        raise InputError(f"symmetry has shape {J.shape}, expected {(n, n)}")
    I = np.eye(n)
    scale = 1.0 + op_norm(J)
    GJ = G @ J
    herm = op_norm(GJ - dagger(GJ)) / (1.0 + op_norm(GJ))
    w = np.linalg.eigvalsh(0.5 * (GJ + dagger(GJ))) if n else np.array([1.0])
    return {
        "involutive": op_norm(J @ J - I) / scale**2,
        "gram_self_adjoint": op_norm(np.linalg.solve(G, dagger(J) @ G) - J) / scale,
        "j_inner_hermitian": herm,
        "j_inner_positive": float(-w[0] / (1.0 + op_norm(GJ))),
    }


def all_symmetry_check(space: KreinSpace, J_candidate, tol: float = DEFAULT_TOL) -> bool:
    r = symmetry_residuals(space, J_candidate)
    return (
        r["involutive"] <= tol
        and r["gram_self_adjoint"] <= tol
        and r["j_inner_hermitian"] <= tol
        and r["j_inner_positive"] < -tol
    )


def decomposition_from_symmetry(space: KreinSpace, J, tol: float = DEFAULT_TOL) -> FundamentalDecomposition:
    if not all_symmetry_check(space, J, tol):
        raise InputError("not a fundamental symmetry of this Krein space")
    J = as_matrix(J)
    I = np.eye(space.dim)
    p_plus, p_minus = 0.5 * (I + J), 0.5 * (I - J)
    n_plus = int(round(np.trace(p_plus).real))
    return FundamentalDecomposition(J, p_plus, p_minus, (n_plus, space.dim - n_plus))


def decomposition_residuals(space: KreinSpace, d: FundamentalDecomposition) -> Dict[str, float]:
    G, I = space.gram, np.eye(space.dim)
    r = symmetry_residuals(space, d.J)
    r.update(
        {
            "j_is_difference": op_norm(d.J - (d.p_plus - d.p_minus)),
            "projections_sum": op_norm(d.p_plus + d.p_minus - I),
            "p_plus_idempotent": op_norm(d.p_plus @ d.p_plus - d.p_plus),
            "p_minus_idempotent": op_norm(d.p_minus @ d.p_minus - d.p_minus),
            "projections_annihilate": op_norm(d.p_plus @ d.p_minus),
            "gram_orthogonal": op_norm(dagger(d.p_plus) @ G @ d.p_minus) / (1.0 + op_norm(G)),
        }
    )
    return r


def krein_adjoint(T, domain: KreinSpace, codomain: KreinSpace) -> np.ndarray:
    """``gram_domain^-1 @ T^dagger @ gram_codomain``."""
    T = as_matrix(T, "T")
    if T.shape != (codomain.dim, domain.dim):
        raise InputError(
            f"operator has shape {T.shape}, expected {(codomain.dim, domain.dim)}"
        )
    return np.linalg.solve(domain.gram, dagger(T) @ codomain.gram)


def j_norm(x, decomp: FundamentalDecomposition, space: KreinSpace, tol: float = DEFAULT_TOL) -> float:
    """Norm of ``x`` in the Hilbert space associated with ``decomp.J``."""
    if not all_symmetry_check(space, decomp.J, tol):
        raise InputError("j_norm: decomposition is not valid for this space")
    x = np.asarray(x, dtype=complex)
    return float(np.sqrt(max((np.conj(x) @ space.gram @ decomp.J @ x).real, 0.0)))


def norm_equivalence(
    space: KreinSpace,
    J1,
    J2,
    samples: int = 200,
    tol: float = DEFAULT_TOL,
    seed: Optional[int] = 0,
) -> Tuple[float, float]:
    """Constants ``(c, C)`` with ``c |x|_J2 <= |x|_J1 <= C |x|_J2``.

    They are the square roots of the extreme generalized eigenvalues of the
    pencil ``(gram J1, gram J2)``; ``samples`` random vectors re-check them.
    """
    for J in (J1, J2):
        if not all_symmetry_check(space, J, tol):
            raise InputError("norm_equivalence: candidate is not a fundamental symmetry")
    A = space.gram @ as_matrix(J1)
    B = space.gram @ as_matrix(J2)
    A, B = 0.5 * (A + dagger(A)), 0.5 * (B + dagger(B))
    w = scipy.linalg.eigh(A, B, eigvals_only=True)
    c, C = float(np.sqrt(w[0])), float(np.sqrt(w[-1]))

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
        n1 = np.sqrt((np.conj(x) @ A @ x).real)
        n2 = np.sqrt((np.conj(x) @ B @ x).real)
        if n1 > C * n2 * (1 + tol) or n1 < c * n2 * (1 - tol):
            raise ConstructionError("norm_equivalence: sampled vector violates bounds", x)
    return c, C
