"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Every check
takes an explicit relative tolerance ``tol`` that is scaled by ``1 + norm``
of the input it is applied to.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import InputError

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "ClosureRule",
    "HermitianEigen",
    "SubspaceBasis",
    "as_matrix",
    "dagger",
    "herm_eig",
    "hermitian_residual",
    "is_positive",
    "matrix_root",
    "numerical_rank",
    "op_norm",
    "orthonormal_basis",
    "saturate_span",
]


def as_matrix(M, name="matrix") -> np.ndarray:
    """Return ``M`` as a finite 2-d complex array or raise InputError."""
    try:
        arr = np.asarray(M, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric array ({exc})") from exc
    if arr.ndim != 2:
        raise InputError(f"{name}: expected a 2-d array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: contains NaN or Inf entries")
    return arr


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(M, -1, -2))


def op_norm(M) -> float:
    """Largest singular value of ``M``."""
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def hermitian_residual(M: np.ndarray) -> float:
    """``||M - M^dagger||`` relative to ``1 + ||M||``."""
    return op_norm(M - dagger(M)) / (1.0 + op_norm(M))


def numerical_rank(M: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Rank decided by singular values against ``tol * (1 + sigma_max)``."""
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > tol * (1.0 + s[0])))


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ dagger(V)


def herm_eig(M, tol: float = DEFAULT_TOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise InputError(f"herm_eig: matrix must be square, got {M.shape}")
    if hermitian_residual(M) > tol:
        raise InputError("herm_eig: matrix is not Hermitian within tolerance")
    H = 0.5 * (M + dagger(M))
    w, V = np.linalg.eigh(H)
    return HermitianEigen(w, V)


def is_positive(M, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``M`` is Hermitian with spectrum bounded below by ``-tol``."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise InputError(f"is_positive: matrix must be square, got {M.shape}")
    if M.size == 0:
        return True
    scale = 1.0 + op_norm(M)
    if op_norm(M - dagger(M)) > tol * scale:
        return False
    w = np.linalg.eigvalsh(0.5 * (M + dagger(M)))
    return bool(w[0] >= -tol * scale)


def matrix_root(P: np.ndarray, power: float = 0.5) -> np.ndarray:
    """``P**power`` for a Hermitian positive definite ``P``."""
    w, V = np.linalg.eigh(0.5 * (P + dagger(P)))
    if w[0] <= 0:
        raise InputError("matrix_root: matrix is not positive definite")
    return (V * w**power) @ dagger(V)


@dataclass(frozen=True)
class SubspaceBasis:
    """Trace-orthonormal basis of a subspace of ``rows x cols`` matrices.

    ``basis`` has shape ``(k, rows, cols)``; ``k == 0`` is the zero space.
    """

    rows: int
    cols: int
    basis: np.ndarray

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    @property
    def _flat(self) -> np.ndarray:
        return self.basis.reshape(self.dim, self.rows * self.cols)

    def coords(self, X: np.ndarray) -> np.ndarray:
        """Trace-pairing coordinates of ``X`` (or a stack of matrices)."""
        X = np.asarray(X, dtype=complex)
        flat = X.reshape(X.shape[:-2] + (X.shape[-2] * X.shape[-1],))
        return flat @ np.conj(self._flat).T

    def element(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=complex)
        if self.dim == 0:
            return np.zeros(coeffs.shape[:-1] + self.shape, dtype=complex)
        return np.tensordot(coeffs, self.basis, axes=(-1, 0))

    def project(self, X: np.ndarray) -> np.ndarray:
        return self.element(self.coords(X))

    def residual(self, X: np.ndarray) -> float:
        """Distance of ``X`` from the span, relative to ``1 + ||X||``."""
        X = np.asarray(X, dtype=complex)
        return op_norm(X - self.project(X)) / (1.0 + op_norm(X))

    def contains(self, X: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        return self.residual(X) <= tol

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return self.element(c / np.sqrt(2.0))

    def same_span(self, other: "SubspaceBasis", tol: float = DEFAULT_TOL) -> bool:
        if self.shape != other.shape or self.dim != other.dim:
            return False
        return all(other.contains(b, tol) for b in self.basis)


def orthonormal_basis(
    mats: Iterable[np.ndarray], shape: Sequence[int], tol: float = DEFAULT_TOL
) -> SubspaceBasis:
    """Trace-orthonormal basis for the span of ``mats`` (rank via SVD)."""
    rows, cols = int(shape[0]), int(shape[1])
    mats = [np.asarray(m, dtype=complex) for m in mats]
    for m in mats:
        if m.shape != (rows, cols):
            raise InputError(f"expected {rows}x{cols} matrices, got {m.shape}")
    if not mats or rows * cols == 0:
        return SubspaceBasis(rows, cols, np.zeros((0, rows, cols), dtype=complex))
    A = np.stack([m.reshape(-1) for m in mats], axis=1)
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    r = int(np.sum(s > tol * (1.0 + s[0])))
    B = U[:, :r].T.reshape(r, rows, cols)
    return SubspaceBasis(rows, cols, _canonical_phase(B))


def _canonical_phase(B: np.ndarray) -> np.ndarray:
    # fix each element's phase so its largest entry is real positive
    if B.size == 0:
        return B
    flat = B.reshape(B.shape[0], -1)
    idx = np.argmax(np.abs(flat), axis=1)
    piv = flat[np.arange(flat.shape[0]), idx]
    phase = piv / np.abs(piv)
    return B * np.conj(phase)[:, None, None]


@dataclass(frozen=True)
class ClosureRule:
    """Which operations the saturated span must be closed under.

    ``involution`` maps a matrix to its adjoint-like image; ``None`` means
    no involution closure.  ``unit`` adds the identity.
    """

    multiply: bool = True
    involution: Optional[Callable[[np.ndarray], np.ndarray]] = None
    unit: bool = True

    @classmethod
    def star_algebra(cls, involution=dagger) -> "ClosureRule":
        return cls(multiply=True, involution=involution, unit=True)


def saturate_span(
    seed: Sequence[np.ndarray],
    products: ClosureRule = ClosureRule(involution=dagger),
    tol: float = DEFAULT_TOL,
    shape: Optional[Sequence[int]] = None,
) -> SubspaceBasis:
    """Smallest subspace containing ``seed`` closed under ``products``.

    Terminates because every round either adds a dimension or stops, and the
    dimension is bounded by ``rows * cols``.
    """
    seed = [as_matrix(s, "seed") for s in seed]
    if shape is None:
        if not seed:
            raise InputError("saturate_span: empty seed needs an explicit shape")
        shape = seed[0].shape
    rows, cols = int(shape[0]), int(shape[1])
    if any(s.shape != (rows, cols) for s in seed):
        raise InputError("saturate_span: seeds do not share one ambient shape")
    if (products.multiply or products.unit) and rows != cols:
        raise InputError("saturate_span: multiplication and unit need square seeds")

    candidates = list(seed)
    if products.unit:
        candidates.append(np.eye(rows, dtype=complex))
    if products.involution is not None:
        candidates += [products.involution(s) for s in seed]
    span = orthonormal_basis(candidates, (rows, cols), tol)
    pending = list(span.basis)
    while pending:
        batch, pending = np.stack(pending[:8]), pending[8:]
        fresh = []
        if products.multiply:
            fresh.append(np.einsum("aij,bjk->abik", batch, span.basis).reshape(-1, rows, cols))
            fresh.append(np.einsum("aij,bjk->abik", span.basis, batch).reshape(-1, rows, cols))
        if products.involution is not None:
            fresh.append(np.stack([products.involution(b) for b in batch]))
        if not fresh:
            break
        F = np.concatenate(fresh)
        F = F - span.element(span.coords(F))
        norms = np.linalg.norm(F.reshape(len(F), -1), axis=1)
        keep = F[norms > tol * (1.0 + norms.max())]
        if not len(keep):
            continue
        extra = orthonormal_basis(keep, (rows, cols), tol)
        if extra.dim == 0:
            continue
        # second projection pass keeps the merged basis orthonormal
        E = extra.basis - span.element(span.coords(extra.basis))
        extra = orthonormal_basis(E, (rows, cols), tol)
        span = SubspaceBasis(rows, cols, np.concatenate([span.basis, extra.basis]))
        pending.extend(extra.basis)
    return orthonormal_basis(span.basis, (rows, cols), tol)
