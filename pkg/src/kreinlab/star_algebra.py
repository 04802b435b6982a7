"""Concrete matrix *-algebras with an involutive symmetry automorphism.

An algebra is a unital subspace of ``n x n`` matrices closed under
multiplication and a chosen involution.  Norms are operator norms on the
ambient Hilbert space ``(C^n, metric)``; the default metric is the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from .errors import InputError
from .involution import AdSymmetry, LinearSymmetry, SandwichInvolution, twist
from .krein_space import KreinSpace, canonical_decomposition
from .matrix_core import (
    DEFAULT_TOL,
    ClosureRule,
    SubspaceBasis,
    as_matrix,
    matrix_root,
    orthonormal_basis,
    saturate_span,
)
from .report import Report, Worst

__all__ = [
    "MatrixStarAlgebra",
    "algebra_from_generators",
    "even_odd_split",
    "full_matrix_algebra",
    "krein_operator_algebra",
    "linear_symmetry",
    "positivity_residual",
    "stack_norms",
    "symmetry_residuals",
    "twist_involution",
    "verify_cstar_algebra",
    "verify_krein_cstar",
]


def stack_norms(X: np.ndarray) -> np.ndarray:
    """Operator norms of a stack of matrices."""
    if X.shape[-1] == 0 or X.shape[-2] == 0:
        return np.zeros(X.shape[:-2])
    return np.linalg.norm(X, ord=2, axis=(-2, -1))


def positivity_residual(h: np.ndarray, star, root=None, root_inv=None) -> float:
    """How far ``h`` is from being positive for the involution ``star``.

    Zero (up to rounding) iff ``star(h) == h`` and the spectrum of ``h`` is
    real and non-negative.  ``root``/``root_inv`` conjugate into the metric
    frame where the spectrum is computed more accurately.
    """
    if h.size == 0:
        return 0.0
    hn = float(np.linalg.norm(h, 2))
    scale = 1.0 + hn
    herm = float(np.linalg.norm(star(h) - h, 2)) / scale
    hm = h if root is None else root @ h @ root_inv
    ev = np.linalg.eigvals(hm)
    imag = float(np.max(np.abs(ev.imag))) / scale
    neg = max(0.0, -float(np.min(ev.real))) / scale
    return max(herm, imag, neg)


@dataclass(frozen=True)
class MatrixStarAlgebra:
    basis: SubspaceBasis
    involution: object = None
    metric: Optional[np.ndarray] = None
    tag: str = "adjoint"
    gram: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self):
        if self.basis.rows != self.basis.cols:
            raise InputError("algebra basis must consist of square matrices")
        if self.involution is None:
            object.__setattr__(
                self, "involution", SandwichInvolution.hilbert([self.ambient_dim], None if self.metric is None else [self.metric])
            )

    @property
    def ambient_dim(self) -> int:
        return self.basis.rows

    @property
    def dim(self) -> int:
        return self.basis.dim

    @property
    def unit(self) -> np.ndarray:
        return np.eye(self.ambient_dim, dtype=complex)

    @cached_property
    def _roots(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.metric is None:
            I = np.eye(self.ambient_dim, dtype=complex)
            return I, I
        return matrix_root(self.metric, 0.5), matrix_root(self.metric, -0.5)

    def star(self, x):
        return self.involution(x, 0, 0)

    def norm(self, x) -> float:
        return float(self.norms(np.asarray(x)[None])[0])

    def norms(self, X: np.ndarray) -> np.ndarray:
        R, Ri = self._roots
        return stack_norms(R @ X @ Ri)

    def contains(self, x, tol=DEFAULT_TOL) -> bool:
        return self.basis.contains(x, tol)

    def random_element(self, rng) -> np.ndarray:
        return self.basis.random_element(rng)

    def with_involution(self, involution, tag) -> "MatrixStarAlgebra":
        return replace(self, involution=involution, tag=tag)

    def structure_residuals(self) -> dict:
        """Unit, product and involution closure residuals of the span."""
        B = self.basis.basis
        out = {"unit": self.basis.residual(self.unit)}
        prods = np.einsum("aij,bjk->abik", B, B).reshape(-1, self.ambient_dim, self.ambient_dim)
        out["product_closed"] = _max_span_residual(self.basis, prods)
        out["involution_closed"] = _max_span_residual(self.basis, self.star(B))
        out["involutive"] = _max_rel(self.star(self.star(B)) - B, B)
        return out


def _max_span_residual(basis: SubspaceBasis, X: np.ndarray) -> float:
    if len(X) == 0:
        return 0.0
    R = X - basis.element(basis.coords(X))
    return float(np.max(stack_norms(R) / (1.0 + stack_norms(X))))


def _max_rel(diff: np.ndarray, ref: np.ndarray) -> float:
    if len(diff) == 0:
        return 0.0
    return float(np.max(stack_norms(diff) / (1.0 + stack_norms(ref))))


def _resolve_involution(n, involution, metric):
    """Return ``(involution, metric, tag, gram)`` for the accepted spellings."""
    if involution is None or involution == "adjoint":
        inv = SandwichInvolution.hilbert([n], None if metric is None else [metric])
        return inv, metric, "adjoint", None
    if isinstance(involution, KreinSpace):
        if involution.dim != n:
            raise InputError("Krein space dimension does not match the ambient dimension")
        if metric is None:
            metric = involution.gram @ canonical_decomposition(involution).J
            metric = 0.5 * (metric + metric.conj().T)
        return SandwichInvolution.krein([involution.gram]), metric, "krein", involution.gram
    if callable(involution):
        return involution, metric, getattr(involution, "tag", "custom"), None
    raise InputError(f"unknown involution {involution!r}")


def algebra_from_generators(
    ambient_dim: int,
    generators,
    involution="adjoint",
    tol: float = DEFAULT_TOL,
    metric=None,
) -> MatrixStarAlgebra:
    """Smallest unital algebra containing ``generators`` closed under the involution.

    ``involution`` is ``"adjoint"`` (Hilbert adjoint for ``metric``), a
    :class:`KreinSpace` (Krein adjoint; the metric defaults to
    ``gram @ J`` for the canonical ``J``), or any callable ``(x, src, dst)``.
    """
    n = int(ambient_dim)
    gens = [as_matrix(g, "generator") for g in generators]
    for g in gens:
        if g.shape != (n, n):
            raise InputError(f"generator has shape {g.shape}, expected {(n, n)}")
    inv, metric, tag, gram = _resolve_involution(n, involution, metric)
    rule = ClosureRule(multiply=True, involution=lambda x: inv(x, 0, 0), unit=True)
    basis = saturate_span(gens, rule, tol, shape=(n, n))
    return MatrixStarAlgebra(basis, inv, metric, tag, gram)


def full_matrix_algebra(n: int, involution="adjoint", metric=None) -> MatrixStarAlgebra:
    units = np.zeros((n * n, n, n), dtype=complex)
    for k in range(n * n):
        units[k].flat[k] = 1.0
    inv, metric, tag, gram = _resolve_involution(n, involution, metric)
    return MatrixStarAlgebra(SubspaceBasis(n, n, units), inv, metric, tag, gram)


def krein_operator_algebra(space: KreinSpace, J=None, tol: float = DEFAULT_TOL):
    """``B(K)`` with its Krein adjoint and the symmetry ``Ad_J``.

    The norm is the operator norm of the Hilbert space ``|K|_J``.
    """
    if J is None:
        J = canonical_decomposition(space, tol).J
    J = as_matrix(J, "J")
    metric = space.gram @ J
    metric = 0.5 * (metric + metric.conj().T)
    alg = full_matrix_algebra(space.dim, space, metric)
    return alg, AdSymmetry((J,))


def symmetry_residuals(algebra: MatrixStarAlgebra, alpha) -> dict:
    """Residuals that make ``alpha`` a unital involutive *-automorphism."""
    B = algebra.basis.basis
    n = algebra.ambient_dim
    aB = alpha(B, 0, 0)
    out = {
        "alpha_preserves_span": _max_span_residual(algebra.basis, aB),
        "alpha_involutive": _max_rel(alpha(aB, 0, 0) - B, B),
        "alpha_unital": float(np.linalg.norm(alpha(algebra.unit, 0, 0) - algebra.unit, 2)),
        "alpha_star_preserving": _max_rel(alpha(algebra.star(B), 0, 0) - algebra.star(aB), B),
    }
    prods = np.einsum("aij,bjk->abik", B, B).reshape(-1, n, n)
    aprods = np.einsum("aij,bjk->abik", aB, aB).reshape(-1, n, n)
    out["alpha_multiplicative"] = _max_rel(alpha(prods, 0, 0) - aprods, prods)
    return out


def _sample_elements(basis: SubspaceBasis, samples: int, rng) -> np.ndarray:
    if basis.dim == 0:
        return np.zeros((0,) + basis.shape, dtype=complex)
    c = rng.standard_normal((samples, basis.dim)) + 1j * rng.standard_normal((samples, basis.dim))
    return np.concatenate([basis.basis, basis.element(c / np.sqrt(2.0))])


def _identity_and_positivity(report, algebra, X, twisted, tol, prefix=""):
    """C*-identity and positivity of ``twisted(x) @ x`` for each ``x`` in ``X``."""
    H = twisted(X, 0, 0) @ X
    nx = algebra.norms(X)
    nh = algebra.norms(H)
    resid = np.abs(nh - nx**2) / (1.0 + nx**2)
    k = int(np.argmax(resid)) if len(resid) else 0
    report.add(prefix + "cstar_identity", resid.max() if len(resid) else 0.0, tol, X[k] if len(X) else None)
    R, Ri = algebra._roots
    worst = Worst()
    for x, h in zip(X, H):
        worst.update(positivity_residual(h, lambda y: twisted(y, 0, 0), R, Ri), x)
    report.add(prefix + "positivity", worst.value, tol, worst.witness)


def verify_cstar_algebra(
    algebra: MatrixStarAlgebra, samples: int = 200, tol: float = DEFAULT_TOL, seed=0
) -> Report:
    """Ordinary C*-algebra axioms for the algebra's own involution."""
    rng = np.random.default_rng(seed)
    report = Report("cstar-algebra")
    for name, r in algebra.structure_residuals().items():
        report.add(name, r, tol)
    X = _sample_elements(algebra.basis, samples, rng)
    report.add("unit_norm", abs(algebra.norm(algebra.unit) - 1.0), tol)
    _identity_and_positivity(report, algebra, X, algebra.involution, tol)
    return report


def verify_krein_cstar(
    algebra: MatrixStarAlgebra, alpha, samples: int = 200, tol: float = DEFAULT_TOL, seed=0
) -> Report:
    """Check that ``alpha`` is a fundamental symmetry of the algebra.

    Records the automorphism conditions, ``alpha o alpha = id``, the identity
    ``||alpha(x*) x|| = ||x||^2`` and positivity of ``alpha(x*) x`` for the
    twisted involution, on basis elements plus ``samples`` random elements.
    """
    rng = np.random.default_rng(seed)
    report = Report("krein-cstar-algebra")
    for name, r in symmetry_residuals(algebra, alpha).items():
        report.add(name, r, tol)
    X = _sample_elements(algebra.basis, samples, rng)
    twisted = twist(algebra.involution, alpha)
    _identity_and_positivity(report, algebra, X, twisted, tol)
    return report


def _require_involutive(algebra, alpha, tol):
    r = symmetry_residuals(algebra, alpha)
    if r["alpha_preserves_span"] > tol or r["alpha_involutive"] > tol:
        raise InputError("symmetry does not preserve the algebra or is not involutive")


def even_odd_split(algebra: MatrixStarAlgebra, alpha, tol: float = DEFAULT_TOL):
    """Bases of the ``+1`` and ``-1`` eigenspaces of ``alpha``."""
    _require_involutive(algebra, alpha, tol)
    B = algebra.basis.basis
    aB = alpha(B, 0, 0)
    shape = algebra.basis.shape
    return orthonormal_basis(0.5 * (B + aB), shape, tol), orthonormal_basis(0.5 * (B - aB), shape, tol)


def twist_involution(algebra: MatrixStarAlgebra, alpha, tol: float = DEFAULT_TOL) -> MatrixStarAlgebra:
    """Same span with the involution ``x -> alpha(x*)``."""
    _require_involutive(algebra, alpha, tol)
    return algebra.with_involution(twist(algebra.involution, alpha), "twisted")


def linear_symmetry(algebra: MatrixStarAlgebra, alpha) -> LinearSymmetry:
    """Tabulate any symmetry as an explicit map on basis coordinates."""
    return LinearSymmetry.from_function({(0, 0): algebra.basis}, alpha)
