"""Seeded generators for random Krein spaces, algebras, categories and states.

Categories are sector structured: object ``A`` carries ``sum_s C^{n(A,s)} (x) C^{m_s}``
and ``Hom(A, B)`` is every ``(+)_s X_s (x) I_{m_s}``.  This covers full matrix
algebras, direct sums and amplifications, and every finite C*-category of
operators arises this way up to a change of basis.
"""
from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np
import scipy.linalg

from .cstar_category import CategoryObject, OperatorCategory
from .involution import AdSymmetry, SandwichInvolution
from .krein_space import KreinSpace, canonical_decomposition
from .matrix_core import SubspaceBasis, orthonormal_basis
from .star_algebra import MatrixStarAlgebra

__all__ = [
    "random_cstar_category",
    "random_g_unitary",
    "random_gram",
    "random_krein_algebra",
    "random_krein_category",
    "random_krein_space",
    "random_state",
    "random_symmetry",
    "random_unit",
]


def _cplx(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unit(rng, n):
    v = _cplx(rng, n)
    return v / np.linalg.norm(v)


def random_gram(rng, n: int, n_plus: Optional[int] = None) -> np.ndarray:
    """``T D T^dagger`` with ``D`` of signature ``(n_plus, n - n_plus)``."""
    if n_plus is None:
        n_plus = int(rng.integers(0, n + 1))
    d = rng.uniform(0.5, 2.0, n) * np.array([1.0] * n_plus + [-1.0] * (n - n_plus))
    T = np.eye(n) + 0.4 * _cplx(rng, n, n) / np.sqrt(n)
    G = T @ np.diag(d) @ T.conj().T
    return 0.5 * (G + G.conj().T)


def random_krein_space(rng, dims=(2, 6), mixed=True) -> KreinSpace:
    n = int(rng.integers(dims[0], dims[1] + 1))
    n_plus = int(rng.integers(1, n)) if mixed and n > 1 else None
    return KreinSpace(random_gram(rng, n, n_plus))


def random_g_unitary(rng, space: KreinSpace, scale: float = 0.5) -> np.ndarray:
    """``expm(G^-1 A)`` with ``A`` anti-Hermitian, so ``S^dagger G S = G``."""
    H = _cplx(rng, space.dim, space.dim)
    A = scale * 0.5 * (H - H.conj().T) / np.sqrt(space.dim)
    return scipy.linalg.expm(np.linalg.solve(space.gram, A))


def random_symmetry(rng, space: KreinSpace, scale: float = 0.5) -> np.ndarray:
    """A non-canonical fundamental symmetry ``S J S^-1``."""
    J = canonical_decomposition(space).J
    S = random_g_unitary(rng, space, scale)
    return S @ J @ np.linalg.inv(S)


def _sector_layout(rng, n_objects, max_dim, n_sectors):
    while True:
        mult = rng.integers(1, 3, n_sectors)
        counts = rng.integers(0, 3, (n_objects, n_sectors))
        dims = counts @ mult
        if np.all(dims >= 1) and np.all(dims <= max_dim):
            return mult, counts


def _sector_homs(mult, counts):
    """Unnormalised basis of block-diagonal sector morphisms for every pair."""
    n_objects, n_sectors = counts.shape
    offs = np.zeros((n_objects, n_sectors + 1), dtype=int)
    offs[:, 1:] = np.cumsum(counts * mult, axis=1)
    homs = {}
    for a in range(n_objects):
        for b in range(n_objects):
            mats = []
            for s in range(n_sectors):
                for i in range(counts[b, s]):
                    for j in range(counts[a, s]):
                        E = np.zeros((offs[b, -1], offs[a, -1]), dtype=complex)
                        unit = np.zeros((counts[b, s], counts[a, s]))
                        unit[i, j] = 1.0
                        E[offs[b, s]:offs[b, s + 1], offs[a, s]:offs[a, s + 1]] = np.kron(unit, np.eye(mult[s]))
                        mats.append(E)
            homs[(a, b)] = mats
    return homs, offs


def _conjugators(rng, dims, conjugate):
    if not conjugate:
        return [np.eye(d, dtype=complex) for d in dims]
    return [np.eye(d) + 0.3 * _cplx(rng, d, d) / np.sqrt(d) for d in dims]


def _build(rng, n_objects, max_dim, n_sectors, conjugate, signs):
    mult, counts = _sector_layout(rng, n_objects, max_dim, n_sectors)
    raw, offs = _sector_homs(mult, counts)
    dims = [int(offs[a, -1]) for a in range(n_objects)]
    T = _conjugators(rng, dims, conjugate)
    Ti = [np.linalg.inv(t) for t in T]
    homs = {}
    for (a, b), mats in raw.items():
        mats = [T[b] @ m @ Ti[a] for m in mats]
        homs[(a, b)] = orthonormal_basis(mats, (dims[b], dims[a])) if mats else \
            SubspaceBasis(dims[b], dims[a], np.zeros((0, dims[b], dims[a]), dtype=complex))
    signature = []
    for a in range(n_objects):
        diag = []
        for s in range(n_sectors):
            sgn = rng.choice([1.0, -1.0], counts[a, s]) if signs else np.ones(counts[a, s])
            diag.append(np.repeat(sgn, mult[s]))
        signature.append(np.diag(np.concatenate(diag)).astype(complex))
    metrics = [Ti[a].conj().T @ Ti[a] for a in range(n_objects)]
    return dims, homs, T, Ti, signature, metrics


def random_cstar_category(rng, n_objects: int = 2, max_dim: int = 5, n_sectors: int = 2,
                          conjugate: bool = True) -> OperatorCategory:
    """Random finite C*-category with Hilbert adjoints in a random metric."""
    dims, homs, T, Ti, _, metrics = _build(rng, n_objects, max_dim, n_sectors, conjugate, False)
    objs = [CategoryObject(f"A{a}", dims[a], metrics[a]) for a in range(n_objects)]
    return OperatorCategory(objs, homs, SandwichInvolution.hilbert(dims, metrics), "adjoint")


def random_krein_category(rng, n_objects: int = 2, max_dim: int = 5, n_sectors: int = 2,
                          conjugate: bool = True):
    """Random Krein C*-category: Krein adjoints of sector-diagonal grams, ``alpha = Ad J``.

    Returns ``(category, alpha)``.
    """
    dims, homs, T, Ti, sig, metrics = _build(rng, n_objects, max_dim, n_sectors, conjugate, True)
    grams = [Ti[a].conj().T @ sig[a] @ Ti[a] for a in range(n_objects)]
    grams = [0.5 * (G + G.conj().T) for G in grams]
    Js = tuple(T[a] @ sig[a] @ Ti[a] for a in range(n_objects))
    objs = [CategoryObject(f"K{a}", dims[a], metrics[a], grams[a]) for a in range(n_objects)]
    cat = OperatorCategory(objs, homs, SandwichInvolution.krein(grams), "krein")
    return cat, AdSymmetry(Js, Js)


def random_krein_algebra(rng, max_dim: int = 5, n_sectors: int = 2, conjugate: bool = True):
    """One-object case of :func:`random_krein_category`; returns ``(algebra, alpha)``."""
    cat, alpha = random_krein_category(rng, 1, max_dim, n_sectors, conjugate)
    return cat.diagonal_algebra(0), alpha


def random_state(rng, cat: OperatorCategory, kind: str = "vector"):
    from .gns_repr import convex_state, trace_state, vector_state

    if kind == "trace":
        return trace_state(cat)
    if kind == "vector":
        return vector_state(cat, [_cplx(rng, o.dim) for o in cat.objects])
    if kind == "convex":
        parts = [vector_state(cat, [_cplx(rng, o.dim) for o in cat.objects]) for _ in range(2)]
        parts.append(trace_state(cat))
        w = rng.dirichlet(np.ones(len(parts)))
        return convex_state(parts, w)
    raise ValueError(f"unknown state kind {kind!r}")
