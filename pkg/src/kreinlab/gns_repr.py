"""States on operator categories, GNS, and the Krein Gel'fand-Naimark constructions.

A state value on ``Hom(A, B)`` is stored as the vector ``omega(b_k)`` over
the hom basis, so ``omega(x) = coords(x) @ values``.  For ``x : A -> B`` the
cyclic vectors reproduce ``omega(x) = <xi_B, pi(x) xi_A>``.

The GNS space at ``B`` is the quotient of ``V_B = (+)_C Hom(C, B)`` by the
kernel of ``(y, z) -> omega(y* z)``.  When ``omega`` vanishes off the
diagonal homs this Gram form is block diagonal and ``H_B`` is the orthogonal
sum of the per-hom quotients ``H_{BC}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .cstar_category import (
    CategoryObject,
    OperatorCategory,
    StarFunctor,
    category_from_algebra,
    doubling,
    krein_link,
    twist_category,
    verify_cstar_category,
)
from .errors import ConstructionError, InputError
from .krein_space import KreinSpace, all_symmetry_check
from .involution import SandwichInvolution
from .matrix_core import DEFAULT_TOL, SubspaceBasis, as_matrix, numerical_rank, orthonormal_basis
from .report import Report, Worst
from .star_algebra import MatrixStarAlgebra, stack_norms

__all__ = [
    "CategoryState",
    "GNSRepresentation",
    "KreinRepresentation",
    "convex_state",
    "direct_sum",
    "functional_state",
    "gelfand_naimark",
    "gns",
    "image_category",
    "isometry_residual",
    "represent_krein_algebra",
    "represent_krein_category",
    "representation_functor",
    "trace_state",
    "vector_state",
    "vector_states",
    "verify_representation",
    "verify_state",
]

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CategoryState:
    """Per-hom linear functionals given by their values on the hom bases."""

    category: OperatorCategory
    values: Dict[Pair, np.ndarray]
    label: str = ""

    def __post_init__(self):
        vals = {}
        for key in self.category.pairs():
            dim = self.category.hom(*key).dim
            v = np.asarray(self.values.get(key, np.zeros(dim)), dtype=complex).reshape(-1)
            if v.shape != (dim,):
                raise InputError(f"state values for Hom{key} have length {v.size}, expected {dim}")
            vals[key] = v
        object.__setattr__(self, "values", vals)

    def __call__(self, x, src=0, dst=0):
        return self.category.hom(src, dst).coords(np.asarray(x, dtype=complex)) @ self.values[(src, dst)]


def functional_state(cat: OperatorCategory, functionals: Dict[Pair, np.ndarray], label="") -> CategoryState:
    """``omega(x) = sum(conj(F) * x)`` with one matrix ``F`` per hom-space."""
    vals = {}
    for key, F in functionals.items():
        basis = cat.hom(*key)
        F = as_matrix(F, f"functional Hom{key}")
        if F.shape != basis.shape:
            raise InputError(f"functional for Hom{key} has shape {F.shape}, expected {basis.shape}")
        vals[key] = np.einsum("ij,kij->k", F.conj(), basis.basis)
    return CategoryState(cat, vals, label)


def _unit_vectors(cat: OperatorCategory, vectors) -> List[np.ndarray]:
    out = []
    for a, v in enumerate(vectors):
        obj = cat.objects[a]
        v = np.asarray(v, dtype=complex).reshape(-1)
        if v.shape != (obj.dim,):
            raise InputError(f"vector for object {obj.label} has length {v.size}, expected {obj.dim}")
        P = obj.metric if obj.metric is not None else np.eye(obj.dim)
        n2 = float((v.conj() @ P @ v).real)
        if n2 <= 0:
            raise InputError(f"vector for object {obj.label} is zero")
        out.append(v / np.sqrt(n2))
    return out


def vector_state(cat: OperatorCategory, vectors: Sequence, label="") -> CategoryState:
    """``omega(x) = <xi_B, x xi_A>`` in the object metrics; one vector per object."""
    if len(vectors) != cat.n_objects:
        raise InputError(f"need {cat.n_objects} vectors, got {len(vectors)}")
    xi = _unit_vectors(cat, vectors)
    vals = {}
    for s, d in cat.pairs():
        obj = cat.objects[d]
        P = obj.metric if obj.metric is not None else np.eye(obj.dim)
        vals[(s, d)] = np.einsum("i,ij,kjl,l->k", xi[d].conj(), P, cat.hom(s, d).basis, xi[s])
    return CategoryState(cat, vals, label)


def trace_state(cat: OperatorCategory) -> CategoryState:
    """Normalised trace on the diagonal homs, zero elsewhere."""
    vals = {}
    for a, obj in enumerate(cat.objects):
        B = cat.hom(a, a).basis
        vals[(a, a)] = np.trace(B, axis1=1, axis2=2) / obj.dim
    return CategoryState(cat, vals, "trace")


def convex_state(states: Sequence[CategoryState], weights) -> CategoryState:
    weights = np.asarray(weights, dtype=float)
    if len(weights) != len(states) or np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise InputError("convex_state: weights must be non-negative and sum to one")
    cat = states[0].category
    vals = {k: sum(w * s.values[k] for w, s in zip(weights, states)) for k in cat.pairs()}
    return CategoryState(cat, vals, "convex")


# -- verification -----------------------------------------------------------


def _cross_gram(state: CategoryState, b: int):
    """Gram of ``omega(y* z)`` over the stacked bases of ``Hom(C, b)``, all ``C``."""
    cat = state.category
    blocks, sizes = [], []
    for c in range(cat.n_objects):
        row = []
        Y = cat.hom(c, b).basis
        sY = cat.star(Y, c, b) if len(Y) else Y
        for c2 in range(cat.n_objects):
            Z = cat.hom(c2, b).basis
            if len(Y) == 0 or len(Z) == 0:
                row.append(np.zeros((len(Y), len(Z)), dtype=complex))
                continue
            P = np.einsum("aij,bjk->abik", sY, Z)
            P = P.reshape((-1,) + P.shape[2:])
            row.append(state(P, c2, c).reshape(len(Y), len(Z)))
        blocks.append(row)
        sizes.append(len(Y))
    return np.block(blocks) if sum(sizes) else np.zeros((0, 0), dtype=complex), sizes


def _hom_gram(state: CategoryState, s: int, d: int) -> np.ndarray:
    cat = state.category
    B = cat.hom(s, d).basis
    if len(B) == 0:
        return np.zeros((0, 0), dtype=complex)
    P = np.einsum("aij,bjk->abik", cat.star(B, s, d), B)
    return state(P.reshape((-1,) + P.shape[2:]), s, s).reshape(len(B), len(B))


def _min_eig(G):
    if G.size == 0:
        return 0.0, None
    w, V = np.linalg.eigh(0.5 * (G + G.conj().T))
    return float(w[0]), V[:, 0]


def verify_state(state: CategoryState, tol=DEFAULT_TOL) -> Report:
    """Hermiticity, normalisation, per-hom and cross-object positivity."""
    cat = state.category
    report = Report("state")
    herm, norm, pos, cross = Worst(), Worst(), Worst(), Worst()
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        if len(B) == 0:
            continue
        lhs = state(cat.star(B, s, d), d, s)
        rhs = np.conj(state(B, s, d))
        k = int(np.argmax(np.abs(lhs - rhs)))
        herm.update(abs(lhs[k] - rhs[k]), B[k])
    for a, obj in enumerate(cat.objects):
        I = np.eye(obj.dim, dtype=complex)
        norm.update(abs(state(I, a, a) - 1.0), obj.label)
    for s, d in cat.pairs():
        G = _hom_gram(state, s, d)
        w, v = _min_eig(G)
        if v is not None:
            pos.update(max(0.0, -w) / (1.0 + np.abs(G).max()), cat.hom(s, d).element(v))
    for b in range(cat.n_objects):
        G, sizes = _cross_gram(state, b)
        w, v = _min_eig(G)
        if v is not None:
            parts = np.split(v, np.cumsum(sizes)[:-1])
            wit = [cat.hom(c, b).element(p) for c, p in enumerate(parts)]
            cross.update(max(0.0, -w) / (1.0 + np.abs(G).max()), wit)
    report.add("hermitian", herm.value, tol, herm.witness)
    report.add("normalized", norm.value, tol, norm.witness)
    report.add("positive", pos.value, tol, pos.witness)
    report.add("positive_cross", cross.value, tol, cross.witness)
    return report


# -- representations --------------------------------------------------------


@dataclass
class GNSRepresentation:
    """Linear representation given by the images of every hom basis element.

    ``images[(src, dst)][k]`` is ``pi(b_k)`` as a ``dims[dst] x dims[src]``
    matrix in orthonormal coordinates of the representation spaces.
    """

    category: OperatorCategory
    dims: Tuple[int, ...]
    images: Dict[Pair, np.ndarray]
    xi: Optional[Tuple[np.ndarray, ...]] = None
    state: Optional[CategoryState] = None
    pair_dims: Dict[Pair, int] = field(default_factory=dict)
    null_spaces: Dict[Pair, SubspaceBasis] = field(default_factory=dict)

    def __call__(self, x, src=0, dst=0):
        c = self.category.hom(src, dst).coords(np.asarray(x, dtype=complex))
        return np.tensordot(c, self.images[(src, dst)], axes=([-1], [0]))


def _eig_factor(G, tol):
    w, U = np.linalg.eigh(0.5 * (G + G.conj().T)) if G.size else (np.zeros(0), np.zeros((0, 0)))
    keep = w > tol * (1.0 + (np.abs(w).max() if w.size else 0.0))
    U, w = U[:, keep], w[keep]
    Q = np.sqrt(w)[:, None] * U.conj().T
    R = U / np.sqrt(w)[None, :]
    return Q, R


def _kernel_basis(G, basis: SubspaceBasis, tol) -> SubspaceBasis:
    if G.size == 0:
        return SubspaceBasis(*basis.shape, np.zeros((0,) + basis.shape, dtype=complex))
    w, U = np.linalg.eigh(0.5 * (G + G.conj().T))
    ker = U[:, w <= tol * (1.0 + np.abs(w).max())]
    return SubspaceBasis(*basis.shape, basis.element(ker.T) if ker.size else np.zeros((0,) + basis.shape, dtype=complex))


def gns(state: CategoryState, tol=DEFAULT_TOL) -> GNSRepresentation:
    """GNS representation of a state: quotient, left multiplication, cyclic vectors."""
    report = verify_state(state, tol)
    if not report.passed:
        bad = ", ".join(c.name for c in report.failures())
        raise InputError(f"gns: state fails verification ({bad})")
    cat = state.category
    n = cat.n_objects
    Q, R, offs = [], [], []
    for b in range(n):
        G, sizes = _cross_gram(state, b)
        q, r = _eig_factor(G, tol)
        Q.append(q)
        R.append(r)
        offs.append(np.concatenate([[0], np.cumsum(sizes)]).astype(int))
    images = {}
    for s, d in cat.pairs():
        X = cat.hom(s, d).basis
        # M_x : V_s -> V_d, block for C maps Hom(C, s) into Hom(C, d)
        M = np.zeros((len(X), offs[d][-1], offs[s][-1]), dtype=complex)
        for c in range(n):
            Z = cat.hom(c, s).basis
            if len(X) == 0 or len(Z) == 0:
                continue
            XZ = np.einsum("aij,bjk->abik", X, Z)
            coords = cat.hom(c, d).coords(XZ.reshape((-1,) + XZ.shape[2:])).reshape(len(X), len(Z), cat.hom(c, d).dim)
            M[:, offs[d][c]:offs[d][c + 1], offs[s][c]:offs[s][c + 1]] = coords.transpose(0, 2, 1)
        images[(s, d)] = Q[d] @ M @ R[s]
    xi = []
    for a in range(n):
        e = np.zeros(offs[a][-1], dtype=complex)
        e[offs[a][a]:offs[a][a + 1]] = cat.hom(a, a).coords(np.eye(cat.objects[a].dim, dtype=complex))
        xi.append(Q[a] @ e)
    pair_dims, nulls = {}, {}
    for s, d in cat.pairs():
        G = _hom_gram(state, s, d)
        pair_dims[(s, d)] = numerical_rank(G, tol * (1.0 + np.abs(G).max())) if G.size else 0
        nulls[(s, d)] = _kernel_basis(G, cat.hom(s, d), tol)
    dims = tuple(q.shape[0] for q in Q)
    return GNSRepresentation(cat, dims, images, tuple(xi), state, pair_dims, nulls)


def direct_sum(reps: Sequence[GNSRepresentation]) -> GNSRepresentation:
    """Block-diagonal sum, summands in the given order."""
    cat = reps[0].category
    n = cat.n_objects
    dims = tuple(sum(r.dims[a] for r in reps) for a in range(n))
    images = {}
    for s, d in cat.pairs():
        k = cat.hom(s, d).dim
        out = np.zeros((k, dims[d], dims[s]), dtype=complex)
        r0 = c0 = 0
        for r in reps:
            out[:, r0:r0 + r.dims[d], c0:c0 + r.dims[s]] = r.images[(s, d)]
            r0 += r.dims[d]
            c0 += r.dims[s]
        images[(s, d)] = out
    return GNSRepresentation(cat, dims, images)


def verify_representation(rep: GNSRepresentation, tol=DEFAULT_TOL) -> Report:
    """Multiplicative, *-preserving, unital on bases; reconstruction when a state is attached."""
    cat = rep.category
    report = Report("representation")
    mult, star, unit, recon, norm = Worst(), Worst(), Worst(), Worst(), Worst()
    for i, j, k in product(range(cat.n_objects), repeat=3):
        X, Y = cat.hom(j, k).basis, cat.hom(i, j).basis
        if len(X) == 0 or len(Y) == 0:
            continue
        P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, cat.objects[k].dim, cat.objects[i].dim)
        lhs = rep(P, i, k)
        rhs = np.einsum("aij,bjk->abik", rep.images[(j, k)], rep.images[(i, j)]).reshape(lhs.shape)
        if lhs.size:
            diff = stack_norms(lhs - rhs) / (1.0 + stack_norms(P))
            m = int(np.argmax(diff))
            mult.update(diff[m], (X[m // len(Y)], Y[m % len(Y)]))
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        if len(B) == 0:
            continue
        img = rep.images[(s, d)]
        if img.size:
            diff = stack_norms(rep(cat.star(B, s, d), d, s) - img.conj().transpose(0, 2, 1))
            m = int(np.argmax(diff))
            star.update(diff[m], B[m])
        if rep.xi is not None and rep.state is not None:
            vals = np.einsum("i,kij,j->k", rep.xi[d].conj(), img, rep.xi[s]) if img.size else np.zeros(len(B))
            diff = np.abs(vals - rep.state(B, s, d))
            m = int(np.argmax(diff))
            recon.update(diff[m], B[m])
    for a, obj in enumerate(cat.objects):
        I = np.eye(obj.dim, dtype=complex)
        pi1 = rep(I, a, a)
        unit.update(float(np.abs(pi1 - np.eye(rep.dims[a])).max()) if rep.dims[a] else 0.0, obj.label)
        if rep.xi is not None:
            norm.update(abs(np.linalg.norm(rep.xi[a]) - 1.0), obj.label)
    report.add("multiplicative", mult.value, tol, mult.witness)
    report.add("star_preserving", star.value, tol, star.witness)
    report.add("unital", unit.value, tol, unit.witness)
    if rep.xi is not None:
        report.add("cyclic_normalized", norm.value, tol, norm.witness)
    if rep.state is not None:
        report.add("reconstruction", recon.value, tol, recon.witness)
    return report


def image_category(rep: GNSRepresentation, tol=DEFAULT_TOL) -> OperatorCategory:
    """Operator category spanned by the images ``pi(Hom(A, B))`` with the Hilbert adjoint."""
    cat = rep.category
    objs = [CategoryObject(o.label, d) for o, d in zip(cat.objects, rep.dims)]
    homs = {key: orthonormal_basis(list(img), img.shape[1:], tol) for key, img in rep.images.items()}
    return OperatorCategory(objs, homs, SandwichInvolution.hilbert(rep.dims), "adjoint")


def representation_functor(rep: GNSRepresentation, tol=DEFAULT_TOL) -> StarFunctor:
    """``pi`` as a *-functor onto its image category (identity on objects)."""
    return StarFunctor(rep.category, image_category(rep, tol), tuple(range(rep.category.n_objects)), rep)


def isometry_residual(rep: GNSRepresentation, samples: int = 20, seed=0):
    """Worst ``| ||pi(x)|| - ||x|| | / (1 + ||x||)`` over bases and random elements."""
    cat = rep.category
    rng = np.random.default_rng(seed)
    worst = Worst()
    for s, d in cat.pairs():
        basis = cat.hom(s, d)
        if basis.dim == 0:
            continue
        c = rng.standard_normal((samples, basis.dim)) + 1j * rng.standard_normal((samples, basis.dim))
        X = np.concatenate([basis.basis, basis.element(c)])
        nx = cat.norms(X, s, d)
        npi = stack_norms(rep(X, s, d)) if rep.dims[s] and rep.dims[d] else np.zeros(len(X))
        diff = np.abs(npi - nx) / (1.0 + nx)
        m = int(np.argmax(diff))
        worst.update(diff[m], X[m])
    return worst.value, worst.witness


def vector_states(cat: OperatorCategory, count_per_object: int = 2, seed=0) -> List[CategoryState]:
    """Norm-achieving and random vector states, ordered by (object, state index).

    For object ``A`` the first ``count_per_object`` basis elements of
    ``Hom(A, A)`` contribute their top right singular vector (in the metric
    frame) at ``A``; other objects get random unit vectors.  The family ends
    with ``count_per_object`` fully random states.
    """
    rng = np.random.default_rng(seed)

    def rand(dim):
        return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)

    states = []
    for a, obj in enumerate(cat.objects):
        R, Ri = obj.roots
        for k, b in enumerate(cat.hom(a, a).basis[:count_per_object]):
            _, _, Vh = np.linalg.svd(R @ b @ Ri)
            vecs = [rand(o.dim) for o in cat.objects]
            vecs[a] = Ri @ Vh[0].conj()
            states.append(vector_state(cat, vecs, f"{obj.label}:{k}"))
    for k in range(count_per_object):
        states.append(vector_state(cat, [rand(o.dim) for o in cat.objects], f"random:{k}"))
    return states


def gelfand_naimark(cat: OperatorCategory, tol=DEFAULT_TOL, count_per_object: int = 2,
                    samples: int = 20, seed=0) -> GNSRepresentation:
    """Direct sum of GNS representations of :func:`vector_states`, certified isometric."""
    pre = verify_cstar_category(cat, samples=min(samples, 8), tol=tol, seed=seed)
    if not pre.passed:
        bad = ", ".join(c.name for c in pre.failures())
        raise InputError(f"gelfand_naimark: not a C*-category ({bad})")
    rep = direct_sum([gns(w, tol) for w in vector_states(cat, count_per_object, seed)])
    value, witness = isometry_residual(rep, samples, seed)
    if value > tol:
        raise ConstructionError(f"gelfand_naimark: isometry residual {value:.3e} exceeds tol", witness)
    return rep


# -- Krein representations --------------------------------------------------


@dataclass
class KreinRepresentation:
    """Operators on Krein spaces ``K_A = H_{A+} (+) (-H_{A-})`` with ``J_A = diag(I, -I)``."""

    category: OperatorCategory
    symmetry: object
    spaces: Tuple[KreinSpace, ...]
    J: Tuple[np.ndarray, ...]
    images: Dict[Pair, np.ndarray]
    certificates: Report
    inner: GNSRepresentation
    split: Tuple[Tuple[int, int], ...]
    reduced: bool = False

    def __call__(self, x, src=0, dst=0):
        c = self.category.hom(src, dst).coords(np.asarray(x, dtype=complex))
        return np.tensordot(c, self.images[(src, dst)], axes=([-1], [0]))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(K.dim for K in self.spaces)


def _certify_krein(cat, alpha, images, Js, spaces, tol, rng, samples, block_fn) -> Report:
    report = Report("krein-representation")

    def pi(X, s, d):
        return np.tensordot(cat.hom(s, d).coords(X), images[(s, d)], axes=([-1], [0]))

    tw, kadj, cov, mult, unit, faith, blockf = (Worst() for _ in range(7))
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        if len(B) == 0:
            continue
        img = images[(s, d)]
        Bs = cat.star(B, s, d)
        adj = img.conj().transpose(0, 2, 1)
        scale = 1.0 + stack_norms(img)
        for worst, lhs, rhs in (
            (tw, pi(alpha(Bs, d, s), d, s), adj),
            (kadj, pi(Bs, d, s), Js[s] @ adj @ Js[d]),
            (cov, pi(alpha(B, s, d), s, d), Js[d] @ img @ Js[s]),
        ):
            diff = stack_norms(lhs - rhs) / scale
            m = int(np.argmax(diff))
            worst.update(diff[m], B[m])
        rank = numerical_rank(img.reshape(len(B), img[0].size), tol)
        faith.update(0.0 if rank == len(B) else float(len(B) - rank), B)
        c = rng.standard_normal((samples, len(B))) + 1j * rng.standard_normal((samples, len(B)))
        X = cat.hom(s, d).element(c)
        diff = stack_norms(pi(X, s, d) - block_fn(X, s, d)) / (1.0 + stack_norms(X))
        if len(diff):
            m = int(np.argmax(diff))
            blockf.update(diff[m], X[m])
    for i, j, k in product(range(cat.n_objects), repeat=3):
        X, Y = cat.hom(j, k).basis, cat.hom(i, j).basis
        if len(X) == 0 or len(Y) == 0:
            continue
        P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, cat.objects[k].dim, cat.objects[i].dim)
        lhs = pi(P, i, k)
        rhs = np.einsum("aij,bjk->abik", images[(j, k)], images[(i, j)]).reshape(lhs.shape)
        diff = stack_norms(lhs - rhs) / (1.0 + stack_norms(P))
        m = int(np.argmax(diff))
        mult.update(diff[m], (X[m // len(Y)], Y[m % len(Y)]))
    for a, obj in enumerate(cat.objects):
        I = np.eye(obj.dim, dtype=complex)
        unit.update(float(np.abs(pi(I, a, a) - np.eye(spaces[a].dim)).max()), obj.label)
    sym_ok = all(all_symmetry_check(K, J, tol) for K, J in zip(spaces, Js))
    report.add("twisted_to_hilbert_adjoint", tw.value, tol, tw.witness)
    report.add("involution_to_krein_adjoint", kadj.value, tol, kadj.witness)
    report.add("alpha_covariant", cov.value, tol, cov.witness)
    report.add("multiplicative", mult.value, tol, mult.witness)
    report.add("unital", unit.value, tol, unit.witness)
    report.add("faithful", faith.value, 0.5, faith.witness, "rank deficit")
    report.add("block_form", blockf.value, tol, blockf.witness)
    report.add_flag("fundamental_symmetry", sym_ok)
    return report


def _represent_doubled(cat, alpha, doubled, grading, tol, samples, seed, count_per_object):
    """Shared assembly: ``doubled`` has objects ``2a`` (+) and ``2a+1`` (-) for each ``a``."""
    rho = gelfand_naimark(twist_category(doubled, grading, tol, check=False), tol,
                          count_per_object, samples, seed)
    n = cat.n_objects
    reduced = all(doubled.hom(s, d).dim == 0 for s, d in doubled.pairs() if (s - d) % 2)
    split = tuple((rho.dims[2 * a], 0 if reduced else rho.dims[2 * a + 1]) for a in range(n))

    def blocks(X, s, d):
        aX = alpha(X, s, d)
        xp, xm = 0.5 * (X + aX), 0.5 * (X - aX)
        top = [rho(xp, 2 * s, 2 * d)]
        if reduced:
            return top[0]
        top.append(rho(xm, 2 * s + 1, 2 * d))
        bottom = [rho(xm, 2 * s, 2 * d + 1), rho(xp, 2 * s + 1, 2 * d + 1)]
        return np.concatenate([np.concatenate(top, -1), np.concatenate(bottom, -1)], -2)

    images = {}
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        shape = (len(B), sum(split[d]), sum(split[s]))
        images[(s, d)] = blocks(B, s, d) if len(B) else np.zeros(shape, dtype=complex)
    Js = tuple(np.diag([1.0] * p + [-1.0] * m).astype(complex) for p, m in split)
    spaces = tuple(KreinSpace(J) for J in Js)
    rng = np.random.default_rng(seed)
    cert = _certify_krein(cat, alpha, images, Js, spaces, tol, rng, samples, blocks)
    if not cert.passed:
        worst = max(cert.failures(), key=lambda c: c.residual)
        raise ConstructionError(f"Krein representation certificate {worst.name} failed "
                                f"(residual {worst.residual:.3e})", worst.witness)
    return KreinRepresentation(cat, alpha, spaces, Js, images, cert, rho, split, reduced)


def represent_krein_algebra(algebra: MatrixStarAlgebra, alpha, tol=DEFAULT_TOL, samples=20, seed=0,
                            count_per_object=2) -> KreinRepresentation:
    """Faithful, alpha-covariant representation of a Krein C*-algebra on a Krein space.

    Runs ``krein_link``, represents its twisted C*-category isometrically and
    assembles ``K = H+ (+) (-H-)``.  When ``alpha`` is the identity the odd
    part vanishes and the minus copy is dropped, so ``K`` is a Hilbert space.
    """
    link, grading = krein_link(algebra, alpha, tol)
    return _represent_doubled(category_from_algebra(algebra), alpha, link, grading, tol, samples,
                              seed, count_per_object)


def represent_krein_category(cat: OperatorCategory, alpha, tol=DEFAULT_TOL, samples=20, seed=0,
                             count_per_object=2) -> KreinRepresentation:
    """Krein representation of a Krein C*-category through its doubling."""
    doubled, grading = doubling(cat, alpha, tol)
    return _represent_doubled(cat, alpha, doubled, grading, tol, samples, seed, count_per_object)
