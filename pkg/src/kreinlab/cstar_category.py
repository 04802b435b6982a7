"""Finite operator categories, their Krein axioms, and the constructions on them.

Orientation: ``x`` in ``Hom(A, B)`` is an operator ``H_A -> H_B`` stored as a
``dim B x dim A`` matrix, so composition ``Hom(B, C) x Hom(A, B) -> Hom(A, C)``
is the matrix product.  Hom-spaces are keyed by index pairs ``(src, dst)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import product
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError
from .involution import AdSymmetry, SandwichInvolution, reindex, twist
from .krein_space import KreinSpace, canonical_decomposition
from .matrix_core import (
    DEFAULT_TOL,
    ClosureRule,
    SubspaceBasis,
    as_matrix,
    matrix_root,
    numerical_rank,
    orthonormal_basis,
    saturate_span,
)
from .report import Report, Worst
from .star_algebra import (
    MatrixStarAlgebra,
    even_odd_split,
    stack_norms,
    twist_involution,
    verify_krein_cstar,
)

__all__ = [
    "CategoryObject",
    "EmbeddingFunctor",
    "OperatorCategory",
    "StarFunctor",
    "category_from_algebra",
    "category_from_generators",
    "doubling",
    "envelope",
    "envelope_center_dim",
    "envelope_functor",
    "factorization_residual",
    "full_operator_category",
    "isoenv_check",
    "krein_link",
    "krein_space_category",
    "linking_category",
    "positive_square_root",
    "symmetry_functor",
    "twist_category",
    "verify_cstar_category",
    "verify_krein_cstar_category",
    "verify_star_functor",
]

Pair = Tuple[int, int]


@dataclass(frozen=True)
class CategoryObject:
    label: str
    dim: int
    metric: Optional[np.ndarray] = field(default=None, compare=False)
    gram: Optional[np.ndarray] = field(default=None, compare=False)

    @cached_property
    def roots(self) -> Tuple[np.ndarray, np.ndarray]:
        if self.metric is None:
            I = np.eye(self.dim, dtype=complex)
            return I, I
        return matrix_root(self.metric, 0.5), matrix_root(self.metric, -0.5)


@dataclass(frozen=True)
class OperatorCategory:
    objects: Tuple[CategoryObject, ...]
    homs: Dict[Pair, SubspaceBasis]
    involution: Callable
    tag: str = "adjoint"

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        n = len(self.objects)
        homs = dict(self.homs)
        for s, d in product(range(n), repeat=2):
            shape = (self.objects[d].dim, self.objects[s].dim)
            if (s, d) not in homs:
                homs[(s, d)] = SubspaceBasis(*shape, np.zeros((0,) + shape, dtype=complex))
            elif homs[(s, d)].shape != shape:
                raise InputError(f"Hom({s},{d}) has shape {homs[(s, d)].shape}, expected {shape}")
        object.__setattr__(self, "homs", homs)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(o.dim for o in self.objects)

    def hom(self, src: int, dst: int) -> SubspaceBasis:
        return self.homs[(src, dst)]

    def pairs(self):
        return product(range(self.n_objects), repeat=2)

    def star(self, x, src, dst):
        return self.involution(x, src, dst)

    def norms(self, X, src, dst) -> np.ndarray:
        R = self.objects[dst].roots[0]
        Ri = self.objects[src].roots[1]
        return stack_norms(R @ X @ Ri)

    def norm(self, x, src, dst) -> float:
        return float(self.norms(np.asarray(x)[None], src, dst)[0])

    def with_involution(self, involution, tag) -> "OperatorCategory":
        return replace(self, involution=involution, tag=tag)

    def diagonal_algebra(self, a: int) -> MatrixStarAlgebra:
        obj = self.objects[a]
        return MatrixStarAlgebra(
            self.hom(a, a), reindex(self.involution, [a]), obj.metric, self.tag, obj.gram
        )

    def total_dim(self) -> int:
        return sum(h.dim for h in self.homs.values())


# -- constructors -----------------------------------------------------------


def _objects(dims, labels=None, metrics=None, grams=None):
    labels = labels or [f"A{k}" for k in range(len(dims))]
    metrics = metrics or [None] * len(dims)
    grams = grams or [None] * len(dims)
    return tuple(CategoryObject(l, int(d), m, g) for l, d, m, g in zip(labels, dims, metrics, grams))


def _full_hom(rows, cols) -> SubspaceBasis:
    units = np.zeros((rows * cols, rows, cols), dtype=complex)
    for k in range(rows * cols):
        units[k].flat[k] = 1.0
    return SubspaceBasis(rows, cols, units)


def full_operator_category(dims, metrics=None, labels=None) -> OperatorCategory:
    """All operators between ``(C^d, metric)`` spaces with the Hilbert adjoint."""
    objs = _objects(dims, labels, metrics)
    homs = {(s, d): _full_hom(objs[d].dim, objs[s].dim) for s, d in product(range(len(objs)), repeat=2)}
    inv = SandwichInvolution.hilbert(dims, metrics)
    return OperatorCategory(objs, homs, inv, "adjoint")


def krein_space_category(spaces: Sequence[KreinSpace], Js=None, labels=None, tol=DEFAULT_TOL):
    """All operators between Krein spaces with the Krein adjoint.

    Returns the category together with ``Ad`` of the fundamental symmetry
    family (canonical unless ``Js`` is given).  Norms are taken in the
    Hilbert spaces ``|K|_J``.
    """
    if Js is None:
        Js = [canonical_decomposition(K, tol).J for K in spaces]
    metrics = []
    for K, J in zip(spaces, Js):
        M = K.gram @ J
        metrics.append(0.5 * (M + M.conj().T))
    dims = [K.dim for K in spaces]
    objs = _objects(dims, labels, metrics, [K.gram for K in spaces])
    homs = {(s, d): _full_hom(dims[d], dims[s]) for s, d in product(range(len(dims)), repeat=2)}
    cat = OperatorCategory(objs, homs, SandwichInvolution.krein([K.gram for K in spaces]), "krein")
    return cat, AdSymmetry(tuple(as_matrix(J) for J in Js))


def category_from_algebra(algebra: MatrixStarAlgebra, label="A") -> OperatorCategory:
    obj = CategoryObject(label, algebra.ambient_dim, algebra.metric, algebra.gram)
    return OperatorCategory((obj,), {(0, 0): algebra.basis}, algebra.involution, algebra.tag)


def category_from_generators(
    objects: Sequence[CategoryObject],
    generators: Dict[Pair, Sequence[np.ndarray]],
    involution,
    tag="custom",
    tol=DEFAULT_TOL,
) -> OperatorCategory:
    """Smallest subcategory containing the generators and all identities.

    Saturation happens in the block-matrix envelope: generators are placed in
    their blocks, the block units are added, and the closed algebra is cut
    back into hom-spaces.
    """
    objects = tuple(objects)
    dims = [o.dim for o in objects]
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    N = int(offs[-1])
    probe = OperatorCategory(objects, {}, involution, tag)
    env_star = _EnvelopeInvolution(probe, offs)
    seeds = []
    for a in range(len(objects)):
        E = np.zeros((N, N), dtype=complex)
        E[offs[a]:offs[a + 1], offs[a]:offs[a + 1]] = np.eye(dims[a])
        seeds.append(E)
    for (s, d), gens in generators.items():
        for g in gens:
            g = as_matrix(g, f"generator Hom({s},{d})")
            if g.shape != (dims[d], dims[s]):
                raise InputError(f"generator for Hom({s},{d}) has shape {g.shape}")
            E = np.zeros((N, N), dtype=complex)
            E[offs[d]:offs[d + 1], offs[s]:offs[s + 1]] = g
            seeds.append(E)
    rule = ClosureRule(multiply=True, involution=env_star, unit=True)
    span = saturate_span(seeds, rule, tol, shape=(N, N))
    homs = {}
    for s, d in product(range(len(objects)), repeat=2):
        blocks = span.basis[:, offs[d]:offs[d + 1], offs[s]:offs[s + 1]]
        homs[(s, d)] = orthonormal_basis(list(blocks), (dims[d], dims[s]), tol)
    return OperatorCategory(objects, homs, involution, tag)


# -- verification -----------------------------------------------------------


def _span_residuals(basis: SubspaceBasis, X: np.ndarray) -> np.ndarray:
    if len(X) == 0:
        return np.zeros(0)
    R = X - basis.element(basis.coords(X))
    return stack_norms(R) / (1.0 + stack_norms(X))


def _rel(diff, ref) -> np.ndarray:
    if len(diff) == 0:
        return np.zeros(0)
    return stack_norms(diff) / (1.0 + stack_norms(ref))


def _record(worst: Worst, values: np.ndarray, witnesses):
    if len(values):
        k = int(np.argmax(values))
        worst.update(values[k], witnesses[k])


def _samples(basis: SubspaceBasis, samples: int, rng) -> np.ndarray:
    if basis.dim == 0:
        return np.zeros((0,) + basis.shape, dtype=complex)
    c = rng.standard_normal((samples, basis.dim)) + 1j * rng.standard_normal((samples, basis.dim))
    return np.concatenate([basis.basis, basis.element(c / np.sqrt(2.0))])


def _positivity_stack(H, star, R, Ri) -> np.ndarray:
    """Vectorised positivity residual for a stack of square matrices."""
    if len(H) == 0 or H.shape[-1] == 0:
        return np.zeros(len(H))
    scale = 1.0 + stack_norms(H)
    herm = stack_norms(star(H) - H) / scale
    ev = np.linalg.eigvals(R @ H @ Ri)
    imag = np.max(np.abs(ev.imag), axis=1) / scale
    neg = np.maximum(0.0, -np.min(ev.real, axis=1)) / scale
    return np.maximum(herm, np.maximum(imag, neg))


def _structure_checks(report: Report, cat: OperatorCategory, tol, prefix=""):
    unit_res, unit_norm = Worst(), Worst()
    comp, anti, inv_closed, invol = Worst(), Worst(), Worst(), Worst()
    for a, obj in enumerate(cat.objects):
        I = np.eye(obj.dim, dtype=complex)
        unit_res.update(cat.hom(a, a).residual(I), obj.label)
        unit_norm.update(abs(cat.norm(I, a, a) - 1.0) if obj.dim else 0.0, obj.label)
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        sB = cat.star(B, s, d)
        _record(inv_closed, _span_residuals(cat.hom(d, s), sB), B)
        _record(invol, _rel(cat.star(sB, d, s) - B, B), B)
    for i, j, k in product(range(cat.n_objects), repeat=3):
        X, Y = cat.hom(j, k).basis, cat.hom(i, j).basis
        if len(X) == 0 or len(Y) == 0:
            continue
        P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, cat.objects[k].dim, cat.objects[i].dim)
        wit = [(x, y) for x in X for y in Y]
        _record(comp, _span_residuals(cat.hom(i, k), P), wit)
        sP = cat.star(P, i, k)
        sX, sY = cat.star(X, j, k), cat.star(Y, i, j)
        sYsX = np.einsum("bij,ajk->abik", sY, sX).reshape(sP.shape)
        _record(anti, _rel(sP - sYsX, P), wit)
    report.add(prefix + "identity_in_hom", unit_res.value, tol, unit_res.witness)
    report.add(prefix + "unit_norm", unit_norm.value, tol, unit_norm.witness)
    report.add(prefix + "composition_closed", comp.value, tol, comp.witness)
    report.add(prefix + "involution_closed", inv_closed.value, tol, inv_closed.witness)
    report.add(prefix + "involution_involutive", invol.value, tol, invol.witness)
    report.add(prefix + "involution_anti_multiplicative", anti.value, tol, anti.witness)


def _identity_positivity(report, cat, twisted, samples, rng, tol, names):
    ident, pos, submult = Worst(), Worst(), Worst()
    elems = {}
    for s, d in cat.pairs():
        X = _samples(cat.hom(s, d), samples, rng)
        elems[(s, d)] = X
        if len(X) == 0:
            continue
        H = twisted(X, s, d) @ X
        nx = cat.norms(X, s, d)
        nh = cat.norms(H, s, s)
        _record(ident, np.abs(nh - nx**2) / (1.0 + nx**2), X)
        R, Ri = cat.objects[s].roots
        _record(pos, _positivity_stack(H, lambda Y: twisted(Y, s, s), R, Ri), X)
    for i, j, k in product(range(cat.n_objects), repeat=3):
        X, Y = elems[(j, k)], elems[(i, j)]
        if len(X) == 0 or len(Y) == 0:
            continue
        m = min(len(X), len(Y))
        P = X[:m] @ Y[:m]
        bound = cat.norms(X[:m], j, k) * cat.norms(Y[:m], i, j)
        excess = np.maximum(0.0, cat.norms(P, i, k) - bound) / (1.0 + bound)
        _record(submult, excess, list(zip(X[:m], Y[:m])))
    if names.get("submultiplicative"):
        report.add(names["submultiplicative"], submult.value, tol, submult.witness)
    report.add(names["identity"], ident.value, tol, ident.witness)
    report.add(names["positivity"], pos.value, tol, pos.witness)


def verify_cstar_category(cat: OperatorCategory, samples: int = 200, tol=DEFAULT_TOL, seed=0) -> Report:
    """C*-category axioms on basis elements plus ``samples`` random morphisms per hom."""
    rng = np.random.default_rng(seed)
    report = Report("cstar-category")
    _structure_checks(report, cat, tol)
    _identity_positivity(
        report, cat, cat.involution, samples, rng, tol,
        {"submultiplicative": "submultiplicative", "identity": "cstar_identity", "positivity": "positivity"},
    )
    return report


def _symmetry_checks(report: Report, cat: OperatorCategory, alpha, tol):
    span, invol, mult, star, unit = Worst(), Worst(), Worst(), Worst(), Worst()
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        if len(B) == 0:
            continue
        aB = alpha(B, s, d)
        _record(span, _span_residuals(cat.hom(s, d), aB), B)
        _record(invol, _rel(alpha(aB, s, d) - B, B), B)
        _record(star, _rel(alpha(cat.star(B, s, d), d, s) - cat.star(aB, s, d), B), B)
    for a, obj in enumerate(cat.objects):
        I = np.eye(obj.dim, dtype=complex)
        unit.update(float(np.linalg.norm(alpha(I, a, a) - I, 2)) if obj.dim else 0.0, obj.label)
    for i, j, k in product(range(cat.n_objects), repeat=3):
        X, Y = cat.hom(j, k).basis, cat.hom(i, j).basis
        if len(X) == 0 or len(Y) == 0:
            continue
        P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, cat.objects[k].dim, cat.objects[i].dim)
        aP = np.einsum("aij,bjk->abik", alpha(X, j, k), alpha(Y, i, j)).reshape(P.shape)
        _record(mult, _rel(alpha(P, i, k) - aP, P), [(x, y) for x in X for y in Y])
    report.add("axiom1_involutive", invol.value, tol, invol.witness)
    report.add("axiom2_identity_on_objects", span.value, tol, span.witness)
    report.add("alpha_multiplicative", mult.value, tol, mult.witness)
    report.add("alpha_star_preserving", star.value, tol, star.witness)
    report.add("alpha_unital", unit.value, tol, unit.witness)


def verify_krein_cstar_category(
    cat: OperatorCategory, alpha, samples: int = 200, tol=DEFAULT_TOL, seed=0
) -> Report:
    """The four Krein C*-category axioms for the symmetry ``alpha``.

    Axiom 3 is ``||alpha(x*) x|| = ||x||^2``; axiom 4 is positivity of
    ``alpha(x*) x`` in the diagonal algebra with involution ``alpha(.*)``.
    """
    rng = np.random.default_rng(seed)
    report = Report("krein-cstar-category")
    _structure_checks(report, cat, tol)
    _symmetry_checks(report, cat, alpha, tol)
    _identity_positivity(
        report, cat, twist(cat.involution, alpha), samples, rng, tol,
        {"identity": "axiom3_cstar_identity", "positivity": "axiom4_positivity"},
    )
    return report


def positive_square_root(h: np.ndarray, tol=DEFAULT_TOL) -> np.ndarray:
    """Square root of a matrix with real non-negative spectrum.

    Computed as ``V sqrt(D) V^-1``; it is a real polynomial in ``h`` and so
    lies in every unital algebra containing ``h`` and is self-adjoint for
    every involution fixing ``h``.
    """
    w, V = np.linalg.eig(h)
    scale = 1.0 + float(np.linalg.norm(h, 2))
    if np.max(np.abs(w.imag), initial=0.0) > tol * scale or np.min(w.real, initial=0.0) < -tol * scale:
        raise InputError("positive_square_root: spectrum is not real non-negative")
    return V @ np.diag(np.sqrt(np.maximum(w.real, 0.0))) @ np.linalg.inv(V)


# -- constructions ----------------------------------------------------------


def _require(report: Report, what: str):
    if not report.passed:
        bad = ", ".join(c.name for c in report.failures())
        raise InputError(f"{what}: precondition failed ({bad})")


def twist_category(cat: OperatorCategory, alpha, tol=DEFAULT_TOL, check=True) -> OperatorCategory:
    """Same homs with involution ``x -> alpha(x*)``."""
    if check:
        report = Report("twist-precondition")
        _structure_checks(report, cat, tol)
        _symmetry_checks(report, cat, alpha, tol)
        _require(report, "twist_category")
    return cat.with_involution(twist(cat.involution, alpha), "twisted")


def linking_category(algebra_plus: MatrixStarAlgebra, module_odd: SubspaceBasis, tol=DEFAULT_TOL,
                     labels=("+", "-")) -> OperatorCategory:
    """Two-object category with ``Hom(+,+) = Hom(-,-) = A`` and ``Hom(+,-) = Hom(-,+) = M``.

    All compositions and both bimodule inner products are ambient matrix
    products; the module must be closed under the algebra's involution.
    """
    n = algebra_plus.ambient_dim
    if module_odd.shape != (n, n):
        raise InputError(f"module has shape {module_odd.shape}, algebra is {n}x{n}")
    A, M = algebra_plus.basis.basis, module_odd.basis
    star = algebra_plus.star
    checks = []
    if len(M):
        checks += [
            ("a.m in M", module_odd, np.einsum("aij,bjk->abik", A, M).reshape(-1, n, n)),
            ("m.a in M", module_odd, np.einsum("aij,bjk->abik", M, A).reshape(-1, n, n)),
            ("m* in M", module_odd, star(M)),
            ("m1*.m2 in A", algebra_plus.basis, np.einsum("aij,bjk->abik", star(M), M).reshape(-1, n, n)),
            ("m1.m2* in A", algebra_plus.basis, np.einsum("aij,bjk->abik", M, star(M)).reshape(-1, n, n)),
        ]
    for name, target, X in checks:
        res = _span_residuals(target, X)
        if len(res) and res.max() > tol:
            raise InputError(f"linking_category: {name} fails", )
    obj = CategoryObject(labels[0], n, algebra_plus.metric, algebra_plus.gram)
    obj2 = CategoryObject(labels[1], n, algebra_plus.metric, algebra_plus.gram)
    homs = {(0, 0): algebra_plus.basis, (1, 1): algebra_plus.basis, (0, 1): module_odd, (1, 0): module_odd}
    return OperatorCategory((obj, obj2), homs, reindex(algebra_plus.involution, [0, 0]), algebra_plus.tag)


def krein_link(algebra: MatrixStarAlgebra, alpha, tol=DEFAULT_TOL, samples=16):
    """The two-object Krein C*-category ``[A+, A-]`` of ``(algebra, alpha)``.

    Returns ``(category, symmetry)``; the symmetry is the restriction of
    ``alpha`` (``+1`` on the diagonal homs, ``-1`` off the diagonal) and the
    category carries the untwisted involution ``x -> alpha(x^{dagger alpha})``.
    """
    _require(verify_krein_cstar(algebra, alpha, samples, tol), "krein_link")
    twisted = twist_involution(algebra, alpha, tol)
    plus, minus = even_odd_split(algebra, alpha, tol)
    a_plus = replace(twisted, basis=plus)
    linked = linking_category(a_plus, minus, tol)
    grading = AdSymmetry.grading([algebra.ambient_dim] * 2, [1, -1])
    cat = twist_category(linked, grading, tol, check=False)
    return replace(cat, tag="krein"), grading


def isoenv_check(algebra: MatrixStarAlgebra, alpha, tol=DEFAULT_TOL) -> Report:
    """Weak form of ``A+ (+) A- ~ A^alpha``: bijectivity plus compatibility.

    ``Psi(x+ + x-) = x+ + x-``: the stacked even and odd bases must have full
    rank ``dim A``; every composable product and every twisted adjoint of
    linking-category basis elements must land in the hom-space the
    composition table predicts.
    """
    report = Report("isoenv")
    plus, minus = even_odd_split(algebra, alpha, tol)
    stacked = np.concatenate([plus.basis, minus.basis]).reshape(plus.dim + minus.dim, -1)
    rank = numerical_rank(stacked, tol)
    report.add_flag("bijective", rank == algebra.dim and plus.dim + minus.dim == algebra.dim,
                    detail=f"rank={rank} dim={algebra.dim}")
    in_alg = max([algebra.basis.residual(b) for b in stacked.reshape(-1, *plus.shape)] or [0.0])
    report.add("image_in_algebra", in_alg, tol)
    twisted = twist_involution(algebra, alpha, tol)
    linked = linking_category(replace(twisted, basis=plus), minus, tol)
    mult, inv = Worst(), Worst()
    n = algebra.ambient_dim
    for i, j, k in product(range(2), repeat=3):
        X, Y = linked.hom(j, k).basis, linked.hom(i, j).basis
        if len(X) and len(Y):
            P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, n, n)
            _record(mult, _span_residuals(linked.hom(i, k), P), [(x, y) for x in X for y in Y])
    for s, d in linked.pairs():
        B = linked.hom(s, d).basis
        _record(inv, _span_residuals(linked.hom(d, s), linked.star(B, s, d)), B)
    report.add("multiplicative", mult.value, tol, mult.witness)
    report.add("involution_compatible", inv.value, tol, inv.witness)
    report.add("unital", plus.residual(np.eye(n)), tol)
    return report


def doubling(cat: OperatorCategory, alpha, tol=DEFAULT_TOL, samples=16):
    """Objects ``Ob x {+,-}``; same-sign homs are even parts, cross-sign homs odd parts.

    Returns ``(doubled_category, induced_symmetry)``; the induced symmetry is
    ``+1`` on even and ``-1`` on odd homs.
    """
    _require(verify_krein_cstar_category(cat, alpha, samples, tol), "doubling")
    objs, f, signs = [], [], []
    for a, obj in enumerate(cat.objects):
        for sign, suffix in ((1, "+"), (-1, "-")):
            objs.append(replace(obj, label=f"{obj.label}{suffix}"))
            f.append(a)
            signs.append(sign)
    parts = {}
    for s, d in cat.pairs():
        B = cat.hom(s, d).basis
        aB = alpha(B, s, d) if len(B) else B
        shape = cat.hom(s, d).shape
        parts[(s, d)] = (
            orthonormal_basis(list(0.5 * (B + aB)), shape, tol),
            orthonormal_basis(list(0.5 * (B - aB)), shape, tol),
        )
    homs = {}
    for s2, d2 in product(range(len(objs)), repeat=2):
        even, odd = parts[(f[s2], f[d2])]
        homs[(s2, d2)] = even if signs[s2] == signs[d2] else odd
    doubled = OperatorCategory(tuple(objs), homs, reindex(cat.involution, f), cat.tag)
    return doubled, AdSymmetry.grading([o.dim for o in objs], signs)


# -- functors and envelopes -------------------------------------------------


@dataclass(frozen=True)
class StarFunctor:
    """Object map plus ``fn(x, src, dst)`` sending ``Hom(src, dst)`` to the target."""

    source: OperatorCategory
    target: object
    object_map: Tuple[int, ...]
    fn: Callable

    def __call__(self, x, src=0, dst=0):
        return self.fn(x, src, dst)

    @property
    def target_category(self) -> OperatorCategory:
        return _as_category(self.target)


def _as_category(target) -> OperatorCategory:
    if isinstance(target, OperatorCategory):
        return target
    if isinstance(target, MatrixStarAlgebra):
        return category_from_algebra(target)
    raise InputError(f"unsupported functor target {type(target).__name__}")


def verify_star_functor(phi: StarFunctor, tol=DEFAULT_TOL, unital: bool = True) -> Report:
    """Target membership, multiplicativity, *-preservation and unitality on bases.

    Pass ``unital=False`` for embeddings such as ``iota`` that send ``1_A`` to
    a projection.
    """
    C, D, f = phi.source, phi.target_category, phi.object_map
    report = Report("star-functor")
    into, mult, star, unit = Worst(), Worst(), Worst(), Worst()
    for s, d in C.pairs():
        B = C.hom(s, d).basis
        if len(B) == 0:
            continue
        img = phi(B, s, d)
        _record(into, _span_residuals(D.hom(f[s], f[d]), img), B)
        _record(star, _rel(phi(C.star(B, s, d), d, s) - D.star(img, f[s], f[d]), B), B)
    for a, obj in enumerate(C.objects):
        I = np.eye(obj.dim, dtype=complex)
        J = np.eye(D.objects[f[a]].dim, dtype=complex)
        unit.update(float(np.linalg.norm(phi(I, a, a) - J, 2)) if J.size else 0.0, obj.label)
    for i, j, k in product(range(C.n_objects), repeat=3):
        X, Y = C.hom(j, k).basis, C.hom(i, j).basis
        if len(X) == 0 or len(Y) == 0:
            continue
        P = np.einsum("aij,bjk->abik", X, Y).reshape(-1, C.objects[k].dim, C.objects[i].dim)
        fP = np.einsum("aij,bjk->abik", phi(X, j, k), phi(Y, i, j))
        fP = fP.reshape((-1,) + fP.shape[2:])
        _record(mult, _rel(phi(P, i, k) - fP, P), [(x, y) for x in X for y in Y])
    report.add("into_target_homs", into.value, tol, into.witness)
    report.add("multiplicative", mult.value, tol, mult.witness)
    report.add("star_preserving", star.value, tol, star.witness)
    if unital:
        report.add("unital", unit.value, tol, unit.witness)
    return report


def symmetry_functor(cat: OperatorCategory, alpha) -> StarFunctor:
    return StarFunctor(cat, cat, tuple(range(cat.n_objects)), alpha)


class _EnvelopeInvolution:
    """Blockwise involution on ``(sum of dims)``-square block matrices."""

    def __init__(self, cat: OperatorCategory, offsets):
        self.cat = cat
        self.offsets = offsets
        self.tag = cat.tag

    def __call__(self, X, src=0, dst=0):
        o, cat = self.offsets, self.cat
        out = np.zeros(X.shape[:-2] + (X.shape[-1], X.shape[-2]), dtype=complex)
        for i, j in product(range(cat.n_objects), repeat=2):
            blk = X[..., o[i]:o[i + 1], o[j]:o[j + 1]]
            out[..., o[j]:o[j + 1], o[i]:o[i + 1]] = cat.star(blk, j, i)
        return out


class EmbeddingFunctor(StarFunctor):
    """``iota``: places ``x`` in ``Hom(A_j, A_i)`` into block ``(i, j)``."""

    @property
    def offsets(self):
        return self.fn.offsets

    def block(self, X, src, dst):
        o = self.offsets
        return X[..., o[dst]:o[dst + 1], o[src]:o[src + 1]]


class _Embed:
    def __init__(self, offsets):
        self.offsets = offsets
        self.N = int(offsets[-1])

    def __call__(self, x, src, dst):
        o = self.offsets
        out = np.zeros(x.shape[:-2] + (self.N, self.N), dtype=complex)
        out[..., o[dst]:o[dst + 1], o[src]:o[src + 1]] = x
        return out


def envelope(cat: OperatorCategory, tol=DEFAULT_TOL):
    """Block matrix algebra on the direct sum of the object spaces.

    Block ``(i, j)`` ranges over ``Hom(A_j, A_i)``.  Returns
    ``(algebra, iota)``.
    """
    dims = cat.dims
    offs = np.concatenate([[0], np.cumsum(dims)]).astype(int)
    N = int(offs[-1])
    embed = _Embed(offs)
    mats = [embed(cat.hom(s, d).basis, s, d) for s, d in cat.pairs()]
    basis = np.concatenate([m for m in mats if len(m)]) if any(len(m) for m in mats) else np.zeros((0, N, N))
    metric = None
    if any(o.metric is not None for o in cat.objects):
        metric = np.zeros((N, N), dtype=complex)
        for a, o in enumerate(cat.objects):
            metric[offs[a]:offs[a + 1], offs[a]:offs[a + 1]] = o.metric if o.metric is not None else np.eye(o.dim)
    alg = MatrixStarAlgebra(SubspaceBasis(N, N, basis), _EnvelopeInvolution(cat, offs), metric, cat.tag)
    iota = EmbeddingFunctor(cat, alg, (0,) * cat.n_objects, embed)
    return alg, iota


def envelope_center_dim(alg: MatrixStarAlgebra, tol=DEFAULT_TOL) -> int:
    """Dimension of the center, from the kernel of all commutator maps."""
    B = alg.basis.basis
    k = len(B)
    # column c of the stacked map holds [b_c, b_m] for every basis element b_m
    cols = np.einsum("cij,mjk->cmik", B, B) - np.einsum("mij,cjk->cmik", B, B)
    M = cols.reshape(k, -1).T
    return k - numerical_rank(M, tol)


def envelope_functor(phi: StarFunctor, source_env, target_env, tol=DEFAULT_TOL) -> StarFunctor:
    """Induced blockwise homomorphism ``E(phi)`` between matrix envelopes."""
    _require(verify_star_functor(phi, tol), "envelope_functor")
    f = phi.object_map
    if len(set(f)) != len(f):
        raise InputError("envelope_functor: object map must be injective")
    src_alg, iota_c = source_env
    tgt_alg, iota_d = target_env
    C = phi.source

    def E_phi(X, src=0, dst=0):
        out = np.zeros(X.shape[:-2] + tgt_alg.basis.shape, dtype=complex)
        for i, j in C.pairs():
            blk = iota_c.block(X, i, j)
            if blk.size:
                out = out + iota_d(phi(blk, i, j), f[i], f[j])
        return out

    return StarFunctor(category_from_algebra(src_alg), tgt_alg, (0,), E_phi)


def factorization_residual(E_phi: StarFunctor, iota_c, iota_d, phi: StarFunctor) -> float:
    """``max ||E(phi)(iota_C x) - iota_D(phi x)||`` over all hom basis elements."""
    C, f = phi.source, phi.object_map
    worst = 0.0
    for s, d in C.pairs():
        B = C.hom(s, d).basis
        if len(B):
            diff = E_phi(iota_c(B, s, d)) - iota_d(phi(B, s, d), f[s], f[d])
            worst = max(worst, float(np.max(_rel(diff, B))))
    return worst
