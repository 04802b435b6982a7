"""Involutions and symmetry automorphisms acting on concrete operators.

Every callable here takes ``(x, src, dst)`` where ``x`` is an operator
``H_src -> H_dst`` given as a ``dim(dst) x dim(src)`` matrix.  Algebras are
the one-object case and use the defaults ``src = dst = 0``.

An involution sends ``x : src -> dst`` to an operator ``dst -> src``.  A
symmetry keeps ``x`` in the same hom-space.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Tuple

import numpy as np

from .errors import InputError
from .matrix_core import SubspaceBasis, as_matrix, dagger

__all__ = [
    "AdSymmetry",
    "LinearSymmetry",
    "Reindexed",
    "SandwichInvolution",
    "TwistedInvolution",
    "reindex",
    "twist",
]


@dataclass(frozen=True)
class SandwichInvolution:
    """``x* = left[src] @ x^dagger @ right[dst]``.

    The Hilbert adjoint for a metric ``P`` is ``left = P^-1, right = P``; the
    Krein adjoint for a Gram form ``G`` is ``left = G^-1, right = G``.
    """

    left: Tuple[np.ndarray, ...]
    right: Tuple[np.ndarray, ...]
    tag: str = "custom"

    def __call__(self, x, src=0, dst=0):
        return self.left[src] @ dagger(x) @ self.right[dst]

    @classmethod
    def hilbert(cls, dims: Sequence[int], metrics=None) -> "SandwichInvolution":
        if metrics is None:
            eyes = tuple(np.eye(d, dtype=complex) for d in dims)
            return cls(eyes, eyes, "adjoint")
        metrics = [as_matrix(P, "metric") for P in metrics]
        return cls(tuple(np.linalg.inv(P) for P in metrics), tuple(metrics), "adjoint")

    @classmethod
    def krein(cls, grams) -> "SandwichInvolution":
        grams = [as_matrix(G, "gram") for G in grams]
        return cls(tuple(np.linalg.inv(G) for G in grams), tuple(grams), "krein")

    def reindex(self, objects: Sequence[int]) -> "SandwichInvolution":
        return SandwichInvolution(
            tuple(self.left[k] for k in objects),
            tuple(self.right[k] for k in objects),
            self.tag,
        )


@dataclass(frozen=True)
class AdSymmetry:
    """``alpha(x) = S[dst] @ x @ S[src]^-1`` for a family of invertibles."""

    conj: Tuple[np.ndarray, ...]
    inverse: Tuple[np.ndarray, ...] = ()

    def __post_init__(self):
        conj = tuple(as_matrix(S, "symmetry matrix") for S in self.conj)
        object.__setattr__(self, "conj", conj)
        if not self.inverse:
            try:
                inv = tuple(np.linalg.inv(S) for S in conj)
            except np.linalg.LinAlgError as exc:
                raise InputError("AdSymmetry: conjugating matrix is singular") from exc
            object.__setattr__(self, "inverse", inv)

    def __call__(self, x, src=0, dst=0):
        return self.conj[dst] @ x @ self.inverse[src]

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "AdSymmetry":
        eyes = tuple(np.eye(d, dtype=complex) for d in dims)
        return cls(eyes, eyes)

    @classmethod
    def grading(cls, dims: Sequence[int], signs: Sequence[int]) -> "AdSymmetry":
        """``+1`` on homs between equal signs, ``-1`` across signs."""
        mats = tuple(s * np.eye(d, dtype=complex) for d, s in zip(dims, signs))
        return cls(mats, mats)

    def reindex(self, objects: Sequence[int]) -> "AdSymmetry":
        return AdSymmetry(
            tuple(self.conj[k] for k in objects), tuple(self.inverse[k] for k in objects)
        )


class LinearSymmetry:
    """Symmetry given by an explicit linear map on hom-space coordinates.

    ``maps[(src, dst)] = (basis, M)`` acts as ``coords -> M @ coords``.
    Hom pairs without an entry are treated as the zero space.
    """

    def __init__(self, maps: Mapping[Tuple[int, int], Tuple[SubspaceBasis, np.ndarray]]):
        self.maps = dict(maps)

    def __call__(self, x, src=0, dst=0):
        basis, M = self.maps[(src, dst)]
        return basis.element(basis.coords(x) @ M.T)

    @classmethod
    def from_function(cls, homs: Mapping[Tuple[int, int], SubspaceBasis], fn) -> "LinearSymmetry":
        """Tabulate ``fn(x, src, dst)`` on every basis element."""
        maps = {}
        for key, basis in homs.items():
            images = [fn(b, *key) for b in basis.basis]
            M = np.array([basis.coords(img) for img in images]).T if images else np.zeros((0, 0))
            maps[key] = (basis, M.reshape(basis.dim, basis.dim))
        return cls(maps)

    @classmethod
    def from_pairs(cls, basis: SubspaceBasis, pairs) -> "LinearSymmetry":
        """One-object symmetry fitted to ``(x, alpha(x))`` pairs spanning ``basis``."""
        X = np.array([basis.coords(as_matrix(x)) for x, _ in pairs])
        Y = np.array([basis.coords(as_matrix(y)) for _, y in pairs])
        if np.linalg.matrix_rank(X) < basis.dim:
            raise InputError("LinearSymmetry: pairs do not span the algebra")
        # rows satisfy X[i] @ M.T = Y[i]
        Mt, *_ = np.linalg.lstsq(X, Y, rcond=None)
        return cls({(0, 0): (basis, Mt.T)})


class Reindexed:
    """Pull an involution or symmetry back along an object map."""

    def __init__(self, inner, objects: Sequence[int]):
        self.inner = inner
        self.objects = tuple(objects)

    def __call__(self, x, src=0, dst=0):
        return self.inner(x, self.objects[src], self.objects[dst])


def reindex(obj, objects: Sequence[int]):
    if hasattr(obj, "reindex"):
        return obj.reindex(objects)
    return Reindexed(obj, objects)


class TwistedInvolution:
    """``x -> alpha(x*)`` for an arbitrary involution and symmetry."""

    def __init__(self, base, symmetry):
        self.base = base
        self.symmetry = symmetry
        self.tag = "twisted"

    def __call__(self, x, src=0, dst=0):
        return self.symmetry(self.base(x, src, dst), dst, src)

    def reindex(self, objects):
        return TwistedInvolution(reindex(self.base, objects), reindex(self.symmetry, objects))


def twist(involution, symmetry):
    """The involution ``x -> symmetry(involution(x))``.

    Sandwich involutions twisted by Ad-symmetries stay in sandwich form.
    """
    if isinstance(involution, SandwichInvolution) and isinstance(symmetry, AdSymmetry):
        left = tuple(S @ L for S, L in zip(symmetry.conj, involution.left))
        right = tuple(R @ Si for R, Si in zip(involution.right, symmetry.inverse))
        return SandwichInvolution(left, right, "twisted")
    return TwistedInvolution(involution, symmetry)
