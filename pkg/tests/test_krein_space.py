import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kreinlab import krein_space as ks
from kreinlab import random_instances as ri
from kreinlab.errors import InputError


def test_rejects_singular_and_non_hermitian():
    with pytest.raises(InputError):
        ks.KreinSpace(np.diag([1.0, 0.0]))
    with pytest.raises(InputError):
        ks.KreinSpace(np.array([[1.0, 1.0], [0.0, -1.0]]))


def test_minkowski_decomposition():
    space = ks.KreinSpace.signature_form(1, 1)
    d = ks.canonical_decomposition(space)
    assert d.signature == (1, 1)
    assert np.allclose(d.J, np.diag([1, -1]))
    assert np.allclose(d.p_plus, np.diag([1, 0]))


def test_hyperbolic_plane_signature():
    space = ks.KreinSpace(np.array([[0.0, 1.0], [1.0, 0.0]]))
    d = ks.canonical_decomposition(space)
    assert d.signature == (1, 1)
    assert all(v <= 1e-12 for k, v in ks.decomposition_residuals(space, d).items() if k != "j_inner_positive")


def test_identity_is_not_a_symmetry_of_indefinite_space():
    space = ks.KreinSpace.signature_form(2, 1)
    assert not ks.all_symmetry_check(space, np.eye(3))
    with pytest.raises(InputError):
        ks.decomposition_from_symmetry(space, np.eye(3))


def test_krein_adjoint_defines_adjoint(rng):
    K1 = ri.random_krein_space(rng, (3, 3))
    K2 = ri.random_krein_space(rng, (2, 2))
    T = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    Ts = ks.krein_adjoint(T, K1, K2)
    x = rng.standard_normal(3) + 0j
    y = rng.standard_normal(2) + 0j
    assert K2.inner(y, T @ x) == pytest.approx(K1.inner(Ts @ y, x), abs=1e-10)
    with pytest.raises(InputError):
        ks.krein_adjoint(T.T, K1, K2)


def test_j_norm_matches_definition():
    space = ks.KreinSpace.signature_form(1, 1)
    d = ks.canonical_decomposition(space)
    assert ks.j_norm([3.0, 4.0], d, space) == pytest.approx(5.0)


def test_norm_equivalence_same_symmetry_is_trivial(rng):
    space = ri.random_krein_space(rng)
    J = ks.canonical_decomposition(space).J
    c, C = ks.norm_equivalence(space, J, J)
    assert c == pytest.approx(1.0) and C == pytest.approx(1.0)


def test_norm_equivalence_rejects_bad_candidate():
    space = ks.KreinSpace.signature_form(1, 1)
    with pytest.raises(InputError):
        ks.norm_equivalence(space, np.eye(2), np.diag([1.0, -1.0]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_random_symmetries_are_fundamental(seed):
    rng = np.random.default_rng(seed)
    space = ri.random_krein_space(rng, (1, 6))
    J = ri.random_symmetry(rng, space)
    assert ks.all_symmetry_check(space, J)
    d = ks.decomposition_from_symmetry(space, J)
    assert d.signature == ks.canonical_decomposition(space).signature
