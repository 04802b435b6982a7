import numpy as np
import pytest

from kreinlab import krein_space as ks
from kreinlab import random_instances as ri
from kreinlab import star_algebra as sa
from kreinlab.errors import InputError
from kreinlab.involution import AdSymmetry, LinearSymmetry

J2 = np.diag([1.0, -1.0])


def test_full_matrix_algebra_is_cstar():
    alg = sa.full_matrix_algebra(3)
    assert alg.dim == 9
    assert sa.verify_cstar_algebra(alg, samples=30).passed


def test_generated_algebra_dimensions():
    diag = sa.algebra_from_generators(3, [np.diag([1.0, 2.0, 3.0])])
    assert diag.dim == 3
    shift = sa.algebra_from_generators(2, [np.array([[0, 1], [0, 0]])])
    assert shift.dim == 4


def test_generator_shape_error():
    with pytest.raises(InputError):
        sa.algebra_from_generators(2, [np.eye(3)])


def test_krein_operator_algebra_passes_with_own_symmetry(rng):
    space = ri.random_krein_space(rng, (3, 5))
    alg, alpha = sa.krein_operator_algebra(space)
    assert sa.verify_krein_cstar(alg, alpha, samples=30).passed
    # the involution is the Krein adjoint
    x = alg.random_element(rng)
    assert np.allclose(alg.star(x), ks.krein_adjoint(x, space, space), atol=1e-10)


def test_dagger_with_ad_j_is_not_krein():
    # dagger already satisfies the C*-identity, so twisting it by Ad_J breaks positivity
    alg = sa.full_matrix_algebra(2)
    rep = sa.verify_krein_cstar(alg, AdSymmetry((J2,)), samples=20)
    assert not rep.passed
    assert not rep["positivity"].passed
    assert rep["positivity"].witness is not None


def test_identity_symmetry_reduces_to_cstar():
    alg = sa.full_matrix_algebra(2)
    assert sa.verify_krein_cstar(alg, AdSymmetry.identity([2]), samples=20).passed


def test_even_odd_split_of_ad_j():
    alg = sa.full_matrix_algebra(2)
    plus, minus = sa.even_odd_split(alg, AdSymmetry((J2,)))
    assert (plus.dim, minus.dim) == (2, 2)
    assert plus.contains(np.diag([1.0, 5.0]))
    assert minus.contains(np.array([[0, 1], [2, 0]]))


def test_twist_involution_matches_formula(rng):
    space = ri.random_krein_space(rng, (3, 4))
    alg, alpha = sa.krein_operator_algebra(space)
    tw = sa.twist_involution(alg, alpha)
    x = alg.random_element(rng)
    assert np.allclose(tw.star(x), alpha(alg.star(x), 0, 0), atol=1e-12)
    # the twisted involution satisfies the ordinary C*-axioms
    assert sa.verify_cstar_algebra(tw, samples=20).passed


def test_linear_symmetry_tabulation_agrees(rng):
    alg, alpha = ri.random_krein_algebra(rng, 4)
    lin = sa.linear_symmetry(alg, alpha)
    assert isinstance(lin, LinearSymmetry)
    x = alg.random_element(rng)
    assert np.allclose(lin(x, 0, 0), alpha(x, 0, 0), atol=1e-10)


def test_non_involutive_symmetry_rejected():
    alg = sa.full_matrix_algebra(2)
    # conjugation by a 45 degree rotation squares to a 90 degree one
    c = np.sqrt(0.5)
    U = np.array([[c, -c], [c, c]])
    alpha = AdSymmetry((U,), (U.T,))
    with pytest.raises(InputError):
        sa.even_odd_split(alg, alpha)
