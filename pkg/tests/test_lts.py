import numpy as np
import pytest

from snyder_kloop import kloop, lts


def test_structure_constants_exact():
    r = lts.structure_constants_check(kloop.desitter())
    assert r.passed and r.detail["sign_of_J_mu_nu_in_bracket"] == 1
    assert lts.structure_constants_check(kloop.desitter(), kappa=2.0).passed


@pytest.mark.parametrize("name,sign", [("lorentz", -1), ("sphere", -1)])
def test_structure_constants_other_presets(name, sign):
    r = lts.structure_constants_check(kloop.preset(name))
    assert r.passed and r.detail["sign_of_J_mu_nu_in_bracket"] == sign


def test_jacobson_closure(dec):
    assert lts.jacobson_closure_check(dec).passed


def test_axioms_on_basis_exact(dec):
    for r in lts.check_lts_axioms_basis(dec):
        assert r.passed and r.max_residual == 0.0


def test_axioms_random(dec):
    for r in lts.check_lts_axioms(dec, samples=200, seed=4):
        assert r.passed, r.to_dict()


def test_trilinear_is_double_commutator(rng):
    dec = kloop.desitter()
    x, y, z = (lts.random_lts_element(dec, rng) for _ in range(3))
    t = lts.trilinear(x, y, z)
    np.testing.assert_allclose(t, (x @ y - y @ x) @ z - z @ (x @ y - y @ x), atol=1e-15)
    assert lts.in_minus_space(t, dec, tol=1e-14)


def test_finite_difference_products_converge(dec):
    tri, bol = lts.check_loop_derivatives(dec, seed=1)
    assert tri.passed and tri.detail["order"] >= 1.8
    assert bol.passed and bol.detail["order"] >= 1.8


def test_step_size_guard():
    dec = kloop.desitter()
    x = lts.lts_basis(dec)[0]
    with pytest.raises(ValueError):
        lts.loop_derivative_products(x, x, x, 0.5, dec)
