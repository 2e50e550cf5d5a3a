import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings, strategies as st

from snyder_kloop import ambient
from snyder_kloop.errors import BranchCutError

DS = ambient.Metric((1, -1, -1, -1, -1))


def test_generator_entries_and_antisymmetry():
    j = ambient.generator(4, 1, DS)
    assert j[4, 1] == -1 and j[1, 4] == 1  # J_ab[a,b] = eta_b, J_ab[b,a] = -eta_a
    assert np.array_equal(ambient.generator(1, 4, DS), -j)
    assert len(ambient.generator_basis(DS)) == 10


def test_generators_preserve_metric():
    eta = DS.eta
    for _, j in ambient.generator_basis(DS):
        assert np.array_equal(j.T @ eta + eta @ j, np.zeros((5, 5)))


def test_transvection_commutator_sign():
    # [J_4mu, J_4nu] = -eta_44 J_munu, i.e. +J_munu for the de Sitter signs
    for mu in range(4):
        for nu in range(4):
            if mu != nu:
                c = ambient.commutator(ambient.generator(4, mu, DS), ambient.generator(4, nu, DS))
                assert np.array_equal(c, -DS.signs[4] * ambient.generator(mu, nu, DS))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 2.0))
def test_expm_logm_against_scipy(seed, size):
    x = ambient.random_algebra_element(DS, np.random.default_rng(seed), size)
    g = ambient.expm(x)
    np.testing.assert_allclose(g, sla.expm(x), atol=1e-12, rtol=1e-12)
    assert ambient.is_group_element(g, DS)
    np.testing.assert_allclose(ambient.logm(g), sla.logm(g).real, atol=1e-9)


def test_group_inverse():
    g = ambient.expm(ambient.random_algebra_element(DS, np.random.default_rng(1), 1.0))
    np.testing.assert_allclose(ambient.group_inverse(g, DS) @ g, np.eye(5), atol=1e-13)


def test_logm_refuses_branch_cut():
    rot = np.eye(5)
    rot[1:3, 1:3] = [[-1, 0], [0, -1]]
    with pytest.raises(BranchCutError):
        ambient.logm(rot)


def test_metric_validation():
    with pytest.raises(ValueError):
        ambient.Metric((1, 2))
    with pytest.raises(ValueError):
        ambient.Metric((1,))
