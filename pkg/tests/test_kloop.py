import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings, strategies as st

from snyder_kloop import ambient, kloop
from snyder_kloop.errors import ChartError

# associator |(ab)c - a(bc)| for a = c = exp(0.6 J_r,mu0), b = exp(0.6 J_r,mu1);
# frozen after agreeing with the scipy factorization below
WITNESS = {"desitter": 0.1856881167333634, "lorentz": 0.22995943474221173, "sphere": 0.1804035223830127}


def _witness_triple(dec):
    gens = dec.transvection_generators()
    return [kloop.exp_transvection(0.6 * gens[i][1], dec) for i in (0, 1, 0)]


def _scipy_loop_mul(x, y, dec):
    """Oracle product: a = sqrt(g sigma(g)^-1) with scipy's principal square root."""
    g = x @ y
    s = dec.involution.matrix
    sq = g @ np.linalg.inv(s @ g @ s)
    return sla.sqrtm(sq).real


def test_stored_nonassociativity_witness(dec):
    a, b, c = _witness_triple(dec)
    norm = kloop.associator_norm(a, b, c)
    assert norm == pytest.approx(WITNESS[dec.name], rel=1e-10)
    assert norm > 1e-3
    ab = _scipy_loop_mul(a.g, b.g, dec)
    bc = _scipy_loop_mul(b.g, c.g, dec)
    oracle = np.linalg.norm(_scipy_loop_mul(ab, c.g, dec) - _scipy_loop_mul(a.g, bc, dec))
    assert norm == pytest.approx(oracle, rel=1e-8)


def test_factorization_properties(dec, rng):
    for _ in range(20):
        g = kloop.random_group_element(dec, rng)
        f = kloop.factorize(g, dec)
        assert f.residual < 1e-12
        assert kloop.transvection_defect(f.a.g, dec) < 1e-12
        assert f.stabilizer_defect < 1e-12
        assert ambient.is_group_element(f.h, dec.metric)


def test_factorization_is_unique_under_stabilizer_twist(dec, rng):
    a = kloop.random_transvection(dec, rng)
    # any stabilizer element: exp of a +1 eigenspace combination
    _, plus = kloop.split_algebra(ambient.random_algebra_element(dec.metric, rng, 0.8), dec)
    h = ambient.expm(plus)
    f = kloop.factorize(a.g @ h, dec)
    np.testing.assert_allclose(f.a.g, a.g, atol=1e-12)
    np.testing.assert_allclose(f.h, h, atol=1e-12)


def test_identity_and_inverse(dec, rng):
    a = kloop.random_transvection(dec, rng)
    e = kloop.identity(dec)
    np.testing.assert_allclose(kloop.mul(a, e).g, a.g, atol=1e-13)
    np.testing.assert_allclose(kloop.mul(e, a).g, a.g, atol=1e-13)
    np.testing.assert_allclose(kloop.mul(a, kloop.loop_inverse(a)).g, np.eye(dec.dim), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(kloop.IDENTITY_KINDS),
       st.sampled_from(sorted(kloop.PRESETS)))
def test_identities_hypothesis(seed, kind, name):
    dec = kloop.preset(name)
    rng = np.random.default_rng(seed)
    a, b, c = (kloop.random_transvection(dec, rng) for _ in range(3))
    res = kloop.check_identity(kind, a, b, c)
    assert res.status in ("pass", "inconclusive")


def test_identity_batch_reproducible():
    dec = kloop.preset("desitter")
    r1 = kloop.check_identity_batch("left_bol", dec, 20, seed=3)
    r2 = kloop.check_identity_batch("left_bol", dec, 20, seed=3)
    assert r1.passed and r1.max_residual == r2.max_residual


def test_gyrocommutativity_uses_precession(dec, rng):
    a, b = kloop.random_transvection(dec, rng), kloop.random_transvection(dec, rng)
    ab, ba = kloop.mul(a, b), kloop.mul(b, a)
    h = kloop.precession(a, b)
    np.testing.assert_allclose(kloop.conjugate(h, ba).g, ab.g, atol=1e-11)


def test_chart_violation_is_refused():
    dec = kloop.preset("sphere")
    gens = dec.transvection_generators()
    far = ambient.expm(2.0 * gens[0][1])  # rotation by 2 rad leaves the upper chart
    with pytest.raises(ChartError):
        kloop.factorize(far, dec)


def test_factorization_batch():
    r = kloop.check_factorization_batch(kloop.preset("lorentz"), 50, seed=1)
    assert r.passed and r.inconclusive == 0
