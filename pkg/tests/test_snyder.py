import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snyder_kloop import snyder
from snyder_kloop.errors import ChartError, DenominatorError

P = np.array([0.3, 0.1, -0.2, 0.25])
Q = np.array([-0.1, 0.4, 0.05, -0.3])
# frozen from sum_exact after agreeing with sum_rational and sum_closed_form to 2e-16
SUM_PQ = np.array([0.19814654392195422, 0.4977544791891521, -0.1487017586870144, -0.05073069567262201])
SUM_PQ_K25 = np.array([0.19970055695425537, 0.49964010909591583, -0.1497903683583945, -0.0501194975937025])

momentum = st.lists(st.floats(-0.6, 0.6), min_size=4, max_size=4).map(np.array)


def test_frozen_sums():
    np.testing.assert_allclose(snyder.sum_exact(P, Q), SUM_PQ, atol=1e-13)
    np.testing.assert_allclose(snyder.sum_exact(P, Q, 2.5), SUM_PQ_K25, atol=1e-13)


def test_three_paths_agree():
    np.testing.assert_allclose(snyder.sum_rational(P, Q), SUM_PQ, atol=1e-14)
    np.testing.assert_allclose(snyder.sum_closed_form(P, Q)[0], SUM_PQ, atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(momentum, momentum, st.sampled_from([1.0, 2.5]))
def test_closed_form_matches_exact(p, q, kappa):
    p, q = kappa * p, kappa * q
    try:
        closed, params = snyder.sum_closed_form(p, q, kappa)
        exact = snyder.sum_exact(p, q, kappa)
    except (ChartError, DenominatorError):
        return
    np.testing.assert_allclose(closed, exact, atol=1e-9 * kappa)
    assert set(params) >= {"rho", "beta", "Gamma"}


def test_gamma_and_basepoint():
    assert snyder.gamma(np.zeros(4)) == 1.0
    p = np.array([0.0, 0.3, 0.0, 0.0])
    assert snyder.gamma(p) == pytest.approx(1 / np.sqrt(1 + 0.09))
    assert snyder.point_from_momentum(p)[4] == pytest.approx(snyder.gamma(p))


def test_inverse_and_identity():
    np.testing.assert_allclose(snyder.sum_exact(P, -P), np.zeros(4), atol=1e-14)
    np.testing.assert_allclose(snyder.sum_exact(np.zeros(4), Q), Q, atol=1e-15)


def test_collinear_time_sum():
    p, q = np.array([0.3, 0, 0, 0]), np.array([0.4, 0, 0, 0])
    expected = (p + q) / (1 + snyder.eta_block(p, q))
    np.testing.assert_allclose(snyder.sum_exact(p, q), expected, atol=1e-14)


def test_timelike_chart_limit():
    with pytest.raises(ChartError):
        snyder.sum_exact(np.array([1.2, 0, 0, 0]), np.zeros(4))


def test_first_order_forms_differ_only_at_cubic_order():
    s = 1e-3
    d = snyder.sum_first_order(s * P, s * Q, form="printed") - snyder.sum_first_order(s * P, s * Q, form="covariant")
    assert np.max(np.abs(d)) < 10 * s**3


def test_lorentz_covariance(rng):
    u = snyder.random_lorentz(rng, 0.7)
    lhs = snyder.sum_exact(snyder.lorentz_act(u, P), snyder.lorentz_act(u, Q))
    rhs = snyder.lorentz_act(u, snyder.sum_exact(P, Q))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_velocity_addition_frozen():
    out = snyder.velocity_sum_exact([0.5, 0, 0], [0, 0.5, 0])
    np.testing.assert_allclose(out, [0.5, np.sqrt(0.75) * 0.5, 0.0], atol=1e-14)


def test_velocity_batches():
    for r in snyder.check_velocity_batch(100, seed=2):
        assert r.passed, r.to_dict()


def test_superluminal_refused():
    with pytest.raises(ChartError):
        snyder.velocity_sum_closed_form([1.0, 0, 0], [0.1, 0, 0])
