import itertools

import numpy as np
import pytest

from snyder_kloop import snyder, star
from snyder_kloop.errors import DegreeError


@pytest.fixture(scope="module")
def expansion():
    return star.expand_sum(1.0)


def test_expansion_cross_check(expansion):
    assert expansion.cross_check < 1e-8
    np.testing.assert_array_equal(expansion.linear[:, :, 0], np.eye(4))
    np.testing.assert_array_equal(expansion.linear[:, :, 1], np.eye(4))
    assert not any(np.any(v) for v in expansion.quadratic.values())


def test_expansion_matches_covariant_formula(expansion):
    worst, diffs = star.compare_expansions(expansion, star.printed_expansion(1.0, "covariant"))
    assert worst < 1e-6 and not diffs


def test_printed_formula_mismatch_is_recorded(expansion):
    worst, diffs = star.compare_expansions(expansion, star.printed_expansion(1.0, "printed"))
    assert len(diffs) == 12 and worst == pytest.approx(0.5, abs=1e-6)


def test_expansion_scales_with_kappa(expansion):
    e = star.expand_sum(2.0)
    assert star.compare_expansions(e, star.printed_expansion(2.0, "covariant"))[0] < 1e-6
    for m, v in expansion.nonzero_cubic().items():
        np.testing.assert_allclose(e.cubic[m], v / 4.0, atol=1e-7)


def test_plane_waves_compose_like_momenta():
    p, q = np.array([0.2, 0.1, 0, 0]), np.array([0.0, -0.3, 0.2, 0.1])
    w = star.star_plane_waves(star.plane_wave(p), star.plane_wave(q))
    np.testing.assert_allclose(w.momenta()[0], snyder.sum_exact(p, q), atol=1e-14)


def test_coordinate_commutators_vanish(expansion):
    for mu, nu in itertools.product(range(4), repeat=2):
        assert not star.star_commutator(mu, nu, expansion).coeffs


def test_triple_product_structure(expansion):
    res = star.check_star_products(expansion)
    assert all(r.passed for r in res), [r.to_dict() for r in res]
    # the opposite overall sign is rejected
    flipped = star.check_star_products(expansion, sign=+1.0)
    assert not flipped[2].passed


def test_degree_guard(expansion):
    x = star.CoordinatePolynomial.coordinate(0)
    x4 = star.star_monomials(star.star_monomials(x, x, expansion), x, expansion)
    with pytest.raises(DegreeError):
        star.star_monomials(x4, x, expansion)


def test_measure_density_outside_chart():
    d = star.measure_density(np.array([[0.0, 0, 0, 0], [1.5, 0, 0, 0]]))
    assert d[0] == 0.5 and np.isnan(d[1])


def test_action_estimate_deterministic():
    a = star.evaluate_action(n_samples=5000, seed=11)
    b = star.evaluate_action(n_samples=5000, seed=11)
    assert a.to_dict() == b.to_dict()
    assert a.kinetic > 0


def test_bracketings_differ():
    est = star.evaluate_action(n_samples=50000, seed=0)
    assert abs(est.bracketing_difference) > 3 * est.bracketing_difference_se


def test_action_symmetries():
    res = star.check_action_symmetries(n_samples=20000, seed=2, phase_samples=200)
    assert all(r.passed for r in res), [r.to_dict() for r in res]
