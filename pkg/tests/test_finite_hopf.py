from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snyder_kloop import finite_hopf as fh
from snyder_kloop.errors import ActionError, FactorizationError, TableError


@pytest.fixture(scope="module")
def kl21():
    return fh.fixture("kloop21"), fh.fixture_automorphisms("kloop21")


def test_fixture_invariants():
    for name in fh.FIXTURES:
        L = fh.fixture(name)  # constructor enforces Latin square and identity
        data = fh.fixture_data(name)
        assert data["order"] == L.order


def test_classification_examples(kl21):
    assert all(fh.classify_loop(fh.fixture("z5")).values())
    s3 = fh.classify_loop(fh.fixture("s3"))
    assert s3["group"] and not s3["aip"] and not s3["abelian_group"]
    k = fh.classify_loop(kl21[0])
    assert k["kloop"] and not k["group"] and not k["moufang"]


def test_classification_consistency():
    for name in fh.FIXTURES:
        f = fh.classify_loop(fh.fixture(name))
        if f["moufang"]:
            assert f["left_bol"] and f["right_bol"]
        if f["group"]:
            assert f["moufang"] and f["lip"] and f["rip"]


def test_stored_witnesses(kl21):
    assert fh.identity_failures(fh.fixture("s3"))["aip"] == (1, 2)
    w = fh.associator_witness(kl21[0])
    assert w == fh.fixture_data("kloop21")["associator_witness"]
    assert w["(ab)c"] != w["a(bc)"]


def test_rebuild_matches_shipped_fixture(kl21):
    data = fh.fixture_data("kloop21")["construction"]
    G = fh.semidirect_group(data["p"], data["A"])
    gl = fh.build_kloop_from_group(G, fh.linear_sigma(G, data["M"], data["p"]))
    assert np.array_equal(gl.loop.table, kl21[0].table)
    assert gl.precession.tolist() == fh.fixture_data("kloop21")["precession"]
    assert fh.gyrocommutativity_failure(gl) is None
    L, h = gl  # unpacks as (loop, precession)
    assert L.order == 21 and h.shape == (21, 21)


def test_abelian_group_builds_itself():
    G = fh.cyclic_group(7)
    L, h = fh.build_kloop_from_group(G, G.inverse)
    assert np.array_equal(L.table, G.table) and not h.any()


def test_order21_group_only_gives_z7():
    survey = fh.order21_involution_survey()
    assert survey and all(s["loop_order"] == 7 and s["abelian_group"] for s in survey)


def test_factorization_errors():
    G = fh.cyclic_group(6)
    with pytest.raises(FactorizationError):
        fh.build_kloop_from_group(G, G.inverse)
    G5 = fh.cyclic_group(5)
    with pytest.raises(FactorizationError):
        fh.build_kloop_from_group(G5, np.array([0, 2, 4, 1, 3]))  # doubling: not an involution


@pytest.mark.parametrize("table", [[[0, 1], [1, 1]], [[1, 0], [0, 1]], [[0, 1, 2], [1, 2, 0]], [[0, 5], [5, 0]]])
def test_malformed_tables(table):
    with pytest.raises(TableError):
        fh.FiniteLoop.from_dict({"table": table, "identity": 0})


@pytest.mark.parametrize("name", ["z5", "kloop21"])
def test_good_fixtures_pass_everything(name):
    L, U = fh.fixture(name), fh.fixture_automorphisms(name)
    suite = fh.fixture_suite(L, U)
    assert all(r.passed for r in suite.values()), {k: r.witness for k, r in suite.items()}
    assert suite["khopf_loop"].detail["meta_consistent"]
    assert suite["khopf_coloop"].detail["duality"]


def test_kloop_coloop_is_not_coassociative(kl21):
    res = fh.verify_khopf_coloop(kl21[0])
    recs = {r["name"]: r for r in res.detail["records"]}
    assert recs["coassociative"]["status"] == "fail"
    assert recs["bol_coidentity"]["status"] == "pass"
    assert recs["bol_coidentity_literal"]["status"] == "fail"  # informational only


def test_negative_controls():
    s3 = fh.fixture_suite(fh.fixture("s3"), fh.fixture_automorphisms("s3"))
    assert s3["khopf_loop"].witness["identity"] == "antipode_multiplicative"
    assert s3["snyder_hopf"].witness["identity"] == "antipode_comultiplicative"
    bad = fh.fixture_suite(fh.fixture("corrupted_z6"))
    assert bad["khopf_loop"].witness == {"identity": "hopf_bol", "tuple": {"a": 1, "b": 0, "c": 2}}
    assert not bad["khopf_coloop"].passed


def test_meta_no_fixture_passes_axioms_but_fails_derived():
    for name in fh.FIXTURES:
        L = fh.fixture(name)
        assert fh.verify_khopf_loop(L).detail["meta_consistent"]
        assert fh.verify_khopf_coloop(L).detail["meta_consistent"]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(), min_size=3, max_size=3), st.lists(st.fractions(), min_size=3, max_size=3))
def test_kl_linear_extensions(ca, cb):
    L = fh.fixture("kloop21")
    ops = fh.kl_ops(L)
    x = fh.LoopAlgebraVector({1: ca[0], 5: ca[1], 9: ca[2]}).clean()
    y = fh.LoopAlgebraVector({2: cb[0], 7: cb[1], 20: cb[2]}).clean()
    c = fh.LoopAlgebraVector.basis(3)
    # counit multiplicative, antipode multiplicative (not anti-)
    assert ops.counit(ops.product(x, y)) == ops.counit(x) * ops.counit(y)
    assert ops.antipode(ops.product(x, y)) == ops.product(ops.antipode(x), ops.antipode(y))
    # Bol identity through the coproduct for a general (non-basis) x
    lhs = ops.sweedler(x, lambda a1, a2: ops.product(fh.LoopAlgebraVector.basis(a1), ops.product(
        y, ops.product(fh.LoopAlgebraVector.basis(a2), c))))
    rhs = ops.sweedler(x, lambda a1, a2: ops.product(ops.product(fh.LoopAlgebraVector.basis(a1), ops.product(
        y, fh.LoopAlgebraVector.basis(a2))), c))
    assert lhs == rhs
    assert ops.product(ops.unit(), x) == x


def test_function_coproduct_duality(kl21):
    L = kl21[0]
    f = fh.DualFunctionVector([Fraction(i * i, 3) for i in range(L.order)])
    d = fh.coproduct_function(L, f)
    assert all(d[a][b] == f(int(L.table[a, b])) for a in range(21) for b in range(21))
    assert fh.counit_function(L, f) == f(L.identity)


def test_cross_product_structure_maps(kl21):
    L, U = kl21
    S = fh.build_snyder_hopf(L, U)
    X = S.basis(3, 2).scale(Fraction(2, 3)) + S.basis(0, 1)
    Y = S.basis(5, 4) + S.basis(3, 0).scale(-1)
    assert S.antipode(S.product(X, Y)) == S.product(S.antipode(Y), S.antipode(X))
    assert S.product(S.unit(), X) == X and S.product(X, S.unit()) == X
    assert S.counit(S.basis(L.identity, 3)) == 1 and S.counit(S.basis(1, 0)) == 0
    assert S.star(S.star(X)) == X


def test_trivial_group_reduces_to_coloop():
    L = fh.fixture("kloop21")
    S = fh.build_snyder_hopf(L)
    assert S.m == 1 and fh.verify_snyder_hopf(S).passed


def test_non_automorphism_refused(kl21):
    L = kl21[0]
    swap = np.arange(21)
    swap[[1, 2]] = [2, 1]
    with pytest.raises(ActionError):
        fh.build_snyder_hopf(L, [np.arange(21), swap])


def test_literal_action_breaks_associativity_for_nonabelian_u():
    s3 = fh.fixture("s3")
    S = fh.build_snyder_hopf(s3, fh.fixture_automorphisms("s3"), action="literal")
    recs = {r["name"]: r for r in fh.verify_snyder_hopf(S).detail["records"]}
    assert recs["product_associative"]["status"] == "fail"
    left = fh.build_snyder_hopf(s3, fh.fixture_automorphisms("s3"))
    recs = {r["name"]: r for r in fh.verify_snyder_hopf(left).detail["records"]}
    assert recs["product_associative"]["status"] == "pass"


def test_star_commutes_with_antipode_observed(kl21):
    res = fh.verify_snyder_hopf(fh.build_snyder_hopf(*kl21))
    recs = {r["name"]: r for r in res.detail["records"]}
    assert recs["star_commutes_with_antipode"]["status"] == "pass"
    assert recs["star_antimultiplicative"]["status"] == "pass"


def test_discrete_action(kl21):
    L, U = kl21
    n = L.order
    e = L.identity
    psi = fh.invariant_weight(L, U, fh.DualFunctionVector([Fraction(i + 2, 5) for i in range(n)]))
    delta = fh.DualFunctionVector.delta(n, e)
    assert fh.discrete_action(L, delta, psi, lam=0) == psi(e) * delta(e)
    phi = fh.DualFunctionVector([Fraction((3 * i) % 5 + 1, i + 1) for i in range(n)])
    res = fh.discrete_action_invariance(L, U, phi, psi, lam=Fraction(2, 7))
    assert res.passed and res.max_residual == 0.0
    assert any(d != 0 for d in res.detail["pointwise_translation_differences"])


def test_discrete_action_detects_noninvariant_weight(kl21):
    L, U = kl21
    psi = fh.DualFunctionVector([Fraction(i) for i in range(L.order)])
    phi = fh.DualFunctionVector.constant(L.order)
    assert not fh.discrete_action_invariance(L, U, phi, psi).passed
