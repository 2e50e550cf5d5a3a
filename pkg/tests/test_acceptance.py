"""Acceptance criteria AC-1 .. AC-10.

Run as a script for one PASS/FAIL line per criterion::

    python3 tests/test_acceptance.py

Under pytest each criterion is its own test.
"""
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from snyder_kloop import finite_hopf as fh
from snyder_kloop import CheckResult, kloop, lts, snyder, star

SEED = 20240611
PRESETS = ("desitter", "lorentz", "sphere")
# associator norms at a = c = exp(0.6 J_r,mu0), b = exp(0.6 J_r,mu1); see test_kloop.py
WITNESS = {"desitter": 0.1856881167333634, "lorentz": 0.22995943474221173, "sphere": 0.1804035223830127}


def _summary(results):
    bad = [r for r in results if not r.passed]
    worst = max((r.max_residual for r in results), default=0.0)
    if bad:
        return False, "; ".join(f"{r.name}: residual {r.max_residual:.3g} witness {r.witness}" for r in bad)
    return True, f"{len(results)} checks, worst residual {worst:.3g}"


def ac1():
    t0 = time.perf_counter()
    res = [kloop.check_factorization_batch(kloop.preset(n), 1000, SEED, tol=1e-10) for n in PRESETS]
    elapsed = time.perf_counter() - t0
    ok, msg = _summary(res)
    return ok and elapsed < 5.0, f"{msg}, {elapsed:.2f} s"


def ac2():
    res, norms = [], []
    for name in PRESETS:
        dec = kloop.preset(name)
        res += [kloop.check_identity_batch(k, dec, 1000, SEED, tol=1e-9) for k in kloop.IDENTITY_KINDS]
        gens = dec.transvection_generators()
        a, b, c = (kloop.exp_transvection(0.6 * gens[i][1], dec) for i in (0, 1, 0))
        norm = kloop.associator_norm(a, b, c)
        ok = norm > 1e-3 and abs(norm - WITNESS[name]) <= 1e-10 * WITNESS[name]
        res.append(CheckResult(f"{name}.witness", ok, 0.0, witness=norm))
        norms.append(norm)
    ok, msg = _summary(res)
    return ok, f"{msg}; associator witnesses {', '.join(f'{v:.4f}' for v in norms)}"


def ac3():
    return _summary(snyder.check_velocity_batch(1000, SEED, tol=1e-10, collinear_tol=1e-12))


def ac4():
    return _summary([snyder.check_closed_form_batch(1000, SEED, tol=1e-9)])


def ac5():
    r = star.check_first_order(1.0, "printed", tol=1e-6, min_order=4.8)
    d = r.detail
    msg = (f"printed formula: max cubic mismatch {r.max_residual:.3g}, remainder order "
           f"{d.get('order', float('nan')):.2f}")
    if not r.passed:
        msg += f", witness {r.witness}"
        cov = star.check_first_order(1.0, "covariant", tol=1e-6, min_order=4.8)
        msg += (f" (covariant form: mismatch {cov.max_residual:.3g}, "
                f"order {cov.detail.get('order', float('nan')):.2f})")
    return r.passed, msg


def ac6():
    res = []
    for name in PRESETS:
        dec = kloop.preset(name)
        if name == "desitter":
            res.append(lts.structure_constants_check(dec))
        res += lts.check_lts_axioms_basis(dec)
        res += lts.check_lts_axioms(dec, 1000, SEED, tol=1e-12)
        res += lts.check_loop_derivatives(dec, seed=SEED)
    return _summary(res)


def ac7():
    return _summary(star.check_star_products(star.expand_sum(1.0), sign=-1.0, tol=1e-6))


def ac8():
    t0 = time.perf_counter()
    res = []
    for name in ("z5", "kloop21"):
        suite = fh.fixture_suite(fh.fixture(name), fh.fixture_automorphisms(name))
        res += [r for r in suite.values()]
    s3 = fh.fixture_suite(fh.fixture("s3"), fh.fixture_automorphisms("s3"))
    aip = fh.identity_failures(fh.fixture("s3")).get("aip")
    ok_s3 = aip is not None and not s3["snyder_hopf"].passed and s3["snyder_hopf"].witness is not None
    res.append(CheckResult("s3.aip_witness", ok_s3, 0.0, witness=s3["snyder_hopf"].witness))
    bad = fh.fixture_suite(fh.fixture("corrupted_z6"))
    ok_bad = not bad["khopf_loop"].passed and bad["khopf_loop"].witness is not None
    res.append(CheckResult("corrupted.witness", ok_bad, 0.0, witness=bad["khopf_loop"].witness))
    elapsed = time.perf_counter() - t0
    ok, msg = _summary(res)
    return ok and elapsed < 60.0, f"{msg}, {elapsed:.2f} s"


def ac9():
    res = star.check_action_symmetries(n_samples=20000, seed=SEED, phase_samples=1000)
    L, U = fh.fixture("kloop21"), fh.fixture_automorphisms("kloop21")
    n = L.order
    phi = fh.DualFunctionVector([Fraction(a + 1, n + 1) for a in range(n)])
    psi = fh.invariant_weight(L, U, fh.DualFunctionVector([Fraction(a * a + 1, n) for a in range(n)]))
    res.append(fh.discrete_action_invariance(L, U, phi, psi, lam=Fraction(1, 2)))
    est = star.evaluate_action(n_samples=20000, seed=SEED)
    z = abs(est.bracketing_difference) / est.bracketing_difference_se
    res.append(CheckResult("action.bracketing_observable", z > 3.0, 0.0, witness=z))
    ok, msg = _summary(res)
    return ok, f"{msg}; bracketing difference {z:.1f} standard errors"


def ac10():
    def snapshot():
        dec = kloop.preset("lorentz")
        out = [kloop.check_factorization_batch(dec, 50, SEED).to_dict(),
               kloop.check_identity_batch("left_bol", dec, 50, SEED).to_dict(),
               snyder.check_closed_form_batch(50, SEED).to_dict()]
        out += [r.to_dict() for r in snyder.check_velocity_batch(50, SEED)]
        out += [r.to_dict() for r in lts.check_lts_axioms(dec, 50, SEED)]
        out += [r.to_dict() for r in lts.check_loop_derivatives(dec, seed=SEED)]
        out += [r.to_dict() for r in star.check_action_symmetries(n_samples=2000, seed=SEED, phase_samples=50)]
        out.append(star.evaluate_action(n_samples=2000, seed=SEED).to_dict())
        out.append(star.remainder_order(1.0, "covariant", seed=SEED))
        return out

    first, second = snapshot(), snapshot()
    return first == second, f"{len(first)} randomized records compared"


CRITERIA = [ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"AC-{i}" for i in range(1, 11)])
def test_acceptance(criterion):
    ok, msg = criterion()
    assert ok, msg


def main() -> int:
    failed = 0
    for i, criterion in enumerate(CRITERIA, 1):
        ok, msg = criterion()
        failed += not ok
        print(f"AC-{i} {'PASS' if ok else 'FAIL'}: {msg}", flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
