"""Command-line front end: ``snyder-kloop {sum,verify,hopf,action}``.

Every command writes JSON.  Exit codes: 0 all checks pass, 1 usage error,
2 domain error (chart, denominator, malformed table), 3 verification failure.
The default seed is 0 unless ``SNYDER_SEED`` is set.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import finite_hopf, kloop, lts, snyder, star
from .checks import FAIL, CheckResult
from .errors import SnyderError, TableError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_FAIL = 0, 1, 2, 3

CONVENTIONS = {
    "signature": "ambient (+,-,-,-,-), stabilizer block (+,-,-,-); p.p = -eta_block(p, p), "
                 "Gamma = 1/sqrt(1 + p.p/kappa^2) = pi_4",
    "generators": "J_ab[a, b] = eta_b, J_ab[b, a] = -eta_a; [J_4mu, J_4nu] = +J_munu on de Sitter",
    "star_triple_sign": -1,
    "star_triple_form": "(x_mu * x_nu) * x_alpha - x_mu * (x_nu * x_alpha) = "
                        "-(eta_nualpha x_mu - eta_mualpha x_nu)/kappa^2, eta = (+,-,-,-)",
    "cross_product_action": "(u > f)(a) = f(u^-1 a), a left action",
    "first_order_formula": "printed cubic-order formula reported as-is; the covariant form is what "
                           "the exact sum reproduces",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("SNYDER_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(_usage(f"SNYDER_SEED must be an integer, got {raw!r}"))


def _usage(msg: str) -> int:
    print(f"snyder-kloop: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump(data) -> str:
    return json.dumps(_jsonable(data), indent=2, sort_keys=True)


def _emit(data: dict, out: str | None):
    text = _dump(data) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _required_failed(records: list[dict]) -> bool:
    return any(r["status"] == FAIL and not r.get("detail", {}).get("informational") for r in records)


def _report(suite: str, results: list[CheckResult], seed: int, samples: int, t0: float, **extra) -> dict:
    records = [r.to_dict() for r in results]
    return {"suite": suite, "conventions": CONVENTIONS, "records": records, "seed": seed,
            "samples": samples, "all_pass": not _required_failed(records),
            "wall_time": round(time.perf_counter() - t0, 3), **extra}


def _domain_error(exc: Exception) -> int:
    print(_dump({"error": {"type": type(exc).__name__, "message": str(exc)}}))
    return EXIT_DOMAIN


# ---------------------------------------------------------------------------
# sum


def cmd_sum(args) -> int:
    p, q, kappa = args.p, args.q, args.kappa
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            return _usage(f"cannot read --input: {exc}")
        kappa = float(data.get("kappa", kappa))
        p = data.get("p", p)
        q = data.get("q", q)
    if p is None or q is None:
        return _usage("both --p and --q are required (or an --input file with 'p' and 'q')")
    if not kappa > 0:
        return _usage("--kappa must be positive")
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != (4,) or q.shape != (4,):
        return _usage("momenta must have 4 components")
    methods = {
        "exact": lambda: snyder.sum_exact(p, q, kappa),
        "closed": lambda: snyder.sum_closed_form(p, q, kappa)[0],
        "first-order": lambda: snyder.sum_first_order(p, q, kappa, form="printed"),
    }
    try:
        if args.method != "all":
            value = methods[args.method]()
            _emit({"method": args.method, "kappa": kappa, "p": p, "q": q, "p_sum": value}, None)
            return EXIT_OK
        values = {name: fn() for name, fn in methods.items()}
    except SnyderError as exc:
        return _domain_error(exc)
    values["first-order-covariant"] = snyder.sum_first_order(p, q, kappa, form="covariant")
    agreement = {
        f"{a}|{b}": float(np.max(np.abs(values[a] - values[b])))
        for a, b in (("exact", "closed"), ("exact", "first-order"), ("exact", "first-order-covariant"))
    }
    _emit({"method": "all", "kappa": kappa, "p": p, "q": q, "p_sum": values["exact"],
           "values": values, "agreement": agreement}, None)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _suite_kloop(dec, samples, seed, tol) -> list[CheckResult]:
    out = [kloop.check_factorization_batch(dec, samples, seed)]
    out += [kloop.check_identity_batch(kind, dec, samples, seed, tol) for kind in kloop.IDENTITY_KINDS]
    # nonassociativity: largest associator over a few fixed draws
    rng = np.random.default_rng([seed, 1, 2])  # stream disjoint from the per-trial ones
    best = 0.0
    for _ in range(16):
        a, b, c = (kloop.random_transvection(dec, rng) for _ in range(3))
        try:
            best = max(best, kloop.associator_norm(a, b, c))
        except SnyderError:
            continue
    out.append(CheckResult(f"{dec.name}.nonassociativity", best > 1e-3, best, samples=16,
                           anchor="K-loop", detail={"threshold": 1e-3}))
    if dec.name == "lorentz":
        out += snyder.check_velocity_batch(samples, seed)
    return out


def _suite_lts(dec, samples, seed, tol) -> list[CheckResult]:
    out = []
    if dec.name == "desitter":
        out.append(lts.structure_constants_check(dec))
    out.append(lts.jacobson_closure_check(dec))
    out += lts.check_lts_axioms_basis(dec)
    out += lts.check_lts_axioms(dec, samples, seed, tol=min(tol, 1e-12))
    out += lts.check_loop_derivatives(dec, seed=seed)
    return out


def _suite_star(dec, samples, seed, tol) -> list[CheckResult]:
    exp = star.expand_sum(1.0)
    printed = star.check_first_order(1.0, "printed", expansion=exp)
    printed.detail["informational"] = True
    out = [star.check_first_order(1.0, "covariant", expansion=exp), printed]
    out += star.check_star_products(exp)
    out.append(snyder.check_closed_form_batch(samples, seed))
    out += star.check_action_symmetries(n_samples=max(20000, 20 * samples), seed=seed,
                                        phase_samples=samples)
    return out


SUITES = {"kloop": _suite_kloop, "lts": _suite_lts, "star": _suite_star}


def cmd_verify(args) -> int:
    if args.samples <= 0:
        return _usage("--samples must be positive")
    if not args.tol > 0:
        return _usage("--tol must be positive")
    seed = args.seed if args.seed is not None else _default_seed()
    t0 = time.perf_counter()
    dec = kloop.preset(args.decomposition)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        results += SUITES[name](dec, args.samples, seed, args.tol)
    report = _report(args.suite, results, seed, args.samples, t0, decomposition=dec.name, tol=args.tol)
    _emit(report, args.out)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# hopf


def _default_fields(L: finite_hopf.FiniteLoop, U):
    n = L.order
    phi = finite_hopf.DualFunctionVector([Fraction(a + 1, n + 1) for a in range(n)])
    psi = finite_hopf.invariant_weight(
        L, U, finite_hopf.DualFunctionVector([Fraction(a * a + 1, n) for a in range(n)]))
    return phi, psi


def cmd_hopf(args) -> int:
    t0 = time.perf_counter()
    try:
        if args.fixture:
            data = finite_hopf.fixture_data(args.fixture)
            L = finite_hopf.FiniteLoop.from_dict(data)
        else:
            with open(args.table, encoding="utf-8") as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise TableError("expected a JSON object")
            L = finite_hopf.FiniteLoop.from_dict(data)
    except (json.JSONDecodeError, SnyderError) as exc:
        return _domain_error(exc)
    except OSError as exc:
        return _usage(str(exc))
    U = None
    if args.build_cross == "auto":
        U = data.get("automorphisms") or [list(range(L.order))]
    suite = finite_hopf.fixture_suite(L, U, build_cross=args.build_cross == "auto")
    results = list(suite.values())
    if "snyder_hopf" in suite:
        phi, psi = _default_fields(L, U)
        results.append(finite_hopf.discrete_action_invariance(L, U, phi, psi, lam=Fraction(1, 2)))
    report = _report("hopf", results, seed=0, samples=L.order, t0=t0, loop=L.name, order=L.order,
                     flags=finite_hopf.classify_loop(L))
    _emit(report, args.out)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# action


def cmd_action(args) -> int:
    if not (args.kappa > 0 and args.width > 0 and args.samples > 0):
        return _usage("--kappa, --width and --samples must be positive")
    seed = args.seed if args.seed is not None else _default_seed()
    t0 = time.perf_counter()
    profiles = star.default_profiles(args.width, args.kappa)
    est = star.evaluate_action(profiles, mass=args.mass, coupling=args.lam, n_samples=args.samples,
                               seed=seed, kappa=args.kappa, width=args.width)
    checks = star.check_action_symmetries(profiles, n_samples=args.samples, seed=seed, kappa=args.kappa,
                                          mass=args.mass, phase_samples=min(args.samples, 1000))
    body = est.to_dict()
    if args.lam == 0:
        for key in ("cubic_inner", "cubic_inner_se", "cubic_outer", "cubic_outer_se",
                    "bracketing_difference", "bracketing_difference_se"):
            body[key] = None
        observable = None
    else:
        observable = abs(est.bracketing_difference) > 3 * est.bracketing_difference_se
    report = _report("action", checks, seed, args.samples, t0, kappa=args.kappa, mass=args.mass,
                     coupling=args.lam, width=args.width, estimate=body,
                     nonassociativity_observable=observable)
    _emit(report, None)
    return EXIT_OK if report["all_pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="snyder-kloop", description="Snyder momentum K-loop toolkit")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sum", help="add two Snyder momenta")
    s.add_argument("--kappa", type=float, default=1.0)
    s.add_argument("--method", choices=["exact", "closed", "first-order", "all"], default="exact")
    s.add_argument("--p", type=float, nargs=4, metavar="P")
    s.add_argument("--q", type=float, nargs=4, metavar="Q")
    s.add_argument("--input", help="JSON file with kappa, p and q")
    s.set_defaults(func=cmd_sum)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=["kloop", "lts", "star", "all"], default="kloop")
    v.add_argument("--decomposition", choices=sorted(kloop.PRESETS), default="desitter")
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hopf", help="verify the Hopf structures of a Cayley table")
    src = h.add_mutually_exclusive_group(required=True)
    src.add_argument("--table", help="Cayley table JSON")
    src.add_argument("--fixture", choices=finite_hopf.FIXTURES, help="shipped fixture")
    h.add_argument("--build-cross", choices=["auto", "none"], default="auto")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hopf)

    a = sub.add_parser("action", help="Monte-Carlo estimate of the scalar action")
    a.add_argument("--kappa", type=float, default=1.0)
    a.add_argument("--mass", type=float, default=1.0)
    a.add_argument("--lambda", dest="lam", type=float, default=1.0)
    a.add_argument("--width", type=float, default=0.1)
    a.add_argument("--samples", type=int, default=20000)
    a.add_argument("--seed", type=int, default=None)
    a.set_defaults(func=cmd_action)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SnyderError as exc:
        return _domain_error(exc)


if __name__ == "__main__":
    sys.exit(main())
