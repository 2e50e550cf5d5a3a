"""Lie triple system of a symmetric decomposition and its Jacobson embedding.

The triple system is the -1 eigenspace ``l`` of ``x -> s x s`` with
``<X, Y, Z> = [[X, Y], Z]``; the +1 eigenspace ``m`` is the stabilizer algebra
and ``l + m`` is the embedding Lie algebra.  The products can also be read off
the smooth loop by differentiating loop words; ``loop_derivative_products``
does this with finite differences.
"""
from __future__ import annotations

import itertools

import numpy as np

from . import ambient, kloop
from .ambient import commutator
from .checks import CheckResult

_STENCILS = {
    3: np.array([-1.0, 0.0, 1.0]) / 2.0,
    5: np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0,
}


def split(x: np.ndarray, dec: kloop.Decomposition) -> tuple[np.ndarray, np.ndarray]:
    """``(l part, m part)`` of an algebra element."""
    return kloop.split_algebra(np.asarray(x, dtype=float), dec)


def trilinear(x, y, z) -> np.ndarray:
    return commutator(commutator(x, y), z)


def in_minus_space(x: np.ndarray, dec: kloop.Decomposition, tol: float = 0.0) -> bool:
    return bool(np.max(np.abs(ambient.involution_apply(dec.involution, x) + x)) <= tol)


def in_plus_space(x: np.ndarray, dec: kloop.Decomposition, tol: float = 0.0) -> bool:
    return bool(np.max(np.abs(ambient.involution_apply(dec.involution, x) - x)) <= tol)


def lts_basis(dec: kloop.Decomposition) -> list[np.ndarray]:
    return [j for _, j in dec.transvection_generators()]


def stabilizer_basis(dec: kloop.Decomposition) -> list[np.ndarray]:
    r = dec.axis
    return [j for (a, b), j in ambient.generator_basis(dec.metric) if r not in (a, b)]


def random_lts_element(dec: kloop.Decomposition, rng: np.random.Generator, max_norm: float = 1.0) -> np.ndarray:
    basis = lts_basis(dec)
    x = sum(c * j for c, j in zip(rng.standard_normal(len(basis)), basis))
    return x * (max_norm / np.linalg.norm(x))


def _axiom_residuals(u, v, x, y, z) -> dict:
    t = trilinear
    return {
        "antisymmetry": np.linalg.norm(t(x, y, z) + t(y, x, z)),
        "cyclic": np.linalg.norm(t(x, y, z) + t(y, z, x) + t(z, x, y)),
        "derivation": np.linalg.norm(
            t(u, v, t(z, x, y)) - t(t(u, v, z), x, y) - t(z, t(u, v, x), y) - t(z, x, t(u, v, y))
        ),
    }


def check_lts_axioms(dec: kloop.Decomposition, samples: int = 1000, seed: int = 0,
                     tol: float = 1e-12) -> list[CheckResult]:
    """Antisymmetry, the cyclic identity and the derivation identity on random elements.

    Elements are drawn with unit Frobenius norm; residuals are absolute.
    """
    worst = {"antisymmetry": 0.0, "cyclic": 0.0, "derivation": 0.0}
    witness = {}
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        u, v, x, y, z = (random_lts_element(dec, rng) for _ in range(5))
        for name, res in _axiom_residuals(u, v, x, y, z).items():
            if res > worst[name]:
                worst[name] = float(res)
                witness[name] = i
    return [
        CheckResult(f"lts.{name}", worst[name] <= tol, worst[name], samples=samples,
                    witness=None if worst[name] <= tol else {"trial": witness[name]},
                    anchor="Lie triple system axioms")
        for name in worst
    ]


def check_lts_axioms_basis(dec: kloop.Decomposition) -> list[CheckResult]:
    """The three axioms on every tuple of basis generators; integer matrices, so residuals are exact."""
    basis = lts_basis(dec)
    worst = {"antisymmetry": 0.0, "cyclic": 0.0, "derivation": 0.0}
    n = 0
    for x, y, z in itertools.product(basis, repeat=3):
        for name in ("antisymmetry", "cyclic"):
            worst[name] = max(worst[name], _axiom_residuals(x, x, x, y, z)[name])
    for u, v, x, y, z in itertools.product(basis, repeat=5):
        n += 1
        t = trilinear
        res = np.abs(t(u, v, t(z, x, y)) - t(t(u, v, z), x, y) - t(z, t(u, v, x), y) - t(z, x, t(u, v, y))).max()
        worst["derivation"] = max(worst["derivation"], float(res))
    return [CheckResult(f"lts.basis.{k}", v == 0.0, v, samples=n, anchor="Lie triple system axioms")
            for k, v in worst.items()]


def jacobson_closure_check(dec: kloop.Decomposition) -> CheckResult:
    """``[l, l] in m``, ``[m, l] in l``, ``[m, m] in m`` and ``[[X, Y], Z] = <X, Y, Z>`` on the basis."""
    ell = lts_basis(dec)
    m = stabilizer_basis(dec)
    failures = []
    for i, x in enumerate(ell):
        for j, y in enumerate(ell):
            if not in_plus_space(commutator(x, y), dec):
                failures.append(("[l,l]", i, j))
            for k, z in enumerate(ell):
                if not np.array_equal(commutator(commutator(x, y), z), trilinear(x, y, z)):
                    failures.append(("delta", i, j, k))
        for j, y in enumerate(m):
            if not in_minus_space(commutator(y, x), dec):
                failures.append(("[m,l]", j, i))
    for i, x in enumerate(m):
        for j, y in enumerate(m):
            if not in_plus_space(commutator(x, y), dec):
                failures.append(("[m,m]", i, j))
    return CheckResult("lts.jacobson_closure", not failures, float(len(failures)),
                       witness=failures[0] if failures else None,
                       samples=len(ell) ** 3 + len(ell) * len(m) + len(m) ** 2,
                       anchor="Jacobson embedding")


def structure_constants_check(dec: kloop.Decomposition | None = None, kappa: float = 1.0) -> CheckResult:
    """Exact check of the triple product on the transvection generators.

    With ``r`` the reflected axis:
    ``<J_r mu, J_r nu, J_r al> = -eta_rr (eta_nu al J_r mu - eta_mu al J_r nu)``
    (for the de Sitter signature ``-eta_rr = 1``), and ``[J_r mu, J_r nu] = -eta_rr J_mu nu``
    so ``X_mu = J_r mu / kappa`` close on ``J_mu nu / kappa^2``.
    """
    dec = dec or kloop.desitter()
    metric = dec.metric
    eta = metric.signs
    r = dec.axis
    idx = [mu for mu in range(dec.dim) if mu != r]
    s = -eta[r]
    bad = []
    worst_scaled = 0.0
    for mu, nu, al in itertools.product(idx, repeat=3):
        jm, jn, ja = (ambient.generator(r, i, metric) for i in (mu, nu, al))
        expected = s * (eta[nu] * (nu == al) * jm - eta[mu] * (mu == al) * jn)
        if not np.array_equal(trilinear(jm, jn, ja), expected):
            bad.append((mu, nu, al))
    for mu, nu in itertools.product(idx, repeat=2):
        if mu == nu:
            continue
        jm, jn = ambient.generator(r, mu, metric), ambient.generator(r, nu, metric)
        if not np.array_equal(commutator(jm, jn), s * ambient.generator(mu, nu, metric)):
            bad.append((mu, nu))
        xm, xn = jm / kappa, jn / kappa
        scaled = commutator(xm, xn) - s * ambient.generator(mu, nu, metric) / kappa**2
        worst_scaled = max(worst_scaled, float(np.abs(scaled).max()))
    passed = not bad and worst_scaled <= 1e-15 / min(1.0, kappa**2)
    return CheckResult("lts.structure_constants", passed, worst_scaled, witness=bad[0] if bad else None,
                       samples=len(idx) ** 3, anchor="de Sitter triple system",
                       detail={"sign_of_J_mu_nu_in_bracket": s})


def _mixed_derivative(fun, arity: int, dim: int, h: float, stencil: int) -> np.ndarray:
    """Mixed partial ``d^k / dt_1 ... dt_k`` at 0 of a matrix-valued ``fun(t_1, ..., t_k)``."""
    w = _STENCILS[stencil]
    c = len(w) // 2
    out = np.zeros((dim, dim))
    for idx in itertools.product(range(len(w)), repeat=arity):
        weight = np.prod([w[i] for i in idx])
        if weight == 0.0:
            continue
        out += weight * (fun(*[(i - c) * h for i in idx]) - np.eye(dim))
    return out / h**arity


def loop_derivative_products(x1, x2, x3, h: float, dec: kloop.Decomposition,
                             stencil: int = 5) -> tuple[np.ndarray, np.ndarray]:
    """Bol bracket and triple product from derivatives of loop words.

    With ``a_i = exp(t_i X_i)`` (loop elements):

    * bracket: ``-1/2 d^2/dt1 dt2 of (a1.a2).(a2.a1)^-1``, zero for a K-loop
    * triple:  ``-2 d^3/dt1 dt2 dt3 of ((a1.a2).a3).(a1.(a2.a3))^-1``, which
      equals ``[[X1, X2], X3]`` in the real representation (the third derivative
      is ``-1/2 [[X1, X2], X3]`` at leading order)

    Derivatives are tensor products of central stencils (``stencil`` points per
    direction) on the group matrices.
    """
    if not 1e-4 <= h <= 1e-1:
        raise ValueError(f"step size h = {h} outside [1e-4, 1e-1]")
    if stencil not in _STENCILS:
        raise ValueError(f"stencil must be one of {sorted(_STENCILS)}")
    mul, inv = kloop.mul, kloop.loop_inverse

    def lift(t, x):
        return kloop.exp_transvection(t * x, dec)

    def bracket_word(t1, t2):
        a1, a2 = lift(t1, x1), lift(t2, x2)
        return mul(mul(a1, a2), inv(mul(a2, a1))).g

    def associator_word(t1, t2, t3):
        a1, a2, a3 = lift(t1, x1), lift(t2, x2), lift(t3, x3)
        return mul(mul(mul(a1, a2), a3), inv(mul(a1, mul(a2, a3)))).g

    n = dec.dim
    bracket = -0.5 * _mixed_derivative(bracket_word, 2, n, h, stencil)
    triple = -2.0 * _mixed_derivative(associator_word, 3, n, h, stencil)
    return bracket, triple


def measured_order(err_h: float, err_half: float) -> float:
    """Convergence order from errors at ``h`` and ``h/2``."""
    if err_half == 0.0:
        return float("inf")
    return float(np.log2(err_h / err_half))


def check_loop_derivatives(dec: kloop.Decomposition, h: float = 0.1, seed: int = 0,
                           product_rounding: float = 1e-12) -> list[CheckResult]:
    """Convergence of the finite-difference products at ``h`` and ``h/2``.

    The five-point bracket estimate cancels its truncation error exactly for a
    K-loop, so it sits at rounding level for every ``h``; the check requires
    that and measures the convergence order with the three-point stencil.
    Rounding level is ``product_rounding / (h/2)^2``, the loop-product residual
    amplified by the second-difference divisor.
    """
    rounding_floor = product_rounding / (h / 2) ** 2
    rng = np.random.default_rng(seed)
    xs = [random_lts_element(dec, rng) for _ in range(3)]
    exact = trilinear(*xs)
    b1, t1 = loop_derivative_products(*xs, h, dec)
    b2, t2 = loop_derivative_products(*xs, h / 2, dec)
    e1, e2 = np.linalg.norm(t1 - exact), np.linalg.norm(t2 - exact)
    tri_order = measured_order(e1, e2)
    c1, _ = loop_derivative_products(*xs[:2], xs[0], h, dec, stencil=3)
    c2, _ = loop_derivative_products(*xs[:2], xs[0], h / 2, dec, stencil=3)
    n1, n2 = np.linalg.norm(c1), np.linalg.norm(c2)
    bol_order = measured_order(n1, n2)
    five = max(np.linalg.norm(b1), np.linalg.norm(b2))
    return [
        CheckResult("lts.fd_trilinear", tri_order >= 1.8, e2, samples=1, anchor="Bol algebra products",
                    detail={"error_h": e1, "error_h2": e2, "order": tri_order, "h": h}),
        CheckResult("lts.fd_bol_bracket", bol_order >= 1.8 and five <= rounding_floor, max(n2, five), samples=1,
                    anchor="Bol algebra products",
                    detail={"three_point_h": n1, "three_point_h2": n2, "order": bol_order,
                            "five_point_max": five, "rounding_floor": rounding_floor, "h": h}),
    ]
