"""Snyder momenta on the de Sitter K-loop and the sum of momenta.

Momenta are plain length-4 arrays with an explicit ``kappa``.  The point of
the de Sitter quadric reached from the basepoint ``e_4`` is
``pi = Gamma (p / kappa, 1)`` and the Snyder chart is ``p_mu = kappa pi_mu / pi_4``.

Two scalar products appear.  ``eta_block`` is the (+, -, -, -) restriction of
the ambient metric; ``momentum_dot = -eta_block`` is the (-, +, +, +) product
under which ``Gamma = 1 / sqrt(1 + p.p / kappa^2)`` and the expansion formulas
are written.

Three ways to add momenta are offered:

``sum_exact``        group factorization in the 5x5 representation
``sum_closed_form``  the rational closed form built from the precession parameters
``sum_first_order``  the expansion to cubic order in 1/kappa
"""
from __future__ import annotations

import numpy as np

from . import ambient, kloop
from .checks import CheckResult
from .errors import ChartError, DenominatorError

TOL_DENOM = 1e-8
TOL_CHART = kloop.TOL_CHART

DESITTER = kloop.desitter()
LORENTZ = kloop.lorentz()
_BLOCK = np.array(DESITTER.metric.signs[:4], dtype=float)


def eta_block(p, q) -> float:
    """(+, -, -, -) product of two 4-vectors."""
    return float(np.dot(_BLOCK * np.asarray(p, dtype=float), np.asarray(q, dtype=float)))


def momentum_dot(p, q) -> float:
    """(-, +, +, +) product; the one entering Gamma and the expansion formulas."""
    return -eta_block(p, q)


def _as_momentum(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"momentum must have 4 components, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("momentum has non-finite components")
    return p


def gamma(p, kappa: float = 1.0) -> float:
    """``pi_4`` of the lifted point, ``1 / sqrt(1 + p.p / kappa^2)``."""
    p = _as_momentum(p)
    arg = 1.0 + momentum_dot(p, p) / kappa**2
    if not arg > TOL_CHART:
        raise ChartError(f"momentum {p.tolist()} is outside the Snyder chart (1 + p^2/kappa^2 = {arg:.3g})")
    return 1.0 / np.sqrt(arg)


def point_from_momentum(p, kappa: float = 1.0) -> np.ndarray:
    p = _as_momentum(p)
    g = gamma(p, kappa)
    return np.append(g * p / kappa, g)


def loop_from_momentum(p, kappa: float = 1.0) -> kloop.LoopElement:
    """The de Sitter transvection whose Snyder coordinates are ``p``."""
    return kloop.transvection_through(point_from_momentum(p, kappa), DESITTER)


def momentum_from_loop(a: kloop.LoopElement, kappa: float = 1.0) -> np.ndarray:
    if a.decomposition != DESITTER:
        raise ValueError("momentum chart is defined on the desitter decomposition only")
    pi = a.point()
    if not pi[4] > TOL_CHART:
        raise ChartError(f"pi_4 = {pi[4]:.3g} is not in the upper chart")
    return kappa * pi[:4] / pi[4]


def negate(p) -> np.ndarray:
    return -_as_momentum(p)


def sum_exact(p, q, kappa: float = 1.0) -> np.ndarray:
    """``p (+) q`` from the loop product of the lifted transvections."""
    c = kloop.mul(loop_from_momentum(p, kappa), loop_from_momentum(q, kappa))
    return momentum_from_loop(c, kappa)


def sum_with_precession(p, q, kappa: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``(p (+) q, h)`` with ``h`` the 4x4 Lorentz block of the precession."""
    c, h = kloop.loop_product(loop_from_momentum(p, kappa), loop_from_momentum(q, kappa))
    return momentum_from_loop(c, kappa), h[:4, :4]


def sum_rational(p, q, kappa: float = 1.0) -> np.ndarray:
    """Compact rational form of the sum, derived from ``pi_tot = a_p pi_q``.

    ``(p + q / Gamma_p - Gamma_p / (1 + Gamma_p) (p.q / kappa^2) p) / (1 - p.q / kappa^2)``
    with ``.`` the ``momentum_dot`` product.  Used as an independent oracle.
    """
    p, q = _as_momentum(p), _as_momentum(q)
    gamma(q, kappa)
    g1 = gamma(p, kappa)
    pq = momentum_dot(p, q) / kappa**2
    denom = 1.0 - pq
    if abs(denom) <= TOL_DENOM:
        raise DenominatorError("1 - p.q/kappa^2 vanishes")
    out = (p + q / g1 - g1 / (1.0 + g1) * pq * p) / denom
    if not 1.0 + momentum_dot(out, out) / kappa**2 > 0 or denom < 0:
        raise ChartError("sum leaves the upper chart")
    return out


def sum_rational_batch(p: np.ndarray, q: np.ndarray, kappa: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise ``sum_rational`` for arrays of shape (n, 4).

    Returns ``(sums, valid)``; rows where an input or the sum leaves the upper
    chart are flagged invalid and hold NaN.
    """
    p = np.atleast_2d(np.asarray(p, dtype=float))
    q = np.atleast_2d(np.asarray(q, dtype=float))
    mdot = lambda a, b: np.einsum("ij,j,ij->i", a, -_BLOCK, b) / kappa**2  # noqa: E731
    pp, qq, pq = mdot(p, p), mdot(q, q), mdot(p, q)
    denom = 1.0 - pq
    valid = (1.0 + pp > TOL_CHART) & (1.0 + qq > TOL_CHART) & (denom > TOL_DENOM)
    with np.errstate(invalid="ignore", divide="ignore"):
        g1 = 1.0 / np.sqrt(1.0 + pp)
        out = (p + q / g1[:, None] - (g1 / (1.0 + g1) * pq)[:, None] * p) / denom[:, None]
    out[~valid] = np.nan
    return out, valid


def lorentz_embed(u: np.ndarray) -> np.ndarray:
    """A 4x4 Lorentz matrix as an element of the 5x5 stabilizer."""
    u = np.asarray(u, dtype=float)
    if u.shape != (4, 4):
        raise ValueError("expected a 4x4 Lorentz matrix")
    g = np.eye(5)
    g[:4, :4] = u
    return g


def lorentz_act(u: np.ndarray, p, kappa: float = 1.0) -> np.ndarray:
    """``u |> p``: conjugate the lifted loop element by ``u`` and read off the momentum."""
    a = loop_from_momentum(p, kappa)
    return momentum_from_loop(kloop.conjugate(lorentz_embed(u), a), kappa)


def random_lorentz(rng: np.random.Generator, max_norm: float = 1.0) -> np.ndarray:
    """Random element of SO+(3,1) as a 4x4 matrix."""
    x = ambient.random_algebra_element(LORENTZ.metric, rng, max_norm)
    return ambient.expm(x)


def sum_first_order(p, q, kappa: float = 1.0, form: str = "printed") -> np.ndarray:
    """``p (+) q`` through cubic order in ``1/kappa``.

    ``form="printed"`` evaluates the expansion exactly as it is usually quoted::

        (p+q)_0 = p_0 + q_0 + ((p_0 + 2 q_0) p.q + q_0 p^2) / (2 kappa^2)
        (p+q)_i = p_i + q_i + ((p_i + 2 q_i) p.q + (q_i - p_i) p_0 q_0
                               - p_i q_0^2 + q_i |p_vec|^2) / (2 kappa^2)

    ``form="covariant"`` uses ``((p + 2q) p.q + q p^2) / (2 kappa^2)`` for every
    component, which is the true cubic Taylor term of ``sum_exact``.  The two
    agree on the time component and differ on the spatial ones by
    ``(p_0 + q_0)(q_i p_0 - p_i q_0) / (2 kappa^2)``.
    """
    p, q = _as_momentum(p), _as_momentum(q)
    pq = momentum_dot(p, q)
    pp = momentum_dot(p, p)
    k2 = 2.0 * kappa**2
    if form == "covariant":
        return p + q + ((p + 2 * q) * pq + q * pp) / k2
    if form != "printed":
        raise ValueError(f"unknown form {form!r}")
    out = np.empty(4)
    out[0] = p[0] + q[0] + ((p[0] + 2 * q[0]) * pq + q[0] * pp) / k2
    pv, qv = p[1:], q[1:]
    out[1:] = pv + qv + ((pv + 2 * qv) * pq + (qv - pv) * p[0] * q[0] - pv * q[0] ** 2 + qv * (pv @ pv)) / k2
    return out


def _check_denom(value: float, what: str) -> None:
    if abs(value) <= TOL_DENOM:
        raise DenominatorError(f"{what} = {value:.3g} is within {TOL_DENOM:g} of zero")


def sum_closed_form(p1, p2, kappa: float = 1.0, form: str = "corrected") -> tuple[np.ndarray, dict]:
    """Sum of momenta from the precession parameters, without matrix functions.

    The precession ``h = Lambda R`` is a boost of rapidity ``alpha`` along ``b``
    after a rotation by ``theta`` about ``r``.  With ``rho = tan(theta/2) r``,
    ``beta = tanh(alpha/2) b`` and ``T = tanh(eta/2) B`` (``eta``, ``B`` the
    rapidity and unit direction of the summed transvection):

    * ``rho = (p1_vec x p2_vec) / N`` with ``N = kappa^2 (1 + 1/G1)(1 + 1/G2) - p1.p2``
    * ``beta = cos^2(theta/2) D(C)``, ``C = (p1_0 p2_vec - p2_0 p1_vec) / N``, ``D = 1 + rho x``
    * ``E = kappa ((1 + 1/G2) p1_vec + (1 + 1/G1) p2_vec) / N``, ``I`` likewise for the time parts
    * ``T_vec = W - T_0 V`` and ``T_0 = (I - W.F(beta)) / (1 - V.F(beta))``
      where ``F = 1 - rho x``, ``W = cos^2(theta/2) D(E)`` and ``V = cos^2(theta/2) D(F(beta))``
    * ``p_tot = kappa (1 + 1/Gamma) T`` with ``Gamma = G1 G2 (1 - p1.p2 / kappa^2)``.

    ``form="printed"`` instead uses ``D(beta)`` where ``F(beta)`` stands above
    and adds ``+T_0 V`` in the spatial part; that variant is kept only to
    document how far it lands from the exact sum.

    Returns ``(p_tot, params)`` with ``params`` holding ``rho``, ``beta``,
    ``Gamma`` and the two denominators.
    """
    if form not in ("corrected", "printed"):
        raise ValueError(f"unknown form {form!r}")
    p1, p2 = _as_momentum(p1), _as_momentum(p2)
    k2 = kappa**2
    g1, g2 = gamma(p1, kappa), gamma(p2, kappa)
    w1, w2 = 1.0 + 1.0 / g1, 1.0 + 1.0 / g2
    pq = momentum_dot(p1, p2)
    n = k2 * w1 * w2 - pq
    _check_denom(n / k2, "kappa^2 (1 + 1/G1)(1 + 1/G2) - p1.p2")

    rho = np.cross(p1[1:], p2[1:]) / n
    cos2 = 1.0 / (1.0 + rho @ rho)

    def d_map(v):
        return v + np.cross(rho, v)

    def f_map(v):
        return v - np.cross(rho, v)

    c_vec = (p1[0] * p2[1:] - p2[0] * p1[1:]) / n
    beta = cos2 * d_map(c_vec)
    e_vec = kappa * (w2 * p1[1:] + w1 * p2[1:]) / n
    i_val = kappa * (w2 * p1[0] + w1 * p2[0]) / n
    rot_beta = f_map(beta) if form == "corrected" else d_map(beta)
    v_vec = cos2 * d_map(rot_beta)
    w_vec = cos2 * d_map(e_vec)
    denom = 1.0 - v_vec @ rot_beta
    _check_denom(denom, "1 - V.D(beta)")
    t0 = (i_val - w_vec @ rot_beta) / denom
    t_vec = w_vec - t0 * v_vec if form == "corrected" else w_vec + t0 * v_vec

    one_minus = 1.0 - pq / k2
    _check_denom(one_minus, "1 - p1.p2/kappa^2")
    big_gamma = g1 * g2 * one_minus
    p_tot = kappa * (1.0 + 1.0 / big_gamma) * np.append(t0, t_vec)
    params = {
        "rho": rho,
        "beta": beta,
        "Gamma": big_gamma,
        "denominator_N": n,
        "denominator_V": denom,
        "rho_dot_beta": float(rho @ beta),
        "rho_dot_B": float(rho @ t_vec),
    }
    return p_tot, params


# Einstein velocity addition on the lorentz decomposition SO(3,1) / SO(3)

def _as_velocity(v, c: float) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"velocity must have 3 components, got shape {v.shape}")
    if not (v @ v) < c**2:
        raise ChartError(f"velocity {v.tolist()} is not sub-luminal for c = {c}")
    return v


def lorentz_factor(v, c: float = 1.0) -> float:
    v = _as_velocity(v, c)
    return 1.0 / np.sqrt(1.0 - (v @ v) / c**2)


def loop_from_velocity(v, c: float = 1.0) -> kloop.LoopElement:
    """The pure boost carrying the rest frame to velocity ``v``."""
    v = _as_velocity(v, c)
    g = lorentz_factor(v, c)
    return kloop.transvection_through(np.append(g, g * v / c), LORENTZ)


def velocity_from_loop(a: kloop.LoopElement, c: float = 1.0) -> np.ndarray:
    """``v = c V_vec / V_0`` with ``V = a e_0`` on the upper hyperboloid."""
    big_v = a.point()
    if not big_v[0] > TOL_CHART:
        raise ChartError("point is not on the upper hyperboloid")
    return c * big_v[1:] / big_v[0]


def velocity_sum_exact(v1, v2, c: float = 1.0) -> np.ndarray:
    return velocity_from_loop(kloop.mul(loop_from_velocity(v1, c), loop_from_velocity(v2, c)), c)


def velocity_sum_closed_form(v1, v2, c: float = 1.0) -> np.ndarray:
    """Einstein addition ``v1 (+) v2``::

        (1 + v1.v2/c^2)^-1 [ (1 + g1/(1 + g1) v1.v2/c^2) v1 + v2 / g1 ]
    """
    v1, v2 = _as_velocity(v1, c), _as_velocity(v2, c)
    g1 = lorentz_factor(v1, c)
    dot = (v1 @ v2) / c**2
    return ((1.0 + g1 / (1.0 + g1) * dot) * v1 + v2 / g1) / (1.0 + dot)


def random_momentum(rng: np.random.Generator, kappa: float = 1.0, scale: float = 0.5) -> np.ndarray:
    """Uniform draw from the box ``[-scale, scale]^4`` (in units of kappa), redrawn until chart-valid."""
    while True:
        p = kappa * rng.uniform(-scale, scale, 4)
        if 1.0 + momentum_dot(p, p) / kappa**2 > 0.05:
            return p


def random_velocity(rng: np.random.Generator, c: float = 1.0, max_speed: float = 0.99) -> np.ndarray:
    """Isotropic direction, speed uniform in ``[0, max_speed c)``."""
    d = rng.standard_normal(3)
    return c * max_speed * rng.uniform() * d / np.linalg.norm(d)


def check_closed_form_batch(samples: int = 1000, seed: int = 0, kappa: float = 1.0, tol: float = 1e-9,
                            scale: float = 0.5) -> CheckResult:
    """``sum_closed_form`` against ``sum_exact`` on chart-valid pairs.

    Pairs hitting a denominator guard or leaving the chart are redrawn and
    counted as inconclusive; ``samples`` pairs are always compared.
    """
    worst, witness, skipped, i = 0.0, None, 0, 0
    done = 0
    while done < samples:
        rng = np.random.default_rng([seed, i])
        i += 1
        p, q = random_momentum(rng, kappa, scale), random_momentum(rng, kappa, scale)
        try:
            closed, _ = sum_closed_form(p, q, kappa)
            exact = sum_exact(p, q, kappa)
        except (ChartError, DenominatorError):
            skipped += 1
            continue
        done += 1
        res = float(np.max(np.abs(closed - exact))) / kappa
        if res > worst:
            worst, witness = res, {"p": p.tolist(), "q": q.tolist()}
    return CheckResult("snyder.closed_form_vs_exact", worst <= tol, worst,
                       witness=None if worst <= tol else witness, samples=samples, inconclusive=skipped,
                       anchor="closed-form sum", detail={"kappa": kappa})


def check_velocity_batch(samples: int = 1000, seed: int = 0, c: float = 1.0, tol: float = 1e-10,
                         collinear_tol: float = 1e-12) -> list[CheckResult]:
    """Einstein addition: closed form against the factorization, and the collinear law."""
    worst, witness = 0.0, None
    col_worst = 0.0
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        v1, v2 = random_velocity(rng, c), random_velocity(rng, c)
        res = float(np.max(np.abs(velocity_sum_closed_form(v1, v2, c) - velocity_sum_exact(v1, v2, c)))) / c
        if res > worst:
            worst, witness = res, {"v1": v1.tolist(), "v2": v2.tolist()}
        s = np.linalg.norm(v1)
        expected = 2.0 * v1 / (1.0 + s**2 / c**2)
        col_worst = max(col_worst, float(np.max(np.abs(velocity_sum_closed_form(v1, v1, c) - expected))) / c)
    return [
        CheckResult("einstein.closed_vs_factorization", worst <= tol, worst,
                    witness=None if worst <= tol else witness, samples=samples,
                    anchor="Einstein velocity addition"),
        CheckResult("einstein.collinear", col_worst <= collinear_tol, col_worst, samples=samples,
                    anchor="Einstein velocity addition"),
    ]
