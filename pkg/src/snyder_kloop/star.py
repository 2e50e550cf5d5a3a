"""Star product on plane waves and coordinate polynomials, and the sampled field action.

``e^{ip.x} * e^{iq.x} = e^{i(p (+) q).x}`` with the plain pairing
``p.x = sum_mu p_mu x_mu``.  Differentiating at ``p = q = 0`` turns the Taylor
data of ``(+)`` into star products of monomials, so the expansion below is the
only place the sum enters the polynomial calculus.

The action part samples momentum space with the invariant density
``(1 - eta(p, p) / kappa^2)^(-5/2) / 2`` in Snyder coordinates
(``eta`` = (+, -, -, -)); the conservation delta is resolved with the loop
inverse, and left loop translations are isometries so no Jacobian appears.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import snyder
from .checks import CheckResult
from .errors import ChartError, DegreeError

TOL_COEFF = 1e-7
DENSITY_CUTOFF = 1e6
_N = 8  # (p0..p3, q0..q3)


def _monomials(degree: int, nvars: int = _N) -> list[tuple[int, ...]]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _directions() -> np.ndarray:
    dirs = []
    eye = np.eye(_N)
    for i in range(_N):
        dirs.append(eye[i])
    for i, j in itertools.combinations(range(_N), 2):
        dirs.append(eye[i] + eye[j])
        dirs.append(eye[i] - eye[j])
    for i, j, k in itertools.combinations(range(_N), 3):
        dirs.append(eye[i] + eye[j] + eye[k])
    return np.array(dirs)


def _eval_monomials(dirs: np.ndarray, monos: list[tuple[int, ...]]) -> np.ndarray:
    return np.array([[np.prod(d ** np.array(m)) for m in monos] for d in dirs])


@dataclass
class SumExpansion:
    """Taylor data of ``(p, q) -> p (+) q`` at the origin up to degree 3.

    ``linear[c, i, s]`` is the coefficient of slot ``s`` (0 = p, 1 = q) component
    ``i`` in output ``c``; ``quadratic`` and ``cubic`` map 8-exponent tuples over
    ``(p0..p3, q0..q3)`` to length-4 coefficient arrays.
    """

    linear: np.ndarray
    quadratic: dict
    cubic: dict
    kappa: float
    h: float = 0.0
    cross_check: float = float("nan")
    raw_cubic: dict = field(default_factory=dict, repr=False)

    def cubic_coefficient(self, exponents, component: int) -> float:
        return float(self.cubic.get(tuple(exponents), np.zeros(4))[component])

    def nonzero_cubic(self) -> dict:
        return {m: v for m, v in self.cubic.items() if np.any(v != 0.0)}

    def evaluate(self, p, q) -> np.ndarray:
        z = np.concatenate([np.asarray(p, float), np.asarray(q, float)])
        out = self.linear[:, :, 0] @ z[:4] + self.linear[:, :, 1] @ z[4:]
        for m, v in itertools.chain(self.quadratic.items(), self.cubic.items()):
            out = out + v * np.prod(z ** np.array(m))
        return out


def polynomial_coefficients(fun: Callable, h: float, kappa: float = 1.0) -> tuple[np.ndarray, dict, dict]:
    """Degree 1..3 Taylor coefficients at 0 of an 8-variable, 4-output map.

    Along each direction ``d`` the odd part ``(f(td) - f(-td)) / 2`` is fitted
    with ``t, t^3, t^5, t^7`` at ``t = h, 2h, 3h, 4h`` and the even part with
    ``t^2, t^4`` at ``t = h, 2h``; the directional forms are then resolved into
    monomial coefficients on a direction set that makes the resolution exact.
    """
    dirs = _directions()
    ts = h * np.arange(1, 5)
    odd_basis = np.stack([ts, ts**3, ts**5, ts**7], axis=1)
    even_basis = np.stack([ts[:2] ** 2, ts[:2] ** 4], axis=1)
    lin_dir, quad_dir, cub_dir = [], [], []
    for d in dirs:
        plus = np.array([fun(t * d[:4], t * d[4:], kappa) for t in ts])
        minus = np.array([fun(-t * d[:4], -t * d[4:], kappa) for t in ts])
        odd = np.linalg.solve(odd_basis, 0.5 * (plus - minus))
        even = np.linalg.solve(even_basis, 0.5 * (plus + minus)[:2])
        lin_dir.append(odd[0])
        cub_dir.append(odd[1])
        quad_dir.append(even[0])
    lin_dir, quad_dir, cub_dir = map(np.array, (lin_dir, quad_dir, cub_dir))
    monos = {k: _monomials(k) for k in (1, 2, 3)}
    solved = {}
    for k, values in ((1, lin_dir), (2, quad_dir), (3, cub_dir)):
        design = _eval_monomials(dirs, monos[k])
        coef, *_ = np.linalg.lstsq(design, values, rcond=None)
        solved[k] = coef
    linear = np.zeros((4, 4, 2))
    for idx, m in enumerate(monos[1]):
        i = m.index(1)
        linear[:, i % 4, i // 4] = solved[1][idx]
    quadratic = {m: solved[2][idx] for idx, m in enumerate(monos[2])}
    cubic = {m: solved[3][idx] for idx, m in enumerate(monos[3])}
    return linear, quadratic, cubic


def _snap(values: dict, tol: float) -> dict:
    return {m: np.where(np.abs(v) < tol, 0.0, v) for m, v in values.items()}


def expand_sum(kappa: float = 1.0, h: float = 1e-2, tol_coeff: float = TOL_COEFF,
               cross_validate: bool = True) -> SumExpansion:
    """Taylor data of ``sum_exact`` at the origin, cross-checked with the closed form."""
    if not 1e-4 <= h <= 1e-2:
        raise ValueError(f"step size h = {h} outside [1e-4, 1e-2]")
    h_abs = h * kappa
    linear, quadratic, cubic = polynomial_coefficients(snyder.sum_exact, h_abs, kappa)
    cross = float("nan")
    if cross_validate:
        closed = lambda p, q, k: snyder.sum_closed_form(p, q, k)[0]  # noqa: E731
        _, _, cubic_cf = polynomial_coefficients(closed, h_abs, kappa)
        cross = max(float(np.abs(cubic[m] - cubic_cf[m]).max()) for m in cubic)
    lin = np.where(np.abs(linear - np.round(linear)) < tol_coeff, np.round(linear), linear)
    return SumExpansion(lin, _snap(quadratic, tol_coeff), _snap(cubic, tol_coeff), kappa, h, cross, cubic)


def printed_expansion(kappa: float = 1.0, form: str = "printed") -> SumExpansion:
    """Coefficients of the cubic-order formula itself (exact polynomial, so no truncation)."""
    fun = lambda p, q, k: snyder.sum_first_order(p, q, k, form=form)  # noqa: E731
    linear, quadratic, cubic = polynomial_coefficients(fun, 0.1 * kappa, kappa)
    return SumExpansion(np.round(linear, 12), _snap(quadratic, 1e-12), _snap(cubic, 1e-12), kappa)


def compare_expansions(a: SumExpansion, b: SumExpansion) -> tuple[float, list]:
    """Largest coefficient mismatch and the list of (monomial, component, a, b) beyond 1e-6."""
    worst = 0.0
    diffs = []
    for m in sorted(set(a.cubic) | set(b.cubic)):
        va = a.cubic.get(m, np.zeros(4))
        vb = b.cubic.get(m, np.zeros(4))
        for c in range(4):
            d = abs(va[c] - vb[c])
            worst = max(worst, d)
            if d > 1e-6:
                diffs.append((m, c, float(va[c]), float(vb[c])))
    return worst, diffs


def remainder_order(kappa: float = 1.0, form: str = "printed", s: float = 0.2, directions: int = 8,
                    seed: int = 0) -> float:
    """Worst-case Richardson order of ``sum_exact - sum_first_order`` between scales ``s`` and ``s/2``.

    Momenta are ``s kappa`` times fixed random unit-box directions; a correct
    cubic-order formula leaves an odd remainder, so the order is about 5.
    """
    rng = np.random.default_rng(seed)
    orders = []
    for _ in range(directions):
        p, q = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        errs = []
        for scale in (s, s / 2):
            pp, qq = scale * kappa * p, scale * kappa * q
            r = snyder.sum_exact(pp, qq, kappa) - snyder.sum_first_order(pp, qq, kappa, form=form)
            errs.append(float(np.linalg.norm(r)))
        orders.append(np.log2(errs[0] / errs[1]))
    return float(min(orders))


def check_first_order(kappa: float = 1.0, form: str = "printed", tol: float = 1e-6,
                      min_order: float = 4.8, expansion: SumExpansion | None = None) -> CheckResult:
    """Cubic Taylor coefficients of the exact sum against a cubic-order formula."""
    exp = expansion or expand_sum(kappa)
    worst, diffs = compare_expansions(exp, printed_expansion(kappa, form))
    order = remainder_order(kappa, form)
    passed = worst <= tol and order >= min_order
    return CheckResult(
        f"snyder.first_order_{form}", passed, worst,
        witness=None if not diffs else {"monomial": monomial_name(diffs[0][0]), "component": diffs[0][1],
                                        "exact": diffs[0][2], "formula": diffs[0][3]},
        samples=len(exp.cubic) * 4, anchor="sum of momenta to first order",
        detail={"order": order, "mismatched_coefficients": len(diffs), "kappa": kappa,
                "signature": "(+,-,-,-,-) ambient; p.p = -eta_block(p, p)"})


def monomial_name(m) -> str:
    names = [f"p{i}" for i in range(4)] + [f"q{i}" for i in range(4)]
    parts = []
    for n, e in zip(names, m):
        parts += [n] * e
    return "*".join(parts)


# plane waves

@dataclass
class PlaneWaveSum:
    """Finite combination ``sum_k c_k exp(i p_k . x)``."""

    terms: list = field(default_factory=list)
    kappa: float = 1.0

    def canonical(self, tol: float = 1e-12) -> "PlaneWaveSum":
        merged: list = []
        for c, p in self.terms:
            p = np.asarray(p, dtype=float)
            for entry in merged:
                if np.max(np.abs(entry[1] - p)) <= tol:
                    entry[0] += c
                    break
            else:
                merged.append([complex(c), p])
        return PlaneWaveSum([(c, p) for c, p in merged if c != 0], self.kappa)

    def momenta(self) -> np.ndarray:
        return np.array([p for _, p in self.terms])


def plane_wave(p, kappa: float = 1.0, coefficient: complex = 1.0) -> PlaneWaveSum:
    return PlaneWaveSum([(complex(coefficient), np.asarray(p, dtype=float))], kappa)


def star_plane_waves(w1: PlaneWaveSum, w2: PlaneWaveSum) -> PlaneWaveSum:
    if w1.kappa != w2.kappa:
        raise ValueError("plane-wave sums use different kappa")
    terms = []
    for (c1, p1), (c2, p2) in itertools.product(w1.terms, w2.terms):
        terms.append((c1 * c2, snyder.sum_exact(p1, p2, w1.kappa)))
    return PlaneWaveSum(terms, w1.kappa).canonical()


# coordinate polynomials

@dataclass
class CoordinatePolynomial:
    """Polynomial in commuting ``x_0..x_3``: exponent tuple -> complex coefficient."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for m, c in self.coeffs.items():
            m = tuple(int(e) for e in m)
            if len(m) != 4 or min(m) < 0:
                raise ValueError(f"bad exponent tuple {m}")
            if c != 0:
                clean[m] = clean.get(m, 0) + complex(c)
        self.coeffs = dict(sorted((m, c) for m, c in clean.items() if c != 0))

    @classmethod
    def coordinate(cls, mu: int) -> "CoordinatePolynomial":
        e = [0, 0, 0, 0]
        e[mu] = 1
        return cls({tuple(e): 1})

    @classmethod
    def one(cls) -> "CoordinatePolynomial":
        return cls({(0, 0, 0, 0): 1})

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return CoordinatePolynomial(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return CoordinatePolynomial({m: s * c for m, c in self.coeffs.items()})

    def max_abs(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    def snapped(self, tol: float = TOL_COEFF) -> "CoordinatePolynomial":
        out = {}
        for m, c in self.coeffs.items():
            re = 0.0 if abs(c.real) < tol else c.real
            im = 0.0 if abs(c.imag) < tol else c.imag
            out[m] = complex(re, im)
        return CoordinatePolynomial(out)


def _star_monomial(a: tuple, b: tuple, expansion: SumExpansion) -> dict:
    # x^a * x^b = (-i)^n a! b! [p^a q^b] exp(i (p (+) q).x); with p (+) q = p + q + C(p, q) + O(5)
    # this is x^(a+b) for n < 3 and x^(a+b) - a! b! sum_c C_c[p^a q^b] x_c for n = 3
    n = sum(a) + sum(b)
    if n > 3:
        raise DegreeError(f"star product of degree {n} exceeds the cubic expansion")
    total = tuple(i + j for i, j in zip(a, b))
    out = {total: 1.0 + 0j}
    if n == 3:
        fact = np.prod([math.factorial(e) for e in a + b])
        coeff = expansion.cubic.get(a + b, np.zeros(4))
        for c in range(4):
            if coeff[c] != 0.0:
                e = [0, 0, 0, 0]
                e[c] = 1
                out[tuple(e)] = out.get(tuple(e), 0) - fact * coeff[c]
    if n >= 2:
        quad = expansion.quadratic.get(a + b) if n == 2 else None
        if quad is not None and np.any(quad != 0.0):
            raise DegreeError("expansion has quadratic terms; monomial star products assume an odd sum")
    return out


def star_monomials(f: CoordinatePolynomial, g: CoordinatePolynomial, expansion: SumExpansion) -> CoordinatePolynomial:
    """``f * g`` for polynomials whose product has total degree at most 3."""
    out: dict = {}
    for (a, ca), (b, cb) in itertools.product(f.coeffs.items(), g.coeffs.items()):
        for m, c in _star_monomial(a, b, expansion).items():
            out[m] = out.get(m, 0) + ca * cb * c
    return CoordinatePolynomial(out)


def star_commutator(mu: int, nu: int, expansion: SumExpansion) -> CoordinatePolynomial:
    x = CoordinatePolynomial.coordinate
    return (star_monomials(x(mu), x(nu), expansion) - star_monomials(x(nu), x(mu), expansion)).snapped()


def star_triple(mu: int, nu: int, alpha: int, expansion: SumExpansion) -> CoordinatePolynomial:
    """``x_mu * (x_nu * x_alpha) - x_nu * (x_mu * x_alpha)``."""
    x = CoordinatePolynomial.coordinate
    left = star_monomials(x(mu), star_monomials(x(nu), x(alpha), expansion), expansion)
    right = star_monomials(x(nu), star_monomials(x(mu), x(alpha), expansion), expansion)
    return (left - right).snapped()


def triple_reference(mu: int, nu: int, alpha: int, kappa: float, sign: float = -1.0) -> CoordinatePolynomial:
    """``sign / kappa^2 (eta_nu alpha x_mu - eta_mu alpha x_nu)`` with eta = (+, -, -, -)."""
    eta = snyder._BLOCK
    x = CoordinatePolynomial.coordinate
    a = eta[nu] * (nu == alpha)
    b = eta[mu] * (mu == alpha)
    return (x(mu).scale(sign * a / kappa**2) - x(nu).scale(sign * b / kappa**2))


def check_star_products(expansion: SumExpansion, sign: float = -1.0, tol: float = 1e-6) -> list[CheckResult]:
    """Coordinate commutators vanish and the triple product has the J_mu_nu structure."""
    comm_worst = 0.0
    comm_witness = None
    for mu, nu in itertools.product(range(4), repeat=2):
        c = star_commutator(mu, nu, expansion)
        if c.coeffs:
            comm_worst = max(comm_worst, c.max_abs())
            comm_witness = comm_witness or (mu, nu)
    tri_worst = 0.0
    anti_worst = 0.0
    tri_witness = None
    for mu, nu, al in itertools.product(range(4), repeat=3):
        t = star_triple(mu, nu, al, expansion)
        swapped = star_triple(nu, mu, al, expansion)
        anti_worst = max(anti_worst, (t + swapped).max_abs())
        d = (t - triple_reference(mu, nu, al, expansion.kappa, sign)).max_abs()
        if d > tri_worst:
            tri_worst, tri_witness = d, (mu, nu, al)
    return [
        CheckResult("star.coordinate_commutator", comm_worst == 0.0, comm_worst, witness=comm_witness,
                    samples=16, anchor="commutator of coordinates"),
        CheckResult("star.triple_antisymmetry", anti_worst == 0.0, anti_worst, samples=64,
                    anchor="star triple product"),
        CheckResult("star.triple_structure", tri_worst <= tol, tri_worst,
                    witness=None if tri_worst <= tol else tri_witness, samples=64,
                    anchor="star triple product", detail={"overall_sign": sign}),
    ]


# sampled action

@dataclass(frozen=True)
class GaussianProfile:
    """``exp(-|p - center|^2 / (2 width^2))`` in Snyder coordinates, optionally precomposed with ``p -> L p``."""

    center: tuple = (0.0, 0.0, 0.0, 0.0)
    width: float = 0.2
    transform: tuple | None = None

    def __call__(self, p: np.ndarray) -> np.ndarray:
        p = np.atleast_2d(p)
        if self.transform is not None:
            p = p @ np.array(self.transform).T
        d = p - np.array(self.center)
        return np.exp(-np.einsum("ij,ij->i", d, d) / (2 * self.width**2))

    def composed(self, lam: np.ndarray) -> "GaussianProfile":
        """``p -> phi(lam p)``; composes with an existing transform."""
        lam = np.asarray(lam, dtype=float)
        if self.transform is not None:
            lam = np.array(self.transform) @ lam
        return GaussianProfile(self.center, self.width, tuple(map(tuple, lam)))


def measure_density(p: np.ndarray, kappa: float = 1.0) -> np.ndarray:
    """``(1 - eta(p, p) / kappa^2)^(-5/2) / 2``; NaN outside the chart."""
    p = np.atleast_2d(p)
    arg = 1.0 - np.einsum("ij,j,ij->i", p, snyder._BLOCK, p) / kappa**2
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(arg > 0, 0.5 * arg ** -2.5, np.nan)


@dataclass
class Sampler:
    """Gaussian importance sampler with the cutoff region removed."""

    kappa: float = 1.0
    scale: float = 0.35
    center: tuple = (0.0, 0.0, 0.0, 0.0)

    def draw(self, rng: np.random.Generator, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Samples and importance weights ``density / proposal`` (0 where excluded)."""
        s = self.scale * self.kappa
        c = np.asarray(self.center, dtype=float)
        x = c + rng.normal(0.0, s, (n, 4))
        dens = measure_density(x, self.kappa)
        keep = np.isfinite(dens) & (dens <= DENSITY_CUTOFF)
        d = x - c
        proposal = np.exp(-np.einsum("ij,ij->i", d, d) / (2 * s**2)) / (2 * np.pi * s**2) ** 2
        w = np.where(keep, np.nan_to_num(dens) / proposal, 0.0)
        return x, w


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((values - mean) ** 2) / (n - 1)
    return mean, math.sqrt(var / n)


def _draw(samplers, seed: int, n: int, batch: int = 4096):
    """One block of ``n`` samples per sampler, drawn batch by batch from spawned seeds."""
    batches = -(-n // batch)
    xs = [[] for _ in samplers]
    ws = [[] for _ in samplers]
    for i, child in enumerate(np.random.SeedSequence(seed).spawn(batches)):
        rng = np.random.default_rng(child)
        size = min(batch, n - i * batch)
        for k, sampler in enumerate(samplers):
            x, w = sampler.draw(rng, size)
            xs[k].append(x)
            ws[k].append(w)
    return [np.concatenate(x) for x in xs], [np.concatenate(w) for w in ws]


def convolve_at_identity(phi1, phi2, n_samples: int = 20000, seed: int = 0, kappa: float = 1.0,
                         weight: Callable | None = None) -> tuple[float, float]:
    """``int [dp] w(p) phi1(p) phi2(-p)``: the convolution ``phi1 o phi2`` at the identity.

    ``weight`` multiplies ``phi1`` (for instance ``p^2 + m^2`` in the kinetic term).
    Returns ``(estimate, standard error)``.
    """
    (x,), (w,) = _draw([Sampler(kappa)], seed, n_samples)
    vals = w * phi1(x) * phi2(-x)
    if weight is not None:
        vals = vals * weight(x)
    return _mean_se(vals)


def kinetic_weight(mass: float, kappa: float = 1.0) -> Callable:
    """``p^2 + m^2`` with the (-, +, +, +) square."""
    def w(p):
        p = np.atleast_2d(p)
        return -np.einsum("ij,j,ij->i", p, snyder._BLOCK, p) + mass**2
    return w


def cubic_inner(phis, x: np.ndarray, y: np.ndarray, kappa: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``phi1(-(x (+) y)) phi2(x) phi3(y)``: the constraint ``p1 (+) (p2 (+) p3) = 0``."""
    f1, f2, f3 = phis
    s, valid = snyder.sum_rational_batch(x, y, kappa)
    s = np.where(valid[:, None], s, 0.0)
    return np.where(valid, f1(-s) * f2(x) * f3(y), 0.0), valid


def cubic_outer(phis, x: np.ndarray, y: np.ndarray, kappa: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``phi1(x) phi2(y) phi3(-(x (+) y))``: the constraint ``(p1 (+) p2) (+) p3 = 0``."""
    f1, f2, f3 = phis
    s, valid = snyder.sum_rational_batch(x, y, kappa)
    s = np.where(valid[:, None], s, 0.0)
    return np.where(valid, f1(x) * f2(y) * f3(-s), 0.0), valid


@dataclass
class ActionEstimate:
    kinetic: float
    kinetic_se: float
    cubic_inner: float
    cubic_inner_se: float
    cubic_outer: float
    cubic_outer_se: float
    bracketing_difference: float
    bracketing_difference_se: float
    action: float
    action_se: float
    excluded_fraction: float
    samples: int

    def to_dict(self) -> dict:
        return {k: (float(v) if isinstance(v, (float, np.floating)) else v) for k, v in self.__dict__.items()}


def default_profiles(width: float = 0.1, kappa: float = 1.0) -> tuple:
    """Three distinct Gaussians, the first centred on ``-(c2 (+) c3)``.

    With a single field the two bracketings of the cubic term are the same
    integral after renaming variables, so distinct fields are needed for the
    nonassociativity to show.  Centres sit at ``0.8 kappa`` where the
    associator is large compared with the width.
    """
    c2 = np.array([0.0, 0.8, 0.0, 0.0]) * kappa
    c3 = np.array([0.4, 0.0, 0.8, 0.0]) * kappa
    c1 = -snyder.sum_rational(c2, c3, kappa)
    return tuple(GaussianProfile(tuple(float(v) for v in c), width * kappa) for c in (c1, c2, c3))


def _matched(profile: GaussianProfile, kappa: float, widen: float = 1.5) -> Sampler:
    return Sampler(kappa, widen * profile.width / kappa, profile.center)


def kinetic_profile(width: float = 0.1, kappa: float = 1.0) -> GaussianProfile:
    """Off-centre Gaussian near the origin for the propagating term."""
    return GaussianProfile((0.1 * kappa, 0.05 * kappa, 0.0, 0.0), 2 * width * kappa)


def evaluate_action(profiles=None, mass: float = 1.0, coupling: float = 1.0, n_samples: int = 20000,
                    seed: int = 0, kappa: float = 1.0, width: float = 0.1,
                    kinetic: GaussianProfile | None = None) -> ActionEstimate:
    """Monte-Carlo estimate of ``Psi o phi(e) + coupling / 3! phi o (phi o phi)(e)``.

    The propagating term uses ``kinetic`` (default ``kinetic_profile``).  Each bracketing of the cubic term
    is sampled with proposals matched to the profiles of its free momenta; the
    two estimates are independent, so their difference has standard error
    ``sqrt(se_inner^2 + se_outer^2)``.
    """
    phis = profiles or default_profiles(width, kappa)
    psi = kinetic or kinetic_profile(width, kappa)
    samplers = [_matched(psi, kappa), _matched(phis[1], kappa), _matched(phis[2], kappa),
                _matched(phis[0], kappa), _matched(phis[1], kappa)]
    (k0, i2, i3, o1, o2), (wk, wi2, wi3, wo1, wo2) = _draw(samplers, seed, n_samples)
    kin = wk * kinetic_weight(mass, kappa)(k0) * psi(k0) * psi(-k0)
    kin_value, kinetic_se = _mean_se(kin)
    inner, v_in = cubic_inner(phis, i2, i3, kappa)
    outer, v_out = cubic_outer(phis, o1, o2, kappa)
    cin, cin_se = _mean_se(wi2 * wi3 * inner)
    cout, cout_se = _mean_se(wo1 * wo2 * outer)
    diff, diff_se = cin - cout, math.hypot(cin_se, cout_se)
    total = kin_value + coupling / 6.0 * cin
    total_se = math.hypot(kinetic_se, coupling / 6.0 * cin_se)
    kept = np.concatenate([wk > 0, (wi2 > 0) & (wi3 > 0) & v_in, (wo1 > 0) & (wo2 > 0) & v_out])
    return ActionEstimate(kin_value, kinetic_se, cin, cin_se, cout, cout_se, diff, diff_se, total, total_se,
                          1.0 - float(np.mean(kept)), n_samples)


def translation_phase_residual(rng: np.random.Generator, n: int, eps, kappa: float = 1.0,
                               scale: float = 0.3) -> tuple[float, int]:
    """Largest ``|exp(i (p1 (+) (p2 (+) p3)).eps) - 1|`` with ``p1 = -(p2 (+) p3)``, via ``sum_exact``."""
    eps = np.asarray(eps, dtype=float)
    worst = 0.0
    done = 0
    while done < n:
        p2, p3 = (snyder.random_momentum(rng, kappa, scale) for _ in range(2))
        try:
            s = snyder.sum_exact(p2, p3, kappa)
            total = snyder.sum_exact(-s, s, kappa)
        except ChartError:
            continue
        worst = max(worst, abs(np.exp(1j * total @ eps) - 1.0))
        done += 1
    return worst, done


def check_action_symmetries(profiles=None, lorentz_element=None, translation_eps=None, n_samples: int = 20000,
                            seed: int = 0, kappa: float = 1.0, mass: float = 1.0,
                            phase_samples: int = 1000) -> list[CheckResult]:
    """Lorentz invariance of the sampled action terms and the on-shell translation phase.

    Lorentz: every field is replaced by ``p -> phi(L p)``; the change of the
    kinetic and cubic integrands is averaged on the same samples and must be
    within 3 standard errors of 0.
    """
    rng = np.random.default_rng(seed)
    lam = snyder.random_lorentz(rng, 0.5) if lorentz_element is None else np.asarray(lorentz_element, float)
    eps = rng.normal(0.0, 1.0, 4) if translation_eps is None else np.asarray(translation_eps, float)
    phis = profiles or default_profiles(kappa=kappa)
    psi = kinetic_profile(kappa=kappa)
    moved = tuple(f.composed(lam) for f in phis)
    psi_m = psi.composed(lam)
    samplers = [_matched(psi, kappa, 2.5), _matched(phis[1], kappa, 2.5), _matched(phis[2], kappa, 2.5)]
    (x, y, z), (wx, wy, wz) = _draw(samplers, seed, n_samples)
    kw = kinetic_weight(mass, kappa)(x)
    kin = wx * kw * (psi(x) * psi(-x) - psi_m(x) * psi_m(-x))
    inner, _ = cubic_inner(phis, y, z, kappa)
    inner_m, _ = cubic_inner(moved, y, z, kappa)
    cub = wy * wz * (inner - inner_m)
    base = {"kinetic": _mean_se(wx * kw * psi(x) * psi(-x))[0], "cubic": _mean_se(wy * wz * inner)[0]}
    results = []
    for name, vals in (("kinetic", kin), ("cubic", cub)):
        mean, se = _mean_se(vals)
        ok = abs(mean) <= 3 * se if se > 0 else mean == 0.0
        results.append(CheckResult(f"action.lorentz_{name}", ok, abs(mean), samples=n_samples,
                                   anchor="action invariance",
                                   detail={"difference": mean, "se": se, "term": base[name]}))
    phase, count = translation_phase_residual(np.random.default_rng([seed, 1]), phase_samples, eps, kappa)
    results.append(CheckResult("action.translation_phase", phase <= 1e-9, phase, samples=count,
                               anchor="translation action", detail={"eps": eps.tolist()}))
    return results
