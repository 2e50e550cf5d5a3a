"""K-loops from the factorization ``g = a h`` of a pseudo-orthogonal group.

The loop ``L`` is the set of transvections (``sigma(a) = a^-1``) in the upper
chart; the stabilizer ``H`` is the fixed-point subgroup of ``sigma``.  The group
product induces ``a b = (a . b) h_ab`` and ``h_ab`` is the precession.

Three decompositions are provided:

* ``desitter(p)``: SO(p, 1) / SO(p-1, 1), signs (+, -, ..., -), reflected axis p
* ``lorentz(p)``:  SO(p, 1) / SO(p),     signs (+, -, ..., -), reflected axis 0
* ``sphere(n)``:   SO(n) / SO(n-1),      all +,                reflected axis n-1
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ambient
from .ambient import Involution, Metric
from .checks import FAIL, INCONCLUSIVE, PASS, CheckResult
from .errors import BranchCutError, ChartError

TOL_FACT = 1e-10
TOL_CHART = 1e-9


@dataclass(frozen=True)
class Decomposition:
    name: str
    metric: Metric
    involution: Involution

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def axis(self) -> int:
        """Reflected axis; ``e_axis`` is the basepoint of the symmetric space."""
        return self.involution.reflected_axis

    def basepoint(self) -> np.ndarray:
        e = np.zeros(self.dim)
        e[self.axis] = 1.0
        return e

    def transvection_generators(self) -> list[tuple[int, np.ndarray]]:
        """``J_{axis, mu}`` for every ``mu != axis`` (a basis of the -1 eigenspace)."""
        r = self.axis
        return [(mu, ambient.generator(r, mu, self.metric)) for mu in range(self.dim) if mu != r]


def desitter(p: int = 4) -> Decomposition:
    metric = Metric((1,) + (-1,) * p)
    return Decomposition("desitter", metric, Involution.reflecting(p + 1, p))


def lorentz(p: int = 3) -> Decomposition:
    metric = Metric((1,) + (-1,) * p)
    return Decomposition("lorentz", metric, Involution.reflecting(p + 1, 0))


def sphere(n: int = 4) -> Decomposition:
    metric = Metric((1,) * n)
    return Decomposition("sphere", metric, Involution.reflecting(n, n - 1))


PRESETS = {"desitter": desitter, "lorentz": lorentz, "sphere": sphere}


def preset(name: str) -> Decomposition:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(f"unknown decomposition {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True, eq=False)
class LoopElement:
    """A transvection ``g`` with ``sigma(g) = g^-1`` whose basepoint image lies in the upper chart."""

    g: np.ndarray
    decomposition: Decomposition

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "g", g)

    def point(self) -> np.ndarray:
        """Image of the basepoint, ``g e_axis``."""
        return self.g[:, self.decomposition.axis].copy()

    def __repr__(self):
        return f"LoopElement({self.decomposition.name}, point={np.round(self.point(), 6).tolist()})"


@dataclass(frozen=True, eq=False)
class Factorization:
    a: LoopElement
    h: np.ndarray
    residual: float
    stabilizer_defect: float = field(default=0.0)


def identity(dec: Decomposition) -> LoopElement:
    return LoopElement(np.eye(dec.dim), dec)


def split_algebra(x: np.ndarray, dec: Decomposition) -> tuple[np.ndarray, np.ndarray]:
    """``(x - s x s) / 2`` and ``(x + s x s) / 2``: the -1 and +1 eigenspace parts."""
    sxs = ambient.involution_apply(dec.involution, x)
    return 0.5 * (x - sxs), 0.5 * (x + sxs)


def transvection_defect(g: np.ndarray, dec: Decomposition) -> float:
    """``|sigma(g) g - 1|``; zero exactly for transvections."""
    return float(np.max(np.abs(ambient.involution_apply(dec.involution, g) @ g - np.eye(dec.dim))))


def stabilizer_defect(h: np.ndarray, dec: Decomposition) -> float:
    return float(np.max(np.abs(ambient.involution_apply(dec.involution, h) - h)))


def check_chart(g: np.ndarray, dec: Decomposition) -> None:
    r = dec.axis
    if not g[r, r] > TOL_CHART:
        raise ChartError(f"basepoint coordinate {g[r, r]:.3g} is not positive ({dec.name} upper chart)")


def factorize(g: np.ndarray, dec: Decomposition) -> Factorization:
    """Unique decomposition ``g = a h`` with ``a`` a transvection and ``h`` in the stabilizer.

    ``a = exp(log(g sigma(g)^-1) / 2)``; the logarithm is projected onto the
    -1 eigenspace before exponentiating so ``a`` is a transvection to rounding.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (dec.dim, dec.dim):
        raise ValueError(f"expected a {dec.dim}x{dec.dim} matrix, got {g.shape}")
    # g e_r = a e_r, so the chart is decided by g alone; beyond it the principal
    # root would silently pick a different (wrong) transvection
    check_chart(g, dec)
    sg = ambient.involution_apply(dec.involution, g)
    square = g @ ambient.group_inverse(sg, dec.metric)
    log_square, _ = split_algebra(ambient.logm(square), dec)
    a = ambient.expm(0.5 * log_square)
    check_chart(a, dec)
    h = ambient.group_inverse(a, dec.metric) @ g
    residual = float(np.linalg.norm(a @ h - g))
    return Factorization(LoopElement(a, dec), h, residual, stabilizer_defect(h, dec))


def loop_product(a: LoopElement, b: LoopElement) -> tuple[LoopElement, np.ndarray]:
    """``(a . b, h_ab)`` from ``a b = (a . b) h_ab``."""
    if a.decomposition != b.decomposition:
        raise ValueError("loop elements belong to different decompositions")
    f = factorize(a.g @ b.g, a.decomposition)
    return f.a, f.h


def mul(a: LoopElement, b: LoopElement) -> LoopElement:
    return loop_product(a, b)[0]


def loop_inverse(a: LoopElement) -> LoopElement:
    """The loop inverse coincides with the group inverse."""
    return LoopElement(ambient.group_inverse(a.g, a.decomposition.metric), a.decomposition)


def precession(a: LoopElement, b: LoopElement) -> np.ndarray:
    return loop_product(a, b)[1]


def conjugate(h: np.ndarray, a: LoopElement) -> LoopElement:
    """``h a h^-1`` for a stabilizer element ``h``; again a loop element."""
    dec = a.decomposition
    return LoopElement(h @ a.g @ ambient.group_inverse(h, dec.metric), dec)


def exp_transvection(x: np.ndarray, dec: Decomposition) -> LoopElement:
    """``exp`` of the -1 eigenspace part of ``x``, checked against the chart."""
    ell, _ = split_algebra(np.asarray(x, dtype=float), dec)
    g = ambient.expm(ell)
    check_chart(g, dec)
    return LoopElement(g, dec)


def transvection_through(point, dec: Decomposition) -> LoopElement:
    """The transvection carrying the basepoint to ``point`` (closed form).

    ``point`` must satisfy ``eta(point, point) = eta_rr`` with positive
    ``r``-coordinate.  For ``X = sum_mu c_mu J_{r mu}`` one has
    ``exp(X) e_r = cosh(lam) e_r - eta_rr sinh(lam)/lam c`` with
    ``lam^2 = -eta_rr eta(c, c)``, which is inverted here.
    """
    point = np.asarray(point, dtype=float)
    r = dec.axis
    if not point[r] > TOL_CHART:
        raise ChartError(f"point has non-positive basepoint coordinate {point[r]:.3g}")
    eta_r = dec.metric.signs[r]
    perp = point.copy()
    perp[r] = 0.0
    z = -eta_r * dec.metric.dot(perp, perp)  # sinh^2(lam), negative on compact directions
    root = np.sqrt(abs(z))
    if root < 1e-8:
        ratio = 1.0 - z / 6.0
    elif z > 0:
        ratio = np.arcsinh(root) / root
    else:
        ratio = np.arctan2(root, point[r]) / root
    c = -eta_r * perp * ratio
    x = sum(c[mu] * j for mu, j in dec.transvection_generators())
    g = ambient.expm(x)
    return LoopElement(g, dec)


def random_transvection(dec: Decomposition, rng: np.random.Generator, max_norm: float = 1.0) -> LoopElement:
    """``exp`` of a random -1 eigenspace element with Frobenius norm at most ``max_norm``."""
    gens = dec.transvection_generators()
    coeffs = rng.standard_normal(len(gens))
    x = sum(c * j for c, (_, j) in zip(coeffs, gens))
    x *= max_norm * rng.uniform() / np.linalg.norm(x)
    return exp_transvection(x, dec)


def random_group_element(dec: Decomposition, rng: np.random.Generator, max_norm: float = 1.0) -> np.ndarray:
    return ambient.expm(ambient.random_algebra_element(dec.metric, rng, max_norm))


def check_factorization_batch(dec: Decomposition, samples: int, seed: int, tol: float = TOL_FACT,
                              max_norm: float = 1.0) -> CheckResult:
    """Factorize ``samples`` random ``g = exp(Y)``, ``|Y| <= max_norm``.

    The residual is the worst of ``|a h - g|``, ``|sigma(a) a - 1|`` and
    ``|sigma(h) - h|``; draws outside the upper chart count as inconclusive.
    """
    worst, witness, skipped = 0.0, None, 0
    for i in range(samples):
        g = random_group_element(dec, np.random.default_rng([seed, i]), max_norm)
        try:
            f = factorize(g, dec)
        except (ChartError, BranchCutError):
            skipped += 1
            continue
        res = max(f.residual, transvection_defect(f.a.g, dec), f.stabilizer_defect)
        if res > worst:
            worst, witness = res, {"trial": i}
    passed = worst <= tol and skipped == 0
    return CheckResult(f"{dec.name}.factorization", passed, worst, witness=None if passed else witness,
                       samples=samples, inconclusive=skipped, anchor="provides a unique decomposition")


IDENTITY_KINDS = ("left_bol", "aip", "left_alternative", "lip", "gyrocommutative", "gyroassociative")


def _sides(kind: str, a: LoopElement, b: LoopElement, c: LoopElement):
    inv = loop_inverse
    if kind == "left_bol":
        return mul(a, mul(b, mul(a, c))), mul(mul(a, mul(b, a)), c)
    if kind == "aip":
        return inv(mul(a, b)), mul(inv(a), inv(b))
    if kind == "left_alternative":
        return mul(a, mul(a, b)), mul(mul(a, a), b)
    if kind == "lip":
        return mul(inv(a), mul(a, b)), b
    if kind == "gyrocommutative":
        ab, h = loop_product(a, b)
        return ab, conjugate(h, mul(b, a))
    if kind == "gyroassociative":
        ab, h = loop_product(a, b)
        return mul(a, mul(b, c)), mul(ab, conjugate(h, c))
    raise ValueError(f"unknown identity {kind!r}; choose from {IDENTITY_KINDS}")


def identity_residual(kind: str, a: LoopElement, b: LoopElement, c: LoopElement | None = None) -> float:
    """Frobenius norm of the difference between the two sides of a loop identity."""
    lhs, rhs = _sides(kind, a, b, c if c is not None else identity(a.decomposition))
    return float(np.linalg.norm(lhs.g - rhs.g))


def check_identity(kind: str, a: LoopElement, b: LoopElement, c: LoopElement | None = None,
                   tol: float = 1e-9) -> CheckResult:
    """Evaluate one identity at one tuple; chart and branch failures are inconclusive."""
    try:
        res = identity_residual(kind, a, b, c)
    except (ChartError, BranchCutError) as exc:
        return CheckResult(kind, False, float("nan"), status=INCONCLUSIVE, witness=str(exc), samples=1,
                           inconclusive=1)
    return CheckResult(kind, res <= tol, res, samples=1)


def check_identity_batch(kind: str, dec: Decomposition, samples: int, seed: int, tol: float = 1e-9,
                         max_norm: float = 1.0, retries: int = 10) -> CheckResult:
    """Check an identity on ``samples`` random triples.

    Trial ``i`` draws from its own generator seeded by ``(seed, i)``; tuples
    that leave the chart are redrawn up to ``retries`` times.
    """
    worst = 0.0
    witness = None
    skipped = 0
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        for _attempt in range(retries + 1):
            try:
                a, b, c = (random_transvection(dec, rng, max_norm) for _ in range(3))
                res = identity_residual(kind, a, b, c)
                break
            except (ChartError, BranchCutError):
                skipped += 1
        else:
            continue
        if res > worst:
            worst = res
            witness = {"trial": i, "points": [x.point().tolist() for x in (a, b, c)]}
    passed = worst <= tol
    status = PASS if passed else FAIL
    if skipped > retries * samples // 2:
        status = INCONCLUSIVE
    return CheckResult(f"{dec.name}.{kind}", passed, worst, status=status,
                       witness=None if passed else witness, samples=samples, inconclusive=skipped)


def associator_norm(a: LoopElement, b: LoopElement, c: LoopElement) -> float:
    return float(np.linalg.norm(mul(mul(a, b), c).g - mul(a, mul(b, c)).g))
