"""Fixed-convention linear algebra for pseudo-orthogonal groups.

Diagonal metrics, the so(p, q) generators ``J_AB``, a matrix exponential and
principal logarithm, the involutive automorphism ``g -> s g s`` and the
membership predicates used by the rest of the package.

Generator normalisation (no factor ``i``, no factor 1/2)::

    (J_AB)^C_D = delta^C_A eta_BD - delta^C_B eta_AD
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log2

import numpy as np

from .errors import BranchCutError

TOL_EXP = 1e-13
TOL_LOG = 1e-11
TOL_BRANCH = 1e-8
TOL_GROUP = 1e-10

_MAX_DIM = 8


@dataclass(frozen=True)
class Metric:
    """Diagonal metric ``eta = diag(signs)`` with entries +1 or -1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if len(signs) < 2 or len(signs) > _MAX_DIM:
            raise ValueError(f"metric dimension must be in [2, {_MAX_DIM}], got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"metric signs must be +1 or -1, got {signs}")
        object.__setattr__(self, "signs", signs)

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def eta(self) -> np.ndarray:
        return np.diag(np.array(self.signs, dtype=float))

    def dot(self, u, v) -> float:
        return float(np.dot(np.asarray(u) * np.array(self.signs), np.asarray(v)))

    def negated(self) -> "Metric":
        return Metric(tuple(-s for s in self.signs))


@dataclass(frozen=True)
class Involution:
    """Diagonal sign matrix ``s`` with ``s @ s = 1``; acts on groups by ``g -> s g s``."""

    signs: tuple[int, ...]
    reflected_axis: int

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError("involution entries must be +1 or -1")
        if not 0 <= self.reflected_axis < len(signs):
            raise ValueError("reflected axis out of range")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def reflecting(cls, dim: int, axis: int) -> "Involution":
        signs = [1] * dim
        signs[axis] = -1
        return cls(tuple(signs), axis)

    @property
    def dim(self) -> int:
        return len(self.signs)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(np.array(self.signs, dtype=float))


def generator(a: int, b: int, metric: Metric) -> np.ndarray:
    """Return ``J_ab`` in the real fundamental representation.

    ``generator(a, b) == -generator(b, a)``; the canonical order is ``a < b``.
    """
    n = metric.dim
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError(f"generator indices ({a}, {b}) out of range for dim {n}")
    if a == b:
        raise IndexError("generator indices must differ")
    x = np.zeros((n, n))
    x[a, b] = metric.signs[b]
    x[b, a] = -metric.signs[a]
    return x


def generator_basis(metric: Metric) -> list[tuple[tuple[int, int], np.ndarray]]:
    """All ``J_ab`` with ``a < b``, tagged by their index pair."""
    n = metric.dim
    return [((a, b), generator(a, b, metric)) for a in range(n) for b in range(a + 1, n)]


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x


def is_algebra_element(x: np.ndarray, metric: Metric, tol: float = TOL_GROUP) -> bool:
    eta = metric.eta
    return bool(np.max(np.abs(x.T @ eta + eta @ x), initial=0.0) <= tol)


def is_group_element(g: np.ndarray, metric: Metric, tol: float = TOL_GROUP) -> bool:
    eta = metric.eta
    if g.shape != (metric.dim, metric.dim) or not np.all(np.isfinite(g)):
        return False
    if np.max(np.abs(g.T @ eta @ g - eta)) > tol:
        return False
    return abs(np.linalg.det(g) - 1.0) <= tol


def group_inverse(g: np.ndarray, metric: Metric) -> np.ndarray:
    """Inverse of a metric-preserving matrix, ``eta g^T eta``."""
    eta = metric.eta
    return eta @ g.T @ eta


def _check_finite(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError("matrix has non-finite entries")
    return x


def expm(x: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a truncated Taylor series."""
    x = _check_finite(x)
    n = x.shape[0]
    norm = np.linalg.norm(x, 1)
    squarings = max(0, ceil(log2(norm / 0.5))) if norm > 0.5 else 0
    y = x / 2.0**squarings
    result = np.eye(n)
    term = np.eye(n)
    for k in range(1, 40):
        term = term @ y / k
        result = result + term
        if np.linalg.norm(term, 1) <= 1e-18 * np.linalg.norm(result, 1):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def _sqrtm_db(a: np.ndarray) -> np.ndarray:
    # Denman-Beavers; input has no eigenvalue on the closed negative real axis
    y = a.copy()
    z = np.eye(a.shape[0])
    for _ in range(100):
        y_next = 0.5 * (y + np.linalg.inv(z))
        z = 0.5 * (z + np.linalg.inv(y))
        delta = np.linalg.norm(y_next - y, 1)
        y = y_next
        if delta <= 1e-15 * np.linalg.norm(y, 1):
            break
    return y


def check_branch(g: np.ndarray, tol: float = TOL_BRANCH) -> None:
    """Raise BranchCutError if ``g`` has an eigenvalue on or near the closed negative real axis."""
    ev = np.linalg.eigvals(g)
    bad = (ev.real <= tol) & (np.abs(ev.imag) <= tol * np.maximum(1.0, np.abs(ev)))
    if np.any(bad):
        raise BranchCutError(f"eigenvalue(s) {ev[bad]} within {tol:g} of the negative real axis")


def logm(g: np.ndarray) -> np.ndarray:
    """Principal matrix logarithm by inverse scaling and squaring.

    Square roots are taken until ``|A - 1| <= 0.25``, then the Gregory series
    ``log A = 2 atanh((A - 1)(A + 1)^-1)`` is summed.
    """
    g = _check_finite(g)
    check_branch(g)
    n = g.shape[0]
    eye = np.eye(n)
    a = g
    roots = 0
    while np.linalg.norm(a - eye, 1) > 0.25:
        a = _sqrtm_db(a)
        roots += 1
        if roots > 64:
            raise BranchCutError("inverse scaling did not converge")
    y = (a - eye) @ np.linalg.inv(a + eye)
    y2 = y @ y
    power = y.copy()
    total = y.copy()
    for k in range(1, 60):
        power = power @ y2
        term = power / (2 * k + 1)
        total = total + term
        if np.linalg.norm(term, 1) <= 1e-18 * max(np.linalg.norm(total, 1), 1e-300):
            break
    return 2.0 ** (roots + 1) * total


def involution_apply(sigma: Involution, g: np.ndarray) -> np.ndarray:
    """``s g s``; an automorphism of the group and, on algebra elements, of the Lie bracket."""
    g = np.asarray(g, dtype=float)
    if g.shape != (sigma.dim, sigma.dim):
        raise ValueError(f"dimension mismatch: involution dim {sigma.dim}, matrix {g.shape}")
    s = np.array(sigma.signs, dtype=float)
    # diagonal conjugation is an exact sign flip per entry
    return g * np.outer(s, s)


def random_algebra_element(metric: Metric, rng: np.random.Generator, max_norm: float = 1.0) -> np.ndarray:
    """Random element of so(eta) with Frobenius norm at most ``max_norm``.

    Direction from independent normal coefficients on the ``J_ab`` basis,
    norm uniform on ``[0, max_norm]``.
    """
    basis = generator_basis(metric)
    coeffs = rng.standard_normal(len(basis))
    x = sum(c * j for c, (_, j) in zip(coeffs, basis))
    return x * (max_norm * rng.uniform() / np.linalg.norm(x))
