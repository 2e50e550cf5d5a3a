"""Adding two Snyder momenta, three ways, and watching the sum fail to associate.

    python3 demos/momentum_sum.py
"""
import numpy as np

from snyder_kloop import snyder

kappa = 1.0
p = np.array([0.3, 0.1, -0.2, 0.25])
q = np.array([-0.1, 0.4, 0.05, -0.3])
r = np.array([0.2, -0.1, 0.3, 0.0])

exact = snyder.sum_exact(p, q, kappa)
print("factorization path   ", exact)
print("closed form          ", snyder.sum_closed_form(p, q, kappa)[0])
print("cubic truncation     ", snyder.sum_first_order(p, q, kappa, form="covariant"))

# the sum is not commutative; the two orders differ by a Lorentz transformation
pq, h = snyder.sum_with_precession(p, q, kappa)
print("\np (+) q - q (+) p    ", pq - snyder.sum_exact(q, p, kappa))
print("precession - 1       ", np.linalg.norm(h - np.eye(4)))

# nor associative: (p (+) q) (+) r differs from p (+) (q (+) r)
left = snyder.sum_exact(snyder.sum_exact(p, q, kappa), r, kappa)
right = snyder.sum_exact(p, snyder.sum_exact(q, r, kappa), kappa)
print("associator           ", left - right)

# but the left inverse law survives: (-p) (+) (p (+) q) = q
print("(-p) (+) (p (+) q)   ", snyder.sum_exact(-p, exact, kappa))

# at larger kappa the deformation fades away
for k in (1.0, 10.0, 100.0):
    print(f"kappa = {k:6.1f}: |p (+) q - (p + q)| = {np.linalg.norm(snyder.sum_exact(p, q, k) - p - q):.2e}")
