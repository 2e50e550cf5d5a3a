"""Coordinates under the star product, and a cubic action whose bracketing matters.

    python3 demos/star_action.py
"""
from snyder_kloop import star

expansion = star.expand_sum(1.0)
print("cubic Taylor coefficients of the momentum sum:", len(expansion.nonzero_cubic()))

# coordinates commute under the star product ...
worst = max(star.star_commutator(mu, nu, expansion).max_abs() for mu in range(4) for nu in range(4))
print(f"max |[x_mu, x_nu]_*| coefficient: {worst:.1e}")

# ... but do not associate
for mu, nu, alpha in [(1, 2, 2), (0, 1, 0), (2, 3, 3)]:
    t = star.star_triple(mu, nu, alpha, expansion).snapped()
    print(f"(x{mu} * x{nu}) * x{alpha} - x{mu} * (x{nu} * x{alpha}) = {t.coeffs}")

# a cubic interaction term estimated by Monte Carlo with each bracketing
est = star.evaluate_action(n_samples=20000, seed=1)
print(f"\nkinetic term        {est.kinetic:+.4e} +- {est.kinetic_se:.1e}")
print(f"phi o (phi o phi)   {est.cubic_inner:+.4e} +- {est.cubic_inner_se:.1e}")
print(f"(phi o phi) o phi   {est.cubic_outer:+.4e} +- {est.cubic_outer_se:.1e}")
z = abs(est.bracketing_difference) / est.bracketing_difference_se
print(f"bracketings differ by {z:.1f} standard errors")

for r in star.check_action_symmetries(n_samples=20000, seed=1):
    print(f"{r.name:26s} {r.status}  {r.max_residual:.2e}")
