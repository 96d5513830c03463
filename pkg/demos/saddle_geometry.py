"""Geometry of the two-variable saddle system.

For fixed n, each rho has a unique Boltzmann radius r(rho) solving
n = -f_10(r, rho); the induced length map S(rho) = f_01(r(rho), rho) is
strictly increasing, so a target mean length m pins rho uniquely. The
Hessian data (B^2, b^2, delta) certify the saddle and give the variance.
"""

import math

from powerparts import (
    AlphaParam,
    S_of_rho,
    default_spectrum,
    m_range,
    mean_variance,
    solve_saddle,
)

n = 500
spec = default_spectrum(AlphaParam.rational(1, 2), n)

print(f"n = {n}, alpha = 1/2")
print("rho -> S(rho) (strictly increasing):")
for rho in (-2.0, -1.0, 0.0, 1.0, 2.0):
    print(f"  S({rho:+.1f}) = {S_of_rho(n, rho, spec):9.4f}")

mu, s2 = mean_variance(n, spec)
print(f"\ncenter: mu_n = {mu:.6f}, sigma_n^2 = {s2:.6f} (= S'(0))")

rng = m_range(n, spec)
print(f"feasible lengths: {rng.lower} <= m <= {rng.upper_guard} (greedy bound)")

print("\nsolve for m across the window mu +- 2 sigma:")
sig = math.sqrt(s2)
for m in (round(mu - 2 * sig), round(mu), round(mu + 2 * sig)):
    sp = solve_saddle(n, m, spec)
    print(f"  m = {m:3d}: r = {sp.r:.8f}, rho = {sp.rho:+.6f}, "
          f"residuals = ({sp.residual_n:.1e}, {sp.residual_m:.1e}), "
          f"b^2 = {sp.b2:.4f}")
