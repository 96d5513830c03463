"""Log-scale accuracy of the saddle-point estimates against exact counts.

Both |log qhat(n) - log q(n)| and the centered q(n,m) analogue shrink as n
grows; the printed error scale r^(2 beta / 7) is the certified envelope.
"""

import math

from powerparts import (
    AlphaParam,
    count_tables_upto,
    default_spectrum,
    mean_variance,
    qn_asymptotic,
    qnm_asymptotic,
)

A12 = AlphaParam.rational(1, 2)
NS = (100, 200, 400, 800)

tables = {t.n: t for t in count_tables_upto(A12, max(NS)) if t.n in NS}
spec = default_spectrum(A12, max(NS))

print("alpha = 1/2")
print(f"{'n':>5} {'log q(n)':>12} {'log qhat':>12} {'|err|':>10} {'scale':>8}")
for n in NS:
    est = qn_asymptotic(n, spec)
    exact = math.log(tables[n].total)
    print(f"{n:>5} {exact:>12.4f} {est.log_value:>12.4f} "
          f"{abs(est.log_value - exact):>10.6f} {est.error_scale:>8.4f}")

print("\ncentered counts q(n, m) at m = round(mu_n):")
print(f"{'n':>5} {'m':>4} {'log q(n,m)':>12} {'log qhat':>12} {'|err|':>10}")
for n in NS:
    mu, _ = mean_variance(n, spec)
    m = round(mu)
    est = qnm_asymptotic(n, m, spec)
    exact = math.log(tables[n].counts[m])
    print(f"{n:>5} {m:>4} {exact:>12.4f} {est.log_value:>12.4f} "
          f"{abs(est.log_value - exact):>10.6f}")

print("\nboth error columns shrink roughly like r^(2 beta/7) ~ n^(-2 beta/(7(beta+1)))")
