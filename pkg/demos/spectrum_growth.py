"""Part multiplicities g(k) and their growth envelope.

Parts are floor(a^alpha) over distinct bases a >= 1, so the value k is
available with multiplicity g(k) = ceil((k+1)^(1/alpha)) - ceil(k^(1/alpha)).
This walks the first few k for each alpha, checks the telescoping identity,
and shows the strict (beta-1) k^(beta-1) < g(k) < beta 2^beta k^(beta-1)
envelope at work.
"""

from powerparts import AlphaParam, build_spectrum

for label in ("1/2", "1/3", "2/3"):
    alpha = AlphaParam.parse(label)
    spec = build_spectrum(alpha, 10 ** 4)
    beta = spec.beta
    print(f"alpha = {label}  (beta = {beta:.4g}, exactness: {spec.exactness})")
    print("  k:    " + "  ".join(f"{k:4d}" for k in range(1, 11)))
    print("  g(k): " + "  ".join(f"{spec.g[k]:4d}" for k in range(1, 11)))
    total = sum(spec.g[1:])
    print(f"  sum of g over k <= {spec.kmax}: {total} "
          f"(= ceil((kmax+1)^beta) - 1 by telescoping: {spec.total_parts()})")
    worst_lo = min(spec.g[k] / ((beta - 1) * k ** (beta - 1)) for k in range(1, spec.kmax + 1))
    worst_hi = max(spec.g[k] / (beta * 2 ** beta * k ** (beta - 1)) for k in range(1, spec.kmax + 1))
    print(f"  envelope slack: min g/lower = {worst_lo:.3f} (>1), "
          f"max g/upper = {worst_hi:.3f} (<1)")
    print()

# beta = 3/2 is not monotone: 4^1.5 = 8 exactly pinches g at k = 3
spec = build_spectrum(AlphaParam.parse("2/3"), 8)
print("g for alpha=2/3 dips where (k+1)^1.5 lands on an integer:",
      spec.g[1:])
