"""Exact q(n) and q(n,m) tables from the big-integer DP.

One DP sweep yields every table up to the target n; counts are exact
integers, and the length distribution of a random partition comes out in
closed rational form.
"""

from powerparts import AlphaParam, count_table, count_tables_upto, distribution

A12 = AlphaParam.rational(1, 2)

print("alpha = 1/2, n = 3: all 23 selections of distinct bases")
t3 = count_table(A12, 3)
for m in sorted(t3.counts):
    print(f"  length {m}: {t3.counts[m]} partitions")
d = distribution(t3)
print(f"  mean length = {d.mean} (exact rational), variance = {d.variance}")
print()

print("totals q(n) for n = 1..12:")
tables = count_tables_upto(A12, 12)
print(" ", [t.total for t in tables])
print()

n = 600
table = count_table(A12, n)
print(f"n = {n}: q(n) has {table.total.bit_length()} bits, "
      f"support m = 1..{max(table.counts)}")
mode = max(table.counts, key=table.counts.get)
print(f"  modal length m* = {mode}, P(m*) = {float(table.prob(mode)):.5f}")
half = sum(c for m, c in table.counts.items() if m <= mode) / table.total
print(f"  P(length <= m*) = {half:.5f}")
