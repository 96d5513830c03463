"""Exact partition counts q(n), q(n, m) by dynamic programming.

Ground truth for everything else.  A partition of n here is a multiset of
part values where value k may repeat at most g(k) times (the g(k) distinct
generators a with floor(a^alpha) = k are interchangeable), so

    sum_n,m q(n, m) u^m z^n  =  prod_k (1 + u z^k)^{g(k)},

and picking j parts of value k carries weight binom(g(k), j).  The DP
convolves these factors for k = 1..n with arbitrary-precision integers.

Rows are packed: row i is a single big integer whose base-2^b digits are
q(i, 0), q(i, 1), ..., q(i, m_cap).  The slot width b is byte-aligned and
sized from the bound log2 q(i) <= (i r + f(r, 0)) / ln 2 (valid for every
r > 0; we use the centered saddle r(0)), so slots never overflow: every
partial coefficient is bounded by the final one because all remaining
factors have nonnegative coefficients and constant term 1.  Lengths never
exceed m_cap - the greedy smallest-values packing - for the same reason a
longer multiset would overdraw the budget.

A slot-free u=1 DP recomputes the totals q(i) independently and is checked
against the row sums, so a packing bug cannot slip through silently.

`brute_force` is the independent oracle: depth-first over values with
explicit binomial weights, no packing, no shared code with the DP loop.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpz

from .errors import DomainError, GuardExceeded
from .saddle import m_range, solve_r, suggest_kmax
from .spectrum import AlphaParam, PartSpectrum, build_spectrum
from .boltzmann import EvalPoint, f_value

_DEFAULT_CEILING = 4000


@dataclass(frozen=True)
class ExactTable:
    """q(n, m) for one n: sparse nonzero counts plus the total q(n)."""

    alpha: AlphaParam
    n: int
    counts: dict[int, int]
    total: int

    def prob(self, m: int) -> Fraction:
        return Fraction(self.counts.get(m, 0), self.total)


@dataclass(frozen=True)
class DistributionView:
    """Exact law of the length: rational probabilities, mean, variance."""

    n: int
    probabilities: dict[int, Fraction]
    mean: Fraction
    variance: Fraction


def _require_rational(alpha: AlphaParam) -> None:
    if alpha.kind != "rational":
        raise DomainError(
            "exact counting requires an exact-rational alpha (p/q); "
            f"got {alpha.label()}"
        )


def _slot_bits(spectrum: PartSpectrum, nmax: int) -> int:
    # log2 q(i) <= (i r + f(r,0)) / ln 2 for any r > 0; evaluate at r(0).
    aux = build_spectrum(spectrum.alpha, max(spectrum.kmax, suggest_kmax(spectrum.alpha, nmax)))
    r0 = solve_r(nmax, 0.0, aux)
    bound = (nmax * r0 + f_value(EvalPoint(r0, 0.0, aux))) / math.log(2.0)
    bits = math.ceil(bound) + 8
    return 8 * math.ceil(bits / 8)


def _dp_rows(spectrum: PartSpectrum, nmax: int, slot: int, m_cap: int) -> list:
    rows = [mpz(0)] * (nmax + 1)
    rows[0] = mpz(1)  # empty partition: q(0, 0) = 1
    for k in range(1, nmax + 1):
        gk = spectrum.g[k]
        jmax_global = min(gk, nmax // k)
        binoms = [mpz(math.comb(gk, j)) for j in range(jmax_global + 1)]
        for i in range(nmax, k - 1, -1):
            acc = rows[i]
            for j in range(1, min(jmax_global, i // k) + 1):
                low = rows[i - j * k]
                if low:
                    acc += (binoms[j] * low) << (slot * j)
            rows[i] = acc
    return rows


def _scalar_totals(spectrum: PartSpectrum, nmax: int) -> list[int]:
    # u = 1 specialization, plain integers: independent of the packing.
    tot = [0] * (nmax + 1)
    tot[0] = 1
    for k in range(1, nmax + 1):
        gk = spectrum.g[k]
        jmax_global = min(gk, nmax // k)
        binoms = [math.comb(gk, j) for j in range(jmax_global + 1)]
        for i in range(nmax, k - 1, -1):
            acc = tot[i]
            for j in range(1, min(jmax_global, i // k) + 1):
                low = tot[i - j * k]
                if low:
                    acc += binoms[j] * low
            tot[i] = acc
    return tot


def _unpack_row(row, slot: int, m_cap: int) -> dict[int, int]:
    nbytes = slot // 8
    raw = int(row).to_bytes(nbytes * (m_cap + 1), "little")
    out = {}
    cap = 1 << (slot - 4)
    for m in range(m_cap + 1):
        v = int.from_bytes(raw[m * nbytes:(m + 1) * nbytes], "little")
        if v:
            if v >= cap:  # headroom eaten -> the slot-width bound is broken
                raise ArithmeticError(
                    f"packed slot at m={m} holds {v.bit_length()} bits, "
                    f"window is {slot}; width bound violated"
                )
            out[m] = v
    return out


def count_tables_upto(
    alpha: AlphaParam, nmax: int, ceiling: int = _DEFAULT_CEILING
) -> list[ExactTable]:
    """ExactTable for every n = 1..nmax from a single DP sweep.

    Parts of value k > i never reach the z^i coefficient, so the finished
    rows are simultaneously correct for all budgets.
    """
    _require_rational(alpha)
    if nmax < 1:
        raise DomainError(f"nmax must be >= 1, got {nmax}")
    if nmax > ceiling:
        raise GuardExceeded(
            f"exact counting guard: n={nmax} exceeds the ceiling {ceiling}"
        )
    spectrum = build_spectrum(alpha, nmax)
    m_cap = m_range(nmax, spectrum).upper_guard
    slot = _slot_bits(spectrum, nmax)
    rows = _dp_rows(spectrum, nmax, slot, m_cap)
    totals = _scalar_totals(spectrum, nmax)
    tables = []
    for n in range(1, nmax + 1):
        counts = _unpack_row(rows[n], slot, m_cap)
        if 0 in counts:
            raise ArithmeticError(f"nonzero q({n}, 0) = {counts[0]} unpacked")
        total = sum(counts.values())
        if total != totals[n]:
            raise ArithmeticError(
                f"row-sum mismatch at n={n}: packed {total} vs scalar {totals[n]}"
            )
        witness = m_range(n, spectrum).upper_guard
        if counts.get(witness, 0) < 1:
            raise ArithmeticError(
                f"greedy maximal length {witness} has q({n}, m)=0; table corrupt"
            )
        tables.append(ExactTable(alpha=alpha, n=n, counts=counts, total=total))
    return tables


def count_table(alpha: AlphaParam, n: int, ceiling: int = _DEFAULT_CEILING) -> ExactTable:
    """q(n, m) for all m, exact."""
    return count_tables_upto(alpha, n, ceiling)[-1]


def brute_force_upto(alpha: AlphaParam, nmax: int) -> list[ExactTable]:
    """Independent oracle: DFS over values, binomial weights, n <= 30.

    Walks every assignment {value k used j_k times, j_k <= g(k)} with
    value-sum <= nmax and adds prod_k binom(g(k), j_k) to the (sum, length)
    cell.  No packing, no in-place convolution.
    """
    _require_rational(alpha)
    if nmax < 1:
        raise DomainError(f"nmax must be >= 1, got {nmax}")
    if nmax > 30:
        raise GuardExceeded(f"brute-force enumeration guard: n={nmax} > 30")
    spectrum = build_spectrum(alpha, nmax)
    cells: dict[tuple[int, int], int] = {}

    def rec(k: int, used: int, length: int, weight: int) -> None:
        if k > nmax - used:  # no further value fits: one complete assignment
            if used:
                key = (used, length)
                cells[key] = cells.get(key, 0) + weight
            return
        gk = spectrum.g[k]
        rec(k + 1, used, length, weight)
        w = weight
        for j in range(1, min(gk, (nmax - used) // k) + 1):
            w = w * (gk - j + 1) // j  # running binom(gk, j)
            rec(k + 1, used + j * k, length + j, w)

    rec(1, 0, 0, 1)
    tables = []
    for n in range(1, nmax + 1):
        counts = {m: c for (s, m), c in cells.items() if s == n}
        tables.append(
            ExactTable(alpha=alpha, n=n, counts=counts, total=sum(counts.values()))
        )
    return tables


def brute_force(alpha: AlphaParam, n: int) -> ExactTable:
    """Oracle table for a single n (n <= 30)."""
    return brute_force_upto(alpha, n)[-1]


def distribution(table: ExactTable) -> DistributionView:
    """Exact rational law of the length for one n."""
    if table.total <= 0:
        raise DomainError(f"empty table at n={table.n}")
    probs = {m: Fraction(c, table.total) for m, c in sorted(table.counts.items())}
    assert sum(probs.values()) == 1
    mean = sum((m * p for m, p in probs.items()), Fraction(0))
    second = sum((m * m * p for m, p in probs.items()), Fraction(0))
    return DistributionView(
        n=table.n, probabilities=probs, mean=mean, variance=second - mean * mean
    )
