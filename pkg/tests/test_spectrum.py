"""Part-multiplicity spectrum: exact floors, preimage counts, growth bounds."""

import math

import numpy as np
import pytest

from powerparts import (
    AlphaParam,
    DomainError,
    PrecisionAmbiguous,
    build_spectrum,
    check_order_bounds,
    g_of_k,
)
from powerparts.spectrum import floored_power

KMAX = 10 ** 4


def test_alpha_parse_forms():
    a = AlphaParam.parse("1/2")
    assert a.kind == "rational" and (a.p, a.q) == (1, 2) and a.beta == 2.0
    a = AlphaParam.parse("2/4")  # reduced
    assert (a.p, a.q) == (1, 2)
    a = AlphaParam.parse("0.61")
    assert a.kind == "real" and a.value == 0.61
    assert AlphaParam.parse("2/3").label() == "2/3"


@pytest.mark.parametrize("bad", ["0", "1", "3/2", "-1/2", "1.0", "0.0", "x", "1/0"])
def test_alpha_rejects_out_of_range(bad):
    with pytest.raises((DomainError, ValueError, ZeroDivisionError)):
        AlphaParam.parse(bad)


def test_floored_power_exact_small():
    a12 = AlphaParam.rational(1, 2)
    assert [floored_power(a12, a) for a in (1, 2, 3, 4, 8, 9)] == [1, 1, 1, 2, 2, 3]
    a23 = AlphaParam.rational(2, 3)
    # floor(a^(2/3)): 1,1,2,2,2,3,3,4
    assert [floored_power(a23, a) for a in range(1, 9)] == [1, 1, 2, 2, 2, 3, 3, 4]


def test_g_small_values():
    a12 = AlphaParam.rational(1, 2)
    assert [g_of_k(a12, k) for k in (1, 2, 3)] == [3, 5, 7]  # 2k+1
    a13 = AlphaParam.rational(1, 3)
    assert [g_of_k(a13, k) for k in (1, 2)] == [7, 19]  # 3k^2+3k+1


@pytest.mark.parametrize("ptxt,qtxt", [(1, 2), (1, 3), (2, 3)])
def test_telescoping_identity(ptxt, qtxt):
    alpha = AlphaParam.rational(ptxt, qtxt)
    spec = build_spectrum(alpha, KMAX)
    total = sum(spec.g[1:])
    assert total == spec.total_parts()
    beta_num = (KMAX + 1) ** alpha.q
    # ceil((KMAX+1)^(q/p)) - 1 computed in exact integers
    root = round(beta_num ** (1.0 / alpha.p))
    while root ** alpha.p > beta_num:
        root -= 1
    while (root + 1) ** alpha.p <= beta_num:
        root += 1
    ceil_val = root if root ** alpha.p == beta_num else root + 1
    assert total == ceil_val - 1


@pytest.mark.parametrize("ptxt,qtxt", [(1, 2), (1, 3), (2, 3)])
def test_growth_bounds_strict(ptxt, qtxt):
    alpha = AlphaParam.rational(ptxt, qtxt)
    spec = build_spectrum(alpha, KMAX)
    beta = spec.beta
    k = np.arange(1, KMAX + 1, dtype=np.float64)
    g = np.array(spec.g[1:], dtype=np.float64)
    lo = (beta - 1.0) * k ** (beta - 1.0)
    hi = beta * 2.0 ** beta * k ** (beta - 1.0)
    assert bool(np.all(lo < g)) and bool(np.all(g < hi))
    check_order_bounds(spec)  # library-side check agrees


def test_preimage_enumeration_alpha_half_full():
    # every base a < (KMAX+1)^2 lands in exactly one bucket floor(sqrt(a))
    spec = build_spectrum(AlphaParam.rational(1, 2), KMAX)
    a_hi = (KMAX + 1) ** 2
    counts = np.zeros(KMAX + 2, dtype=np.int64)
    step = 10 ** 7
    for lo in range(1, a_hi, step):
        a = np.arange(lo, min(lo + step, a_hi), dtype=np.int64)
        v = np.floor(np.sqrt(a.astype(np.float64))).astype(np.int64)
        v += ((v + 1) * (v + 1) <= a).astype(np.int64)
        v -= (v * v > a).astype(np.int64)
        counts += np.bincount(v, minlength=KMAX + 2)[: KMAX + 2]
    assert counts[1 : KMAX + 1].tolist() == spec.g[1:]


def test_preimage_enumeration_alpha_two_thirds_full():
    # floor(a^(2/3)) = k  <=>  k^3 <= a^2 < (k+1)^3
    spec = build_spectrum(AlphaParam.rational(2, 3), KMAX)
    a_hi = int(((KMAX + 1) ** 3) ** 0.5) + 2
    a = np.arange(1, a_hi, dtype=np.int64)
    v = np.floor(a.astype(np.float64) ** (2.0 / 3.0)).astype(np.int64)
    v += ((v + 1) ** 3 <= a * a).astype(np.int64)
    v -= (v ** 3 > a * a).astype(np.int64)
    counts = np.bincount(v[v <= KMAX], minlength=KMAX + 1)
    assert counts[1 : KMAX + 1].tolist() == spec.g[1:]


def test_preimage_enumeration_alpha_third_capped():
    # full enumeration to k=10^4 would walk ~10^12 bases; k <= 140 is exact
    # here and the telescoping + growth-bound checks cover the full range.
    spec = build_spectrum(AlphaParam.rational(1, 3), 140)
    a = np.arange(1, 141 ** 3, dtype=np.int64)
    v = np.floor(np.cbrt(a.astype(np.float64))).astype(np.int64)
    v += ((v + 1) ** 3 <= a).astype(np.int64)
    v -= (v ** 3 > a).astype(np.int64)
    counts = np.bincount(v[v <= 140], minlength=141)
    assert counts[1:141].tolist() == spec.g[1:141]


def test_real_alpha_spectrum_certified():
    spec = build_spectrum(AlphaParam.real(0.61), 2000)
    assert spec.exactness == "precision-certified"
    assert all(g >= 1 for g in spec.g[1:])
    rational = build_spectrum(AlphaParam.rational(1, 2), 100)
    assert rational.exactness == "exact"


def test_real_alpha_integer_boundary_ambiguous():
    # beta = 1/0.5 = 2 puts (k+1)^beta exactly on integers: one-ulp
    # perturbations of the exponent straddle the ceiling - refuse to guess.
    with pytest.raises(PrecisionAmbiguous):
        build_spectrum(AlphaParam.real(0.5), 10)


def test_spectrum_g_zero_slot_and_kmax_validation():
    spec = build_spectrum(AlphaParam.rational(1, 2), 16)
    assert spec.g[0] == 0 and len(spec.g) == 17
    with pytest.raises(DomainError):
        build_spectrum(AlphaParam.rational(1, 2), 0)


def test_g_float_matches_ints():
    spec = build_spectrum(AlphaParam.rational(1, 3), 64)
    gf = spec.g_float()
    assert gf.dtype == np.float64
    assert gf.astype(int).tolist() == spec.g[1:]


def test_beta_fraction_only_for_rational():
    assert AlphaParam.rational(2, 3).beta_fraction is not None
    assert AlphaParam.real(0.61).beta_fraction is None
    assert math.isclose(AlphaParam.real(0.61).beta, 1.0 / 0.61)
