"""Saddle-point system for the two-variable partition generating function.

The log-generating function f(r, rho) from `boltzmann` drives everything
here.  The system

    n = -f_10(r, rho),        m = f_01(r, rho)

has a unique solution with r > 0: for fixed rho the map r -> -f_10(r, rho)
is strictly decreasing from +inf to 0, which gives a unique r(rho) by
bisection; along that curve S(rho) = f_01(r(rho), rho) is strictly
increasing (S' = delta / f_20 > 0 by Cauchy-Schwarz), which gives a unique
rho by a second bisection.  Newton steps accelerate both stages but the
bracket is the convergence guarantee.

At the solved point the Hessian data

    B^2 = f_20,    b^2 = f_02 - f_11^2 / f_20,    delta = B^2 b^2

are all strictly positive.  The centered solve (rho = 0) yields the mean
and variance of the partition-length distribution: mu_n = S(0) and
sigma_n^2 = b^2(r(0), 0).
"""

import math
from dataclasses import dataclass

from .boltzmann import EvalPoint, PartialIndex, f_partial
from .errors import (
    BracketFailure,
    ConvergenceFailure,
    DomainError,
    RangeError,
    TruncationError,
)
from .spectrum import AlphaParam, PartSpectrum, build_spectrum
from .specialfn import PolylogRequest, gamma_fn, polylog_neg

_F10 = PartialIndex(1, 0)
_F01 = PartialIndex(0, 1)
_F20 = PartialIndex(2, 0)
_F11 = PartialIndex(1, 1)
_F02 = PartialIndex(0, 2)


@dataclass(frozen=True)
class SaddlePoint:
    """Solved saddle (r, rho) with certified residuals and Hessian data."""

    n: int
    m: float | None
    r: float
    rho: float
    residual_n: float
    residual_m: float
    B2: float
    b2: float
    delta: float


@dataclass(frozen=True)
class MRange:
    """Admissible length range: lower is always 1, upper_guard is the exact
    combinatorial maximum (greedy smallest-values packing)."""

    lower: int
    upper_guard: int


def _achieved_n(spectrum: PartSpectrum, r: float, rho: float, epsilon: float) -> float:
    """-f_10(r, rho) = sum_k k g(k) / (e^{kr - rho} + 1)."""
    return -f_partial(EvalPoint(r, rho, spectrum, epsilon), _F10)


def _r_initial_guess(beta: float, n: float, rho: float, epsilon: float) -> float:
    # leading term n ~ beta (-Li_{beta+1}(-e^rho)) Gamma(beta+1) r^{-(beta+1)}
    li = polylog_neg(PolylogRequest(beta + 1.0, rho, min(epsilon, 1e-6)))
    return (beta * (-li) * gamma_fn(beta + 1.0) / n) ** (1.0 / (beta + 1.0))


def suggest_kmax(alpha: AlphaParam, n: float, rho: float = 0.0, slack: float = 8.0) -> int:
    """Spectrum length generous enough for certified sums near the saddle of n."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    r_hat = _r_initial_guess(alpha.beta, float(n), rho, 1e-12)
    need = slack * (25.0 + max(rho, 0.0)) / r_hat
    return max(64, math.ceil(need))


def solve_r(
    n: float,
    rho: float,
    spectrum: PartSpectrum,
    epsilon: float = 1e-12,
    rel_tol: float = 1e-10,
    max_iter: int = 220,
    r_init: float | None = None,
) -> float:
    """Unique r > 0 with n = -f_10(r, rho), residual <= rel_tol * n.

    Brackets by doubling/halving from a polylog-based initial guess, then
    bisects the strictly decreasing map r -> -f_10(r, rho), finishing with
    Newton steps using dN/dr = -f_20.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    n = float(n)
    beta = spectrum.beta

    def achieved(r: float) -> float:
        return _achieved_n(spectrum, r, rho, epsilon)

    r0 = r_init if r_init is not None else _r_initial_guess(beta, n, rho, epsilon)
    try:
        n0 = achieved(r0)
    except TruncationError as exc:
        raise BracketFailure(
            f"spectrum (kmax={spectrum.kmax}) too short near initial guess r={r0:.3g}: {exc}"
        ) from exc

    # Walk the guess into a bracket [r_lo, r_hi] with N(r_lo) >= n >= N(r_hi).
    if n0 >= n:
        r_lo, n_lo = r0, n0
        r_hi = r0
        for _ in range(200):
            r_hi *= 2.0
            n_hi = achieved(r_hi)
            if n_hi <= n:
                break
        else:
            raise BracketFailure(f"no upper bracket for n={n} at rho={rho}")
    else:
        r_hi, n_hi = r0, n0
        r_lo = r0
        for _ in range(200):
            r_lo *= 0.5
            try:
                n_lo = achieved(r_lo)
            except TruncationError as exc:
                raise BracketFailure(
                    f"spectrum (kmax={spectrum.kmax}) cannot reach n={n} at rho={rho}; "
                    f"truncation bites at r={r_lo:.3g}: {exc}"
                ) from exc
            if n_lo >= n:
                break
        else:
            raise BracketFailure(f"no lower bracket for n={n} at rho={rho}")

    tol = rel_tol * n
    r = 0.5 * (r_lo + r_hi)
    for it in range(max_iter):
        nr = achieved(r)
        if abs(nr - n) <= 0.25 * tol:
            return r
        if nr >= n:
            r_lo = r
        else:
            r_hi = r
        # Newton once the bracket is narrow; fall back to bisection otherwise.
        if it >= 8 and (r_hi - r_lo) < 0.2 * r_lo:
            f20 = f_partial(EvalPoint(r, rho, spectrum, epsilon), _F20)
            step = (nr - n) / f20
            cand = r + step
            if r_lo < cand < r_hi:
                r = cand
                continue
        r = 0.5 * (r_lo + r_hi)
    raise ConvergenceFailure(
        f"solve_r: residual {abs(achieved(r) - n):.3g} > {tol:.3g} after {max_iter} iterations"
    )


def S_of_rho(
    n: float,
    rho: float,
    spectrum: PartSpectrum,
    epsilon: float = 1e-12,
    rel_tol: float = 1e-10,
    r_init: float | None = None,
) -> float:
    """S(rho) = f_01(r(rho), rho), the length delivered at the n-matching r."""
    r = solve_r(n, rho, spectrum, epsilon, rel_tol, r_init=r_init)
    return f_partial(EvalPoint(r, rho, spectrum, epsilon), _F01)


def _hessian(spectrum: PartSpectrum, r: float, rho: float, epsilon: float):
    pt = EvalPoint(r, rho, spectrum, epsilon)
    f20 = f_partial(pt, _F20)
    f11 = f_partial(pt, _F11)
    f02 = f_partial(pt, _F02)
    b2 = f02 - f11 * f11 / f20
    delta = f20 * b2
    if f20 <= 0.0 or b2 <= 0.0:
        raise ConvergenceFailure(
            f"Hessian positivity violated at (r={r:.6g}, rho={rho:.6g}): "
            f"f20={f20:.6g}, b2={b2:.6g}"
        )
    return f20, f11, f02, b2, delta


def solve_saddle(
    n: int,
    m: float | None,
    spectrum: PartSpectrum,
    epsilon: float = 1e-12,
    rel_tol: float = 1e-10,
    max_iter: int = 260,
) -> SaddlePoint:
    """Solve n = -f_10, m = f_01 for (r, rho); m = None pins rho = 0.

    Outer bisection runs on the strictly increasing map rho -> S(rho),
    expanding the bracket geometrically from [-1, 1] and capped at
    |rho| <= beta ln n + 30.  Newton steps use S'(rho) = delta / f_20.
    """
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    beta = spectrum.beta

    if m is None:
        r = solve_r(n, 0.0, spectrum, epsilon, rel_tol)
        return _finish(n, None, r, 0.0, spectrum, epsilon, rel_tol)

    m = float(m)
    if m < 1.0:
        raise DomainError(f"m must be >= 1, got {m}")
    guard = m_range(n, spectrum).upper_guard
    if m > guard:
        raise RangeError(f"m={m} exceeds the maximal length {guard} for n={n}")

    cap = beta * math.log(max(n, 2)) + 30.0
    m_tol = rel_tol * max(m, 1.0)

    # S(0) splits the search; expand one side geometrically until bracketed.
    r_at = {}

    def S(rho: float) -> float:
        r = solve_r(n, rho, spectrum, epsilon, rel_tol)
        r_at[rho] = r
        return f_partial(EvalPoint(r, rho, spectrum, epsilon), _F01)

    s0 = S(0.0)
    if abs(s0 - m) <= 0.25 * m_tol:
        return _finish(n, m, r_at[0.0], 0.0, spectrum, epsilon, rel_tol)
    if s0 < m:
        lo, s_lo = 0.0, s0
        hi = 1.0
        while True:
            s_hi = S(hi)
            if s_hi >= m:
                break
            if hi >= cap:
                raise RangeError(
                    f"m={m} not reachable: S({hi:.3g}) = {s_hi:.6g} < m at the rho cap"
                )
            lo, s_lo = hi, s_hi
            hi = min(2.0 * hi, cap)
    else:
        hi, s_hi = 0.0, s0
        lo = -1.0
        while True:
            s_lo = S(lo)
            if s_lo <= m:
                break
            if lo <= -cap:
                raise RangeError(
                    f"m={m} not reachable: S({lo:.3g}) = {s_lo:.6g} > m at the rho cap"
                )
            hi, s_hi = lo, s_lo
            lo = max(2.0 * lo, -cap)

    rho = lo + (hi - lo) * 0.5
    for it in range(max_iter):
        r = solve_r(n, rho, spectrum, epsilon, rel_tol, r_init=r_at.get(rho))
        r_at[rho] = r
        s = f_partial(EvalPoint(r, rho, spectrum, epsilon), _F01)
        if abs(s - m) <= 0.25 * m_tol:
            return _finish(n, m, r, rho, spectrum, epsilon, rel_tol)
        if s < m:
            lo, s_lo = rho, s
        else:
            hi, s_hi = rho, s
        if it >= 4 and (hi - lo) < 0.5:
            f20, _, _, _, delta = _hessian(spectrum, r, rho, epsilon)
            cand = rho + (m - s) * f20 / delta
            if lo < cand < hi:
                rho = cand
                continue
        rho = lo + (hi - lo) * 0.5
    raise ConvergenceFailure(
        f"solve_saddle: |S(rho) - m| > {m_tol:.3g} after {max_iter} iterations "
        f"(n={n}, m={m})"
    )


def _finish(
    n: int,
    m: float | None,
    r: float,
    rho: float,
    spectrum: PartSpectrum,
    epsilon: float,
    rel_tol: float,
) -> SaddlePoint:
    pt = EvalPoint(r, rho, spectrum, epsilon)
    res_n = abs(n + f_partial(pt, _F10)) / n
    if m is None:
        res_m = 0.0
    else:
        res_m = abs(m - f_partial(pt, _F01)) / max(m, 1.0)
    if res_n > rel_tol or res_m > rel_tol:
        raise ConvergenceFailure(
            f"saddle residuals not certified: residual_n={res_n:.3g}, "
            f"residual_m={res_m:.3g} vs tol {rel_tol:.3g}"
        )
    f20, _, _, b2, delta = _hessian(spectrum, r, rho, epsilon)
    return SaddlePoint(
        n=n, m=m, r=r, rho=rho, residual_n=res_n, residual_m=res_m,
        B2=f20, b2=b2, delta=delta,
    )


def mean_variance(
    n: int,
    spectrum: PartSpectrum,
    epsilon: float = 1e-12,
    rel_tol: float = 1e-10,
) -> tuple[float, float]:
    """(mu_n, sigma_n^2) of the length distribution via the centered saddle.

    eta = r(0) solves n = sum_k k g(k)/(e^{eta k} + 1); then mu_n = S(0) and
    sigma_n^2 = f_02 - f_11^2/f_20 evaluated at (eta, 0), i.e. b^2 there.
    """
    eta = solve_r(n, 0.0, spectrum, epsilon, rel_tol)
    pt = EvalPoint(eta, 0.0, spectrum, epsilon)
    mu = f_partial(pt, _F01)
    _, _, _, b2, _ = _hessian(spectrum, eta, 0.0, epsilon)
    return mu, b2


def m_range(n: int, spectrum: PartSpectrum) -> MRange:
    """Exact maximal length: pack the smallest part values greedily into n."""
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")
    budget = n
    count = 0
    for k in range(1, spectrum.kmax + 1):
        if budget < k:
            break
        j = min(spectrum.g[k], budget // k)
        count += j
        budget -= j * k
        if j < spectrum.g[k]:
            break
    else:
        if budget >= spectrum.kmax + 1:
            raise TruncationError(
                f"spectrum kmax={spectrum.kmax} too short for m_range at n={n}: "
                f"{budget} budget remains past the last tabulated value"
            )
    return MRange(lower=1, upper_guard=count)


def default_spectrum(
    alpha: AlphaParam, n: float, rho: float = 0.0, slack: float = 8.0
) -> PartSpectrum:
    """Spectrum sized by suggest_kmax for saddle work at this n."""
    return build_spectrum(alpha, suggest_kmax(alpha, n, rho, slack))
