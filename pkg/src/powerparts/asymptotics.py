"""Asymptotic count and distribution formulas, evaluated in log space.

With (r, rho) the solved saddle and B^2, b^2 the Hessian data,

    log q(n)    = n r(0) + f(r(0), 0) - log sqrt(2 pi) - log B(r(0), 0)
    log q(n, m) = -m rho + n r + f(r, rho) - log(2 pi) - log B - log b

both carrying a relative error scale r^{2 beta / 7}.  The local limit
law writes P(len = m) two ways: the Gaussian density
e^{-x^2/2} / (sqrt(2 pi) sigma_n) with x = (m - mu_n)/sigma_n and error
scale (|x| + |x|^3) / n^{alpha/(2 alpha + 2)}, and the exact-saddle ratio
L_n e^{H_n}, which by construction equals exp(log q(n,m) - log q(n)) up to
floating-point rounding - asserted here at 1e-12.  The CLT comparison is
the Kolmogorov distance between the exact standardized length law and the
standard normal, with both one-sided gaps at every atom.

Everything stays in logs until the caller asks for a value, so n = 10^6
never overflows; exact totals enter through math.log of arbitrary-size
integers, which is lossless down to the float mantissa.
"""

import math
from dataclasses import dataclass

from .boltzmann import EvalPoint, f_value
from .errors import DomainError
from .exact import ExactTable, count_table
from .saddle import mean_variance, solve_saddle
from .spectrum import PartSpectrum
from .specialfn import normal_cdf

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Log-space estimate with its own relative error scale."""

    log_value: float
    value: float
    error_scale: float
    r: float
    rho: float
    formula: str

    @staticmethod
    def make(log_value: float, error_scale: float, r: float, rho: float, formula: str):
        value = math.exp(log_value) if log_value < 709.0 else math.inf
        return AsymptoticEstimate(log_value, value, error_scale, r, rho, formula)


def qn_asymptotic(n: int, spectrum: PartSpectrum, epsilon: float = 1e-12) -> AsymptoticEstimate:
    """Leading-order q(n) from the centered saddle (rho = 0)."""
    sp = solve_saddle(n, None, spectrum, epsilon)
    f0 = f_value(EvalPoint(sp.r, 0.0, spectrum, epsilon))
    log_value = n * sp.r + f0 - 0.5 * _LOG_2PI - 0.5 * math.log(sp.B2)
    scale = sp.r ** (2.0 * spectrum.beta / 7.0)
    return AsymptoticEstimate.make(log_value, scale, sp.r, 0.0, "qn")


def qnm_asymptotic(
    n: int, m: float, spectrum: PartSpectrum, epsilon: float = 1e-12
) -> AsymptoticEstimate:
    """Leading-order q(n, m) from the two-variable saddle."""
    sp = solve_saddle(n, m, spectrum, epsilon)
    f = f_value(EvalPoint(sp.r, sp.rho, spectrum, epsilon))
    log_value = (
        -m * sp.rho + n * sp.r + f
        - _LOG_2PI - 0.5 * math.log(sp.B2) - 0.5 * math.log(sp.b2)
    )
    scale = sp.r ** (2.0 * spectrum.beta / 7.0)
    return AsymptoticEstimate.make(log_value, scale, sp.r, sp.rho, "qnm")


def llt_error_scale(n: int, x: float, spectrum: PartSpectrum) -> float:
    """Local-limit error scale (|x| + |x|^3) / n^{alpha/(2 alpha + 2)}."""
    a = spectrum.alpha.value
    return (abs(x) + abs(x) ** 3) / n ** (a / (2.0 * a + 2.0))


def llt_gaussian_prob(
    n: int, m: float, spectrum: PartSpectrum, epsilon: float = 1e-12
) -> float:
    """Gaussian local-limit density at m: e^{-x^2/2} / (sqrt(2 pi) sigma_n).

    x = (m - mu_n) / sigma_n; the matching error scale is llt_error_scale(n, x).
    """
    mu, s2 = mean_variance(n, spectrum, epsilon)
    sigma = math.sqrt(s2)
    x = (m - mu) / sigma
    return math.exp(-0.5 * x * x) / (math.sqrt(2.0 * math.pi) * sigma)


def llt_ratio_prob(
    n: int, m: float, spectrum: PartSpectrum, epsilon: float = 1e-12
) -> float:
    """Saddle-ratio form of P(len = m): L_n e^{H_n}.

    L_n = B(r0, 0) / (sqrt(2 pi) B(r, rho) b(r, rho)) and
    H_n = -m rho + n (r - r0) + f(r, rho) - f(r0, 0), where r0 centers n and
    (r, rho) solves the full system.  Equals the ratio of the two count
    asymptotics; the identity is asserted to 1e-12 relative.
    """
    center = solve_saddle(n, None, spectrum, epsilon)
    sp = solve_saddle(n, m, spectrum, epsilon)
    f0 = f_value(EvalPoint(center.r, 0.0, spectrum, epsilon))
    f = f_value(EvalPoint(sp.r, sp.rho, spectrum, epsilon))
    log_L = 0.5 * math.log(center.B2) - (
        0.5 * _LOG_2PI + 0.5 * math.log(sp.B2) + 0.5 * math.log(sp.b2)
    )
    H = -m * sp.rho + n * (sp.r - center.r) + f - f0
    out = math.exp(log_L + H)

    qn = n * center.r + f0 - 0.5 * _LOG_2PI - 0.5 * math.log(center.B2)
    qnm = (
        -m * sp.rho + n * sp.r + f
        - _LOG_2PI - 0.5 * math.log(sp.B2) - 0.5 * math.log(sp.b2)
    )
    quotient = math.exp(qnm - qn)
    if not math.isclose(out, quotient, rel_tol=1e-12):
        raise AssertionError(
            f"ratio-form identity broken: L e^H = {out!r} vs quotient {quotient!r}"
        )
    return out


def clt_cdf_distance(
    n: int,
    spectrum: PartSpectrum,
    table: ExactTable | None = None,
    epsilon: float = 1e-12,
) -> float:
    """Kolmogorov distance between the standardized exact length law and N(0,1).

    sup over atoms of both one-sided gaps |F(m) - Phi(x_m)| and
    |F(m-) - Phi(x_m)|, standardized by the saddle mu_n, sigma_n.
    """
    if table is None:
        table = count_table(spectrum.alpha, n)
    elif table.n != n:
        raise DomainError(f"table is for n={table.n}, asked n={n}")
    mu, s2 = mean_variance(n, spectrum, epsilon)
    sigma = math.sqrt(s2)
    total = table.total
    dist = 0.0
    cum = 0
    for m in sorted(table.counts):
        x = (m - mu) / sigma
        phi = normal_cdf(x)
        left = cum / total  # F(m-)
        cum += table.counts[m]
        right = cum / total  # F(m)
        dist = max(dist, abs(left - phi), abs(right - phi))
    return dist
