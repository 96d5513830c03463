"""Special functions needed by the series and asymptotic machinery.

The central object is the polylogarithm on the negative real axis,
Li_s(-e^rho) for s > 0, evaluated by two independent routes:

* series: Li_s(-e^rho) = sum_{j>=1} (-e^rho)^j / j^s for rho <= 0. Plain
  summation with the alternating-tail stopping rule once e^rho <= 0.85;
  closer to rho = 0 the same series is fed through the Cohen-Rodriguez
  Villegas-Zagier acceleration (the terms e^{j rho} j^{-s} are totally
  monotone, so the (3+sqrt 8)^{-n} error bound applies).
* quadrature: the Fermi-Dirac integral
      -Li_s(-e^rho) = (1/Gamma(s)) * int_0^inf t^{s-1} / (e^{t-rho}+1) dt,
  split at t = rho (t = 1 when rho <= 0) with the algebraic endpoint
  weight t^{s-1} handled by the quadrature rule, and the tail integrated
  after shifting the split point to the origin.

The automatic route is the series for rho <= 0 and quadrature for rho > 0.
For large rho the value is cross-checked (never replaced) against the
leading asymptote Li_s(-u) ~ -(log u)^s / Gamma(s+1).

Gamma and the error function are delegated to libm via the math module;
gen_binomial(beta, nu) is the falling-factorial binomial for real beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import ConvergenceFailure, DomainError

_SQRT2 = math.sqrt(2.0)
# Terms for the accelerated alternating series; error ~ 2 * 5.83^-n.
_CVZ_TERMS = 36
# Beyond this the plain alternating series converges fast enough.
_PLAIN_SERIES_CUTOFF = math.log(0.85)
_SERIES_BUDGET = 10 ** 6


def gamma_fn(x: float) -> float:
    """Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return math.gamma(x)


def gen_binomial(beta: float, nu: int) -> float:
    """Generalized binomial coefficient binom(beta, nu) for integer nu >= 0."""
    if nu < 0:
        raise DomainError(f"gen_binomial requires nu >= 0, got {nu}")
    out = 1.0
    for i in range(nu):
        out *= (beta - i) / (i + 1)
    return out


def normal_cdf(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / _SQRT2)


@dataclass(frozen=True)
class PolylogRequest:
    """Evaluation request for Li_s(-e^rho): order s > 0, shift rho real."""

    s: float
    rho: float
    target_accuracy: float = 1e-12

    def __post_init__(self):
        if not self.s > 0:
            raise DomainError(f"polylog order must be positive, got {self.s}")
        if not math.isfinite(self.rho):
            raise DomainError(f"rho must be finite, got {self.rho}")
        if not (0.0 < self.target_accuracy <= 1e-6):
            raise DomainError(
                f"target_accuracy must lie in (0, 1e-6], got {self.target_accuracy}"
            )


def _series_plain(s: float, rho: float, eps: float) -> float:
    """Alternating series with first-omitted-term stopping; needs e^rho < 1."""
    total = 0.0
    for j in range(1, _SERIES_BUDGET + 1):
        term = math.exp(j * rho) * j ** -s
        total += -term if j % 2 else term
        nxt = math.exp((j + 1) * rho) * (j + 1) ** -s
        if nxt < eps * max(abs(total), 1e-300):
            return total
    raise ConvergenceFailure(
        f"alternating polylog series exhausted {_SERIES_BUDGET} terms at s={s}, rho={rho}"
    )


def _series_cvz(s: float, rho: float) -> float:
    """CVZ-accelerated alternating series; valid for rho <= 0.

    Computes A = sum_{j>=1} (-1)^(j-1) e^{j rho} j^{-s} and returns -A.
    a_k below is the (k+1)-st series term; total monotonicity of the terms
    is what licenses the acceleration bound.
    """
    n = _CVZ_TERMS
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0.0
    for k in range(n):
        c = b - c
        acc += c * math.exp((k + 1) * rho) * (k + 1) ** -s
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    return -acc / d


def _fermi_factor(x: float) -> float:
    """1/(e^x + 1), overflow-safe on both sides."""
    if x >= 0:
        t = math.exp(-x)
        return t / (1.0 + t)
    return 1.0 / (1.0 + math.exp(x))


def _quadrature(s: float, rho: float, eps: float) -> float:
    """Fermi-Dirac integral route, split at t = max(rho, 1)."""
    split = rho if rho > 0 else 1.0

    def body(t: float) -> float:
        return _fermi_factor(t - rho)

    def tail(w: float) -> float:
        return (split + w) ** (s - 1.0) * _fermi_factor(split + w - rho)

    out_head = quad(
        body, 0.0, split, weight="alg", wvar=(s - 1.0, 0.0),
        epsabs=1e-290, epsrel=2e-14, limit=400, full_output=1,
    )
    out_rest = quad(tail, 0.0, math.inf, epsabs=1e-290, epsrel=2e-14, limit=400, full_output=1)
    head, err1 = out_head[0], out_head[1]
    rest, err2 = out_rest[0], out_rest[1]
    integral = head + rest
    value = -integral / gamma_fn(s)
    if err1 + err2 > 10.0 * max(eps * abs(integral), 1e-280):
        raise ConvergenceFailure(
            f"Fermi-Dirac quadrature error {err1 + err2:.2e} exceeds budget at s={s}, rho={rho}"
        )
    return value


def _large_rho_crosscheck(s: float, rho: float, value: float) -> None:
    # Leading asymptote -rho^s/Gamma(s+1); relative deviation is O(rho^-2).
    main = -(rho ** s) / gamma_fn(s + 1.0)
    if abs(value - main) > 0.5 * abs(main):
        raise ConvergenceFailure(
            f"quadrature value {value:.6e} far from large-rho asymptote {main:.6e} "
            f"at s={s}, rho={rho}"
        )


def polylog_neg(req: PolylogRequest, route: str = "auto") -> float:
    """Li_s(-e^rho) by the requested route ("auto", "series", "quadrature").

    The series route requires rho <= 0. In auto mode rho <= 0 uses the
    series, rho > 0 the quadrature, and rho > 30 additionally cross-checks
    the quadrature against the large-argument asymptote.
    """
    s, rho, eps = req.s, req.rho, req.target_accuracy
    if route not in ("auto", "series", "quadrature"):
        raise DomainError(f"unknown polylog route {route!r}")
    if route == "series" or (route == "auto" and rho <= 0.0):
        if rho > 0.0:
            raise DomainError("series route for Li_s(-e^rho) requires rho <= 0")
        if rho <= _PLAIN_SERIES_CUTOFF:
            return _series_plain(s, rho, eps)
        return _series_cvz(s, rho)
    value = _quadrature(s, rho, eps)
    if route == "auto" and rho > 30.0:
        _large_rho_crosscheck(s, rho, value)
    return value
