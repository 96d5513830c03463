"""Log of the bivariate generating function and its partial derivatives.

With Q(z,u) = prod_{k>=1} (1 + u z^k)^{g(k)} and z = e^{-r}, u = e^{rho},

    f(r, rho) = sum_{k>=1} g(k) log(1 + e^{rho - k r}),      r > 0,

and f_pq denotes d^{p+q} f / dr^p drho^q. Writing Y = e^{rho - k r}, every
partial is an exact rational function of Y:

    d^p_r d^q_rho g(k) log(1+Y) = (-1)^p g(k) k^p A_c(rho - k r),  c = p+q,

where A_c(w) = -Li_{1-c}(-e^w) is the (c-1)-st Eulerian rational form

    A_1 = Y/(1+Y),  A_2 = Y/(1+Y)^2,  A_3 = -A_2 tanh(w/2),  A_4 = A_2 (1 - 6 A_2).

These forms converge for every k (unlike the expanded l-series, which
requires kr > rho) and are evaluated in overflow-safe shape. The same
engine powers the pure-power sums h_{gamma,p,q} (k^gamma in place of g(k))
and the asymptotic main terms: by Mellin analysis,

    h_{gamma,p,q}(r,rho) = (-1)^{p+1} Li_{gamma+2-q}(-e^rho)
                           * Gamma(gamma+p+1) r^{-(gamma+p+1)} + O(r^{-1/2}),

and f_pq inherits the sum of such terms over the binomial expansion of
g(k) ~ sum_nu binom(beta,nu) k^{beta-nu}, with error scale r^{-(p+1/2)}.

Truncation of the infinite k-sum is certified: the partial sum over
k <= K is accepted only when the last 10 computed terms are below
epsilon * |sum| and a geometric tail bound (log-form, using
g(k) < beta 2^beta k^{beta-1} and |A_c(w)| <= e^w for w <= 0) is below
epsilon * |sum|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OrderOutOfRange, TruncationError
from .spectrum import PartSpectrum
from .specialfn import PolylogRequest, gamma_fn, gen_binomial, polylog_neg

_TINY = 1e-300
_LOG_TINY = math.log(_TINY)


@dataclass(frozen=True)
class PartialIndex:
    """Derivative multi-index: p in r, q in rho, 1 <= p+q <= 4."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or not (1 <= self.p + self.q <= 4):
            raise DomainError(f"partial index needs p,q >= 0 and 1 <= p+q <= 4, got ({self.p},{self.q})")


@dataclass(frozen=True)
class EvalPoint:
    """Evaluation point (r, rho) on a spectrum with a relative tail target."""

    r: float
    rho: float
    spectrum: PartSpectrum
    epsilon: float = 1e-12

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"r must be positive and finite, got {self.r}")
        if not math.isfinite(self.rho):
            raise DomainError(f"rho must be finite, got {self.rho}")
        if not (0.0 < self.epsilon <= 1e-6):
            raise DomainError(f"epsilon must lie in (0, 1e-6], got {self.epsilon}")


def _softplus(w: np.ndarray) -> np.ndarray:
    # log(1+e^w) = max(w,0) + log1p(e^-|w|), exact identity.
    return np.maximum(w, 0.0) + np.log1p(np.exp(-np.abs(w)))


def _a1(w: np.ndarray) -> np.ndarray:
    t = np.exp(-np.abs(w))
    return np.where(w >= 0, 1.0 / (1.0 + t), t / (1.0 + t))


def _a2(w: np.ndarray) -> np.ndarray:
    t = np.exp(-np.abs(w))
    return t / (1.0 + t) ** 2


def _a3(w: np.ndarray) -> np.ndarray:
    return -_a2(w) * np.tanh(w / 2.0)


def _a4(w: np.ndarray) -> np.ndarray:
    a2 = _a2(w)
    return a2 * (1.0 - 6.0 * a2)


_A_FUNCS = {0: _softplus, 1: _a1, 2: _a2, 3: _a3, 4: _a4}


def _tail_log_bound(K: int, r: float, rho: float, power: float, log_prefactor: float) -> float:
    """log of sum_{k>K} k^power e^{rho-kr} * e^{log_prefactor}, or +inf if not certifiable.

    Valid once k^power e^{-kr/2} is decreasing beyond K, i.e. K+1 >= 2*power/r.
    """
    if (K + 1) * r <= max(rho, 0.0) or (K + 1) < 2.0 * power / r:
        return math.inf
    log_geom = math.log(-math.expm1(-r / 2.0))
    return log_prefactor + rho + power * math.log(K + 1.0) - (K + 1.0) * r - log_geom


def _certified_sum(
    spec: PartSpectrum,
    r: float,
    rho: float,
    c: int,
    epsilon: float,
    k_power: float = 0.0,
    use_g: bool = True,
) -> float:
    """sum over k of weight(k) * A_c(rho - k r) with certified truncation.

    weight is g(k) k^k_power when use_g, else k^k_power. c = 0 selects the
    softplus summand (f itself). Extends K geometrically until both the
    last-10-terms rule and the analytic tail bound clear epsilon * |sum|,
    raising TruncationError if the spectrum ends first.
    """
    beta = spec.beta
    func = _A_FUNCS[c]
    if use_g:
        tail_power = beta - 1.0 + k_power
        log_pref = math.log(beta) + beta * math.log(2.0)
    else:
        tail_power = k_power
        log_pref = 0.0
    kmax = spec.kmax
    K = max(
        math.ceil(20.0 / r),
        math.ceil((max(rho, 0.0) + 5.0) / r),
        math.ceil(2.0 * tail_power / r),
        32,
    )
    K = min(K, kmax)
    kk = spec.k_power(1)
    while True:
        with np.errstate(under="ignore"):
            w = rho - r * kk[:K]
            vals = func(w)
            weights = spec.k_power(k_power)[:K] if k_power else 1.0
            if use_g:
                terms = spec.g_float()[:K] * weights * vals
            else:
                terms = weights * vals if k_power else vals
        total = float(terms.sum())
        scale = max(abs(total), _TINY)
        last_ok = bool(np.max(np.abs(terms[-10:])) < epsilon * scale)
        tail_log = _tail_log_bound(K, r, rho, tail_power, log_pref)
        tail_ok = tail_log < math.log(epsilon) + math.log(scale) or tail_log < _LOG_TINY
        if last_ok and tail_ok:
            return total
        if K >= kmax:
            raise TruncationError(
                f"spectrum kmax={kmax} too short to certify tail at r={r:.6g}, rho={rho:.6g} "
                f"(need roughly K ~ {math.ceil((max(rho, 0.0) + 50.0) / r)})"
            )
        K = min(2 * K, kmax)


def f_value(pt: EvalPoint) -> float:
    """f(r, rho) = sum_k g(k) log(1 + e^{rho - k r})."""
    return _certified_sum(pt.spectrum, pt.r, pt.rho, 0, pt.epsilon)


def f_partial(pt: EvalPoint, idx: PartialIndex) -> float:
    """Partial derivative f_pq at the point, exact closed Fermi forms."""
    sign = -1.0 if idx.p % 2 else 1.0
    return sign * _certified_sum(
        pt.spectrum, pt.r, pt.rho, idx.p + idx.q, pt.epsilon, k_power=float(idx.p)
    )


def h_value(pt: EvalPoint, gamma: float, p: int = 0, q: int = 0) -> float:
    """Pure-power analogue h_{gamma,p,q}: k^gamma in place of g(k)."""
    if gamma < 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    if p < 0 or q < 0 or p + q > 4:
        raise DomainError(f"h_value supports 0 <= p+q <= 4, got ({p},{q})")
    sign = -1.0 if p % 2 else 1.0
    return sign * _certified_sum(
        pt.spectrum, pt.r, pt.rho, p + q, pt.epsilon, k_power=gamma + p, use_g=False
    )


def h_asymptotic(pt: EvalPoint, gamma: float, p: int = 0, q: int = 0) -> tuple[float, float]:
    """(main term, error scale) for h_{gamma,p,q} as r -> 0.

    main = (-1)^{p+1} Li_{gamma+2-q}(-e^rho) Gamma(gamma+p+1) r^{-(gamma+p+1)},
    error scale r^{-1/2}. The sign factor makes the main term track the sum
    itself (positive for (p,q) = (0,0)). Needs polylog order gamma+2-q > 0.
    """
    order = gamma + 2.0 - q
    if order <= 0:
        raise OrderOutOfRange(f"polylog order gamma+2-q = {order} <= 0")
    sign = 1.0 if p % 2 else -1.0
    li = polylog_neg(PolylogRequest(order, pt.rho, min(pt.epsilon, 1e-6)))
    main = sign * li * gamma_fn(gamma + p + 1.0) * pt.r ** -(gamma + p + 1.0)
    return main, pt.r ** -0.5


def f_partial_asymptotic(pt: EvalPoint, p: int = 0, q: int = 0) -> tuple[float, float]:
    """(main term, error scale) for f_pq as r -> 0, (p,q) = (0,0) meaning f itself.

    Sums binom(beta,nu) h-main-terms for nu = 1..ceil(beta-1); error scale
    r^{-(p+1/2)}. Raises OrderOutOfRange if any needed polylog order
    beta-nu+2-q is <= 0.
    """
    if p < 0 or q < 0 or p + q > 4:
        raise DomainError(f"f_partial_asymptotic supports 0 <= p+q <= 4, got ({p},{q})")
    beta = pt.spectrum.beta
    sign = 1.0 if p % 2 else -1.0
    total = 0.0
    for nu in range(1, math.ceil(beta - 1.0) + 1):
        order = beta - nu + 2.0 - q
        if order <= 0:
            raise OrderOutOfRange(
                f"polylog order beta-nu+2-q = {order} <= 0 at nu={nu} (beta={beta})"
            )
        li = polylog_neg(PolylogRequest(order, pt.rho, min(pt.epsilon, 1e-6)))
        total += (
            gen_binomial(beta, nu)
            * li
            * gamma_fn(beta - nu + p + 1.0)
            * pt.r ** -(beta - nu + p + 1.0)
        )
    return sign * total, pt.r ** -(p + 0.5)
