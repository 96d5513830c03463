"""Part multiplicities for partitions into floored fractional powers.

A part value k >= 1 can be produced by any integer a with floor(a^alpha) = k,
where 0 < alpha < 1. Writing beta = 1/alpha > 1, the number of producing
integers is

    g(k) = ceil((k+1)^beta) - ceil(k^beta),

and g(k) >= 1 for every k because beta > 1. Two evaluation paths:

* exact rational alpha = p/q: ceil(k^(q/p)) is the least t with t^p >= k^q,
  found by exact integer root extraction; no floating point is involved.
* real alpha: the power is computed in extended precision and certified
  against one-ulp perturbations of both alpha and the power itself; an
  uncertifiable ceiling raises PrecisionAmbiguous.

The strict order bounds (beta-1) k^(beta-1) < g(k) < beta 2^beta k^(beta-1)
hold for all k >= 1 and are exposed as a predicate used by the tests and
self-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import DomainError, PrecisionAmbiguous

try:
    from gmpy2 import iroot as _iroot, mpz as _mpz

    def _integer_root(x: int, p: int) -> tuple[int, bool]:
        r, exact = _iroot(_mpz(x), p)
        return int(r), bool(exact)

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency

    def _integer_root(x: int, p: int) -> tuple[int, bool]:
        # Newton iteration on integers; converges from above.
        if x == 0:
            return 0, True
        r = 1 << (x.bit_length() // p + 1)
        while True:
            rn = ((p - 1) * r + x // r ** (p - 1)) // p
            if rn >= r:
                break
            r = rn
        return r, r ** p == x


@dataclass(frozen=True)
class AlphaParam:
    """The exponent alpha in (0,1), either exact rational p/q or a float.

    kind is "rational" or "real". For rational alpha, p and q are coprime
    with 0 < p < q and every ceiling below is exact integer arithmetic.
    """

    kind: str
    value: float
    p: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.kind not in ("rational", "real"):
            raise DomainError(f"alpha kind must be rational or real, got {self.kind!r}")
        if not (0.0 < self.value < 1.0):
            raise DomainError(f"alpha must lie strictly in (0,1), got {self.value}")
        if self.kind == "rational":
            if not (isinstance(self.p, int) and isinstance(self.q, int)):
                raise DomainError("rational alpha needs integer p, q")
            if not (0 < self.p < self.q):
                raise DomainError(f"rational alpha needs 0 < p < q, got {self.p}/{self.q}")
            if math.gcd(self.p, self.q) != 1:
                raise DomainError(f"p/q must be in lowest terms, got {self.p}/{self.q}")

    @classmethod
    def rational(cls, p: int, q: int) -> "AlphaParam":
        g = math.gcd(p, q)
        if g > 1:
            p, q = p // g, q // g
        return cls(kind="rational", value=p / q, p=p, q=q)

    @classmethod
    def real(cls, value: float) -> "AlphaParam":
        return cls(kind="real", value=float(value))

    @classmethod
    def parse(cls, text: str) -> "AlphaParam":
        """Parse "p/q" as exact rational, anything else as a float literal."""
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return cls.rational(int(num), int(den))
        return cls.real(float(text))

    @property
    def beta(self) -> float:
        return self.q / self.p if self.kind == "rational" else 1.0 / self.value

    @property
    def beta_fraction(self) -> Fraction | None:
        return Fraction(self.q, self.p) if self.kind == "rational" else None

    def label(self) -> str:
        return f"{self.p}/{self.q}" if self.kind == "rational" else repr(self.value)


def _ceil_power_rational(k: int, p: int, q: int) -> int:
    """ceil(k^(q/p)) as the least t with t^p >= k^q, exactly."""
    if p == 1:
        return k ** q
    r, exact = _integer_root(k ** q, p)
    return r if exact else r + 1


def _ceil_power_real(k: int, alpha_value: float) -> int:
    """ceil(k^(1/alpha)) in extended precision with one-ulp certification.

    The ceiling must be stable when alpha moves by one ulp in either
    direction and when the computed power moves by one float64-scale ulp;
    otherwise the value depends on sub-representation detail of alpha and
    PrecisionAmbiguous is raised.
    """
    if k == 1:
        return 1
    lo = math.nextafter(alpha_value, 0.0)
    hi = math.nextafter(alpha_value, 1.0)
    ceilings = set()
    with mp.workdps(60):
        for a in (alpha_value, lo, hi):
            power = mp.power(k, 1 / mp.mpf(a))
            if power > mp.mpf("1e300"):
                raise DomainError(f"k^beta overflows certification range at k={k}")
            slop = power * mp.mpf(2) ** -52
            for shifted in (power, power + slop, power - slop):
                ceilings.add(int(mp.ceil(shifted)))
    if len(ceilings) != 1:
        raise PrecisionAmbiguous(
            f"ceil(k^beta) for k={k}, alpha={alpha_value!r} is not one-ulp stable"
        )
    return ceilings.pop()


def ceil_power(alpha: AlphaParam, k: int) -> int:
    """ceil(k^beta) for k >= 1."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if alpha.kind == "rational":
        return _ceil_power_rational(k, alpha.p, alpha.q)
    return _ceil_power_real(k, alpha.value)


def g_of_k(alpha: AlphaParam, k: int) -> int:
    """Multiplicity g(k) = ceil((k+1)^beta) - ceil(k^beta) of part value k."""
    return ceil_power(alpha, k + 1) - ceil_power(alpha, k)


def floored_power(alpha: AlphaParam, a: int) -> int:
    """floor(a^alpha) for integer a >= 1, exact for rational alpha.

    floor(a^(p/q)) is the largest v with v^q <= a^p. Used by the
    enumeration oracles; the ceiling machinery is deliberately not reused.
    """
    if a < 1:
        raise DomainError(f"a must be >= 1, got {a}")
    if alpha.kind != "rational":
        raise DomainError("floored_power requires exact rational alpha")
    r, _ = _integer_root(a ** alpha.p, alpha.q)
    return r


@dataclass
class PartSpectrum:
    """Multiplicities g(1..kmax) plus cached float views for series work.

    exactness is "exact" (rational alpha) or "precision-certified" (real
    alpha, every ceiling one-ulp stable). g[0] is a 0 placeholder so that
    g[k] is the multiplicity of part value k.
    """

    alpha: AlphaParam
    kmax: int
    g: list[int]
    exactness: str
    _float_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def beta(self) -> float:
        return self.alpha.beta

    def g_float(self) -> np.ndarray:
        """g(1..kmax) as float64; exact while g(k) < 2^53."""
        if "g" not in self._float_cache:
            self._float_cache["g"] = np.array(self.g[1:], dtype=np.float64)
        return self._float_cache["g"]

    def k_power(self, power: int) -> np.ndarray:
        """k^power over k = 1..kmax as float64, cached per power."""
        key = ("k", power)
        if key not in self._float_cache:
            base = np.arange(1, self.kmax + 1, dtype=np.float64)
            self._float_cache[key] = base if power == 1 else base ** power
        return self._float_cache[key]

    def total_parts(self) -> int:
        """Number of producing integers across all values <= kmax."""
        return sum(self.g[1:])


def build_spectrum(alpha: AlphaParam, kmax: int) -> PartSpectrum:
    """Tabulate g(1..kmax) from consecutive ceilings.

    Consecutive differences telescope, so sum(g) == ceil((kmax+1)^beta) - 1
    exactly; the identity is re-asserted as a self-check on the table.
    """
    if kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {kmax}")
    if alpha.kind == "rational" and alpha.p == 1:
        q = alpha.q
        ceilings = [k ** q for k in range(1, kmax + 2)]
    elif alpha.kind == "rational":
        ceilings = [_ceil_power_rational(k, alpha.p, alpha.q) for k in range(1, kmax + 2)]
    else:
        ceilings = [_ceil_power_real(k, alpha.value) for k in range(1, kmax + 2)]
    g = [0] * (kmax + 1)
    for k in range(1, kmax + 1):
        g[k] = ceilings[k] - ceilings[k - 1]
        if g[k] < 1:
            raise DomainError(f"g({k}) = {g[k]} < 1; beta <= 1 should be impossible here")
    spec = PartSpectrum(
        alpha=alpha,
        kmax=kmax,
        g=g,
        exactness="exact" if alpha.kind == "rational" else "precision-certified",
    )
    if spec.total_parts() != ceilings[kmax] - 1:
        raise AssertionError("telescoping identity violated; ceiling table is inconsistent")
    return spec


def check_order_bounds(spec: PartSpectrum) -> bool:
    """Strict bounds (beta-1) k^(beta-1) < g(k) < beta 2^beta k^(beta-1).

    The lower bound is checked in exact integer arithmetic for rational
    alpha ((q-p)^p k^(q-p) < g^p p^p); the upper bound has slack factor
    >= 2^(beta-1) so a float comparison is safe.
    """
    beta = spec.beta
    upper_coeff = beta * 2.0 ** beta
    rational = spec.alpha.kind == "rational"
    if rational:
        p, q = spec.alpha.p, spec.alpha.q
        lower_lhs_coeff = (q - p) ** p
        pp = p ** p
    for k in range(1, spec.kmax + 1):
        gk = spec.g[k]
        if rational:
            if not lower_lhs_coeff * k ** (q - p) < gk ** p * pp:
                return False
        else:
            if not (beta - 1.0) * k ** (beta - 1.0) < gk:
                return False
        if not gk < upper_coeff * k ** (beta - 1.0):
            return False
    return True
