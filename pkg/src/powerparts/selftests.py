"""Built-in invariant suites behind the `selftest` CLI subcommand.

Each suite returns (name, ok, detail) triples and is a fast smoke check of
the module's core identities - the full oracle-driven test suite lives in
tests/.  Suites: special-fn, boltzmann, saddle, exact, asym, all.
"""

import math

from .boltzmann import EvalPoint, PartialIndex, f_partial, f_value, h_value
from .errors import DomainError
from .exact import brute_force_upto, count_tables_upto, distribution
from .saddle import S_of_rho, default_spectrum, m_range, mean_variance, solve_r, solve_saddle
from .spectrum import AlphaParam, build_spectrum, check_order_bounds
from .specialfn import PolylogRequest, gamma_fn, polylog_neg

Check = tuple[str, bool, str]

_A12 = AlphaParam.rational(1, 2)
_A13 = AlphaParam.rational(1, 3)
_A23 = AlphaParam.rational(2, 3)


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * max(abs(a), abs(b))


def suite_special_fn() -> list[Check]:
    out = []
    v = polylog_neg(PolylogRequest(1.0, 0.7))
    out.append(("Li1 closed form", _close(v, -math.log(1.0 + math.exp(0.7)), 1e-13),
                f"Li_1(-e^0.7) = {v:.15g}"))
    pairs = [(2.0, -math.pi ** 2 / 12.0),
             (3.0, -0.9015426773696957),
             (4.0, -0.9470328294972459)]
    ok = all(_close(polylog_neg(PolylogRequest(s, 0.0)), ref, 1e-13) for s, ref in pairs)
    out.append(("Li_s(-1) reference values", ok, "s = 2, 3, 4"))
    worst = 0.0
    for s in (0.5, 1.5, 3.0):
        for rho in (0.0, -0.5, -2.0):
            a = polylog_neg(PolylogRequest(s, rho), route="series")
            b = polylog_neg(PolylogRequest(s, rho), route="quadrature")
            worst = max(worst, abs(a - b) / abs(a))
    out.append(("series/quadrature agreement", worst < 1e-10, f"worst rel {worst:.2e}"))
    ok = True
    detail = []
    for s, rho in ((1.5, 20.0), (3.0, 40.0)):
        li = polylog_neg(PolylogRequest(s, rho))
        dev = abs(li / (-rho ** s / gamma_fn(s + 1.0)) - 1.0)
        ratio = dev * rho * rho / (math.pi ** 2 * s * (s - 1.0) / 6.0)
        ok = ok and 0.9 < ratio < 1.1
        detail.append(f"s={s}: {ratio:.4f}")
    out.append(("large-rho leading deviation", ok, ", ".join(detail)))
    return out


def suite_boltzmann() -> list[Check]:
    out = []
    spec = build_spectrum(_A12, 4096)
    r, rho = 0.3, 0.2
    worst = 0.0
    for p, q in ((1, 0), (0, 1), (2, 0), (1, 1), (3, 0)):
        if p >= 1:
            h = 2e-4 * r
            lo, hi = EvalPoint(r - h, rho, spec), EvalPoint(r + h, rho, spec)
            if p + q == 1:
                fd = (f_value(hi) - f_value(lo)) / (2 * h)
            else:
                fd = (f_partial(hi, PartialIndex(p - 1, q)) - f_partial(lo, PartialIndex(p - 1, q))) / (2 * h)
        else:
            h = 2e-4
            lo, hi = EvalPoint(r, rho - h, spec), EvalPoint(r, rho + h, spec)
            fd = (f_value(hi) - f_value(lo)) / (2 * h) if q == 1 else \
                 (f_partial(hi, PartialIndex(0, q - 1)) - f_partial(lo, PartialIndex(0, q - 1))) / (2 * h)
        ex = f_partial(EvalPoint(r, rho, spec), PartialIndex(p, q))
        worst = max(worst, abs(fd - ex) / abs(ex))
    out.append(("finite-difference consistency", worst < 1e-6, f"worst rel {worst:.2e}"))
    pt = EvalPoint(0.1, 0.3, spec)
    f20 = f_partial(pt, PartialIndex(2, 0))
    f02 = f_partial(pt, PartialIndex(0, 2))
    f11 = f_partial(pt, PartialIndex(1, 1))
    delta = f20 * f02 - f11 * f11
    out.append(("Hessian positivity", f20 > 0 and f02 > 0 and delta > 0,
                f"f20={f20:.4g}, f02={f02:.4g}, delta={delta:.4g}"))
    beta = spec.beta
    hv = abs(h_value(EvalPoint(0.1, 0.0, spec), beta - 1.0, 1, 0))
    fv = abs(f_partial(EvalPoint(0.1, 0.0, spec), PartialIndex(1, 0)))
    out.append(("order-bound bracket", (beta - 1.0) * hv < fv < beta * 2 ** beta * hv,
                f"{(beta-1)*hv:.4g} < {fv:.4g} < {beta*2**beta*hv:.4g}"))
    ok, msg = True, ""
    try:
        check_order_bounds(spec)
    except Exception as exc:  # pragma: no cover - diagnostic path
        ok, msg = False, str(exc)
    out.append(("multiplicity growth bounds", ok, msg or "strict bounds hold"))
    return out


def suite_saddle() -> list[Check]:
    out = []
    spec = default_spectrum(_A12, 100)
    r = solve_r(100, 0.0, spec)
    res = abs(100 + f_partial(EvalPoint(r, 0.0, spec), PartialIndex(1, 0))) / 100
    out.append(("solve_r residual (n=100)", res <= 1e-10, f"rel residual {res:.2e}"))
    s = [S_of_rho(100, x, spec) for x in (-1.0, 0.0, 1.0)]
    out.append(("S strictly increasing", s[0] < s[1] < s[2],
                ", ".join(f"{v:.4f}" for v in s)))
    mu, s2 = mean_variance(100, spec)
    sp = solve_saddle(100, mu, spec)
    out.append(("centered saddle consistency", abs(sp.rho) < 1e-8 and sp.b2 > 0 and sp.delta > 0,
                f"rho={sp.rho:.2e}, b2={sp.b2:.6g} vs sigma2={s2:.6g}"))
    spec64 = build_spectrum(_A12, 64)
    got = (m_range(1, spec64).upper_guard, m_range(3, spec64).upper_guard,
           m_range(10, spec64).upper_guard)
    out.append(("greedy m_range examples", got == (1, 3, 6), f"(n=1,3,10) -> {got}"))
    return out


def suite_exact() -> list[Check]:
    out = []
    for a in (_A12, _A13, _A23):
        dp = count_tables_upto(a, 18)
        bf = brute_force_upto(a, 18)
        ok = all(x.counts == y.counts and x.total == y.total for x, y in zip(dp, bf))
        out.append((f"DP equals enumeration (alpha={a.label()}, n<=18)", ok, ""))
    t3 = count_tables_upto(_A12, 3)
    ok = [t.total for t in t3] == [3, 8, 23] and t3[2].counts == {1: 7, 2: 15, 3: 1}
    out.append(("small-n frozen counts", ok, "q(1..3) = 3, 8, 23"))
    d = distribution(t3[2])
    out.append(("exact distribution identity", sum(d.probabilities.values()) == 1,
                f"mean = {d.mean}"))
    return out


def suite_asym() -> list[Check]:
    from .asymptotics import llt_gaussian_prob, llt_ratio_prob, qn_asymptotic

    out = []
    spec = default_spectrum(_A12, 10 ** 6)
    est = qn_asymptotic(10 ** 6, spec)
    out.append(("log-space evaluation at n=1e6", math.isfinite(est.log_value) and est.log_value > 0,
                f"log q = {est.log_value:.6g}"))
    spec3 = default_spectrum(_A12, 300)
    mu, s2 = mean_variance(300, spec3)
    m = round(mu)
    pr = llt_ratio_prob(300, m, spec3)  # internal 1e-12 identity assertion
    pg = llt_gaussian_prob(300, m, spec3)
    out.append(("ratio/gaussian forms at center", abs(pr / pg - 1.0) < 0.05,
                f"ratio {pr:.5g}, gauss {pg:.5g}"))
    sig = math.sqrt(s2)
    total = sum(llt_gaussian_prob(300, mm, spec3)
                for mm in range(max(1, round(mu - 10 * sig)), round(mu + 10 * sig)))
    out.append(("gaussian normalization", abs(total - 1.0) <= 2.0 / sig, f"sum {total:.6f}"))
    return out


_SUITES = {
    "special-fn": suite_special_fn,
    "boltzmann": suite_boltzmann,
    "saddle": suite_saddle,
    "exact": suite_exact,
    "asym": suite_asym,
}


def run_suite(name: str) -> list[Check]:
    """Run one named suite, or all of them."""
    if name == "all":
        checks = []
        for key in _SUITES:
            checks.extend(run_suite(key))
        return checks
    if name not in _SUITES:
        raise DomainError(
            f"unknown selftest suite {name!r}; choose from "
            f"{', '.join([*_SUITES, 'all'])}"
        )
    return _SUITES[name]()
