"""Command-line front end.

Subcommands: spectrum, exact, saddle, asym, compare, report, selftest.
All numeric output uses fixed 12-significant-digit scientific notation and
exact counts are printed as full decimal strings, so repeated runs with the
same inputs are byte-identical.  Error paths map onto documented exit codes:

  2  invalid input (bad alpha, malformed config, out-of-range m, ...)
  3  iteration failure (bracket/Newton non-convergence, truncation limit)
  4  ambiguous floor evaluation for a real alpha
  5  resource guard exceeded (exact-count ceiling, enumeration bound)
"""

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .asymptotics import llt_gaussian_prob, llt_ratio_prob, qn_asymptotic, qnm_asymptotic
from .errors import (
    ConvergenceFailure,
    DomainError,
    GuardExceeded,
    PowerPartsError,
    PrecisionAmbiguous,
    RangeError,
    TruncationError,
)
from .exact import count_table
from .saddle import default_spectrum, m_range, mean_variance, solve_saddle
from .selftests import run_suite
from .spectrum import AlphaParam, build_spectrum

_ENV_EPSILON = "POWERPARTS_EPSILON"
_ENV_DIGITS = "POWERPARTS_PRECISION_DIGITS"


def _fmt(x: float) -> str:
    """12 significant digits, explicit exponent; canonical for CSV cells."""
    return f"{x:.11e}"


def _parse_alpha(text: str) -> AlphaParam:
    try:
        return AlphaParam.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad alpha {text!r}: {exc}") from None


@dataclass
class Settings:
    epsilon: float
    precision_digits: int


def _settings(args: argparse.Namespace) -> Settings:
    eps = getattr(args, "epsilon", None)
    if eps is None:
        raw = os.environ.get(_ENV_EPSILON)
        eps = float(raw) if raw else 1e-12
    digits = getattr(args, "precision_digits", None)
    if digits is None:
        raw = os.environ.get(_ENV_DIGITS)
        digits = int(raw) if raw else 15
    if not (0 < eps < 1e-3):
        raise DomainError(f"epsilon must lie in (0, 1e-3), got {eps}")
    if digits < 15:
        raise DomainError(f"precision_digits must be >= 15, got {digits}")
    if digits > 16:
        print(
            f"note: precision_digits={digits} exceeds the float64 pipeline; "
            "results carry ~16 digits",
            file=sys.stderr,
        )
    return Settings(epsilon=eps, precision_digits=digits)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------- subcommands


def _cmd_spectrum(args: argparse.Namespace) -> int:
    _settings(args)
    alpha = _parse_alpha(args.alpha)
    if args.kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {args.kmax}")
    spec = build_spectrum(alpha, args.kmax)
    if args.format == "json":
        doc = {"alpha": alpha.label(), "kmax": spec.kmax, "g": spec.g[1:]}
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.out)
    else:
        lines = ["k,g"] + [f"{k},{spec.g[k]}" for k in range(1, spec.kmax + 1)]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    _settings(args)
    alpha = _parse_alpha(args.alpha)
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    table = count_table(alpha, args.n, ceiling=args.ceiling)
    if args.format == "json":
        doc = {
            "alpha": alpha.label(),
            "n": table.n,
            "counts": {str(m): str(c) for m, c in sorted(table.counts.items())},
            "total": str(table.total),
        }
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.out)
    else:
        lines = ["m,q_n_m"]
        lines += [f"{m},{table.counts[m]}" for m in sorted(table.counts)]
        lines.append(f"total,{table.total}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _spectrum_for(alpha: AlphaParam, n: int, kmax: int | None):
    if kmax is None:
        return default_spectrum(alpha, n)
    if kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {kmax}")
    return build_spectrum(alpha, kmax)


def _cmd_saddle(args: argparse.Namespace) -> int:
    st = _settings(args)
    alpha = _parse_alpha(args.alpha)
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    spec = _spectrum_for(alpha, args.n, args.kmax)
    sp = solve_saddle(args.n, args.m, spec, epsilon=st.epsilon)
    mu, s2 = mean_variance(args.n, spec, epsilon=st.epsilon)
    fields = [
        ("r", sp.r), ("rho", sp.rho),
        ("residual_n", sp.residual_n), ("residual_m", sp.residual_m),
        ("B2", sp.B2), ("b2", sp.b2), ("delta", sp.delta),
        ("mu_n", mu), ("sigma2_n", s2),
    ]
    if args.json:
        doc = {k: _fmt(v) for k, v in fields}
        doc["n"] = args.n
        doc["alpha"] = alpha.label()
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.out)
    else:
        lines = [f"{k} = {_fmt(v)}" for k, v in fields]
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_asym(args: argparse.Namespace) -> int:
    st = _settings(args)
    alpha = _parse_alpha(args.alpha)
    if args.n < 1:
        raise DomainError(f"n must be >= 1, got {args.n}")
    spec = _spectrum_for(alpha, args.n, args.kmax)
    if args.m is None:
        est = qn_asymptotic(args.n, spec, epsilon=st.epsilon)
    else:
        est = qnm_asymptotic(args.n, args.m, spec, epsilon=st.epsilon)
    lines = [
        f"formula = {est.formula}",
        f"log_value = {_fmt(est.log_value)}",
        f"value = {_fmt(est.value) if math.isfinite(est.value) else 'overflow'}",
        f"error_scale = {_fmt(est.error_scale)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_COMPARE_HEADER = "n,m,x,p_exact,p_gauss,p_ratio,rel_err_gauss,rel_err_ratio,sigma_n,mu_n"


def _compare_rows(alpha: AlphaParam, n: int, ms: list[int], eps: float,
                  ceiling: int) -> list[str]:
    if alpha.kind != "rational":
        raise DomainError(
            "exact comparison requires a rational alpha (decimal alpha has no "
            "certified integer parts)"
        )
    spec = default_spectrum(alpha, n)
    mu, s2 = mean_variance(n, spec, epsilon=eps)
    sig = math.sqrt(s2)
    table = count_table(alpha, n, ceiling=ceiling)
    guard = m_range(n, spec).upper_guard
    rows = []
    for m in ms:
        if not 1 <= m <= guard:
            raise RangeError(f"m={m} outside feasible range [1, {guard}] for n={n}")
        p_exact = table.counts.get(m, 0) / table.total
        p_gauss = llt_gaussian_prob(n, m, spec, epsilon=eps)
        p_ratio = llt_ratio_prob(n, m, spec, epsilon=eps)
        x = (m - mu) / sig
        reg = abs(p_gauss / p_exact - 1.0) if p_exact else math.inf
        rer = abs(p_ratio / p_exact - 1.0) if p_exact else math.inf
        rows.append(",".join([
            str(n), str(m), _fmt(x), _fmt(p_exact), _fmt(p_gauss), _fmt(p_ratio),
            _fmt(reg), _fmt(rer), _fmt(sig), _fmt(mu),
        ]))
    return rows


def _parse_x_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"x-range must be lo:hi:step, got {text!r}")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise DomainError(f"bad x-range {text!r}: {exc}") from None
    if step <= 0 or hi < lo:
        raise DomainError(f"x-range needs step > 0 and hi >= lo, got {text!r}")
    return lo, hi, step


def _x_grid_ms(lo: float, hi: float, step: float, mu: float, sig: float) -> list[int]:
    ms = []
    k = 0
    while True:
        x = lo + k * step
        if x > hi + 1e-12:
            break
        ms.append(max(1, round(mu + x * sig)))
        k += 1
    return ms


def _cmd_compare(args: argparse.Namespace) -> int:
    st = _settings(args)
    alpha = _parse_alpha(args.alpha)
    try:
        n_grid = [int(tok) for tok in args.n_grid.split(",") if tok]
    except ValueError as exc:
        raise DomainError(f"bad n-grid {args.n_grid!r}: {exc}") from None
    if not n_grid or any(b <= a for a, b in zip(n_grid, n_grid[1:])) or n_grid[0] < 1:
        raise DomainError(f"n-grid must be strictly increasing positive, got {n_grid}")
    lo, hi, step = _parse_x_range(args.x_range)
    lines = [_COMPARE_HEADER]
    for n in n_grid:
        spec = default_spectrum(alpha, n)
        mu, s2 = mean_variance(n, spec, epsilon=st.epsilon)
        ms = _x_grid_ms(lo, hi, step, mu, math.sqrt(s2))
        lines += _compare_rows(alpha, n, ms, st.epsilon, args.ceiling)
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# -------------------------------------------------------------------- report


_CONFIG_KEYS = {"alpha", "n_grid", "m_policy", "precision_digits", "epsilon", "output"}


@dataclass
class RunConfig:
    alpha: AlphaParam
    n_grid: list[int]
    m_policy: object  # "center" | ("x_grid", lo, hi, step) | ("explicit", [...])
    precision_digits: int
    epsilon: float
    out_path: str | None
    out_format: str


def _load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read config {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"config {path!r} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise DomainError("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    if "alpha" not in raw or "n_grid" not in raw:
        raise DomainError("config requires 'alpha' and 'n_grid'")
    alpha = _parse_alpha(str(raw["alpha"]))
    n_grid = raw["n_grid"]
    if (not isinstance(n_grid, list) or not n_grid
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in n_grid)):
        raise DomainError("n_grid must be a nonempty list of integers")
    if n_grid[0] < 1 or any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise DomainError(f"n_grid must be strictly increasing positive, got {n_grid}")

    policy_raw = raw.get("m_policy", "center")
    if policy_raw == "center":
        policy: object = "center"
    elif isinstance(policy_raw, dict) and set(policy_raw) == {"x_grid"}:
        grid = policy_raw["x_grid"]
        if not (isinstance(grid, list) and len(grid) == 3):
            raise DomainError("m_policy.x_grid must be [lo, hi, step]")
        lo, hi, step = (float(v) for v in grid)
        if step <= 0 or hi < lo:
            raise DomainError("m_policy.x_grid needs step > 0 and hi >= lo")
        policy = ("x_grid", lo, hi, step)
    elif isinstance(policy_raw, dict) and set(policy_raw) == {"explicit"}:
        ms = policy_raw["explicit"]
        if not (isinstance(ms, list) and ms
                and all(isinstance(v, int) and not isinstance(v, bool) and v >= 1 for v in ms)):
            raise DomainError("m_policy.explicit must be a nonempty list of ints >= 1")
        policy = ("explicit", list(ms))
    else:
        raise DomainError(
            "m_policy must be 'center', {'x_grid': [lo, hi, step]} or {'explicit': [...]}"
        )

    digits = raw.get("precision_digits", 15)
    if not isinstance(digits, int) or isinstance(digits, bool):
        raise DomainError("precision_digits must be an integer")
    eps = raw.get("epsilon", 1e-12)
    if not isinstance(eps, (int, float)) or isinstance(eps, bool):
        raise DomainError("epsilon must be a number")

    out_path, out_format = None, "csv"
    if "output" in raw:
        out = raw["output"]
        if not isinstance(out, dict) or set(out) - {"path", "format"}:
            raise DomainError("output accepts only 'path' and 'format'")
        out_path = out.get("path")
        out_format = out.get("format", "csv")
        if out_format not in ("csv", "json"):
            raise DomainError(f"output.format must be csv or json, got {out_format!r}")
    return RunConfig(alpha, n_grid, policy, digits, float(eps), out_path, out_format)


_REPORT_FIELDS = [
    "n", "m", "x", "q_n", "q_n_m", "p_exact", "p_gauss", "p_ratio",
    "r", "rho", "B2", "b2", "delta", "mu_n", "sigma2_n",
    "log_qn_asym", "log_qnm_asym",
]


def _cmd_report(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config)
    # command-line env/flags may override the file
    ns = argparse.Namespace(epsilon=getattr(args, "epsilon", None) or cfg.epsilon,
                            precision_digits=getattr(args, "precision_digits", None)
                            or cfg.precision_digits)
    st = _settings(ns)
    if cfg.alpha.kind != "rational":
        raise DomainError(
            "report compares against exact counts; decimal alpha is not accepted "
            "(use a p/q alpha)"
        )
    rows: list[dict[str, str]] = []
    for n in cfg.n_grid:
        spec = default_spectrum(cfg.alpha, n)
        mu, s2 = mean_variance(n, spec, epsilon=st.epsilon)
        sig = math.sqrt(s2)
        guard = m_range(n, spec).upper_guard
        if cfg.m_policy == "center":
            ms = [max(1, round(mu))]
        elif cfg.m_policy[0] == "x_grid":
            _, lo, hi, step = cfg.m_policy
            ms = _x_grid_ms(lo, hi, step, mu, sig)
        else:
            ms = list(cfg.m_policy[1])
        table = count_table(cfg.alpha, n)
        est_n = qn_asymptotic(n, spec, epsilon=st.epsilon)
        for m in ms:
            if not 1 <= m <= guard:
                raise RangeError(f"m={m} outside feasible range [1, {guard}] for n={n}")
            sp = solve_saddle(n, m, spec, epsilon=st.epsilon)
            est_nm = qnm_asymptotic(n, m, spec, epsilon=st.epsilon)
            p_exact = Fraction(table.counts.get(m, 0), table.total)
            rows.append({
                "n": str(n), "m": str(m), "x": _fmt((m - mu) / sig),
                "q_n": str(table.total), "q_n_m": str(table.counts.get(m, 0)),
                "p_exact": _fmt(float(p_exact)),
                "p_gauss": _fmt(llt_gaussian_prob(n, m, spec, epsilon=st.epsilon)),
                "p_ratio": _fmt(llt_ratio_prob(n, m, spec, epsilon=st.epsilon)),
                "r": _fmt(sp.r), "rho": _fmt(sp.rho),
                "B2": _fmt(sp.B2), "b2": _fmt(sp.b2), "delta": _fmt(sp.delta),
                "mu_n": _fmt(mu), "sigma2_n": _fmt(s2),
                "log_qn_asym": _fmt(est_n.log_value),
                "log_qnm_asym": _fmt(est_nm.log_value),
            })
    if cfg.out_format == "json":
        text = json.dumps(rows, sort_keys=True, indent=1) + "\n"
    else:
        lines = [",".join(_REPORT_FIELDS)]
        lines += [",".join(row[k] for k in _REPORT_FIELDS) for row in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out or cfg.out_path)
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    _settings(args)
    checks = run_suite(args.suite)
    width = max(len(name) for name, _, _ in checks)
    failures = 0
    for name, ok, detail in checks:
        tag = "ok  " if ok else "FAIL"
        suffix = f"  ({detail})" if detail else ""
        print(f"[{tag}] {name:<{width}}{suffix}")
        failures += 0 if ok else 1
    print(f"{len(checks) - failures}/{len(checks)} checks passed")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------- dispatcher


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="powerparts",
        description="Partitions into distinct floored powers: exact counts, "
                    "saddle points, and asymptotic estimates.",
    )
    ap.add_argument("--epsilon", type=float, default=None,
                    help="target accuracy for series/saddle evaluation "
                         f"(default 1e-12; env {_ENV_EPSILON})")
    ap.add_argument("--precision-digits", type=int, default=None, dest="precision_digits",
                    help=f"working precision request, >= 15 (env {_ENV_DIGITS})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="part multiplicities g(k) for an alpha")
    p.add_argument("--alpha", required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("exact", help="exact table q(n,m) for rational alpha")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ceiling", type=int, default=4000)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_exact)

    p = sub.add_parser("saddle", help="solve the two-variable saddle system")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None,
                   help="length constraint; omit for the rho=0 center")
    p.add_argument("--kmax", type=int, default=None,
                   help="override the automatic spectrum truncation")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_saddle)

    p = sub.add_parser("asym", help="asymptotic estimate of q(n) or q(n,m)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None,
                   help="override the automatic spectrum truncation")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_asym)

    p = sub.add_parser("compare", help="exact vs limit-law probabilities on an x-grid")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n-grid", required=True, dest="n_grid",
                   help="comma-separated strictly increasing n values")
    p.add_argument("--x-range", required=True, dest="x_range",
                   help="lo:hi:step in units of sigma around the mean")
    p.add_argument("--ceiling", type=int, default=4000)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("report", help="run a JSON config and write a full report")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="override the config's output path")
    p.set_defaults(fn=_cmd_report)

    p = sub.add_parser("selftest", help="run a built-in invariant suite")
    p.add_argument("suite", help="special-fn | boltzmann | saddle | exact | asym | all")
    p.set_defaults(fn=_cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (DomainError, RangeError) as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceFailure, TruncationError) as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return 3
    except PrecisionAmbiguous as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return 4
    except GuardExceeded as exc:
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return 5
    except PowerPartsError as exc:  # pragma: no cover - catch-all for new kinds
        print(f"error[{args.command}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
