"""Command-line front end: ``eval``, ``verify``, ``sweep`` and ``catalog``.

Exit codes: 0 when everything passed, 1 on a verification failure or numerical
error, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import fnmatch
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import hilbert, identities
from . import specfun as sf
from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_TOL, MAX_LEVEL, QuadratureRule
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GAUSS_JACOBI_NODES = 64
SWEEP_MAX_NU = 2.5


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by ``verify`` and ``sweep``.

    ``tol=None`` keeps each case's own tolerance; a value overrides all of them.
    """

    tol: float | None = None
    quad_kind: str = "tanh_sinh"
    max_level: int = MAX_LEVEL
    nu_grid: tuple = identities.NU_GRID
    output: str = "text"
    case_filter: str | None = None
    perturb_rhs: float = 1.0

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tol must be positive")
        if self.quad_kind not in ("tanh_sinh", "gauss_jacobi"):
            raise UsageError(f"unknown quadrature {self.quad_kind!r}")
        if not 2 <= self.max_level <= 20:
            raise UsageError("max-level must lie in [2, 20]")
        if any(not nu > -1 for nu in self.nu_grid):
            raise UsageError("every degree must satisfy nu > -1")
        if self.output not in ("text", "json", "csv"):
            raise UsageError(f"unknown output format {self.output!r}")

    def case_tol(self, default: float) -> float:
        return default if self.tol is None else self.tol

    def rule(self, case_tol: float) -> QuadratureRule:
        qtol = min(DEFAULT_TOL, case_tol)
        if self.quad_kind == "gauss_jacobi":
            return QuadratureRule("gauss_jacobi", GAUSS_JACOBI_NODES, qtol)
        return QuadratureRule("tanh_sinh", self.max_level, qtol)


# --------------------------------------------------------------------------
# parsing helpers


def parse_real(text: str) -> float:
    """Accept decimals and fractions such as ``-1/3``."""
    t = text.strip().replace("−", "-")
    try:
        return float(Fraction(t)) if "/" in t else float(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse number {text!r}") from exc


def parse_grid(text: str) -> tuple:
    items = [s for s in text.split(",") if s.strip()]
    if not items:
        raise UsageError("empty degree list")
    return tuple(parse_real(s) for s in items)


def read_config_file(path: str) -> dict:
    """key=value lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


_CONFIG_KEYS = {
    "tol": lambda v: parse_real(v),
    "quad": lambda v: v.replace("-", "_"),
    "quad_kind": lambda v: v.replace("-", "_"),
    "max_level": int,
    "nu": parse_grid,
    "nu_grid": parse_grid,
    "output": str,
    "case": str,
    "case_filter": str,
    "perturb_rhs": parse_real,
}
_CONFIG_FIELD = {"quad": "quad_kind", "nu": "nu_grid", "case": "case_filter"}


def build_config(args) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        for key, raw in read_config_file(args.config).items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            try:
                values[_CONFIG_FIELD.get(key, key)] = _CONFIG_KEYS[key](raw)
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {raw!r}") from exc
    if args.tol is not None:
        values["tol"] = args.tol
    if args.quad is not None:
        values["quad_kind"] = args.quad.replace("-", "_")
    if args.max_level is not None:
        values["max_level"] = args.max_level
    if args.nu is not None:
        values["nu_grid"] = parse_grid(args.nu)
    if getattr(args, "case", None) is not None:
        values["case_filter"] = args.case
    if getattr(args, "perturb_rhs", None) is not None:
        values["perturb_rhs"] = args.perturb_rhs
    if args.json:
        values["output"] = "json"
    elif args.csv:
        values["output"] = "csv"
    return RunConfig(**values)


# --------------------------------------------------------------------------
# the verification registry


@dataclass(frozen=True)
class Check:
    case_id: str
    description: str
    default_tol: float
    run: Callable[[RunConfig], VerificationReport]


def _grid_checks(cfg: RunConfig) -> list[Check]:
    out = []
    rec_grid = set(identities.recursion_grid(cfg.nu_grid))
    for name, fn in identities.GRID_CHECKS.items():
        for nu in cfg.nu_grid:
            if name == "recursion" and nu not in rec_grid:
                continue

            def run(c, fn=fn, nu=nu):
                tol = c.case_tol(identities.GRID_TOL)
                return fn(nu, tol, c.rule(tol), c.perturb_rhs)

            out.append(Check(f"{name}[nu={nu:.6g}]", (fn.__doc__ or "").strip().splitlines()[0],
                             identities.GRID_TOL, run))
    return out


def _catalog_checks() -> list[Check]:
    out = []
    for case in identities.corollary_catalog():
        def run(c, case=case):
            tol = c.case_tol(case.tol)
            return identities.run_case(case, c.rule(tol), tol, c.perturb_rhs)

        out.append(Check(case.id, f"{case.chain}, {case.form}-form", case.tol, run))
    return out


def _hilbert_checks() -> list[Check]:
    out = []
    for cid, tol0, runner in hilbert.standard_checks():
        def run(c, runner=runner, tol0=tol0):
            return runner(c.case_tol(tol0), c.max_level, c.perturb_rhs)

        out.append(Check(cid, "finite Hilbert transform", tol0, run))
    return out


def _misc_checks() -> list[Check]:
    def phi0(c):
        tol = c.case_tol(1e-10)
        try:
            r = identities.triple_integral(identities.TripleIntegralSpec(0.0, "PPM"), c.rule(tol))
        except (ConvergenceError, DomainError) as exc:
            return VerificationReport.failure("phi_L(0)=pi", tol, exc)
        rhs = c.perturb_rhs * math.pi
        err = abs(r.value - rhs)
        return VerificationReport("phi_L(0)=pi", r.value, rhs, err, err / rhs, tol, err < tol,
                                  {"kind": r.kind, "levels": r.levels, "err_est": r.err_est})

    def zero(c):
        return identities.verify_triple_zero(1, rule=c.rule(c.case_tol(1e-7)))

    def conical(c):
        return identities.verify_conical(50.0, (0.2, 0.3, 0.5), c.case_tol(0.02), rhs_scale=c.perturb_rhs)

    def half(c):
        return identities.verify_p_half_elliptic(50, c.case_tol(1e-11), rhs_scale=c.perturb_rhs)

    out = [
        Check("phi_L(0)=pi", "phi_L at degree 0 against pi (absolute)", 1e-10, phi0),
        Check("triple-zero[n=1]", "log-log slope of phi_L near degree 1 in [2.8, 3.2]", 0.4, zero),
        Check("conical[eta=50]", "conical function against its Bessel asymptotics", 0.02, conical),
        Check("p-half-elliptic", "P_{-1/2} against (2/pi) K on 50 points", 1e-11, half),
    ]
    for nu in (-0.5, 0.0, 0.7):
        def mac(c, nu=nu):
            tol = c.case_tol(identities.GRID_TOL)
            return identities.verify_macrobert(nu, tol, c.rule(tol), c.perturb_rhs)

        out.append(Check(f"macrobert[nu={nu:.6g}]", "sine-weighted integral of P_nu", identities.GRID_TOL, mac))
    return out


def all_checks(cfg: RunConfig) -> list[Check]:
    return _misc_checks() + _grid_checks(cfg) + _catalog_checks() + _hilbert_checks()


def _norm(s: str) -> str:
    # ids print a typographic minus; let an ASCII hyphen match it
    return s.replace("−", "-")


def select(checks, pattern):
    if not pattern:
        return list(checks)
    pat = _norm(pattern)
    return [c for c in checks if fnmatch.fnmatchcase(_norm(c.case_id), pat)]


def run_checks(cfg: RunConfig) -> list[VerificationReport]:
    chosen = select(all_checks(cfg), cfg.case_filter)
    reports = []
    for check in chosen:
        try:
            reports.append(check.run(cfg))
        except (ConvergenceError, DomainError, ArithmeticError, ValueError) as exc:
            reports.append(VerificationReport.failure(check.case_id, cfg.case_tol(check.default_tol), exc))
    return reports


# --------------------------------------------------------------------------
# output


def fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.16g}"
    return str(v)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


_CSV_FIELDS = ("case_id", "pass", "lhs", "rhs", "abs_err", "rel_err", "tol", "kind", "levels", "err_est", "error")


def _report_rows(reports):
    for r in reports:
        q = r.quad
        yield {"case_id": r.case_id, "pass": r.passed, "lhs": fmt(r.lhs_value), "rhs": fmt(r.rhs_value),
               "abs_err": fmt(r.abs_err), "rel_err": fmt(r.rel_err), "tol": fmt(r.tol),
               "kind": q.get("kind", ""), "levels": q.get("levels", ""),
               "err_est": fmt(q["err_est"]) if "err_est" in q else "", "error": r.error or ""}


def render_reports(reports, output: str) -> str:
    if output == "json":
        n_pass = sum(r.passed for r in reports)
        return _dump_json({"cases": [r.to_dict() for r in reports],
                           "summary": {"total": len(reports), "passed": n_pass, "failed": len(reports) - n_pass}})
    if output == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(_report_rows(reports))
        return buf.getvalue()
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        line = (f"{status}  {r.case_id}  lhs={fmt(r.lhs_value)}  rhs={fmt(r.rhs_value)}  "
                f"rel_err={r.rel_err:.3e}  abs_err={r.abs_err:.3e}  tol={r.tol:.1e}")
        if r.error:
            q = r.quad
            line += f"  error={r.error}"
            if "err_est" in q:
                line += f"  [levels={q.get('levels')}, err_est={q['err_est']:.3g}]"
        lines.append(line)
    n_pass = sum(r.passed for r in reports)
    lines.append(f"{n_pass}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# eval


def _conical(eta, theta, reflect=0.0):
    return sf.conical_p(sf.ConicalParam(eta, theta), reflect=bool(reflect))


EVAL_FUNCTIONS: dict[str, tuple[Callable, str]] = {
    "gamma": (sf.gamma, "x"),
    "digamma": (sf.digamma, "x"),
    "hyp2f1": (sf.hyp2f1, "a b c z"),
    "legendre_p": (lambda nu, x: sf.legendre_p(nu, x), "nu x"),
    "legendre_q": (lambda nu, x: sf.legendre_q(nu, x), "nu x"),
    "p_nu_zero": (sf.p_nu_zero, "nu"),
    "ellip_k": (sf.ellip_k, "k"),
    "ellip_e": (sf.ellip_e, "k"),
    "ellip_k_comp": (sf.ellip_k_comp, "k'"),
    "ellip_e_comp": (sf.ellip_e_comp, "k'"),
    "conical_p": (_conical, "eta theta [reflect]"),
    "bessel_i0": (sf.bessel_i0, "x"),
    "bessel_k0": (sf.bessel_k0, "x"),
    "phi_L": (lambda nu: identities.phi_L(nu), "nu"),
    "phi_R": (identities.phi_R, "nu"),
    "triple_cube": (lambda nu: identities.triple_cube(nu), "nu"),
    "x_weighted": (lambda nu: identities.x_weighted(nu, "PPP"), "nu"),
    "x_weighted_ppm": (lambda nu: identities.x_weighted(nu, "PPM"), "nu"),
    "tricomi_one": (lambda x: hilbert.tricomi(hilbert.one, x), "x"),
}


def cmd_eval(args) -> int:
    if args.fn not in EVAL_FUNCTIONS:
        raise UsageError(f"unknown function {args.fn!r}; choose from {', '.join(sorted(EVAL_FUNCTIONS))}")
    fn, sig = EVAL_FUNCTIONS[args.fn]
    vals = [parse_real(a) for a in args.args]
    n_req = len([s for s in sig.split() if not s.startswith("[")])
    n_max = len(sig.split())
    if not n_req <= len(vals) <= n_max:
        raise UsageError(f"{args.fn} takes arguments: {sig}")
    try:
        value = float(fn(*vals))
    except (DomainError, ConvergenceError, ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(fmt(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = build_config(args)
    reports = run_checks(cfg)
    if not reports:
        raise UsageError(f"no case matches {cfg.case_filter!r}; see the 'catalog' subcommand")
    sys.stdout.write(render_reports(reports, cfg.output))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def sweep_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    tol = cfg.case_tol(identities.GRID_TOL)
    for nu in cfg.nu_grid:
        row = {"nu": nu}
        try:
            r = identities.triple_integral(identities.TripleIntegralSpec(nu, "PPM"), cfg.rule(tol))
            rr = identities.phi_R(nu)
            abs_err = abs(r.value - rr)
            row.update(phi_L=r.value, phi_R=rr, abs_err=abs_err,
                       rel_err=abs_err / abs(rr) if rr != 0 else (0.0 if abs_err == 0 else math.inf),
                       levels=r.levels, err_est=r.err_est, error="")
        except (ConvergenceError, DomainError) as exc:
            nan = float("nan")
            row.update(phi_L=nan, phi_R=nan, abs_err=nan, rel_err=nan, levels=0, err_est=nan,
                       error=f"{type(exc).__name__}: {exc}")
        rows.append(row)
    return rows


def render_sweep(rows, output: str) -> str:
    keys = ("nu", "phi_L", "phi_R", "abs_err", "rel_err", "levels", "err_est", "error")
    if output == "json":
        def clean(v):
            return v if not isinstance(v, float) or math.isfinite(v) else str(v)
        return _dump_json({"rows": [{k: clean(row[k]) for k in keys} for row in rows]})
    if output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for row in rows:
            w.writerow([fmt(row[k]) for k in keys])
        return buf.getvalue()
    lines = [f"{'nu':>12}  {'phi_L':>24}  {'phi_R':>24}  {'rel_err':>10}"]
    for row in rows:
        if row["error"]:
            lines.append(f"{fmt(row['nu']):>12}  error: {row['error']}")
        else:
            lines.append(f"{fmt(row['nu']):>12}  {fmt(row['phi_L']):>24}  {fmt(row['phi_R']):>24}  "
                         f"{row['rel_err']:10.3e}  abs_err={row['abs_err']:.3e}")
    return "\n".join(lines) + "\n"


def cmd_sweep(args) -> int:
    cfg = build_config(args)
    if any(nu > SWEEP_MAX_NU for nu in cfg.nu_grid):
        raise UsageError(f"sweep degrees must lie in (-1, {SWEEP_MAX_NU}]")
    rows = sweep_rows(cfg)
    sys.stdout.write(render_sweep(rows, cfg.output))
    return EXIT_FAIL if any(row["error"] for row in rows) else EXIT_OK


def cmd_catalog(args) -> int:
    cfg = build_config(args)
    checks = select(all_checks(cfg), cfg.case_filter)
    if cfg.output == "json":
        sys.stdout.write(_dump_json([{"case_id": c.case_id, "description": c.description, "tol": c.default_tol}
                                     for c in checks]))
    else:
        for c in checks:
            sys.stdout.write(f"{c.case_id}\t{c.description}\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# entry point


def _add_run_options(p, with_case=True):
    p.add_argument("--tol", type=parse_real, default=None, help="override every case tolerance")
    p.add_argument("--quad", choices=("tanh-sinh", "gauss-jacobi"), default=None)
    p.add_argument("--max-level", type=int, default=None, help="tanh-sinh level cap (default 12)")
    p.add_argument("--nu", default=None, help="comma-separated degrees, fractions allowed (e.g. -1/3,0,0.5)")
    p.add_argument("--config", default=None, help="key=value file with the same fields")
    fmt_group = p.add_mutually_exclusive_group()
    fmt_group.add_argument("--json", action="store_true")
    fmt_group.add_argument("--csv", action="store_true")
    if with_case:
        p.add_argument("--case", default=None, help="case id or fnmatch pattern")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trilegendre", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one special function")
    p.add_argument("fn")
    p.add_argument("args", nargs="*")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("verify", help="run identity checks")
    _add_run_options(p)
    p.add_argument("--perturb-rhs", type=parse_real, nargs="?", const=1.01, default=None,
                   help="multiply every closed form by this factor (default 1.01); checks should then fail")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate phi_L and phi_R over degrees")
    _add_run_options(p, with_case=False)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("catalog", help="list case ids")
    _add_run_options(p)
    p.set_defaults(handler=cmd_catalog)
    return parser


_VALUE_OPTIONS = ("--nu", "--tol", "--perturb-rhs")


def _looks_numeric(tok: str) -> bool:
    return len(tok) > 1 and tok[0] in "-−" and (tok[1].isdigit() or tok[1] == ".")


def _protect_negatives(argv):
    """Keep argparse from reading values such as ``-1/3`` or ``-0.5,0`` as options."""
    argv = list(argv)
    if argv and argv[0] == "eval" and len(argv) > 2 and not argv[1].startswith("-") and "--" not in argv:
        return argv[:2] + ["--"] + argv[2:]
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and _looks_numeric(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_protect_negatives(sys.argv[1:] if argv is None else argv))
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
