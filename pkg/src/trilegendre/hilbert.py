"""The finite Hilbert (Tricomi) transform on (-1, 1) and checks of its identities.

``tricomi(f, x) = (1/pi) PV int_{-1}^{1} f(xi) / (x - xi) dxi``.

Functions handed to this module are endpoint-aware: ``f(x, opx, omx)`` with
``opx = 1 + x`` and ``omx = 1 - x`` (see :mod:`trilegendre.quadrature`).
Use :func:`plain` to wrap an ordinary ``f(x)``.
"""

from __future__ import annotations

import math
from functools import partial
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import specfun as sf
from .errors import ConvergenceError, DomainError
from .quadrature import MAX_LEVEL, Integrand, QuadratureRule, integrate, pv_integrate_many
from .report import VerificationReport

DEFAULT_SAMPLES = (-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9)
INNER_TOL = 1e-11
# Outer nodes of a nested quadrature closer than this to +-1 are dropped: the
# inner principal value cannot be resolved there, and for integrable
# endpoint singularities the discarded mass is far below the tolerances used.
NEST_DEPTH = 1e-60


def plain(f):
    """Adapt ``f(x)`` to the endpoint-aware signature."""
    return lambda x, opx, omx: f(x)


def one(x, opx, omx):
    return np.ones_like(np.asarray(x, dtype=float))


def tricomi(f, x, tol: float = INNER_TOL, *, opx=None, omx=None, max_level: int = MAX_LEVEL):
    """Tricomi transform of the endpoint-aware ``f`` at ``x`` (scalar or array)."""
    scalar = np.ndim(x) == 0
    out = pv_integrate_many(f, x, tol, endpoint_aware=True, opx=opx, omx=omx, max_level=max_level)
    return float(out[0]) if scalar else out


def _transformed(f, tol, max_level=MAX_LEVEL):
    """Endpoint-aware function ``x -> (T f)(x)`` computed by quadrature."""

    def tf(x, opx, omx):
        shape = np.shape(x)
        vals = tricomi(f, np.ravel(x), tol, opx=np.ravel(opx), omx=np.ravel(omx), max_level=max_level)
        return np.reshape(vals, shape)

    return tf


def _truncated(fn, depth):
    if depth <= 0:
        return fn

    def g(x, opx, omx):
        x, opx, omx = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (x, opx, omx)))
        inside = np.minimum(opx, omx) >= depth
        out = np.zeros(x.shape)
        if np.any(inside):
            out[inside] = fn(x[inside], opx[inside], omx[inside])
        return out

    return g


@dataclass(frozen=True)
class TransformPair:
    """A function with a closed-form Tricomi transform, valid for ``params``."""

    name: str
    f: Callable
    closed: Callable
    params: dict = field(default_factory=dict)
    validity: Callable[[dict], bool] = lambda p: True
    validity_text: str = ""

    def check(self):
        if not self.validity(self.params):
            raise DomainError(f"{self.name}: parameters {self.params} violate {self.validity_text}")


def _lp(d, opx, omx):
    return sf.legendre_p_dist(d, omx, opx)


def _lq(d, opx, omx):
    return sf.legendre_q_dist(d, omx, opx)


def pair_pp(nu: float) -> TransformPair:
    """T[2 P(xi) P(-xi)] = (P(x)^2 - P(-x)^2) / sin(nu pi), nu not an integer."""
    d = sf.Degree(nu)

    def f(x, opx, omx):
        p, pm = sf.legendre_pair_dist(d, omx, opx)
        return 2 * p * pm

    def closed(x, opx, omx):
        p, pm = sf.legendre_pair_dist(d, omx, opx)
        return (p * p - pm * pm) / d.sin_pi_nu

    return TransformPair(f"pp[nu={nu:g}]", f, closed, {"nu": nu},
                         lambda p: p["nu"] > -1 and p["nu"] != round(p["nu"]), "nu > -1, nu not an integer")


def pair_pq(nu: float, n: int = 0) -> TransformPair:
    """T[(pi/2)(1+xi)^(nu-n) P(xi)] = (1+x)^(nu-n) Q(x), for nu - n > -1."""
    d = sf.Degree(nu)
    k = nu - n

    def f(x, opx, omx):
        return (math.pi / 2) * opx**k * _lp(d, opx, omx)

    def closed(x, opx, omx):
        return opx**k * _lq(d, opx, omx)

    return TransformPair(f"pq[nu={nu:g},n={n}]", f, closed, {"nu": nu, "n": n},
                         lambda p: p["n"] >= 0 and p["nu"] > -1 and p["nu"] - p["n"] > -1,
                         "n >= 0, nu > -1, nu - n > -1")


def pair_power(a: float) -> TransformPair:
    """T[(1+xi)^(a-1) (1-xi)^(-a)] = cot(a pi) (1+x)^(a-1) (1-x)^(-a), 0 < a < 1."""

    def f(x, opx, omx):
        return opx ** (a - 1) * omx ** (-a)

    cot = math.cos(math.pi * a) / math.sin(math.pi * a)

    def closed(x, opx, omx):
        return cot * f(x, opx, omx)

    return TransformPair(f"power[a={a:g}]", f, closed, {"a": a},
                         lambda p: 0 < p["a"] < 1, "0 < a < 1")


def _inv_weight(opx, omx, ex):
    # (1 - x^2)^(-ex) through logs; the product opx * omx can underflow
    return np.exp(-ex * (np.log(opx) + np.log(omx)))


def balanced_input(nu: float):
    """(P(x) cot((1-nu)pi/2) + (2/pi) Q(x)) / (1-x^2)^((1-nu)/2) and its closed transform."""
    d = sf.Degree(nu)
    cot = math.tan(math.pi * nu / 2)  # cot((1 - nu) pi / 2)
    ex = (1 - nu) / 2

    def f(x, opx, omx):
        p = _lp(d, opx, omx)
        q = _lq(d, opx, omx)
        return (p * cot + (2 / math.pi) * q) * _inv_weight(opx, omx, ex)

    def closed(x, opx, omx):
        p = _lp(d, opx, omx)
        q = _lq(d, opx, omx)
        return ((2 / math.pi) * q * cot - p) * _inv_weight(opx, omx, ex)

    return f, closed


def pair_balanced(nu: float) -> TransformPair:
    """The P/Q combination produced by the composition formula, -1 < nu < 1."""
    f, closed = balanced_input(nu)
    return TransformPair(f"balanced[nu={nu:g}]", f, closed, {"nu": nu},
                         lambda p: -1 < p["nu"] < 1, "-1 < nu < 1")


def catalog_pairs() -> list[TransformPair]:
    """Every cataloged pair on its parameter grid."""
    pairs = [pair_pp(nu) for nu in (-2 / 3, -0.5, -1 / 3, -0.25, 0.25, 1.5)]
    pairs += [pair_pq(nu, n) for nu, n in ((-0.25, 0), (-0.5, 0), (0.5, 0), (1.5, 2), (2.3, 1), (0.0, 0))]
    pairs += [pair_power(a) for a in (0.1, 0.25, 0.5, 0.75, 0.9)]
    pairs += [pair_balanced(nu) for nu in (-0.75, -0.5, -0.25, 0.0, 0.3, 0.6)]
    return pairs


# --------------------------------------------------------------------------
# verifications


def verify_pair(pair: TransformPair, x_samples=DEFAULT_SAMPLES, tol: float = 1e-6, *,
                max_level: int = MAX_LEVEL, rhs_scale: float = 1.0) -> VerificationReport:
    """Max over the samples of |tricomi(f, x) - closed(x)|, relative to max(1, |closed|)."""
    pair.check()
    xs = np.asarray(x_samples, dtype=float)
    if np.any(np.abs(xs) >= 1):
        raise DomainError("sample points must lie in (-1, 1)")
    opx, omx = 1.0 + xs, 1.0 - xs
    num = tricomi(pair.f, xs, min(INNER_TOL, tol * 1e-3), opx=opx, omx=omx, max_level=max_level)
    ref = rhs_scale * pair.closed(xs, opx, omx)
    resid = np.abs(num - ref) / np.maximum(1.0, np.abs(ref))
    i = int(np.argmax(resid))
    return VerificationReport(
        case_id=f"tricomi:{pair.name}",
        lhs_value=float(num[i]),
        rhs_value=float(ref[i]),
        abs_err=float(abs(num[i] - ref[i])),
        rel_err=float(resid[i]),
        tol=tol,
        passed=bool(np.max(resid) < tol),
        quad={"kind": "tanh_sinh", "levels": 0, "err_est": 0.0},
        detail={"x_worst": float(xs[i]), "n_samples": int(xs.size)},
    )


def parseval_sum(f, g, tol: float = 1e-10, depth: float = NEST_DEPTH, max_level: int = MAX_LEVEL):
    """int f (T g) + int g (T f) over (-1, 1), by nested quadrature."""
    inner_tol = min(INNER_TOL, tol)
    tf = _transformed(f, inner_tol, max_level)
    tg = _transformed(g, inner_tol, max_level)
    rule = QuadratureRule(level_or_order=max_level, tol=tol)
    fg = _truncated(lambda x, dl, dr: f(x, dl, dr) * tg(x, dl, dr), depth)
    gf = _truncated(lambda x, dl, dr: g(x, dl, dr) * tf(x, dl, dr), depth)
    r1 = integrate(Integrand(fg, endpoint_aware=True), rule)
    r2 = integrate(Integrand(gf, endpoint_aware=True), rule)
    return r1, r2


def verify_parseval(f, g, tol: float = 1e-7, case_id: str = "parseval",
                    depth: float = NEST_DEPTH, max_level: int = MAX_LEVEL) -> VerificationReport:
    """Check the antisymmetry  int f (T g) + int g (T f) = 0."""
    try:
        r1, r2 = parseval_sum(f, g, min(1e-10, tol * 1e-2), depth, max_level)
    except (ConvergenceError, DomainError) as exc:
        return VerificationReport.failure(case_id, tol, exc)
    s = r1.value + r2.value
    return VerificationReport(
        case_id=case_id, lhs_value=s, rhs_value=0.0, abs_err=abs(s),
        rel_err=abs(s) / max(1.0, abs(r1.value)), tol=tol, passed=abs(s) < tol,
        quad={"kind": "tanh_sinh", "levels": max(r1.levels, r2.levels), "err_est": r1.err_est + r2.err_est},
        detail={"int_f_Tg": r1.value, "int_g_Tf": r2.value},
    )


def hpb_residuals(f, g, x_samples, tol: float = INNER_TOL, depth: float = NEST_DEPTH,
                  max_level: int = MAX_LEVEL):
    """Pointwise T[f Tg + g Tf] and (Tf)(Tg) - f g at the samples."""
    tf = _transformed(f, tol, max_level)
    tg = _transformed(g, tol, max_level)

    @partial(_truncated, depth=depth)
    def inner(x, opx, omx):
        return f(x, opx, omx) * tg(x, opx, omx) + g(x, opx, omx) * tf(x, opx, omx)

    xs = np.asarray(x_samples, dtype=float)
    opx, omx = 1.0 + xs, 1.0 - xs
    lhs = tricomi(inner, xs, tol, opx=opx, omx=omx, max_level=max_level)
    rhs = tf(xs, opx, omx) * tg(xs, opx, omx) - f(xs, opx, omx) * g(xs, opx, omx)
    return np.atleast_1d(lhs), np.atleast_1d(rhs)


def verify_hpb(f, g, x_samples=(-0.5, 0.0, 0.5), tol: float = 1e-6, case_id: str = "hpb",
               expected=None, *, max_level: int = MAX_LEVEL, rhs_scale: float = 1.0) -> VerificationReport:
    """Check T[f Tg + g Tf] = (Tf)(Tg) - fg pointwise.

    If ``expected`` (endpoint-aware) is given, the left side is also compared
    with it and the worse of the two residuals is reported.
    """
    try:
        lhs, rhs = hpb_residuals(f, g, x_samples, min(INNER_TOL, tol * 1e-3), max_level=max_level)
        rhs = rhs_scale * rhs
    except (ConvergenceError, DomainError) as exc:
        return VerificationReport.failure(case_id, tol, exc)
    xs = np.asarray(x_samples, dtype=float)
    resid = np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))
    detail = {"n_samples": int(xs.size)}
    if expected is not None:
        ref = rhs_scale * expected(xs, 1.0 + xs, 1.0 - xs)
        resid = np.maximum(resid, np.abs(lhs - ref) / np.maximum(1.0, np.abs(ref)))
    i = int(np.argmax(resid))
    detail["x_worst"] = float(xs[i])
    return VerificationReport(
        case_id=case_id, lhs_value=float(lhs[i]), rhs_value=float(rhs[i]),
        abs_err=float(abs(lhs[i] - rhs[i])), rel_err=float(resid[i]), tol=tol,
        passed=bool(np.max(resid) < tol), quad={"kind": "tanh_sinh", "levels": 0, "err_est": 0.0},
        detail=detail,
    )


def hpb_construction(nu: float):
    """f = (1+x)^nu P(x), g = (1+x)^(-(1+nu)/2) (1-x)^(-(1-nu)/2), and the expected T[fTg + gTf]."""
    d = sf.Degree(nu)

    def f(x, opx, omx):
        return opx**nu * _lp(d, opx, omx)

    def g(x, opx, omx):
        return opx ** (-(1 + nu) / 2) * omx ** (-(1 - nu) / 2)

    _, closed = balanced_input(nu)
    return f, g, closed


def verify_catalog(x_samples=DEFAULT_SAMPLES, tol: float = 1e-6) -> list[VerificationReport]:
    reports = []
    for pair in catalog_pairs():
        try:
            reports.append(verify_pair(pair, x_samples, tol))
        except (ConvergenceError, DomainError) as exc:
            reports.append(VerificationReport.failure(f"tricomi:{pair.name}", tol, exc))
    return reports


def _sqrt_weight(x, opx, omx):
    return np.sqrt(opx * omx)


def _identity(x, opx, omx):
    return np.asarray(x, dtype=float)


def standard_checks():
    """(case_id, default tol, runner) for every transform check the harness runs.

    ``runner(tol, max_level, rhs_scale)`` returns a report.
    """
    checks = []
    for pair in catalog_pairs():
        def run(tol, max_level, rhs_scale, pair=pair):
            try:
                return verify_pair(pair, DEFAULT_SAMPLES, tol, max_level=max_level, rhs_scale=rhs_scale)
            except (ConvergenceError, DomainError) as exc:
                return VerificationReport.failure(f"tricomi:{pair.name}", tol, exc)
        checks.append((f"tricomi:{pair.name}", 1e-6, run))

    pp = pair_pp(-0.5).f
    bal, _ = balanced_input(-0.5)
    for cid, f, g in (("parseval:one,one", one, one),
                      ("parseval:pp,balanced[nu=-0.5]", pp, bal),
                      ("parseval:sqrt,x", _sqrt_weight, _identity)):
        def run(tol, max_level, rhs_scale, cid=cid, f=f, g=g):
            return verify_parseval(f, g, tol, cid, max_level=max_level)
        checks.append((cid, 1e-7, run))

    def run_one(tol, max_level, rhs_scale):
        return verify_hpb(one, one, (-0.5, 0.0, 0.5), tol, "hpb:one,one", max_level=max_level, rhs_scale=rhs_scale)

    f, g, closed = hpb_construction(-0.5)

    def run_built(tol, max_level, rhs_scale):
        return verify_hpb(f, g, (-0.5, 0.0, 0.5), tol, "hpb:balanced[nu=-0.5]", expected=closed,
                          max_level=max_level, rhs_scale=rhs_scale)

    checks += [("hpb:one,one", 1e-7, run_one), ("hpb:balanced[nu=-0.5]", 1e-6, run_built)]
    return checks
