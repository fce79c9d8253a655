"""Integrals over products of three Legendre functions and their closed forms.

The central quantity is

    phi_L(nu) = int_{-1}^{1} (1 - x^2)^((nu-1)/2) P_nu(x)^2 P_nu(-x) dx,

with the closed form

    phi_R(nu) = (1/pi) (cos(nu pi/2) / 2^nu)^3 [Gamma((1+nu)/2) / Gamma(1+nu/2)]^4.

Every integral here is a :class:`TripleIntegralSpec` (or an elliptic-integral
substitution of one) integrated by tanh-sinh; every ``verify_*`` function
returns a :class:`~trilegendre.report.VerificationReport`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import specfun as sf
from .errors import ConvergenceError, DomainError
from .quadrature import MAX_LEVEL, Integrand, JacobiWeight, QuadratureRule, QuadResult, integrate
from .report import VerificationReport, merge_quad

NU_GRID = (-0.9, -0.75, -2 / 3, -0.5, -1 / 3, -0.25, -1 / 6, 0.0, 0.25, 0.5, 1.5, 2.0, 2.5)
GRID_TOL = 1e-7
CASE_TOL = 1e-6

PATTERNS = ("PPP", "PPM", "PMM")


@dataclass(frozen=True)
class TripleIntegralSpec:
    """int (1-x^2)^e [x] P_mu(x)^a P_mu(-x)^b dx with mu = nu + degree_shift.

    ``e = (nu - 1)/2 + weight_shift``; ``pattern`` picks (a, b) from
    PPP = (3, 0), PPM = (2, 1), PMM = (1, 2).
    """

    degree: float
    pattern: str = "PPM"
    x_weight: bool = False
    weight_shift: float = 0.0
    degree_shift: int = 0

    def __post_init__(self):
        if self.pattern not in PATTERNS:
            raise ValueError(f"pattern must be one of {PATTERNS}, got {self.pattern!r}")
        if self.degree_shift not in (0, 1, 2):
            raise ValueError("degree_shift must be 0, 1 or 2")
        if not self.exponent > -1:
            raise DomainError(f"weight exponent {self.exponent:g} is not integrable")

    @property
    def exponent(self) -> float:
        return (self.degree - 1) / 2 + self.weight_shift

    @property
    def mu(self) -> float:
        return self.degree + self.degree_shift


def _is_int(v: float) -> bool:
    return float(v).is_integer()


def _rule(rule: QuadratureRule | None, tol: float | None = None) -> QuadratureRule:
    rule = rule or QuadratureRule()
    return replace(rule, tol=tol) if tol is not None else rule


def weighted_integral(expo: float, g, rule: QuadratureRule | None = None, *,
                      left_log: bool = True, right_log: bool = True) -> QuadResult:
    """int_{-1}^{1} (1-x^2)^expo g(x) dx with endpoint-aware ``g(x, 1+x, 1-x)``.

    A Gauss-Jacobi request falls back to tanh-sinh when ``g`` has a logarithmic
    endpoint singularity, since the Gaussian rule cannot resolve it.
    """
    rule = _rule(rule)
    ig = Integrand(g, JacobiWeight(expo, expo), left_log=left_log, right_log=right_log, endpoint_aware=True)
    if rule.kind == "gauss_jacobi" and (left_log or right_log):
        rule = QuadratureRule("tanh_sinh", MAX_LEVEL, rule.tol)
    return integrate(ig, rule)


def _pair(mu, opx, omx):
    return sf.legendre_pair_dist(mu, omx, opx)


def triple_integral(spec: TripleIntegralSpec, rule: QuadratureRule | None = None) -> QuadResult:
    d = sf.Degree(spec.mu)
    a, b = {"PPP": (3, 0), "PPM": (2, 1), "PMM": (1, 2)}[spec.pattern]

    def g(x, opx, omx):
        p, pm = _pair(d, opx, omx)
        v = p**a * pm**b
        return x * v if spec.x_weight else v

    smooth = _is_int(spec.mu)
    return weighted_integral(spec.exponent, g, rule, left_log=not smooth, right_log=not smooth and b > 0)


# --------------------------------------------------------------------------
# evaluators


def cos_factor(nu: float) -> float:
    """3 - 2 cos(nu pi)."""
    return 3 - 2 * sf.Degree(nu).cos_pi_nu


def phi_R(d) -> float:
    d = sf.as_degree(d)
    if not d.nu > -1:
        raise DomainError(f"closed form needs nu > -1, got {d.nu}")
    return (d.cos_half_pi_nu / 2**d.nu) ** 3 * d.gamma_ratio**4 / math.pi


def phi_L(d, rule: QuadratureRule | None = None) -> float:
    return triple_integral(TripleIntegralSpec(sf.as_degree(d).nu, "PPM"), rule).value


def triple_cube(d, rule: QuadratureRule | None = None) -> float:
    return triple_integral(TripleIntegralSpec(sf.as_degree(d).nu, "PPP"), rule).value


def x_weighted(d, pattern: str = "PPP", rule: QuadratureRule | None = None) -> float:
    """int x (1-x^2)^((nu-1)/2) P_{nu+1}(x)^2 P_{nu+1}(+-x) dx."""
    spec = TripleIntegralSpec(sf.as_degree(d).nu, pattern, x_weight=True, degree_shift=1)
    return triple_integral(spec, rule).value


def beta_weight_integral(nu: float) -> float:
    """int_{-1}^{1} (1-x^2)^((nu-1)/2) dx = B(1/2, (nu+1)/2)."""
    return math.exp(math.lgamma(0.5) + math.lgamma((nu + 1) / 2) - math.lgamma(nu / 2 + 1))


def plus2_factor(nu: float) -> float:
    return (2 * nu**3 + 15 * nu**2 + 36 * nu + 29) / (16 * (nu + 2) ** 3)


def recursion_factor(nu: float) -> float:
    return -64 * (nu + 2) ** 4 / (nu + 1) ** 4


# --------------------------------------------------------------------------
# verification plumbing


@dataclass
class _Side:
    name: str
    value: float
    quads: list = field(default_factory=list)


def _evaluate(name, specs_and_scale, rule):
    """sum(scale * triple_integral(spec)) -> _Side."""
    total = 0.0
    quads = []
    for spec, scale in specs_and_scale:
        r = triple_integral(spec, rule)
        total += scale * r.value
        quads.append(r)
    return _Side(name, total, quads)


def _closed(name, value):
    return _Side(name, value, [])


def _worst(case_id, pairs, tol, rule_tol=None):
    """Report the worst of several (lhs, rhs) comparisons."""
    reports = []
    quads = []
    detail = {}
    for lhs, rhs in pairs:
        reports.append(VerificationReport.compare(f"{lhs.name}={rhs.name}", lhs.value, rhs.value, tol))
        quads += lhs.quads + rhs.quads
        detail[lhs.name] = lhs.value
        detail[rhs.name] = rhs.value

    def badness(r):
        return min(r.rel_err, r.abs_err)

    worst = max(reports, key=badness)
    detail["worst"] = worst.case_id
    return VerificationReport(case_id, worst.lhs_value, worst.rhs_value, worst.abs_err, worst.rel_err, tol,
                              all(r.passed for r in reports), merge_quad(*quads) if quads else {"kind": "closed"},
                              detail)


def _guarded(case_id, tol, fn):
    try:
        return fn()
    except (ConvergenceError, DomainError) as exc:
        quad = {"err_est": getattr(exc, "err_est", float("nan")), "levels": getattr(exc, "levels", 0),
                "kind": "tanh_sinh"}
        return VerificationReport.failure(case_id, tol, exc, quad)


def _nu(d) -> float:
    return sf.as_degree(d).nu


# --------------------------------------------------------------------------
# verifications on a single degree


def verify_closed_form(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """phi_L(nu) against phi_R(nu)."""
    nu = _nu(d)

    def run():
        lhs = _evaluate("phi_L", [(TripleIntegralSpec(nu, "PPM"), 1.0)], rule)
        return _worst(f"closed-form[nu={nu:.6g}]", [(lhs, _closed("phi_R", rhs_scale * phi_R(nu)))], tol)

    return _guarded(f"closed-form[nu={nu:.6g}]", tol, run)


def verify_cube_identity(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """cube = (3 - 2cos nu pi) phi_L = (3 - 2cos nu pi) phi_R, compared as products."""
    nu = _nu(d)
    cid = f"cube-phi[nu={nu:.6g}]"

    def run():
        c = cos_factor(nu)
        cube = _evaluate("cube", [(TripleIntegralSpec(nu, "PPP"), 1.0)], rule)
        ppm = _evaluate("c*phi_L", [(TripleIntegralSpec(nu, "PPM"), c)], rule)
        closed = _closed("c*phi_R", rhs_scale * c * phi_R(nu))
        return _worst(cid, [(cube, ppm), (cube, closed), (ppm, closed)], tol)

    return _guarded(cid, tol, run)


def verify_x_weighted(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """x-weighted degree nu+1 integrals: cube = (2cos nu pi - 3) ppm = (3/8)(3 - 2cos nu pi) phi_R."""
    nu = _nu(d)
    cid = f"x-weighted[nu={nu:.6g}]"

    def run():
        c = cos_factor(nu)
        cube = _evaluate("x-cube", [(TripleIntegralSpec(nu, "PPP", True, 0, 1), 1.0)], rule)
        ppm = _evaluate("-c*x-ppm", [(TripleIntegralSpec(nu, "PPM", True, 0, 1), -c)], rule)
        closed = _closed("3/8*c*phi_R", rhs_scale * 0.375 * c * phi_R(nu))
        return _worst(cid, [(cube, ppm), (cube, closed), (ppm, closed)], tol)

    return _guarded(cid, tol, run)


def verify_recursion(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """phi_L(nu) = -64 (nu+2)^4/(nu+1)^4 phi_L(nu+2)."""
    nu = _nu(d)
    cid = f"recursion[nu={nu:.6g}]"

    def run():
        lhs = _evaluate("phi_L", [(TripleIntegralSpec(nu, "PPM"), 1.0)], rule)
        shifted = TripleIntegralSpec(nu, "PPM", weight_shift=1.0, degree_shift=2)
        rhs = _evaluate("rec*phi_L(nu+2)", [(shifted, rhs_scale * recursion_factor(nu))], rule)
        return _worst(cid, [(lhs, rhs)], tol)

    return _guarded(cid, tol, run)


def verify_raise(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """phi_L = -(8/3) x-ppm and cube = (8/3) x-cube, both at degree nu+1."""
    nu = _nu(d)
    cid = f"raise[nu={nu:.6g}]"

    def run():
        phi = _evaluate("phi_L", [(TripleIntegralSpec(nu, "PPM"), 1.0)], rule)
        xppm = _evaluate("-8/3*x-ppm", [(TripleIntegralSpec(nu, "PPM", True, 0, 1), -8 / 3 * rhs_scale)], rule)
        cube = _evaluate("cube", [(TripleIntegralSpec(nu, "PPP"), 1.0)], rule)
        xcube = _evaluate("8/3*x-cube", [(TripleIntegralSpec(nu, "PPP", True, 0, 1), 8 / 3 * rhs_scale)], rule)
        return _worst(cid, [(phi, xppm), (cube, xcube)], tol)

    return _guarded(cid, tol, run)


def verify_plus2(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """Degree nu+2 integrals with the (nu-1)/2 weight and the cubic prefactor."""
    nu = _nu(d)
    cid = f"plus2[nu={nu:.6g}]"

    def run():
        c = cos_factor(nu)
        cube = _evaluate("cube+2", [(TripleIntegralSpec(nu, "PPP", degree_shift=2), 1.0)], rule)
        ppm = _evaluate("c*ppm+2", [(TripleIntegralSpec(nu, "PPM", degree_shift=2), c)], rule)
        closed = _closed("closed+2", rhs_scale * c * plus2_factor(nu) * phi_R(nu))
        return _worst(cid, [(cube, ppm), (cube, closed), (ppm, closed)], tol)

    return _guarded(cid, tol, run)


def verify_pzero_form(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """phi_L = [P_nu(0)/2^nu]^3 B(1/2, (nu+1)/2), and the same against phi_R."""
    nu = _nu(d)
    cid = f"pzero[nu={nu:.6g}]"

    def run():
        lhs = _evaluate("phi_L", [(TripleIntegralSpec(nu, "PPM"), 1.0)], rule)
        pz = _closed("pzero-form", rhs_scale * (sf.p_nu_zero(nu) / 2**nu) ** 3 * beta_weight_integral(nu))
        return _worst(cid, [(lhs, pz), (_closed("phi_R", phi_R(nu)), pz)], tol)

    return _guarded(cid, tol, run)


def verify_intermediate(d, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """Integration-by-parts forms mixing degrees nu and nu+1.

    phi_L = -int w P_nu [P_{nu+1}(x) P_{nu+1}(-x) - P_{nu+1}(-x)^2] and
    cube = 2 int w P_nu P_{nu+1}^2, with w = (1-x^2)^((nu-1)/2).
    """
    nu = _nu(d)
    cid = f"intermediate[nu={nu:.6g}]"
    d0, d1 = sf.Degree(nu), sf.Degree(nu + 1)
    smooth = _is_int(nu)

    def mixed(x, opx, omx):
        p0, _ = _pair(d0, opx, omx)
        p1, p1m = _pair(d1, opx, omx)
        return -p0 * (p1 * p1m - p1m * p1m)

    def doubled(x, opx, omx):
        p0, _ = _pair(d0, opx, omx)
        p1, _ = _pair(d1, opx, omx)
        return 2 * p0 * p1 * p1

    def run():
        e = (nu - 1) / 2
        r1 = weighted_integral(e, mixed, rule, left_log=not smooth, right_log=not smooth)
        r2 = weighted_integral(e, doubled, rule, left_log=not smooth, right_log=False)
        phi = _evaluate("phi_L", [(TripleIntegralSpec(nu, "PPM"), 1.0)], rule)
        cube = _evaluate("cube", [(TripleIntegralSpec(nu, "PPP"), 1.0)], rule)
        return _worst(cid, [(phi, _Side("mixed", rhs_scale * r1.value, [r1])),
                            (cube, _Side("2*P*P1^2", rhs_scale * r2.value, [r2]))], tol)

    return _guarded(cid, tol, run)


GRID_CHECKS: dict[str, Callable] = {
    "closed-form": verify_closed_form,
    "cube-phi": verify_cube_identity,
    "x-weighted": verify_x_weighted,
    "recursion": verify_recursion,
    "raise": verify_raise,
    "plus2": verify_plus2,
    "pzero": verify_pzero_form,
    "intermediate": verify_intermediate,
}


def recursion_grid(grid=NU_GRID):
    return tuple(nu for nu in grid if -1 < nu <= 1)


# --------------------------------------------------------------------------
# other checks


def triple_zero_order(n: int = 1, eps_grid=(1e-1, 3e-2, 1e-2), rule=None, floor: float = 1e-12) -> float:
    """Fitted log-log slope of |phi_L(n + eps)| against eps near an odd integer n."""
    if n not in (1, 3):
        raise DomainError("order of vanishing is tested at n = 1 or 3")
    eps = np.asarray(eps_grid, dtype=float)
    if np.any(eps <= 0) or np.any(np.diff(eps) >= 0):
        raise ValueError("eps_grid must be positive and decreasing")
    vals = np.array([abs(phi_L(n + e, rule)) for e in eps])
    keep = vals > floor
    if keep.sum() < 2:
        raise ConvergenceError("too few values above the quadrature floor to fit an order")
    slope, _ = np.polyfit(np.log(eps[keep]), np.log(vals[keep]), 1)
    return float(slope)


def verify_triple_zero(n=1, eps_grid=(1e-1, 3e-2, 1e-2), band=(2.8, 3.2), rule=None) -> VerificationReport:
    cid = f"triple-zero[n={n}]"
    lo, hi = band

    def run():
        slope = triple_zero_order(n, eps_grid, rule)
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        return VerificationReport(cid, slope, mid, abs(slope - mid), abs(slope - mid) / mid, half,
                                  bool(lo <= slope <= hi), {"kind": "tanh_sinh"},
                                  {"band_lo": lo, "band_hi": hi, "phi_L_at_n": phi_L(n, rule)})

    return _guarded(cid, hi - lo, run)


def macrobert_closed(nu: float) -> float:
    """int_0^pi P_nu(cos t) / sqrt(sin t) dt in closed form."""
    d = sf.Degree(nu)
    return (sf.gamma(0.25) ** 2 / (4 * math.pi) * (math.sqrt(2) + 2 * sf._cospi(nu + 0.25)) * d.gamma_ratio)


def verify_macrobert(nu: float, tol=GRID_TOL, rule=None, rhs_scale=1.0) -> VerificationReport:
    """Check the sine-weighted integral via x = cos t: int (1-x^2)^(-3/4) P_nu(x) dx."""
    cid = f"macrobert[nu={nu:.6g}]"
    d = sf.Degree(nu)

    def g(x, opx, omx):
        return sf.legendre_p_dist(d, omx, opx)

    def run():
        r = weighted_integral(-0.75, g, rule, left_log=not _is_int(nu), right_log=False)
        return _worst(cid, [(_Side("integral", r.value, [r]), _closed("closed", rhs_scale * macrobert_closed(nu)))],
                      tol)

    return _guarded(cid, tol, run)


def conical_ratios(eta: float, theta: float) -> tuple[float, float]:
    """Ratios of the conical function to its large-eta Bessel forms at cos(theta) and -cos(theta)."""
    p = sf.ConicalParam(eta, theta)
    amp = math.sqrt(theta / math.sin(theta)) if theta > 0 else 1.0
    z = eta * theta
    r_i = sf.conical_p(p) / (amp * float(sf.bessel_i0(z)))
    # 2 cosh(eta pi)/pi * K0(z), with the exponentials combined to avoid overflow
    k_form = amp * float(sf.bessel_k0e(z)) * (math.exp(eta * math.pi - z) + math.exp(-eta * math.pi - z)) / math.pi
    r_k = sf.conical_p(p, reflect=True) / k_form
    return r_i, r_k


def verify_conical(eta=50.0, thetas=(0.2, 0.3, 0.5), tol=0.02, rhs_scale=1.0) -> VerificationReport:
    """Both ratios of :func:`conical_ratios` within ``tol`` of 1."""
    cid = f"conical[eta={eta:g}]"
    rows = []
    for th in thetas:
        r_i, r_k = conical_ratios(eta, th)
        rows += [(f"I0[theta={th:g}]", r_i / rhs_scale), (f"K0[theta={th:g}]", r_k / rhs_scale)]
    name, worst = max(rows, key=lambda kv: abs(kv[1] - 1))
    return VerificationReport(cid, worst, 1.0, abs(worst - 1), abs(worst - 1), tol,
                              all(abs(v - 1) < tol for _, v in rows), {"kind": "series"},
                              dict(rows, worst=name))


def verify_p_half_elliptic(n: int = 50, tol: float = 1e-11, rhs_scale: float = 1.0) -> VerificationReport:
    """P_{-1/2}(x) against (2/pi) K(sqrt((1-x)/2)) on an n-point grid in (-1, 1]."""
    cid = "p-half-elliptic"
    x = np.linspace(-0.999, 1.0, n)
    p = sf.legendre_p(-0.5, x)
    k = np.array([sf.ellip_k(math.sqrt((1 - xi) / 2)) for xi in x])
    ref = rhs_scale * 2 / math.pi * k
    rel = np.abs(p - ref) / np.abs(ref)
    i = int(np.argmax(rel))
    return VerificationReport(cid, float(p[i]), float(ref[i]), float(abs(p[i] - ref[i])), float(rel[i]), tol,
                              bool(np.all(rel < tol)), {"kind": "series"}, {"x_worst": float(x[i]), "n": n})


# --------------------------------------------------------------------------
# elliptic-integral catalog


@dataclass(frozen=True)
class IdentityCase:
    """One closed-form evaluation: ``lhs(rule)`` by quadrature against ``rhs()``.

    Cases sharing a ``chain`` are different integral forms of the same constant.
    """

    id: str
    chain: str
    lhs: Callable[[QuadratureRule | None], QuadResult]
    rhs_closed: Callable[[], float]
    param: float
    tol: float = CASE_TOL
    form: str = ""


def run_case(case: IdentityCase, rule: QuadratureRule | None = None, tol: float | None = None,
             rhs_scale: float = 1.0) -> VerificationReport:
    tol = case.tol if tol is None else tol

    def run():
        r = case.lhs(rule)
        rhs = rhs_scale * case.rhs_closed()
        return VerificationReport.compare(case.id, r.value, rhs, tol,
                                          {"kind": r.kind, "levels": r.levels, "err_est": r.err_est},
                                          {"chain": case.chain, "form": case.form})

    return _guarded(case.id, tol, run)


def _unit_integral(g, alpha, beta, rule, left_log=True, right_log=True) -> QuadResult:
    """int_0^1 (1-t)^alpha t^beta g(t, t, 1-t) dt."""
    rule = _rule(rule)
    if rule.kind == "gauss_jacobi":
        rule = QuadratureRule("tanh_sinh", MAX_LEVEL, rule.tol)
    ig = Integrand(g, JacobiWeight(alpha, beta), left_log, right_log, interval=(0.0, 1.0), endpoint_aware=True)
    return integrate(ig, rule)


def _k_t(t, omt):
    """(K(sqrt t), K(sqrt(1-t))) from t and 1 - t."""
    return sf.ellip_k_comp(np.sqrt(omt)), sf.ellip_k_comp(np.sqrt(t))


def _k_modulus(k, omk):
    """(K(k), K'(k)) = (K(k), K(sqrt(1-k^2))) from k and 1 - k."""
    return sf.ellip_k_comp(np.sqrt(omk * (1 + k))), sf.ellip_k_comp(k)


def _k_from_log_comp(log_kp):
    """K from log k'; below k' = e^-40 the two-term log form is exact in double precision."""
    log_kp = np.minimum(np.asarray(log_kp, dtype=float), 0.0)
    tiny = log_kp < -40
    kp = np.exp(np.where(tiny, 0.0, log_kp))
    return np.where(tiny, math.log(4.0) - log_kp, sf.ellip_k_comp(kp))


def _k_cubic(p, omp):
    """(K(k1), K(k2)) for k1^2 = p^3 (2+p)/(1+2p), k2^2 = (1+p)^3 (1-p)/(1+2p); k1^2 + k2^2 = 1."""
    # logs keep k1 and k2 meaningful when p or 1 - p is far below 1e-100
    log_k1 = 0.5 * (3 * np.log(p) + np.log(2 + p) - np.log(1 + 2 * p))
    log_k2 = 0.5 * (3 * np.log(1 + p) + np.log(omp) - np.log(1 + 2 * p))
    return _k_from_log_comp(log_k2), _k_from_log_comp(log_k1)


def _ek_t(t, omt):
    """(2E - K at sqrt t, 2E - K at sqrt(1-t)); equals (pi/2) P_{1/2}(1 - 2t) and its reflection."""
    kp, kc = np.sqrt(omt), np.sqrt(t)
    a = 2 * sf.ellip_e_comp(kp) - sf.ellip_k_comp(kp)
    b = 2 * sf.ellip_e_comp(kc) - sf.ellip_k_comp(kc)
    return a, b


def _g14() -> float:
    return sf.gamma(0.25) ** 8


def _p_form(nu, pattern, scale=1.0, x_weight=False, degree_shift=0):
    spec = TripleIntegralSpec(nu, pattern, x_weight=x_weight, degree_shift=degree_shift)

    def lhs(rule):
        r = triple_integral(spec, rule)
        return replace(r, value=scale * r.value)

    return lhs


def _scaled(res: QuadResult, s: float) -> QuadResult:
    return replace(res, value=s * res.value, err_est=abs(s) * res.err_est)


def _chain_lemniscatic() -> list[IdentityCase]:
    """Degree -1/2: the K' / K forms in k and t, and the Legendre forms."""
    const = lambda: _g14() / (32 * math.sqrt(2) * math.pi**2)  # noqa: E731
    nu = -0.5

    def kform(a, b, s):
        def g(k, dl, dr):
            kk, kp = _k_modulus(k, dr)
            return kp**a * kk**b * (1 + k) ** -0.75
        return lambda rule: _scaled(_unit_integral(g, -0.75, -0.5, rule), s)

    def tform(a, b, s):
        def g(t, dl, dr):
            kt, kpt = _k_t(dl, dr)
            return kpt**a * kt**b
        return lambda rule: _scaled(_unit_integral(g, -0.75, -0.75, rule), s)

    c = math.sqrt(2) * math.pi**3
    ch = "degree -1/2"
    return [
        IdentityCase("K′³", ch, kform(3, 0, 1.0), lambda: 3 * const(), nu, form="k"),
        IdentityCase("K′²K", ch, kform(2, 1, 1.0), const, nu, form="k"),
        IdentityCase("K′K²", ch, kform(1, 2, 1.0), const, nu, form="k"),
        IdentityCase("t: K′³", ch, tform(3, 0, 1 / 6), const, nu, form="t"),
        IdentityCase("t: K′²K", ch, tform(2, 1, 1 / 2), const, nu, form="t"),
        IdentityCase("t: K′K²", ch, tform(1, 2, 1 / 2), const, nu, form="t"),
        IdentityCase("ν=−1/2 P³", ch, _p_form(nu, "PPP", c / 48), const, nu, form="P"),
        IdentityCase("ν=−1/2 P²P⁻", ch, _p_form(nu, "PPM", c / 16), const, nu, form="P"),
        IdentityCase("ν=−1/2 PP⁻²", ch, _p_form(nu, "PMM", c / 16), const, nu, form="P"),
    ]


def _chains_cubic() -> list[IdentityCase]:
    """Degrees -1/3 and -2/3 through the cubic modular substitution in p."""
    g13 = lambda: sf.gamma(1 / 3) ** 12 / math.pi**7  # noqa: E731
    pre = 8 / math.pi**3
    cbrt2, cbrt4 = 2 ** (1 / 3), 4 ** (1 / 3)
    s3 = math.sqrt(3)

    def pform(power_poly, power_lin, power_rad, a, b, s):
        # s (1+p+p^2)^power_poly / ((1+2p)^power_lin [(1-p^2) p (2+p)]^power_rad) K(k1)^a K(k2)^b
        def g(p, dl, dr):
            k1, k2 = _k_cubic(dl, dr)
            return ((1 + p + p * p) ** power_poly / (1 + 2 * p) ** power_lin
                    / ((1 + p) * (2 + p)) ** power_rad * k1**a * k2**b)
        return lambda rule: _scaled(_unit_integral(g, -power_rad, -power_rad, rule), pre * s)

    out = []
    nu = -1 / 3
    ch = "degree -1/3 cube"
    cst = lambda: 3**3.5 / 2 ** (19 / 3) * g13()  # noqa: E731
    out += [
        IdentityCase("ν=−1/3 P³", ch, _p_form(nu, "PPP"), cst, nu, form="P"),
        IdentityCase("ν=−1/3 p-form K₁³", ch, pform(3, 11 / 6, 1 / 3, 3, 0, 3 * cbrt2), cst, nu, form="p"),
        IdentityCase("ν=−1/3 p-form K₂³", ch, pform(3, 11 / 6, 1 / 3, 0, 3, cbrt2 / s3), cst, nu, form="p"),
    ]
    ch = "degree -1/3 ppm"
    cst2 = lambda: 3**3.5 / 2 ** (22 / 3) * g13()  # noqa: E731
    out += [
        IdentityCase("ν=−1/3 P²P⁻", ch, _p_form(nu, "PPM"), cst2, nu, form="P"),
        IdentityCase("ν=−1/3 p-form K₁²K₂", ch, pform(3, 11 / 6, 1 / 3, 2, 1, s3 * cbrt2), cst2, nu, form="p"),
        IdentityCase("ν=−1/3 p-form K₂²K₁", ch, pform(3, 11 / 6, 1 / 3, 1, 2, cbrt2), cst2, nu, form="p"),
    ]
    nu = -2 / 3
    ch = "degree -2/3 cube"
    cst3 = lambda: 3**4 / 2 ** (13 / 3) * g13()  # noqa: E731
    out += [
        IdentityCase("ν=−2/3 P³", ch, _p_form(nu, "PPP"), cst3, nu, form="P"),
        IdentityCase("ν=−2/3 p-form K₁³", ch, pform(4, 13 / 6, 2 / 3, 3, 0, s3 * cbrt4), cst3, nu, form="p"),
        IdentityCase("ν=−2/3 p-form K₂³", ch, pform(4, 13 / 6, 2 / 3, 0, 3, cbrt4 / 3), cst3, nu, form="p"),
    ]
    ch = "degree -2/3 ppm"
    cst4 = lambda: 3**4 / 2 ** (19 / 3) * g13()  # noqa: E731
    out += [
        IdentityCase("ν=−2/3 P²P⁻", ch, _p_form(nu, "PPM"), cst4, nu, form="P"),
        IdentityCase("ν=−2/3 p-form K₁²K₂", ch, pform(4, 13 / 6, 2 / 3, 2, 1, cbrt4), cst4, nu, form="p"),
        IdentityCase("ν=−2/3 p-form K₂²K₁", ch, pform(4, 13 / 6, 2 / 3, 1, 2, cbrt4 / s3), cst4, nu, form="p"),
    ]
    return out


def _tform(alpha, beta, poly, a, b, s):
    """(8/pi^3) s int_0^1 poly(t) (1-t)^alpha t^beta K(sqrt t)^a K(sqrt(1-t))^b dt."""

    def g(t, dl, dr):
        kt, kpt = _k_t(dl, dr)
        return poly(t, dl, dr) * kt**a * kpt**b

    return lambda rule: _scaled(_unit_integral(g, alpha, beta, rule), 8 / math.pi**3 * s)


def _chains_quartic() -> list[IdentityCase]:
    """Degrees -1/4 and -3/4 in t."""
    g18 = lambda: sf.gamma(0.125) ** 8 / (math.pi**3 * sf.gamma(0.25) ** 4)  # noqa: E731
    r2 = math.sqrt(2)
    two_m = lambda t, dl, dr: 2 - t  # noqa: E731
    one_p = lambda t, dl, dr: 1 + t  # noqa: E731
    two_m2 = lambda t, dl, dr: (2 - t) ** 2  # noqa: E731
    one_p2 = lambda t, dl, dr: (1 + t) ** 2  # noqa: E731
    out = []

    nu = -0.25
    ch = "degree -1/4 cube"
    c1 = lambda: math.sqrt(1 + r2) * (1 + 2 * r2) / (2**2.5 * (2 + r2) ** 4) * g18()  # noqa: E731
    out += [
        IdentityCase("ν=−1/4 P³", ch, _p_form(nu, "PPP"), c1, nu, form="P"),
        IdentityCase("ν=−1/4 t-form (2−t)", ch, _tform(-5 / 8, -1 / 4, two_m, 3, 0, 0.5), c1, nu, form="t"),
        IdentityCase("ν=−1/4 t-form (1+t)", ch, _tform(-1 / 4, -5 / 8, one_p, 3, 0, r2), c1, nu, form="t"),
    ]
    ch = "degree -1/4 ppm"
    c2 = lambda: (1 + r2) ** 1.5 / (2**2.5 * (2 + r2) ** 4) * g18()  # noqa: E731
    out += [
        IdentityCase("ν=−1/4 P²P⁻", ch, _p_form(nu, "PPM"), c2, nu, form="P"),
        IdentityCase("ν=−1/4 t-form (2−t) K²K′", ch, _tform(-5 / 8, -1 / 4, two_m, 2, 1, 1 / r2), c2, nu, form="t"),
        IdentityCase("ν=−1/4 t-form (1+t) K²K′", ch, _tform(-1 / 4, -5 / 8, one_p, 2, 1, 1.0), c2, nu, form="t"),
    ]
    nu = -0.75
    ch = "degree -3/4 cube"
    c3 = lambda: (2 - r2) ** 1.5 * (3 + r2) / 2**3.75 * g18()  # noqa: E731
    out += [
        IdentityCase("ν=−3/4 P³", ch, _p_form(nu, "PPP"), c3, nu, form="P"),
        IdentityCase("ν=−3/4 t-form (2−t)²", ch, _tform(-7 / 8, -3 / 4, two_m2, 3, 0, 0.25), c3, nu, form="t"),
        IdentityCase("ν=−3/4 t-form (1+t)²", ch, _tform(-3 / 4, -7 / 8, one_p2, 3, 0, 1 / r2), c3, nu, form="t"),
    ]
    ch = "degree -3/4 ppm"
    c4 = lambda: (2 - r2) ** 1.5 / 2**3.75 * g18()  # noqa: E731
    out += [
        IdentityCase("ν=−3/4 P²P⁻", ch, _p_form(nu, "PPM"), c4, nu, form="P"),
        IdentityCase("ν=−3/4 t-form (2−t)² K²K′", ch, _tform(-7 / 8, -3 / 4, two_m2, 2, 1, 1 / (2 * r2)), c4, nu,
                     form="t"),
        IdentityCase("ν=−3/4 t-form (1+t)² K²K′", ch, _tform(-3 / 4, -7 / 8, one_p2, 2, 1, 0.5), c4, nu, form="t"),
    ]
    return out


def _chains_sextic() -> list[IdentityCase]:
    """Degrees -1/6 and -5/6 in t."""
    g14 = lambda: _g14() / math.pi**5  # noqa: E731
    s3 = math.sqrt(3)
    one = lambda t, dl, dr: 1.0  # noqa: E731
    quad = lambda t, dl, dr: 1 - t + t * t  # noqa: E731
    out = []
    nu = -1 / 6
    a1 = 3**1.25 / 2 ** (5 / 6)
    ch = "degree -1/6 cube"
    c1 = lambda: s3**3 * (2 - s3) / 16 * g14()  # noqa: E731
    out += [
        IdentityCase("ν=−1/6 P³", ch, _p_form(nu, "PPP"), c1, nu, form="P"),
        IdentityCase("ν=−1/6 t-form", ch, _tform(-1 / 6, -1 / 6, one, 3, 0, a1), c1, nu, form="t"),
    ]
    ch = "degree -1/6 ppm"
    c2 = lambda: 3 / (16 * (1 + s3)) * g14()  # noqa: E731
    out += [
        IdentityCase("ν=−1/6 P²P⁻", ch, _p_form(nu, "PPM"), c2, nu, form="P"),
        IdentityCase("ν=−1/6 t-form K²K′", ch, _tform(-1 / 6, -1 / 6, one, 2, 1, a1), c2, nu, form="t"),
    ]
    nu = -5 / 6
    a2 = 3**0.25 / 2 ** (1 / 6)
    ch = "degree -5/6 cube"
    c3 = lambda: s3**3 * (1 + s3) ** 2 / 8 * g14()  # noqa: E731
    out += [
        IdentityCase("ν=−5/6 P³", ch, _p_form(nu, "PPP"), c3, nu, form="P"),
        IdentityCase("ν=−5/6 t-form", ch, _tform(-5 / 6, -5 / 6, quad, 3, 0, a2), c3, nu, form="t"),
    ]
    ch = "degree -5/6 ppm"
    c4 = lambda: 3 * (1 + s3) / 8 * g14()  # noqa: E731
    out += [
        IdentityCase("ν=−5/6 P²P⁻", ch, _p_form(nu, "PPM"), c4, nu, form="P"),
        IdentityCase("ν=−5/6 t-form K²K′", ch, _tform(-5 / 6, -5 / 6, quad, 2, 1, a2), c4, nu, form="t"),
    ]
    return out


def _chains_half() -> list[IdentityCase]:
    """Degree 1/2 (and the x-weighted degree-1/2 integrals at nu = -1/2) via 2E - K."""
    r2 = math.sqrt(2)
    pre = 8 / math.pi**3

    def ek(alpha, a, b, s, x_weight):
        def g(t, dl, dr):
            e1, e2 = _ek_t(dl, dr)
            v = e1**a * e2**b
            return (1 - 2 * t) * v if x_weight else v
        return lambda rule: _scaled(_unit_integral(g, alpha, alpha, rule), pre * s)

    out = []
    ch = "degree 1/2 cube"
    c1 = lambda: 384 * math.pi**3 / _g14()  # noqa: E731
    out += [
        IdentityCase("ν=1/2 P³", ch, _p_form(0.5, "PPP"), c1, 0.5, form="P"),
        IdentityCase("ν=1/2 E-form", ch, ek(-0.25, 3, 0, r2, False), c1, 0.5, form="t"),
        IdentityCase("ν=1/2 3·P²P⁻", ch, _p_form(0.5, "PPM", 3.0), c1, 0.5, form="P"),
        IdentityCase("ν=1/2 E-form mixed", ch, ek(-0.25, 2, 1, 3 * r2, False), c1, 0.5, form="t"),
    ]
    ch = "degree 1/2 x-weighted"
    c2 = lambda: 9 * _g14() / (32 * math.pi**5)  # noqa: E731
    out += [
        IdentityCase("x-weighted ν=1/2 P³", ch, _p_form(-0.5, "PPP", 1.0, True, 1), c2, -0.5, form="P"),
        IdentityCase("x-weighted ν=1/2 E-form", ch, ek(-0.75, 3, 0, 1 / r2, True), c2, -0.5, form="t"),
        IdentityCase("x-weighted ν=1/2 −3·P²P⁻", ch, _p_form(-0.5, "PPM", -3.0, True, 1), c2, -0.5, form="P"),
        IdentityCase("x-weighted ν=1/2 E-form mixed", ch, ek(-0.75, 2, 1, -3 / r2, True), c2, -0.5, form="t"),
    ]
    return out


def corollary_catalog() -> list[IdentityCase]:
    """All elliptic-integral evaluations, each chain listing its Legendre form too."""
    return _chain_lemniscatic() + _chains_cubic() + _chains_quartic() + _chains_sextic() + _chains_half()


def find_case(case_id: str) -> IdentityCase:
    for c in corollary_catalog():
        if c.id == case_id:
            return c
    raise KeyError(case_id)
