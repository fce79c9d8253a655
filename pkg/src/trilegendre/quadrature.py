"""Quadrature on finite intervals with singular endpoints, and Cauchy principal values.

The default engine is tanh-sinh (double-exponential) quadrature. Nodes are
generated together with their distances to both interval ends, computed
without cancellation, and integrands may ask for them: an *endpoint-aware*
integrand is called as ``f(x, x - a, b - x)``. This is what lets algebraic
weights such as ``(1 - x)^-0.95`` and logarithmic singularities be resolved
down to distances of order 1e-275 instead of stopping at machine epsilon.

Gauss-Jacobi rules (Golub-Welsch) are provided for purely algebraic weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "JacobiWeight",
    "Integrand",
    "QuadratureRule",
    "QuadResult",
    "integrate",
    "tanh_sinh",
    "gauss_jacobi_rule",
    "pv_integrate",
    "pv_integrate_many",
    "DEFAULT_TOL",
    "MAX_LEVEL",
]

DEFAULT_TOL = 1e-10
MAX_LEVEL = 12
MIN_LEVEL = 3
T_MAX = 6.0  # y, 1-y >= ~1e-275 at |t| = 6
_TINY = 5e-324
STRONG_EXPONENT = -0.9  # endpoint weights below this are absorbed by a power map


@dataclass(frozen=True)
class JacobiWeight:
    """Weight ``(b - x)^alpha (x - a)^beta`` on the interval ``(a, b)``."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise DomainError(f"non-integrable Jacobi weight alpha={self.alpha}, beta={self.beta}")

    @property
    def trivial(self) -> bool:
        return self.alpha == 0 and self.beta == 0


@dataclass(frozen=True)
class Integrand:
    """A function on an open interval together with its weight and singularity flags.

    With ``endpoint_aware=True`` the function is called as ``f(x, dl, dr)``
    where ``dl = x - a`` and ``dr = b - x``; otherwise as ``f(x)``. Arrays
    are passed, so ``f`` should be numpy-vectorised.
    """

    f: Callable
    weight: JacobiWeight = field(default_factory=JacobiWeight)
    left_log: bool = False
    right_log: bool = False
    interval: tuple[float, float] = (-1.0, 1.0)
    endpoint_aware: bool = False

    def __call__(self, x, dl, dr):
        if self.endpoint_aware:
            return self.f(x, dl, dr)
        return self.f(x)


@dataclass(frozen=True)
class QuadratureRule:
    """``kind`` is ``"tanh_sinh"`` (``level_or_order`` = level cap) or ``"gauss_jacobi"`` (= node count)."""

    kind: str = "tanh_sinh"
    level_or_order: int = MAX_LEVEL
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.kind not in ("tanh_sinh", "gauss_jacobi"):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.level_or_order < 2:
            raise ValueError("level_or_order must be >= 2")


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    levels: int
    kind: str = "tanh_sinh"
    n_evals: int = 0

    def __float__(self):
        return float(self.value)


# --------------------------------------------------------------------------
# tanh-sinh core


def _level_nodes(level: int):
    h = 2.0**-level
    if level == 0:
        t = np.arange(-math.floor(T_MAX), math.floor(T_MAX) + 1, dtype=float)
    else:
        j = np.arange(-math.floor((T_MAX / h - 1) / 2) - 1, math.floor((T_MAX / h - 1) / 2) + 1)
        t = (2 * j + 1) * h
        t = t[np.abs(t) <= T_MAX]
    u = math.pi * np.sinh(t)
    e = np.exp(-np.abs(u))
    # y = 1/(1+exp(-u)), 1-y = 1/(1+exp(u)), both without cancellation
    small = e / (1 + e)
    big = 1 / (1 + e)
    y = np.where(u >= 0, big, small)
    yc = np.where(u >= 0, small, big)
    pcosh = math.pi * np.cosh(t)
    return y, yc, pcosh * y * yc, pcosh


def _run_levels(contrib, tol, max_level, batch_shape=()):
    """Drive the level schedule.

    ``contrib(y, yc, jac, pcosh)`` receives the new nodes of a level on (0, 1)
    (``y``, ``1 - y``, ``dy/dt`` and ``pi cosh t``) and returns their summed
    contributions over the last axis.
    """
    total = np.zeros(batch_shape)
    prev = None
    n_evals = 0
    err = np.full(batch_shape, np.inf)
    for level in range(max_level + 1):
        nodes = _level_nodes(level)
        n_evals += nodes[0].size
        total = total + contrib(*nodes)
        est = total * 2.0**-level
        if prev is not None:
            err = np.abs(est - prev)
            if level >= MIN_LEVEL and np.all(err <= tol * np.maximum(1.0, np.abs(est))):
                return est, err, level, n_evals
        prev = est
    raise ConvergenceError(
        f"tanh-sinh did not reach tol={tol:g} by level {max_level} (err_est={np.max(err):.3g})",
        err_est=float(np.max(err)),
        levels=max_level,
    )


def _checked(v):
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise DomainError("integrand returned a non-finite value inside the interval")
    return v


def tanh_sinh(f, a: float, b: float, tol: float = DEFAULT_TOL, max_level: int = MAX_LEVEL,
              left_offset: float = 0.0, right_offset: float = 0.0) -> QuadResult:
    """Integrate the endpoint-aware ``f(x, dl, dr)`` over ``[a, b]``.

    ``dl``/``dr`` passed to ``f`` are ``x - a + left_offset`` and
    ``b - x + right_offset``, which lets a caller splitting a larger interval
    keep distances to the *outer* endpoints exact.
    """
    if not b > a:
        raise DomainError("tanh_sinh needs a < b")
    length = b - a

    def contrib(y, yc, jac, _):
        dl = length * y
        dr = length * yc
        keep = (dl > 0) & (dr > 0)
        dl, dr, jac = dl[keep], dr[keep], jac[keep]
        x = np.where(dl <= dr, a + dl, b - dr)
        v = _checked(f(x, dl + left_offset, dr + right_offset))
        return np.sum(v * jac) * length

    est, err, level, n = _run_levels(contrib, tol, max_level)
    return QuadResult(float(est), float(err), level, "tanh_sinh", n)


# --------------------------------------------------------------------------
# Gauss-Jacobi


def gauss_jacobi_rule(n: int, alpha: float, beta: float):
    """Nodes and weights on [-1, 1] for the weight (1-x)^alpha (1+x)^beta (Golub-Welsch)."""
    if n < 1:
        raise ValueError("need at least one node")
    JacobiWeight(alpha, beta)
    ab = alpha + beta
    k = np.arange(n, dtype=float)
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (ab + 2)
    kk = k[1:]
    diag[1:] = (beta**2 - alpha**2) / ((2 * kk + ab) * (2 * kk + ab + 2))
    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
        m = np.arange(2, n, dtype=float)
        off[1:] = (4 * m * (m + alpha) * (m + beta) * (m + ab)
                   / ((2 * m + ab) ** 2 * (2 * m + ab + 1) * (2 * m + ab - 1)))
    jm = np.diag(diag) + np.diag(np.sqrt(off), 1) + np.diag(np.sqrt(off), -1)
    nodes, vecs = np.linalg.eigh(jm)
    mu0 = math.exp((ab + 1) * math.log(2) + math.lgamma(alpha + 1) + math.lgamma(beta + 1) - math.lgamma(ab + 2))
    weights = mu0 * vecs[0, :] ** 2
    return nodes, weights


def _gauss_jacobi_integrate(ig: Integrand, n: int, tol: float) -> QuadResult:
    a, b = ig.interval
    half = 0.5 * (b - a)
    scale = half ** (ig.weight.alpha + ig.weight.beta + 1)

    def value(order):
        s, w = gauss_jacobi_rule(order, ig.weight.alpha, ig.weight.beta)
        x = a + half * (1 + s)
        dl = half * (1 + s)
        dr = half * (1 - s)
        return float(np.sum(w * _checked(ig(x, dl, dr))) * scale)

    coarse = value(n)
    fine = value(2 * n)
    err = abs(fine - coarse)
    if err > tol * max(1.0, abs(fine)):
        raise ConvergenceError(f"Gauss-Jacobi estimates with {n} and {2 * n} nodes differ by {err:.3g}",
                               err_est=err, levels=2 * n)
    return QuadResult(fine, err, 2 * n, "gauss_jacobi", 3 * n)


def _absorbed(h, lo, hi, expo, tol, max_level, offset, at_left):
    """int_lo^hi d^expo h dx with d the distance to the singular end, via d = L u^(1/(expo+1)).

    Below about 1e-275 tanh-sinh stops sampling; for exponents near -1 the
    weight mass left there is not negligible, while after the map it is.
    """
    length = hi - lo
    p = 1.0 / (expo + 1.0)
    scale = length ** (expo + 1.0) / (expo + 1.0)

    def mapped(u, du, duc):
        # du is the distance from u = 0, the singular end
        with np.errstate(divide="ignore"):
            lu = np.where(du < 0.5, np.log(du), np.log1p(-duc))
        # d underflows for small u; the weight is already absorbed, so a bounded h
        # only needs a representable point next to the end
        d = np.maximum(length * np.exp(p * lu), _TINY)
        dc = -length * np.expm1(p * lu)  # length - d without cancellation
        return h(lo + d, d, dc + offset) if at_left else h(hi - d, dc + offset, d)

    r = tanh_sinh(mapped, 0.0, 1.0, tol / max(1.0, scale), max_level)
    return QuadResult(r.value * scale, r.err_est * abs(scale), r.levels, "tanh_sinh", r.n_evals)


# --------------------------------------------------------------------------
# public driver


def integrate(ig: Integrand, rule: QuadratureRule | None = None) -> QuadResult:
    """Integrate ``ig`` (function times weight) over its interval.

    tanh-sinh splits the interval at its midpoint and treats each half
    separately; the two error estimates add up. Gauss-Jacobi is only valid
    for integrands without logarithmic endpoint flags.
    """
    rule = rule or QuadratureRule()
    a, b = ig.interval
    if not b > a:
        raise DomainError("interval must satisfy a < b")
    if rule.kind == "gauss_jacobi":
        if ig.left_log or ig.right_log:
            raise DomainError("Gauss-Jacobi cannot resolve logarithmic endpoint singularities")
        return _gauss_jacobi_integrate(ig, rule.level_or_order, rule.tol)

    al, be = ig.weight.alpha, ig.weight.beta

    def weighted(x, dl, dr, left=True, right=True):
        v = ig(x, dl, dr)
        if be and left:
            v = v * dl**be
        if al and right:
            v = v * dr**al
        return v

    mid = 0.5 * (a + b)
    half_tol = 0.5 * rule.tol
    lv = rule.level_or_order
    if be < STRONG_EXPONENT:
        left = _absorbed(partial(weighted, left=False), a, mid, be, half_tol, lv, b - mid, True)
    else:
        left = tanh_sinh(weighted, a, mid, half_tol, lv, right_offset=b - mid)
    if al < STRONG_EXPONENT:
        right = _absorbed(partial(weighted, right=False), mid, b, al, half_tol, lv, mid - a, False)
    else:
        right = tanh_sinh(weighted, mid, b, half_tol, lv, left_offset=mid - a)
    return QuadResult(left.value + right.value, left.err_est + right.err_est,
                      max(left.levels, right.levels), "tanh_sinh", left.n_evals + right.n_evals)


# --------------------------------------------------------------------------
# Cauchy principal values on (-1, 1)


def _pv_core(f, x, opx, omx, tol, max_level):
    """(1/pi) PV int_{-1}^{1} f(xi)/(x - xi) dxi for arrays x (endpoint-aware f)."""
    x = np.asarray(x, dtype=float)
    opx = np.asarray(opx, dtype=float)
    omx = np.asarray(omx, dtype=float)
    if np.any(opx <= 0) or np.any(omx <= 0):
        raise DomainError("principal value needs -1 < x < 1")
    fx = _checked(f(x, opx, omx))
    xc = x[..., None]
    l1 = opx[..., None]
    l2 = omx[..., None]
    fxc = fx[..., None]

    def contrib(y, yc, jac, pcosh):
        # left piece: xi = -1 + l1*y, x - xi = l1*yc
        d1 = l1 * y
        dx1 = l1 * yc
        # right piece: xi = x + l2*y, 1 - xi = l2*yc
        dx2 = l2 * y
        e2 = l2 * yc
        keep = (d1 > 0) & (dx1 > 0) & (e2 > 0) & (dx2 > 0)
        # underflowed nodes are evaluated at a harmless point and dropped
        d1, dx1 = np.where(keep, d1, 1.0), np.where(keep, dx1, 1.0)
        dx2, e2 = np.where(keep, dx2, 1.0), np.where(keep, e2, 1.0)
        xi1 = np.where(keep, np.where(d1 <= dx1, -1 + d1, xc - dx1), 0.0)
        xi2 = np.where(keep, np.where(dx2 <= e2, xc + dx2, 1 - e2), 0.0)
        v1 = _checked(f(xi1, d1, np.where(keep, omx[..., None] + dx1, 1.0)))
        v2 = _checked(f(xi2, np.where(keep, opx[..., None] + dx2, 1.0), e2))
        s1 = (v1 - fxc) * (pcosh * y)
        s2 = -(v2 - fxc) * (pcosh * yc)
        return np.sum(np.where(keep, s1 + s2, 0.0), axis=-1)

    est, err, level, _ = _run_levels(contrib, tol, max_level, batch_shape=x.shape)
    value = (est + fx * (np.log(opx) - np.log(omx))) / math.pi
    return value, err / math.pi, level


def _aware(f, endpoint_aware):
    if endpoint_aware:
        return f
    return lambda x, dl, dr: f(x)


def pv_integrate(f, x: float, tol: float = DEFAULT_TOL, *, endpoint_aware: bool = False,
                 opx: float | None = None, omx: float | None = None,
                 max_level: int = MAX_LEVEL) -> float:
    """(1/pi) PV int_{-1}^{1} f(xi) / (x - xi) dxi by singularity subtraction.

    ``opx``/``omx`` optionally give ``1 + x`` and ``1 - x`` exactly, for
    points closer to an endpoint than double precision can express.
    """
    x = float(x)
    opx = 1.0 + x if opx is None else float(opx)
    omx = 1.0 - x if omx is None else float(omx)
    if not (opx > 0 and omx > 0):
        raise DomainError(f"principal value needs -1 < x < 1, got {x}")
    val, _, _ = _pv_core(_aware(f, endpoint_aware), np.array([x]), np.array([opx]), np.array([omx]), tol, max_level)
    return float(val[0])


def pv_integrate_many(f, x, tol: float = DEFAULT_TOL, *, endpoint_aware: bool = False,
                      opx=None, omx=None, max_level: int = MAX_LEVEL, chunk: int = 64):
    """Vectorised :func:`pv_integrate` over an array of points (shared level schedule per chunk)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    opx = 1.0 + x if opx is None else np.atleast_1d(np.asarray(opx, dtype=float))
    omx = 1.0 - x if omx is None else np.atleast_1d(np.asarray(omx, dtype=float))
    g = _aware(f, endpoint_aware)
    out = np.empty_like(x)
    for i in range(0, x.size, chunk):
        sl = slice(i, i + chunk)
        out[sl], _, _ = _pv_core(g, x[sl], opx[sl], omx[sl], tol, max_level)
    return out
