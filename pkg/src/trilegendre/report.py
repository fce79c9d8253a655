"""Verification reports shared by the identity and transform checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of checking one identity numerically.

    ``passed`` is true when ``rel_err < tol`` or ``abs_err < tol * scale``;
    the absolute branch covers identities whose two sides vanish.
    """

    case_id: str
    lhs_value: float
    rhs_value: float
    abs_err: float
    rel_err: float
    tol: float
    passed: bool
    quad: dict = field(default_factory=dict)
    detail: dict = field(default_factory=dict)
    error: str | None = None

    @classmethod
    def compare(cls, case_id, lhs, rhs, tol, quad=None, detail=None, scale=1.0):
        abs_err = abs(lhs - rhs)
        denom = abs(rhs)
        rel_err = abs_err / denom if denom > 0 else (0.0 if abs_err == 0 else math.inf)
        ok = bool(rel_err < tol or abs_err < tol * scale)
        return cls(case_id, float(lhs), float(rhs), float(abs_err), float(rel_err), tol, ok,
                   dict(quad or {}), dict(detail or {}))

    @classmethod
    def failure(cls, case_id, tol, exc, quad=None):
        nan = float("nan")
        return cls(case_id, nan, nan, nan, nan, tol, False, dict(quad or {}), {}, f"{type(exc).__name__}: {exc}")

    def to_dict(self) -> dict:
        out = {
            "case_id": self.case_id,
            "lhs": _num(self.lhs_value),
            "rhs": _num(self.rhs_value),
            "abs_err": _num(self.abs_err),
            "rel_err": _num(self.rel_err),
            "tol": self.tol,
            "pass": self.passed,
            "quad": {k: _num(v) if isinstance(v, float) else v for k, v in sorted(self.quad.items())},
        }
        if self.detail:
            out["detail"] = {k: _num(v) if isinstance(v, float) else v for k, v in sorted(self.detail.items())}
        if self.error:
            out["error"] = self.error
        return out


def _num(v):
    # JSON has no NaN/inf; keep them as strings so output stays valid
    v = float(v)
    return v if math.isfinite(v) else str(v)


def merge_quad(*results) -> dict:
    """Summarise several quadrature results as one diagnostics dict."""
    levels = [r.levels for r in results]
    return {
        "kind": ",".join(sorted({r.kind for r in results})),
        "levels": max(levels) if levels else 0,
        "err_est": float(max((r.err_est for r in results), default=0.0)),
    }
