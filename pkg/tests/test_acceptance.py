"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import math
import subprocess
import sys

import numpy as np
import pytest

from trilegendre import hilbert as hb
from trilegendre import identities as idt
from trilegendre import specfun as sf

G14 = 3.6256099082219083


def report(label, ok, detail=""):
    print(f"\n{'PASS' if ok else 'FAIL'}  {label}  {detail}".rstrip())
    assert ok, f"{label}: {detail}"


def test_phi_at_degree_zero_is_pi():
    v = idt.phi_L(0.0)
    err = abs(v - math.pi)
    report("phi_L(0) equals pi", err < 1e-10, f"abs_err={err:.2e}")


def test_lemniscatic_chain():
    chain = [c for c in idt.corollary_catalog() if c.chain == idt.find_case("K′³").chain]
    rs = [idt.run_case(c, tol=1e-7) for c in chain]
    g8 = G14**8
    v_cube = idt.find_case("K′³").lhs(None).value
    v_mixed = idt.find_case("K′²K").lhs(None).value
    e_cube = abs(v_cube / (3 * g8 / (32 * math.sqrt(2) * math.pi**2)) - 1)
    e_mixed = abs(v_mixed / (g8 / (32 * math.sqrt(2) * math.pi**2)) - 1)
    worst = max(r.rel_err for r in rs)
    ok = len(rs) == 9 and all(r.passed for r in rs) and e_cube < 1e-7 and e_mixed < 1e-7
    report("degree -1/2 chain: nine integral forms against Gamma(1/4)^8 constants", ok,
           f"forms={len(rs)} worst_rel={worst:.2e} K'^3={v_cube:.6g} K'^2K={v_mixed:.6g}")


def _grid(names, grid=idt.NU_GRID):
    rs = [idt.GRID_CHECKS[n](nu) for n in names for nu in grid]
    bad = [r.case_id for r in rs if not r.passed]
    worst = max(r.rel_err if r.rel_err < r.abs_err else r.abs_err for r in rs)
    return rs, bad, worst


def test_cube_identity_and_closed_form_on_grid():
    rs, bad, worst = _grid(["cube-phi", "closed-form"])
    report("three-way cube identity and closed form on the 13-point degree grid", not bad,
           f"checks={len(rs)} worst={worst:.2e} failed={bad}")


def test_x_weighted_relations_on_grid():
    rs, bad, worst = _grid(["x-weighted"])
    report("x-weighted relations on the degree grid", not bad, f"checks={len(rs)} worst={worst:.2e} failed={bad}")


def test_recursion_and_raise_relations():
    r1, b1, w1 = _grid(["recursion"], idt.recursion_grid())
    r2, b2, w2 = _grid(["raise"])
    report("degree-two recursion and degree-raising relations", not (b1 or b2),
           f"checks={len(r1) + len(r2)} worst={max(w1, w2):.2e} failed={b1 + b2}")


def test_plus_two_and_pzero_forms():
    rs, bad, worst = _grid(["plus2", "pzero"])
    report("degree nu+2 evaluations and the P_nu(0) Beta form", not bad,
           f"checks={len(rs)} worst={worst:.2e} failed={bad}")


def test_elliptic_catalog():
    cases = idt.corollary_catalog()
    rs = [idt.run_case(c) for c in cases]
    bad = [r.case_id for r in rs if not r.passed]
    report("elliptic-integral evaluation catalog", len(rs) >= 16 and not bad and all(r.rel_err < 1e-6 for r in rs),
           f"cases={len(rs)} worst_rel={max(r.rel_err for r in rs):.2e} failed={bad}")


def test_hilbert_transform_identities():
    pairs = [hb.verify_pair(p, hb.DEFAULT_SAMPLES, 1e-6) for p in hb.catalog_pairs()]
    pv_one = hb.verify_parseval(hb.one, hb.one, 1e-7)
    pv_leg = hb.verify_parseval(hb.pair_pp(-0.5).f, hb.balanced_input(-0.5)[0], 1e-7)
    pv_sq = hb.verify_parseval(hb._sqrt_weight, hb._identity, 1e-7)
    f, g, closed = hb.hpb_construction(-0.5)
    hpb = hb.verify_hpb(f, g, (-0.5, 0.0, 0.5), 1e-6, expected=closed)
    hpb1 = hb.verify_hpb(hb.one, hb.one, (-0.5, 0.0, 0.5), 1e-6)
    parseval = [pv_one, pv_leg, pv_sq]
    ok = (all(r.passed and r.detail["n_samples"] == 7 for r in pairs)
          and all(r.passed for r in parseval) and hpb.passed and hpb1.passed)
    report("transform pairs, Parseval antisymmetry and product formula", ok,
           f"pairs={len(pairs)} pair_worst={max(r.rel_err for r in pairs):.2e} "
           f"parseval_worst={max(abs(r.lhs_value) for r in parseval):.2e} "
           f"product_worst={max(hpb.rel_err, hpb1.rel_err):.2e}")


def test_triple_zero_at_one():
    slope = idt.triple_zero_order(1, (1e-1, 3e-2, 1e-2))
    report("order of vanishing of phi_L at degree 1", 2.8 <= slope <= 3.2, f"slope={slope:.4f}")


def test_conical_asymptotics():
    rows = [idt.conical_ratios(50.0, th) for th in (0.2, 0.3, 0.5)]
    worst = max(abs(v - 1) for row in rows for v in row)
    report("conical function against I0 and K0 asymptotics at eta=50", worst < 0.02, f"worst_dev={worst:.2e}")


def test_special_function_floor():
    checks = [
        (sf.gamma(0.5), 1.7724538509055160, 1e-13),
        (sf.gamma(5.0), 24.0, 1e-13),
        (sf.gamma(0.25), 3.6256099082219083, 1e-13),
        (sf.ellip_k(0.0), math.pi / 2, 1e-14),
        (sf.ellip_e(1.0), 1.0, 1e-14),
        (sf.ellip_k(1 / math.sqrt(2)), 1.8540746773013719, 1e-14),
        (sf.legendre_p(0.0, 0.37), 1.0, 1e-10),
        (sf.legendre_p(-0.5, 0.0), 1.1803405990160040, 1e-10),
        (sf.legendre_p(1.0, -0.25), -0.25, 1e-10),
        (sf.legendre_q(0.0, 0.5), 0.5493061443340549, 1e-10),
        (sf.legendre_q(-0.5, 0.0), 1.8540746773013719, 1e-10),
        (sf.p_nu_zero(0.0), 1.0, 1e-11),
        (sf.p_nu_zero(-0.5), G14**2 / (2 * math.pi**1.5), 1e-11),
    ]
    errs = [abs(got - want) / abs(want) for got, want, _ in checks]
    ok = all(e < tol for e, (_, _, tol) in zip(errs, checks)) and sf.p_nu_zero(1.0) == 0.0
    x = np.linspace(-0.999, 1.0, 50)
    k = np.array([sf.ellip_k(math.sqrt((1 - v) / 2)) for v in x])
    grid = float(np.max(np.abs(sf.legendre_p(-0.5, x) / (2 / math.pi * k) - 1)))
    report("special-function examples and P_{-1/2} elliptic form", ok and grid < 1e-11,
           f"examples={len(checks)} worst_rel={max(errs):.2e} elliptic_grid={grid:.2e}")


@pytest.mark.parametrize("argv", [["verify", "--perturb-rhs"]])
def test_perturbed_harness_fails(argv):
    proc = subprocess.run([sys.executable, "-m", "trilegendre", *argv], capture_output=True, text=True, check=False)
    clean = subprocess.run([sys.executable, "-m", "trilegendre", "verify"], capture_output=True, text=True,
                           check=False)
    n_fail = proc.stdout.count("\nFAIL") + proc.stdout.startswith("FAIL")
    report("harness soundness: closed forms scaled by 1.01 make verify fail", proc.returncode == 1
           and clean.returncode == 0, f"perturbed_exit={proc.returncode} clean_exit={clean.returncode} "
           f"failing_cases={n_fail}")
