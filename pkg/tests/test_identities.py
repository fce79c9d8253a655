import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trilegendre import identities as idt
from trilegendre import specfun as sf
from trilegendre.errors import DomainError
from trilegendre.quadrature import QuadratureRule

with mpmath.workdps(30):
    G8 = float(mpmath.gamma(0.25) ** 8)
PHI_HALF = G8 / (4 * math.pi**5)  # 24.39154...


def rel(a, b):
    return abs(a - b) / abs(b)


def test_phi_values_at_zero():
    assert abs(idt.phi_L(0.0) - math.pi) < 1e-10
    assert abs(idt.phi_R(0.0) - math.pi) < 1e-15
    assert abs(idt.triple_cube(0.0) - math.pi) < 1e-10


def test_phi_values_at_one_vanish():
    assert abs(idt.phi_L(1.0)) < 1e-13
    assert idt.phi_R(1.0) == 0.0
    assert abs(idt.triple_cube(1.0)) < 1e-13


def test_phi_at_minus_half():
    assert abs(PHI_HALF - 24.39154) < 1e-5
    assert rel(idt.phi_L(-0.5), PHI_HALF) < 1e-9
    assert rel(idt.phi_R(-0.5), PHI_HALF) < 1e-13
    assert rel(idt.triple_cube(-0.5), 3 * PHI_HALF) < 1e-9


def test_x_weighted_examples():
    assert rel(idt.x_weighted(-0.5, "PPP"), 0.375 * idt.triple_cube(-0.5)) < 1e-9
    assert rel(idt.x_weighted(-0.5, "PPM"), -0.375 * idt.phi_L(-0.5)) < 1e-9
    assert rel(idt.x_weighted(0.0, "PPP"), 3 * math.pi / 8) < 1e-10
    assert rel(idt.x_weighted(-0.5, "PPP"), 9 * G8 / (32 * math.pi**5)) < 1e-9


@pytest.mark.parametrize("name", list(idt.GRID_CHECKS))
@pytest.mark.parametrize("nu", idt.NU_GRID, ids=lambda v: f"{v:.4g}")
def test_grid_identity(name, nu):
    if name == "recursion" and nu not in idt.recursion_grid():
        pytest.skip("recursion is checked on (-1, 1]")
    r = idt.GRID_CHECKS[name](nu)
    assert r.passed, r.to_dict()


@pytest.mark.parametrize("name", list(idt.GRID_CHECKS))
@pytest.mark.parametrize("nu", [1.0, 3.0])
def test_odd_integer_degrees_vanish(name, nu):
    r = idt.GRID_CHECKS[name](nu)
    assert r.passed, r.to_dict()
    assert abs(r.rhs_value) < 1e-10


def test_recursion_grid_bounds():
    g = idt.recursion_grid()
    assert all(-1 < v <= 1 for v in g) and 0.5 in g and 1.5 not in g


@given(st.floats(-0.99, 3.0))
def test_pzero_form_algebraic(nu):
    lhs = idt.phi_R(nu)
    rhs = (sf.p_nu_zero(nu) / 2**nu) ** 3 * idt.beta_weight_integral(nu)
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


@given(st.floats(-0.99, 3.0))
def test_phi_R_closed_form_against_oracle(nu):
    with mpmath.workdps(30):
        want = (mpmath.cos(mpmath.pi * nu / 2) / 2**nu) ** 3 \
            * (mpmath.gamma((1 + mpmath.mpf(nu)) / 2) / mpmath.gamma(1 + mpmath.mpf(nu) / 2)) ** 4 / mpmath.pi
    assert abs(idt.phi_R(nu) - float(want)) < 1e-13 * max(1.0, abs(float(want)))


def test_gauss_jacobi_request_matches_default():
    rule = QuadratureRule("gauss_jacobi", 64, 1e-10)
    # integer degree: polynomial integrand, Gauss-Jacobi is actually used
    spec = idt.TripleIntegralSpec(2.0, "PPM")
    r = idt.triple_integral(spec, rule)
    assert r.kind == "gauss_jacobi"
    assert rel(r.value, idt.phi_R(2.0)) < 1e-12
    # fractional degree falls back to tanh-sinh
    r = idt.triple_integral(idt.TripleIntegralSpec(-0.5, "PPM"), rule)
    assert r.kind == "tanh_sinh" and rel(r.value, PHI_HALF) < 1e-9


def test_spec_validation():
    with pytest.raises(ValueError):
        idt.TripleIntegralSpec(0.5, "QQQ")
    with pytest.raises(ValueError):
        idt.TripleIntegralSpec(0.5, degree_shift=3)
    with pytest.raises(DomainError):
        idt.TripleIntegralSpec(-1.5)
    with pytest.raises(DomainError):
        idt.phi_R(-1.0)


def test_perturbed_rhs_fails():
    assert idt.verify_closed_form(-0.5).passed
    assert not idt.verify_closed_form(-0.5, rhs_scale=1.01).passed


def test_unattainable_tolerance_is_reported():
    # either the quadrature gives up (reported, not raised) or the comparison fails
    for nu in (-0.5, 2.0):
        r = idt.verify_closed_form(nu, 1e-30, QuadratureRule(tol=1e-30))
        assert not r.passed
    assert "ConvergenceError" in r.error


# order of vanishing near odd integers

def test_triple_zero_slope():
    slope = idt.triple_zero_order(1)
    assert 2.8 <= slope <= 3.2
    assert idt.verify_triple_zero(1).passed


def test_triple_zero_at_three():
    assert 2.8 <= idt.triple_zero_order(3) <= 3.2


def test_even_integers_do_not_vanish():
    v = idt.phi_L(2.0)
    assert abs(v) > 1e-3 and rel(v, idt.phi_R(2.0)) < 1e-10


def test_triple_zero_arguments():
    with pytest.raises(DomainError):
        idt.triple_zero_order(2)
    with pytest.raises(ValueError):
        idt.triple_zero_order(1, (1e-2, 1e-1))


# other closed forms

@pytest.mark.parametrize("nu", [-0.5, -0.25, 0.0, 0.7, 1.0, 2.5])
def test_sine_weighted_integral(nu):
    r = idt.verify_macrobert(nu)
    assert r.passed, r.to_dict()


def test_sine_weighted_integral_at_zero():
    # P_0 = 1: int_0^pi sin(t)^(-1/2) dt = B(1/2, 1/4)
    want = math.gamma(0.5) * math.gamma(0.25) / math.gamma(0.75)
    assert rel(idt.macrobert_closed(0.0), want) < 1e-14


def test_conical_asymptotics():
    r = idt.verify_conical(50.0, (0.2, 0.3, 0.5))
    assert r.passed and r.abs_err < 0.02
    for th in (0.2, 0.3, 0.5):
        ri, rk = idt.conical_ratios(50.0, th)
        assert abs(ri - 1) < 0.02 and abs(rk - 1) < 0.02


def test_conical_ratio_improves_with_eta():
    a = abs(idt.conical_ratios(10.0, 0.3)[0] - 1)
    b = abs(idt.conical_ratios(50.0, 0.3)[0] - 1)
    assert b < a


def test_p_half_elliptic_grid():
    r = idt.verify_p_half_elliptic(50, 1e-11)
    assert r.passed and r.detail["n"] == 50
