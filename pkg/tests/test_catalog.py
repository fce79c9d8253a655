import math

import mpmath
import pytest

from trilegendre import identities as idt

with mpmath.workdps(30):
    G8 = float(mpmath.gamma(0.25) ** 8)

CASES = idt.corollary_catalog()


def test_catalog_size_and_ids():
    assert len(CASES) >= 16
    ids = [c.id for c in CASES]
    assert len(set(ids)) == len(ids)
    assert all(c.tol == 1e-6 for c in CASES)


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.id)
def test_case(case):
    r = idt.run_case(case)
    assert r.passed, r.to_dict()
    assert r.rel_err < 1e-6


def test_lemniscatic_values():
    cube = idt.find_case("K′³")
    mixed = idt.find_case("K′²K")
    want_cube = 3 * G8 / (32 * math.sqrt(2) * math.pi**2)
    want_mixed = G8 / (32 * math.sqrt(2) * math.pi**2)
    assert abs(want_cube - 200.54) < 0.01 and abs(want_mixed - 66.85) < 0.01
    assert abs(cube.rhs_closed() / want_cube - 1) < 1e-14
    assert abs(mixed.rhs_closed() / want_mixed - 1) < 1e-14
    assert abs(cube.lhs(None).value / want_cube - 1) < 1e-7
    assert abs(mixed.lhs(None).value / want_mixed - 1) < 1e-7


def test_lemniscatic_chain_has_nine_forms():
    chain = [c for c in CASES if c.chain == idt.find_case("K′³").chain]
    assert len(chain) == 9
    for c in chain:
        assert idt.run_case(c, tol=1e-7).passed


def test_sixth_degree_t_form():
    case = idt.find_case("ν=−1/6 t-form")
    want = 3**1.5 * (2 - math.sqrt(3)) * G8 / (2**4 * math.pi**5)
    assert abs(case.rhs_closed() / want - 1) < 1e-14
    assert idt.run_case(case).passed


def test_legendre_form_in_every_chain():
    # each chain carries its generic P_nu triple integral as a cross-check
    chains = {c.chain for c in CASES}
    for ch in chains:
        assert any(c.form == "P" for c in CASES if c.chain == ch), ch


@pytest.mark.parametrize("cid", ["K′³", "K′²K", "ν=−1/6 t-form", "ν=−1/2 P²P⁻"])
def test_perturbed_rhs_fails(cid):
    assert not idt.run_case(idt.find_case(cid), rhs_scale=1.01).passed


def test_unknown_case():
    with pytest.raises(KeyError):
        idt.find_case("nope")
