from fractions import Fraction

import pytest
import sympy

from hk4verify import charclass as cc


def test_hrr_polynomial_independent():
    n = sympy.symbols("n")
    # oracle: int h^4 = 3 (h,h)^2 = 12, <c2, h^2> = 60
    expected = sympy.Rational(12, 24) * n**4 + sympy.Rational(60, 24) * n**2 + 3
    for k in range(-4, 7):
        assert cc.chi_nH(k) == Fraction(str(expected.subs(n, k)))
    assert [cc.chi_nH(k) for k in (0, 1, 2)] == [3, 6, 21]


def test_c2_solution():
    prof = cc.solve_c2()
    assert prof.c2_squared == 828 == 240 * 3 + 108
    assert 240 * 3 == 828 - 108
    assert prof.c2_coefficient == Fraction(6, 5)
    assert prof.c2_dot_h2 == 60 == 50 * prof.c2_coefficient


def test_c2_inconsistent_input():
    with pytest.raises(cc.InconsistentInputs):
        cc.solve_c2(chi_O=2)


def test_fixed_surface_routes():
    fs = cc.fixed_surface()
    assert fs.b4_Y == 254 and fs.chi_Y == 258
    assert fs.chi_F == 192 == fs.cl_F_squared
    assert fs.bel_number == 1728
    assert fs.lagrangian_ray == (15, -1)
    assert fs.cl_F_coefficients == (5, Fraction(-2, 5))
    assert fs.h2_dot_clF == 40 and fs.c1_F_squared == 360


def test_cl_F_explicit():
    st = cc.standard_setting()
    S = st.S
    cl = S.add(S.scale(5, st.h2), S.scale(Fraction(-2, 5), st.q))
    assert cl == cc.fixed_surface().cl_F
    assert st.pair(cl, cl) == 192


def test_positivity_coefficients():
    co = cc.positivity_coefficients()
    assert co["h2"] == (12, 20)
    assert co["sigma"] == (2, 10)


def test_intprop_brute():
    pts = cc.intprop_positivity()
    assert pts == [(Fraction(1, 2), Fraction(0))]
    wider = cc.intprop_positivity(Fraction(10))
    assert wider == pts


def test_case_table_golden():
    assert tuple(s for s in cc.case_table() if s.label) == cc.GOLDEN_CASE_TABLE
    assert all(r.label is not None for r in cc.enumerate_cases())


@pytest.mark.parametrize("name", sorted(cc.CONSTRAINTS))
def test_each_constraint_matters(name):
    assert cc.case_table(cc.enumerate_cases([name])) != cc.case_table()


def test_unknown_constraint():
    with pytest.raises(KeyError):
        cc.enumerate_cases(["nope"])


def test_cubic_cycle():
    rep = cc.cubic_curve_cycle_arith()
    assert rep.solutions == ((1, 1),)
    assert (rep.m, rep.h_dot_sigma) == (1, 2)
    assert sum(rep.balance) == 12
    assert rep.doubled_solutions == ()
