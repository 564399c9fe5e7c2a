"""Acceptance criteria 1-16, all exact (no tolerance).

Each criterion is a function returning (passed, detail).  Under pytest every
criterion prints one ``PASS``/``FAIL`` line; ``python3 tests/test_acceptance.py``
prints the same lines without pytest.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from hk4verify import charclass as cc
from hk4verify.checks import render
from hk4verify import cubic4fold as c4
from hk4verify import polygeom as pg
from hk4verify.exact_core import Matrix, inverse, square_class
from hk4verify.lattice import make_Lambda, orthogonal_complement
from hk4verify.sym2 import (
    Sym2Space,
    decompose_H4,
    generic_identity_lattices,
    lambda_h,
    omega_lattice_disc,
    q_dual,
    qdecomp_check,
)


def c01_lambda_invariants():
    L = make_Lambda()
    got = (L.rank, abs(L.det()), L.signature()[:2], L.invariant_factors())
    return got == (23, 2, (3, 20), [1] * 22 + [2]), got[:3]


def c02_qdual_on_lambda():
    L = make_Lambda()
    S = Sym2Space(L)
    qv = q_dual(L)
    mono = all(S.pair(qv, S.monomial(i, j)) == 25 * L.gram[i][j] for i, j in S.index)
    qq = S.pair(qv, qv)
    _, residual = qdecomp_check(L, lambda_h(L))
    return mono and qq == 575 and not any(residual), f"monomials={len(S.index)} <q,q>={qq}"


def c03_generic_identity():
    lats = generic_identity_lattices(seed=0, count=20, max_rank=6)
    ok = True
    for L in lats:
        G = L.gram
        n = L.rank
        inv = inverse(Matrix(G))
        S = Sym2Space(L)
        qv = q_dual(L)
        for i, j in S.index:
            # brute force over the four-factor polarization
            brute = sum(
                inv[a, b] * (G[a][b] * G[i][j] + G[a][i] * G[b][j] + G[a][j] * G[b][i])
                for a, b in itertools.product(range(n), repeat=2)
            )
            ok &= brute == (n + 2) * G[i][j] == S.pair(qv, S.monomial(i, j))
    return ok and len(lats) == 20, f"{len(lats)} lattices"


def c04_decomposition():
    rep = decompose_H4(make_Lambda(), lambda_h())
    return rep.dims == (2, 22, 252) and sum(rep.dims) == 276 and all(rep.checks.values()), rep.dims


def c05_omega():
    rep = omega_lattice_disc()
    ok = rep.gram == ((12, 20), (20, 92)) and rep.disc == 704 == 2**6 * 11 and rep.index_bound == 8
    return ok, f"gram={render(rep.gram)} disc={rep.disc} index<={rep.index_bound}"


def c06_riemann_roch():
    vals = [cc.chi_nH(n) for n in (0, 1, 2)]
    poly_ok = all(cc.chi_nH(n) == Fraction(n**4, 2) + Fraction(5 * n**2, 2) + 3 for n in range(-5, 6))
    prof = cc.solve_c2()
    ok = (
        poly_ok
        and vals == [3, 6, 21]
        and 240 * 3 == prof.c2_squared - 108
        and prof.c2_squared == 828
        and prof.c2_coefficient == Fraction(6, 5)
        and prof.c2_dot_h2 == 50 * prof.c2_coefficient == 60
    )
    return ok, f"chi={render(vals)} a={prof.c2_coefficient} <c2,h2>={prof.c2_dot_h2}"


def c07_fixed_surface():
    fs = cc.fixed_surface()
    ok = (
        fs.chi_Y == 258
        and fs.b4_Y == 254
        and fs.chi_F == 192 == fs.cl_F_squared
        and fs.bel_number == 1728
        and fs.c1_F_squared == 360
    )
    return ok, f"chi(Y)={fs.chi_Y} b4={fs.b4_Y} chi(F)={fs.chi_F}/{fs.cl_F_squared} bel={fs.bel_number} c1^2={fs.c1_F_squared}"


def c08_square_classes():
    L = make_Lambda()
    hperp = abs(orthogonal_complement(L, lambda_h(L)).lattice.det())
    det_b = 2**22 * hperp
    a, b = square_class(3 * 2**44), square_class(det_b)
    return (a, b, det_b, hperp) == (3, 1, 2**24, 4), f"classes ({a}, {b}), |disc h-perp|={hperp}"


def c09_case_table():
    table = tuple(s for s in cc.case_table() if s.label)
    base = cc.case_table()
    mutated = [name for name in cc.CONSTRAINTS if cc.case_table(cc.enumerate_cases([name])) != base]
    ok = table == cc.GOLDEN_CASE_TABLE and len(mutated) == len(cc.CONSTRAINTS)
    return ok, f"{len(table)} cases, {len(mutated)}/{len(cc.CONSTRAINTS)} constraints matter"


def c10_intprop_and_cubic_case():
    pts = cc.intprop_positivity()
    rep = cc.cubic_curve_cycle_arith()
    ok = pts == [(Fraction(1, 2), Fraction(0))] and (rep.m, rep.h_dot_sigma) == (1, 2)
    return ok, f"feasible={render(pts)} m={rep.m} int_h={rep.h_dot_sigma}"


def c11_polynomial_identities():
    ok = True
    for seed in range(5):
        rng = random.Random(seed)
        F, G = c4.random_form(5, 2, rng), c4.random_form(5, 3, rng)
        ok &= c4.psi_inverse_identity(F, G).is_zero()
    for seed in range(5):
        data = c4.two_node_discriminant(c4.random_two_node_cubic(random.Random(seed)))
        ok &= pg.poly_det([list(r) for r in data.M]) == data.f * data.P
        ok &= c4.partialmod_check(data).identity_holds
    return ok, "5 + 5 seeded cases"


def c12_linear_systems():
    dims = {pg.linear_conditions_dim(3, 6, pg.rnc(5), truncation=t) for t in (15, 16, 18, 22)}
    return dims == {4} and pg.linear_conditions_dim(3, 6, pg.rnc(5)) == 4, f"dims={sorted(dims)}"


def c13_du_val():
    v = [0, 0, 1]
    models = {
        "node": "X0^2*X2 - X1^2*X2 + X0^3",
        "cusp": "X1^2*X2 - X0^3",
        "triple_x2y": "X0^2*X1*X2 + X0^4 + X1^4",
        "triple_x3": "X0^3*X2 + X1^4",
    }
    labels = {k: pg.du_val_plane_criterion(pg.MultiPoly.parse(t, 3), v).label for k, t in models.items()}
    boundary = c4.equaloc_check()
    ok = labels == {"node": "accepted", "cusp": "accepted", "triple_x2y": "accepted", "triple_x3": "rejected"}
    ok &= boundary.accepted and boundary.multiplicity == 3
    return ok, f"{labels} equaloc={boundary.label}"


def c14_chord_variety():
    H = c4.chord_rnc4_cubic()
    rng = random.Random(0)
    chords = True
    for _ in range(10):
        s, t = Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        lam, mu = rng.randint(-5, 5), rng.randint(-5, 5)
        pt = [lam * a + mu * b for a, b in zip(c4.gamma_point(s, 4), c4.gamma_point(t, 4))]
        chords &= H.eval(pt) == 0
    degs = (c4.chord_secant_degree(4, 0), c4.chord_secant_degree(5, 0), c4.chord_secant_degree(5, 1))
    ok = c4.vanishes_doubly_on_rnc(H) and c4.chord_identity(H).is_zero() and chords and degs == (3, 6, 5)
    return ok, f"degrees={degs}"


def c15_yg_fit():
    generic = c4.NetOnQuinticRNC.parse("1 + t^3\nt\nt^2")
    other = c4.NetOnQuinticRNC.parse("1 + t\nt + t^3\nt^2 + t^3")
    fa, fb = c4.y_g_fit(generic), c4.y_g_fit(other)
    cone = c4.y_g_fit(c4.NetOnQuinticRNC.base_point(1))
    ok = (
        fa.kernel_dim == fb.kernel_dim == 1
        and fa.doubly_vanishing and fb.doubly_vanishing
        and c4.vertex_space(fa.cubic) == []
        and c4.is_cone_with_vertex(cone.cubic, c4.gamma_point(1, 5))
        and not fa.cubic.is_proportional(fb.cubic)
    )
    return ok, "unique, doubly vanishing, cone for base-point net, distinct nets differ"


def c16_tantipiani():
    rep = c4.tantipiani_example()
    return rep.ranks == (4, 5) and rep.delta_degree >= 1, f"ranks={rep.ranks} deg delta={rep.delta_degree}"


CRITERIA = [
    (1, "lattice invariants", c01_lambda_invariants),
    (2, "dual-form identities", c02_qdual_on_lambda),
    (3, "dual-form identity on random lattices", c03_generic_identity),
    (4, "degree-4 decomposition", c04_decomposition),
    (5, "rank-2 lattice discriminant", c05_omega),
    (6, "Riemann-Roch arithmetic", c06_riemann_roch),
    (7, "fixed-surface invariants", c07_fixed_surface),
    (8, "square-class obstruction", c08_square_classes),
    (9, "case table and mutation", c09_case_table),
    (10, "half-integer feasibility and cubic case", c10_intprop_and_cubic_case),
    (11, "polynomial identities", c11_polynomial_identities),
    (12, "linear-system dimensions", c12_linear_systems),
    (13, "double-plane singularity criterion", c13_du_val),
    (14, "chord variety", c14_chord_variety),
    (15, "plane-swept cubic fit", c15_yg_fit),
    (16, "pencil discriminant", c16_tantipiani),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}: {name} [{detail}]"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"criterion-{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for num, name, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(_line(num, name, ok, detail))
    raise SystemExit(1 if failures else 0)
