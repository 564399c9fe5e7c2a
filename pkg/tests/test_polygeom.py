from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from hk4verify import polygeom as pg
from hk4verify.exact_core import Matrix, det
from hk4verify.polygeom import MultiPoly, ProjPoint

SYMS = sympy.symbols("X0:6")


def to_sympy(p: MultiPoly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[SYMS[i] ** k for i, k in enumerate(e)])
         for e, c in p.items()),
        sympy.Integer(0),
    )


def polys(nvars=3, max_deg=3, max_terms=5):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(nvars)]).filter(lambda e: sum(e) <= max_deg)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


def forms(nvars, deg, max_terms=5):
    mons = pg.monomials(nvars, deg)
    return st.dictionaries(st.sampled_from(mons), st.integers(-4, 4), max_size=max_terms).map(
        lambda d: MultiPoly(nvars, d)
    )


@given(polys(), polys())
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - to_sympy(p) + to_sympy(q)) == 0


@given(polys(), polys(), st.integers(0, 2))
def test_leibniz(p, q, i):
    assert (p * q).partial(i) == p.partial(i) * q + p * q.partial(i)


@given(forms(4, 3))
def test_euler_identity(f):
    xs = pg.variables(4)
    s = MultiPoly.zero(4)
    for x, g in zip(xs, f.gradient()):
        s = s + x * g
    assert s == f * 3


@given(polys(nvars=4, max_deg=4, max_terms=8))
def test_parse_format_roundtrip(p):
    assert MultiPoly.parse(p.format(), 4) == p
    assert MultiPoly.parse(str(p), 4).format() == p.format()


def test_parse_forms_and_errors():
    x0, x1 = pg.variables(2)
    assert MultiPoly.parse("X0^2 + 2*X0*X1 + X1^2", 2) == (x0 + x1) ** 2
    assert MultiPoly.parse("2 X0^2 X1", 2) == MultiPoly.parse("2*X0^2*X1", 2)
    assert MultiPoly.parse("x^2*y - z", names=["x", "y", "z"]).nvars == 3
    assert MultiPoly.parse("1/2*X1", 2).coefficient((0, 1)) == Fraction(1, 2)
    for bad in ("X0 +", "X0 ^ ", "X0 $ X1", "(X0", "X0 * * X1"):
        with pytest.raises(pg.PolyParseError):
            MultiPoly.parse(bad, 3)
    with pytest.raises(pg.DimensionError):
        MultiPoly.parse("X9", 3)


@given(polys(), st.tuples(*[st.integers(-3, 3)] * 3))
def test_eval_matches_sympy(p, x):
    val = to_sympy(p).subs(dict(zip(SYMS, x)))
    assert p.eval(x) == Fraction(str(val))


def test_projpoint():
    assert ProjPoint.parse("1,2,3") == ProjPoint((2, 4, 6))
    assert ProjPoint.parse("1/2, 0, -1") == ProjPoint((-1, 0, 2))
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))


# -- multiplicity and tangent cones ----------------------------------------------

MODELS = {
    "node": ("X0^2*X2 - X1^2*X2 + X0^3", 2, 2),
    "cusp": ("X1^2*X2 - X0^3", 2, 1),
    "triple_x2y": ("X0^2*X1*X2 + X0^4 + X1^4", 3, 2),
    "triple_x3": ("X0^3*X2 + X1^4", 3, 1),
    "ordinary_triple": ("X0^3 - X1^3", 3, 3),
}


@pytest.mark.parametrize("name", sorted(MODELS))
def test_tangent_cone_against_sympy_factor(name):
    text, mult, tangents = MODELS[name]
    f = MultiPoly.parse(text, 3)
    v = ProjPoint((0, 0, 1))
    assert pg.multiplicity_at(f, v) == mult
    cone = pg.local_expansion(f, v).homogeneous_part(mult)
    x, y = SYMS[0], SYMS[1]
    _, factors = sympy.factor_list(to_sympy(cone), x, y, extension=sympy.sqrt(-3))
    assert len(factors) == tangents == pg.tangent_cone_distinct_factors(f, v)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_multiplicity_invariant_under_changes_fixing_point(ab):
    # maps X2 -> X2 and X0, X1 -> invertible linear combos of X0, X1, plus multiples of X0, X1 into X2
    a, b, c, d = ab
    assume(a * d - b * c != 0)
    m = [[a, b, 0], [c, d, 0], [1, -1, 1]]
    v = ProjPoint((0, 0, 1))
    for text, mult, tangents in MODELS.values():
        f = MultiPoly.parse(text, 3)
        g = f.linear_change(m)
        assert g.eval(v) == 0
        assert pg.multiplicity_at(g, v) == mult
        assert pg.tangent_cone_distinct_factors(g, v) == tangents


def test_not_on_locus():
    with pytest.raises(pg.NotOnLocusError):
        pg.multiplicity_at(MultiPoly.parse("X0 + X2", 3), ProjPoint((0, 0, 1)))


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=5).filter(lambda c: c[0] != 0))
def test_binary_form_roots_against_sympy(roots):
    x, y = SYMS[0], SYMS[1]
    expr = sympy.Mul(*[(x - r * y) for r in roots[1:]]) * y ** (roots[0] % 2)
    expr = sympy.expand(expr) if expr != 1 else sympy.Integer(1)
    assume(expr.free_symbols)
    p = sympy.Poly(expr, x, y)
    mp = MultiPoly(2, {m: Fraction(int(c)) for m, c in zip(p.monoms(), p.coeffs())})
    expected = len(set(roots[1:])) + (roots[0] % 2)
    assert pg.BinaryForm.from_poly(mp).distinct_roots() == expected


def test_du_val_models():
    v = ProjPoint((0, 0, 1))
    labels = {n: pg.du_val_plane_criterion(MultiPoly.parse(t, 3), v).label for n, (t, _, _) in MODELS.items()}
    assert labels == {
        "node": "accepted", "cusp": "accepted", "triple_x2y": "accepted",
        "triple_x3": "rejected", "ordinary_triple": "accepted",
    }


def test_du_val_needs_reduced():
    with pytest.raises(pg.NonReducedError):
        pg.du_val_plane_criterion(MultiPoly.parse("X0^2*X1^2", 3), ProjPoint((0, 0, 1)))


def test_reducedness_certificate():
    f = MultiPoly.parse("X0*X1*X2 + X0^3", 3)
    a, b = pg.reducedness_certificate(f)
    r = pg.restrict_to_line(f, a, b)
    assert pg.BinaryForm.from_poly(r).distinct_roots() == 3
    assert pg.reducedness_certificate(MultiPoly.parse("X0^2*X2 + 2*X0*X1*X2 + X1^2*X2", 3)) is None


def test_quadratic_form_rank():
    assert pg.quadratic_form_rank(MultiPoly.parse("X0*X1 + X2*X3", 4)) == 4
    assert pg.quadratic_form_rank(MultiPoly.parse("X0^2 + 2*X0*X1 + X1^2", 4)) == 1


# -- linear systems along curves --------------------------------------------------


def test_rnc_linear_systems():
    assert pg.linear_conditions_dim(3, 6, pg.rnc(5)) == 4
    assert pg.linear_conditions_dim(3, 5, pg.rnc(4), double=False) == 22
    assert pg.linear_conditions_dim(3, 5, pg.rnc(4)) == 1
    assert pg.linear_conditions_dim(2, 4, pg.rnc(3), double=False) == 3
    # number of quadrics through the rational normal quartic: 15 - 9
    assert pg.linear_conditions_dim(2, 5, pg.rnc(4), double=False) == 6


@pytest.mark.parametrize("extra", [0, 1, 3, 7])
def test_truncation_stability(extra):
    assert pg.linear_conditions_dim(3, 6, pg.rnc(5), truncation=15 + extra) == 4


def test_kernel_members_vanish_doubly():
    t = sympy.symbols("t")
    for k in pg.linear_conditions_kernel(3, pg.rnc(5)):
        curve = {SYMS[i]: t**i for i in range(6)}
        assert sympy.expand(to_sympy(k).subs(curve)) == 0
        for g in k.gradient():
            assert sympy.expand(to_sympy(g).subs(curve)) == 0


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_poly_det_constant_matches_numeric(rows):
    m = [[MultiPoly.constant(1, c) for c in r] for r in rows]
    assert pg.poly_det(m).constant_term() == det(Matrix(rows))


def test_poly_det_symbolic():
    x = MultiPoly.var(2, 0)
    y = MultiPoly.var(2, 1)
    m = [[x, y], [y, x]]
    assert pg.poly_det(m) == x * x - y * y
