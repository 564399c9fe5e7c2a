import random
from fractions import Fraction

import pytest
import sympy

from hk4verify import cubic4fold as c4
from hk4verify import polygeom as pg
from hk4verify.polygeom import MultiPoly, ProjPoint

X = sympy.symbols("X0:6")


def to_sympy(p):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[X[i] ** k for i, k in enumerate(e)])
         for e, c in p.items()),
        sympy.Integer(0),
    )


# -- single node --------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(5))
def test_psi_inverse_lands_on_cubic_sympy(seed):
    rng = random.Random(seed)
    F = c4.random_form(5, 2, rng)
    G = c4.random_form(5, 3, rng)
    f, g = to_sympy(F), to_sympy(G)
    sigma = {X[i]: f * X[i] for i in range(5)}
    # cubic F*Z + G at y = [F x, -G]: F(Fx) (-G) + G(Fx) = F^2 (-F G + F G) = 0
    expr = f.subs(sigma, simultaneous=True) * (-g) + g.subs(sigma, simultaneous=True)
    assert sympy.expand(expr) == 0
    assert c4.psi_inverse_identity(F, G).is_zero()
    node = c4.CubicWithNode(F, G)
    for pt in ([1, 0, 0, 0, 0], [1, 2, -1, 3, 1]):
        if F.eval(pt) or G.eval(pt):
            y = c4.psi_inverse(node, pt)
            assert node.cubic.eval(y) == 0
            assert c4.project_from_node(y) == ProjPoint(pt)


@pytest.mark.parametrize("seed", range(5))
def test_adapt_recovers_node_after_coordinate_change(seed):
    rng = random.Random(100 + seed)
    F = c4.random_form(5, 2, rng)
    G = c4.random_form(5, 3, rng)
    base = c4.CubicWithNode(F, G).cubic
    p = [rng.randint(-3, 3) for _ in range(5)] + [1]
    # move the node from e5 to p with the unimodular matrix whose last column is p
    from hk4verify.exact_core import Matrix, inverse, complete_to_unimodular

    T = complete_to_unimodular(p)
    Tinv = inverse(Matrix(T)).to_int_rows()
    moved = base.linear_change(Tinv)
    assert c4.is_singular_at(moved, p)
    adapted = c4.adapt_to_node(moved, p)
    assert adapted.cubic == moved.linear_change(adapted.transform)
    assert not adapted.F.is_zero()


def test_adapt_identity_roundtrip():
    cub = MultiPoly.parse("X0*X1*X5 + X2^3", 6)
    a = c4.adapt_to_node(cub, ProjPoint.parse("0,0,0,0,0,1"))
    assert str(a.F) == "X0*X1" and str(a.G) == "X2^3"
    assert c4.lines_surface(a) == (a.F, a.G)


def test_adapt_errors():
    cub = MultiPoly.parse("X0*X1*X5 + X2^3", 6)
    with pytest.raises(c4.NotANodeError):
        c4.adapt_to_node(cub, ProjPoint.parse("1,1,0,0,0,0"))
    with pytest.raises(c4.NotQuadraticError):
        c4.adapt_to_node(MultiPoly.parse("X0^3 + X1^3", 6), ProjPoint.parse("0,0,0,0,0,1"))


def test_psi_inverse_indeterminate_on_S():
    node = c4.CubicWithNode(MultiPoly.parse("X0*X1", 5), MultiPoly.parse("X2^3", 5))
    with pytest.raises(c4.IndeterminateError):
        c4.psi_inverse(node, [1, 0, 0, 0, 0])


def test_singularities_correspond():
    # Y = X0*X1*Z + X2^3 + X3^3 - X4^3 ... pick G with a singular point of S_p
    F = MultiPoly.parse("X0*X1 + X2*X3", 5)
    G = MultiPoly.parse("X0^2*X4 + X1^3 + X2^3 + X3^3", 5)
    node = c4.CubicWithNode(F, G)
    y = [0, 0, 0, 0, 1, 0]  # projects to s = [0,0,0,0,1] on S_p
    rep = c4.sing_correspondence(node, y)
    assert rep.s_on_S_p
    assert rep.y_singular == rep.jacob_solvable


# -- two nodes ---------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(5))
def test_det_M_equals_f_P_with_sympy(seed):
    data = c4.two_node_discriminant(c4.random_two_node_cubic(random.Random(seed)))
    M = sympy.Matrix([[to_sympy(q) for q in row] for row in data.M])
    assert sympy.expand(M.det() - to_sympy(data.f) * to_sympy(data.P)) == 0
    assert data.P.degree() == 4 and data.P.is_homogeneous()
    # sum_j F_j X_j is f
    assert sympy.expand(sum(data.F[j] * X[j] for j in range(4)) - to_sympy(data.f)) == 0


@pytest.mark.parametrize("seed", range(5))
def test_partial_identity(seed):
    e = (1, 2, -1, 1)
    data = c4.two_node_discriminant(c4.random_two_node_cubic(random.Random(seed), through=e))
    rep = c4.partialmod_check(data, e)
    assert rep.identity_holds
    for grad, expected in rep.point_values:
        assert grad == expected


@pytest.mark.parametrize("which", ["prima", "seconda"])
def test_fibers_in_discriminant(which):
    e = (1, 2, -1, 1)
    data = c4.two_node_discriminant(c4.random_two_node_cubic(random.Random(3), through=e))
    rep = c4.fiber_check(data, which, base=e)
    assert rep.membership and rep.points_on_P
    assert rep.points_checked >= 1


def test_two_node_rejects_non_nodes():
    with pytest.raises(c4.NotANodeError):
        c4.two_node_discriminant(MultiPoly.parse("X4^3 + X0^3", 6))


def test_two_node_file_roundtrip(tmp_path):
    from pathlib import Path

    text = [ln for ln in Path(__file__).parent.parent.joinpath("data/two_node.poly").read_text().splitlines()
            if not ln.startswith("#")]
    cub = MultiPoly.parse(" ".join(text), 6)
    assert cub == c4.random_two_node_cubic(random.Random(0))
    data = c4.two_node_discriminant(cub)
    assert c4.assemble_two_node(data.b, data.c, data.d, data.f) == cub


# -- branch curves on the quadric --------------------------------------------------


def test_branch_witnesses():
    ws = {w.name: w.verdict for w in c4.branch_witnesses()}
    assert (ws["transverse"].multiplicity, ws["transverse"].accepted) == (1, True)
    assert (ws["tangent-plane"].multiplicity, ws["tangent-plane"].distinct_tangents) == (2, 2)


def test_equaloc_boundary():
    v = c4.equaloc_check()
    assert (v.multiplicity, v.distinct_tangents, v.accepted) == (3, 3, True)
    assert c4.equaloc_check(f00=0).multiplicity == 2


# -- chord variety of the rational normal quartic ----------------------------------


def test_secant_degrees():
    assert (c4.chord_secant_degree(4, 0), c4.chord_secant_degree(5, 0), c4.chord_secant_degree(5, 1)) == (3, 6, 5)


def test_hankel_cubic_vanishes_doubly_and_on_chords():
    H = c4.chord_rnc4_cubic()
    assert c4.vanishes_doubly_on_rnc(H)
    assert c4.chord_identity(H).is_zero()
    M = sympy.Matrix(3, 3, lambda i, j: X[i + j])
    assert sympy.expand(M.det() - to_sympy(H)) == 0
    assert H.eval([1, 0, 1, 0, 0]) == -1
    assert H.eval([1, 0, 0, 0, 1]) == 0


@pytest.mark.parametrize("s,t,lam,mu", [(2, 3, 1, 1), (Fraction(1, 2), -1, 3, -2), (0, None, 1, 1)])
def test_hankel_on_specific_chords(s, t, lam, mu):
    H = c4.chord_rnc4_cubic()
    a, b = c4.gamma_point(s, 4), c4.gamma_point(t, 4)
    assert H.eval([lam * x + mu * y for x, y in zip(a, b)]) == 0


# -- Y_G -------------------------------------------------------------------------------

GENERIC = c4.NetOnQuinticRNC.parse("1 + t^3\nt\nt^2")
OTHER = c4.NetOnQuinticRNC.parse("1 + t; t + t^3; t^2 + t^3")


def test_third_root_vieta():
    net = GENERIC
    m = net.member_through(1, 2)
    r3 = c4.third_root(m, 1, 2)
    assert sum(m[k] * r3**k for k in range(4)) == 0


def test_yg_fit_unique_and_double():
    fit = c4.y_g_fit(GENERIC)
    assert fit.kernel_dim == 1 and fit.doubly_vanishing
    assert c4.vanishes_doubly_on_rnc(fit.cubic)
    assert c4.vertex_space(fit.cubic) == []
    # independent of which planes were sampled
    assert c4.y_g_fit(GENERIC, offset=1).cubic.is_proportional(fit.cubic)


def test_yg_cubic_lies_in_doubly_vanishing_system():
    fit = c4.y_g_fit(GENERIC)
    assert pg.in_span(fit.cubic, pg.linear_conditions_kernel(3, pg.rnc(5)))


def test_distinct_nets_give_distinct_cubics():
    assert not c4.y_g_fit(GENERIC).cubic.is_proportional(c4.y_g_fit(OTHER).cubic)


@pytest.mark.parametrize("p", [0, 1, Fraction(-1, 2)])
def test_base_point_net_gives_cone(p):
    net = c4.NetOnQuinticRNC.base_point(p)
    assert c4.has_base_point(net) == [Fraction(p)]
    Y = c4.y_g_fit(net).cubic
    assert c4.is_cone_with_vertex(Y, c4.gamma_point(p, 5))
    vs = c4.vertex_space(Y)
    assert len(vs) == 1 and ProjPoint(vs[0]) == ProjPoint(c4.gamma_point(p, 5))


def test_net_validation():
    with pytest.raises(ValueError):
        c4.NetOnQuinticRNC.parse("t\n2*t\nt^2")
    with pytest.raises(ValueError):
        c4.NetOnQuinticRNC.parse("t^4\nt\n1")
    with pytest.raises(ValueError):
        c4.y_g_fit(GENERIC, samples=10)


# -- a cubic containing a 3-space ------------------------------------------------------


def test_tantipiani_pencil():
    rep = c4.tantipiani_example()
    assert rep.ranks == (4, 5)
    assert rep.delta_degree == 7
    assert sorted(rep.roots) == [Fraction(-1, 2), 0, Fraction(1, 2)]
    assert rep.singular_residuals == {Fraction(-1, 2): 3, Fraction(0): 4, Fraction(1, 2): 3}
    assert rep.smooth_at_infinity
    lam = sympy.symbols("lam")
    delta = sum(sympy.Rational(c.numerator, c.denominator) * lam**k for k, c in enumerate(rep.delta))
    assert sympy.factor(delta - lam**3 * (lam**2 - sympy.Rational(1, 4)) ** 2) == 0
