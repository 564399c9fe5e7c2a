"""Singular cubic fourfolds in P^5: projection from a node, the surface of
lines through it, two-node discriminant quartics, branch curves of the
double cover of a quadric, chord cubics of rational normal curves and the
plane-swept cubics Y_G.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact_core import Matrix, complete_to_unimodular, kernel_basis, rank
from .polygeom import (
    MultiPoly,
    ProjPoint,
    du_val_plane_criterion,
    DuValVerdict,
    jacobian_rank_at,
    linear_conditions_matrix,
    monomials,
    poly_det,
    quadratic_form_matrix,
    quadratic_form_rank,
    restrict_to_line,
    rnc,
    u_rational_roots,
    upoly_from_multi,
    variables,
)


class NotANodeError(ValueError):
    """The point is not a singular point of the cubic."""


class NotQuadraticError(ValueError):
    """The cubic has multiplicity 3 at the point (a cone with that vertex)."""


class IndeterminateError(ValueError):
    """The point lies on S_p = V(F, G), where psi^-1 is undefined."""


class PipelineBug(AssertionError):
    """An unconditional identity failed; indicates an implementation error."""


def _e(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


def is_singular_at(p: MultiPoly, x) -> bool:
    return p.eval(x) == 0 and all(g.eval(x) == 0 for g in p.gradient())


def _primitive_integer(v: ProjPoint) -> list[int]:
    from math import lcm

    den = lcm(*(c.denominator for c in v.coords))
    ints = [int(c * den) for c in v.coords]
    g = gcd(*ints)
    return [k // g for k in ints]


def random_form(nvars: int, degree: int, rng: random.Random, lo: int = -5, hi: int = 5) -> MultiPoly:
    """Form with independent uniform integer coefficients in [lo, hi]."""
    while True:
        p = MultiPoly(nvars, {e: rng.randint(lo, hi) for e in monomials(nvars, degree)})
        if not p.is_zero():
            return p


# -- projection from a node ---------------------------------------------------


@dataclass(frozen=True)
class CubicWithNode:
    """Y = V(F*Z + G) in coordinates [X0..X4, Z] with the node at [0,..,0,1]."""

    F: MultiPoly
    G: MultiPoly
    transform: tuple[tuple[int, ...], ...] = field(default=tuple(tuple(_e(6, i)) for i in range(6)))

    def __post_init__(self):
        if self.F.nvars != 5 or self.G.nvars != 5:
            raise ValueError("F and G live in 5 variables")
        if self.F.is_zero() or not self.F.is_homogeneous() or self.F.degree() != 2:
            raise ValueError("F must be a nonzero quadric")
        if self.G.is_zero() or not self.G.is_homogeneous() or self.G.degree() != 3:
            raise ValueError("G must be a nonzero cubic")

    @property
    def cubic(self) -> MultiPoly:
        """F*Z + G in the adapted coordinates (6 variables)."""
        Z = MultiPoly.var(6, 5)
        return self.F.extend(6) * Z + self.G.extend(6)

    @property
    def node(self) -> ProjPoint:
        return ProjPoint(_e(6, 5))


def adapt_to_node(cubic: MultiPoly, p) -> CubicWithNode:
    """Change coordinates by an integral unimodular matrix sending [0,..,0,1]
    to p, then split the cubic as F*Z + G."""
    p = p if isinstance(p, ProjPoint) else ProjPoint(p)
    if cubic.nvars != 6 or len(p) != 6:
        raise ValueError("expected a cubic in 6 variables and a point of P^5")
    if not cubic.is_homogeneous() or cubic.degree() != 3:
        raise ValueError("input is not a homogeneous cubic")
    if not is_singular_at(cubic, p):
        raise NotANodeError(f"{p} is not a singular point of the cubic")
    v = _primitive_integer(p)
    if v == list(_e(6, 5)):
        T = [list(_e(6, i)) for i in range(6)]
    else:
        T = complete_to_unimodular(v)
    moved = cubic.linear_change(T)
    parts = moved.collect(5)
    if any(k >= 2 for k in parts):
        raise PipelineBug("adapted cubic has Z^2 terms at a singular point")
    to5 = lambda q: MultiPoly(5, {e[:5]: c for e, c in q.items()})
    F = to5(parts.get(1, MultiPoly.zero(6)))
    G = to5(parts.get(0, MultiPoly.zero(6)))
    if F.is_zero():
        raise NotQuadraticError("multiplicity 3 at p: the cubic is a cone with vertex p")
    if G.is_zero():
        raise ValueError("G = 0: the cubic is reducible (contains the hyperplane Z... factor)")
    out = CubicWithNode(F, G, tuple(tuple(r) for r in T))
    if out.cubic != moved:
        raise PipelineBug("F*Z + G does not reconstruct the adapted cubic")
    return out


def lines_surface(c: CubicWithNode) -> tuple[MultiPoly, MultiPoly]:
    """Equations of S_p = V(F, G) in P^4."""
    return c.F, c.G


def psi_inverse(c: CubicWithNode, x) -> ProjPoint:
    """[F(x)x0, ..., F(x)x4, -G(x)]."""
    x = x if isinstance(x, ProjPoint) else ProjPoint(x)
    if len(x) != 5:
        raise ValueError("psi^-1 takes a point of P^4")
    fx, gx = c.F.eval(x), c.G.eval(x)
    if fx == 0 and gx == 0:
        raise IndeterminateError(f"{x} lies on S_p = V(F, G)")
    y = ProjPoint([fx * a for a in x.coords] + [-gx])
    if c.cubic.eval(y):
        raise PipelineBug("psi^-1 image is not on Y")
    return y


def project_from_node(y) -> ProjPoint:
    y = y if isinstance(y, ProjPoint) else ProjPoint(y)
    if not any(y.coords[:5]):
        raise ValueError("cannot project the node from itself")
    return ProjPoint(y.coords[:5])


def psi_inverse_identity(F: MultiPoly, G: MultiPoly) -> MultiPoly:
    """(F o sigma)(-G) + G o sigma with sigma = (F X0, ..., F X4); the zero polynomial."""
    X = variables(5)
    sigma = [F * x for x in X]
    return F.substitute(sigma) * (-G) + G.substitute(sigma)


@dataclass(frozen=True)
class SingReport:
    s: ProjPoint
    y_singular: bool  # direct Jacobian of the cubic at y
    jacob_solvable: bool  # F(a) = 0 and b dF(a) + dG(a) = 0
    s_on_S_p: bool
    s_singular_on_S_p: bool
    jacobian_rank: int | None  # rank of d(F, G) at s when s is on S_p
    tangent_dim: int | None  # projective dimension of the Zariski tangent space of S_p at s
    cone_smooth_at_s: bool  # V(F) smooth at s
    all_b: bool  # the singularity condition holds for every b (both gradients vanish)


def sing_correspondence(c: CubicWithNode, y) -> SingReport:
    y = y if isinstance(y, ProjPoint) else ProjPoint(y)
    if len(y) != 6:
        raise ValueError("y must be a point of P^5")
    if c.cubic.eval(y):
        raise ValueError(f"{y} is not on Y")
    if y == c.node:
        raise ValueError("y is the node p")
    a = y.coords[:5]
    b = y.coords[5]
    s = ProjPoint(a)
    dF = [g.eval(a) for g in c.F.gradient()]
    dG = [g.eval(a) for g in c.G.gradient()]
    fa = c.F.eval(a)
    jacob = fa == 0 and all(b * u + v == 0 for u, v in zip(dF, dG))
    y_sing = is_singular_at(c.cubic, y)
    on_S = fa == 0 and c.G.eval(a) == 0
    jr = jacobian_rank_at([c.F, c.G], s) if on_S else None
    return SingReport(
        s=s,
        y_singular=y_sing,
        jacob_solvable=jacob,
        s_on_S_p=on_S,
        s_singular_on_S_p=on_S and jr < 2,
        jacobian_rank=jr,
        tangent_dim=None if jr is None else 4 - jr,
        cone_smooth_at_s=any(dF),
        all_b=fa == 0 and not any(dF) and not any(dG),
    )


# -- two nodes ------------------------------------------------------------------


@dataclass(frozen=True)
class TwoNodeData:
    """Cubic sum_j A_j X_j with A_j = B_j + C_j Z0 + D_j Z1 + F_j Z0 Z1 in
    coordinates [X0..X3, Z0, Z1]; nodes at [0,0,0,0,1,0] and [0,0,0,0,0,1]."""

    cubic: MultiPoly
    B: tuple[MultiPoly, ...]
    C: tuple[MultiPoly, ...]
    D: tuple[MultiPoly, ...]
    F: tuple[Fraction, ...]
    b: MultiPoly  # sum_j B_j X_j, and so on (polynomials in X0..X3)
    c: MultiPoly
    d: MultiPoly
    f: MultiPoly
    M: tuple[tuple[MultiPoly, ...], ...]
    det_M: MultiPoly
    P: MultiPoly

    @property
    def omega(self) -> MultiPoly:
        """Omega_i = V(sum_j F_j X_j)."""
        return self.f


def _x_part(q: MultiPoly) -> MultiPoly:
    return MultiPoly(4, {e[:4]: v for e, v in q.items()})


def two_node_discriminant(cubic: MultiPoly) -> TwoNodeData:
    if cubic.nvars != 6 or not cubic.is_homogeneous() or cubic.degree() != 3:
        raise ValueError("expected a cubic form in X0..X3, Z0, Z1")
    p, p_i = _e(6, 4), _e(6, 5)
    for pt in (p, p_i):
        if not is_singular_at(cubic, pt):
            raise NotANodeError(f"the cubic is not singular at {list(pt)}")
    graded: dict[tuple[int, int], dict] = {}
    for e, v in cubic.items():
        graded.setdefault((e[4], e[5]), {})[e] = v
    if set(graded) - {(0, 0), (1, 0), (0, 1), (1, 1)}:
        raise PipelineBug("Z-degrees incompatible with singular points")
    strip = lambda key: _x_part(MultiPoly(6, graded.get(key, {})))
    b, c, d, f = strip((0, 0)), strip((1, 0)), strip((0, 1)), strip((1, 1))

    # A_j collects the monomials whose first X-variable is X_j
    def split(poly: MultiPoly) -> list[MultiPoly]:
        parts: list[dict] = [{} for _ in range(4)]
        for e, v in poly.items():
            j = next(k for k in range(4) if e[k])
            g = list(e)
            g[j] -= 1
            parts[j][tuple(g)] = v
        return [MultiPoly(4, q) for q in parts]

    Bs, Cs, Ds, Fs = split(b), split(c), split(d), split(f)
    Fconst = tuple(q.constant_term() for q in Fs)
    X = variables(6)
    Xs = variables(4)
    recon = MultiPoly.zero(6)
    for j in range(4):
        A_j = Bs[j].extend(6) + Cs[j].extend(6) * X[4] + Ds[j].extend(6) * X[5] + Fs[j].extend(6) * X[4] * X[5]
        recon = recon + A_j * X[j]
    if recon != cubic:
        raise PipelineBug("A_j decomposition does not reconstruct the cubic")
    if sum((Fconst[j] * Xs[j] for j in range(4)), MultiPoly.zero(4)) != f:
        raise PipelineBug("F_j are not the coefficients of f")
    zero = MultiPoly.zero(4)
    M = ((b, c, d), (c, zero, f), (d, f, zero))
    detM = poly_det(M)
    P = 2 * c * d - b * f
    if detM != f * P:
        raise PipelineBug("det M != f * P")
    if not P.is_zero() and (not P.is_homogeneous() or P.degree() != 4):
        raise PipelineBug("P is not a quartic form")
    return TwoNodeData(cubic, tuple(Bs), tuple(Cs), tuple(Ds), Fconst, b, c, d, f, M, detM, P)


def assemble_two_node(b: MultiPoly, c: MultiPoly, d: MultiPoly, f: MultiPoly) -> MultiPoly:
    X = variables(6)
    return b.extend(6) + c.extend(6) * X[4] + d.extend(6) * X[5] + f.extend(6) * X[4] * X[5]


def random_two_node_cubic(rng: random.Random, through: Sequence | None = None) -> MultiPoly:
    """Random cubic with nodes at [0,0,0,0,1,0] and [0,0,0,0,0,1].

    With ``through = e`` (a point of P^3) the linear form f and the quadrics
    c, d are corrected so that e lies on V(f, c, d).
    """
    b, c, d, f = (random_form(4, k, rng) for k in (3, 2, 2, 1))
    if through is not None:
        e = [Fraction(x) for x in through]
        k = next(i for i, x in enumerate(e) if x)
        Xk = MultiPoly.var(4, k)
        f = f - Xk * (f.eval(e) / e[k])
        c = c - Xk * Xk * (c.eval(e) / e[k] ** 2)
        d = d - Xk * Xk * (d.eval(e) / e[k] ** 2)
        if f.is_zero():
            f = MultiPoly.linear([e[1], -e[0], 0, 0]) if any(e[:2]) else MultiPoly.linear([0, 0, e[3], -e[2]])
    return assemble_two_node(b, c, d, f)


@dataclass(frozen=True)
class PartialModReport:
    identity_holds: bool  # dP/dX_s + F_s b = 2 c_s d + 2 c d_s - b_s f for all s
    point_values: tuple[tuple[Fraction, Fraction], ...] | None  # (dP/dX_s(e), -F_s b(e))
    b_at_e: Fraction | None
    gradient_nonzero: bool | None


def partialmod_check(data: TwoNodeData, e: Sequence | None = None) -> PartialModReport:
    b, c, d, f, P = data.b, data.c, data.d, data.f, data.P
    ok = all(
        P.partial(s) + b * data.F[s]
        == 2 * c.partial(s) * d + 2 * c * d.partial(s) - b.partial(s) * f
        for s in range(4)
    )
    if e is None:
        return PartialModReport(ok, None, None, None)
    e = [Fraction(x) for x in e]
    if f.eval(e) or c.eval(e) or d.eval(e):
        raise ValueError("e is not on V(f, c, d)")
    be = b.eval(e)
    vals = tuple((P.partial(s).eval(e), -data.F[s] * be) for s in range(4))
    return PartialModReport(ok, vals, be, any(v for v, _ in vals))


def conic_points_through(q: MultiPoly, plane: Sequence[Sequence], base: Sequence, directions: int = 6) -> list[list[Fraction]]:
    """Rational points on V(q) in a plane, from lines through a rational point
    ``base`` of V(q) in that plane.  ``plane`` lists 3 spanning points."""
    out = []
    base = [Fraction(x) for x in base]
    dirs = [w for w in itertools.product(range(-2, 3), repeat=3) if any(w)][: max(directions * 4, 12)]
    for w in dirs:
        wpt = [sum(Fraction(w[k]) * plane[k][i] for k in range(3)) for i in range(len(base))]
        if rank(Matrix([base, wpt])) < 2:
            continue
        line = restrict_to_line(q, base, wpt)  # q(s*base + t*wpt)
        # q vanishes at t = 0, so line = t * (l1 s + l2 t)
        l1 = line.coefficient((1, 1))
        l2 = line.coefficient((0, 2))
        if l2 == 0:
            continue
        s, t = l2, -l1
        pt = [s * a + t * b for a, b in zip(base, wpt)]
        if any(pt) and pt not in out:
            out.append(pt)
        if len(out) >= directions:
            break
    return out


def _plane_basis(f: MultiPoly) -> list[list[Fraction]]:
    """Three independent points spanning V(f) for a linear form f in 4 vars."""
    row = [f.coefficient(_e(4, i)) for i in range(4)]
    return [list(v) for v in kernel_basis(Matrix([row]))]


@dataclass(frozen=True)
class FiberReport:
    membership: bool  # P - (cofactor combination) == 0
    points_checked: int
    points_on_P: bool


def fiber_check(data: TwoNodeData, which: str = "prima", base: Sequence | None = None) -> FiberReport:
    """V(f, d) (``prima``) or V(f, c) (``seconda``) lies in V(P)."""
    P, b, c, d, f = data.P, data.b, data.c, data.d, data.f
    other = d if which == "prima" else c
    membership = P == 2 * c * d - b * f
    pts: list = []
    if base is not None:
        pts = conic_points_through(other, _plane_basis(f), base)
        pts = [pt for pt in pts if f.eval(pt) == 0 and other.eval(pt) == 0]
    return FiberReport(membership, len(pts), all(P.eval(pt) == 0 for pt in pts))


def nocommon_slice(data: TwoNodeData, rng: random.Random) -> bool:
    """Restrictions of b, c, d, f to a random line have no common root."""
    from .polygeom import u_gcd

    while True:
        a = [rng.randint(-9, 9) for _ in range(4)]
        w = [rng.randint(-9, 9) for _ in range(4)]
        if rank(Matrix([a, w])) == 2:
            break
    polys = []
    for q in (data.b, data.c, data.d, data.f):
        r = restrict_to_line(q, a, w)
        # dehomogenize at the second coordinate: t = 1
        polys.append([r.coefficient((k, q.degree() - k)) for k in range(q.degree() + 1)])
    g = polys[0]
    for q in polys[1:]:
        g = u_gcd(g, q)
    return len(g) <= 1


# -- branch divisors on a quadric surface --------------------------------------


def branch_divisor(F: MultiPoly, A: MultiPoly, B: MultiPoly, C: MultiPoly) -> MultiPoly:
    """B^2 - 4 A C, cutting D(psi) on Q = V(F)."""
    for q, deg, name in ((F, 2, "F"), (A, 1, "A"), (B, 2, "B"), (C, 3, "C")):
        if q.nvars != 4:
            raise ValueError(f"{name} must be a form in 4 variables")
        if not q.is_zero() and (not q.is_homogeneous() or q.degree() != deg):
            raise ValueError(f"{name} must be homogeneous of degree {deg}")
        if q.is_zero() and name in ("F", "A", "C"):
            raise ValueError(f"{name} must be nonzero")
    return B * B - 4 * A * C


SMOOTH_QUADRIC = MultiPoly.parse("X0*X3 - X1*X2", 4)


def homogenize(p: MultiPoly) -> MultiPoly:
    """Append a variable and homogenize to the total degree of p."""
    d = p.degree()
    return MultiPoly(p.nvars + 1, {e + (d - sum(e),): c for e, c in p.items()})


def quadric_chart_curve(D: MultiPoly) -> MultiPoly:
    """D restricted to X0 X3 = X1 X2 in the chart (u, v) -> [1, u, v, u v],
    homogenized with a third variable; [0:0:1] corresponds to [1,0,0,0]."""
    u, v = variables(2)
    one = MultiPoly.constant(2, 1)
    return homogenize(D.substitute([one, u, v, u * v]))


@dataclass(frozen=True)
class BranchWitness:
    name: str
    A: MultiPoly
    B: MultiPoly
    C: MultiPoly
    verdict: DuValVerdict


def branch_witnesses(truncation: int = 6) -> list[BranchWitness]:
    """One certified example per local branch-point type on the smooth
    quadric Q = V(X0 X3 - X1 X2), examined at e = [1,0,0,0].

    In each, V(F, A, B, C) is empty (checked by hand: see the docstring of
    the test module).
    """
    P = lambda s: MultiPoly.parse(s, 4)
    cases = [
        # A(e) = B(e) = 0, V(A) transverse to Q at e: D smooth at e
        ("transverse", P("X1"), P("X0*X2 + X3^2"), P("X0^3 + X2^3")),
        # V(A) = tangent plane of Q at e: D has a node
        ("tangent-plane", P("X3"), P("X0*X1 + 2*X0*X2"), P("X0^3 + X1^3 + X2^3")),
    ]
    out = []
    for name, A, B, C in cases:
        D = branch_divisor(SMOOTH_QUADRIC, A, B, C)
        curve = quadric_chart_curve(D)
        out.append(BranchWitness(name, A, B, C, du_val_plane_criterion(curve, [0, 0, 1], truncation)))
    return out


def equaloc_curve(f00=Fraction(1, 4), f10=1, f01=1) -> MultiPoly:
    """b^2 - 4ac with b = y + x^2, a = (f00 + f10 x + f01 y) y^2, c = 1,
    homogenized with a third variable (x = X0, y = X1)."""
    x, y, z = variables(3)
    lam = f00 * z + f10 * x + f01 * y  # degree 1; a = lam * y^2 has degree 3 after homogenizing
    b = y * z + x * x
    return b * b - 4 * lam * y * y * z


def equaloc_check(f00=Fraction(1, 4), f10=1, f01=1, truncation: int = 6) -> DuValVerdict:
    return du_val_plane_criterion(equaloc_curve(f00, f10, f01), [0, 0, 1], truncation)


# -- rational normal curves ---------------------------------------------------------


def chord_secant_degree(d: int, g: int) -> int:
    """Degree of the chord variety of a curve of degree d and genus g
    spanning P^4 or P^5 (expected-dimension case)."""
    return (d - 1) * (d - 2) // 2 - g


def hankel_matrix(n: int, rows: int) -> list[list[MultiPoly]]:
    X = variables(n)
    cols = n - rows + 1
    return [[X[i + j] for j in range(cols)] for i in range(rows)]


def chord_rnc4_cubic() -> MultiPoly:
    """3x3 catalecticant determinant in X0..X4: the chord variety of
    t -> [1, t, t^2, t^3, t^4]."""
    return poly_det(hankel_matrix(5, 3))


def gamma_point(t, degree: int) -> list[Fraction]:
    """gamma(t) = [1, t, ..., t^degree], with t = None meaning infinity."""
    if t is None:
        return [Fraction(int(k == degree)) for k in range(degree + 1)]
    t = Fraction(t)
    return [t**k for k in range(degree + 1)]


def gamma_poly(degree: int) -> list[MultiPoly]:
    """Coordinates of gamma as polynomials in one variable t."""
    return [MultiPoly(1, {(k,): 1}) for k in range(degree + 1)]


def vanishes_doubly_on_rnc(p: MultiPoly) -> bool:
    """p and its gradient vanish on gamma(t) identically in t."""
    g = gamma_poly(p.nvars - 1)
    return p.substitute(g).is_zero() and all(q.substitute(g).is_zero() for q in p.gradient())


def chord_identity(p: MultiPoly) -> MultiPoly:
    """p(lam gamma(s) + mu gamma(t)) in the variables (lam, mu, s, t)."""
    lam, mu, s, t = variables(4)
    n = p.nvars
    return p.substitute([lam * s**k + mu * t**k for k in range(n)])


# -- plane-swept cubics Y_G -------------------------------------------------------


@dataclass(frozen=True)
class NetOnQuinticRNC:
    """A net of degree-3 divisors on P^1, given by three binary cubics
    (coefficient vectors a0 + a1 t + a2 t^2 + a3 t^3)."""

    basis: tuple[tuple[Fraction, Fraction, Fraction, Fraction], ...]

    def __init__(self, basis: Sequence[Sequence]):
        b = tuple(tuple(Fraction(x) for x in v) + (Fraction(0),) * (4 - len(v)) for v in basis)
        if len(b) != 3 or any(len(v) != 4 for v in b):
            raise ValueError("a net is spanned by three binary cubics")
        if rank(Matrix(b)) != 3:
            raise ValueError("net basis is linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def base_point(cls, p) -> "NetOnQuinticRNC":
        """G_p = p + |L^2|: spanned by (t - p) * {1, t, t^2}."""
        p = Fraction(p)
        return cls([[-p, 1, 0, 0], [0, -p, 1, 0], [0, 0, -p, 1]])

    @classmethod
    def parse(cls, text: str) -> "NetOnQuinticRNC":
        """Three lines (or ';'-separated) of polynomials in t, e.g. ``t^3 - t``."""
        chunks = [c for c in text.replace(";", "\n").splitlines() if c.strip()]
        vecs = []
        for chunk in chunks:
            q = MultiPoly.parse(chunk, 1, names=["t"])
            if q.degree() > 3:
                raise ValueError("net members must have degree <= 3")
            vecs.append([q.coefficient((k,)) for k in range(4)])
        return cls(vecs)

    def member_through(self, r1, r2) -> list[Fraction] | None:
        """The unique member (up to scale) vanishing at r1 and r2, if unique."""
        rows = []
        for r in (r1, r2):
            rows.append([sum(v[k] * Fraction(r) ** k for k in range(4)) for v in self.basis])
        ker = kernel_basis(Matrix(rows))
        if len(ker) != 1:
            return None
        lam = ker[0]
        return [sum(lam[i] * self.basis[i][k] for i in range(3)) for k in range(4)]


def third_root(member: Sequence[Fraction], r1, r2):
    """Third root by Vieta; None is the point at infinity; False if undefined."""
    a0, a1, a2, a3 = member
    if a3:
        return -a2 / a3 - Fraction(r1) - Fraction(r2)
    if a2:
        return None
    return False


@dataclass(frozen=True)
class YGFit:
    cubic: MultiPoly
    samples: int
    planes: int
    kernel_dim: int
    doubly_vanishing: bool


_SAMPLE_ROOTS = [Fraction(k) for k in (0, 1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3), Fraction(5, 2)]
_WEIGHTS = ((1, 1, 1), (1, 2, 3), (2, -1, 1), (1, -3, 2))


def y_g_samples(net: NetOnQuinticRNC, count: int = 64, offset: int = 0) -> tuple[list[list[Fraction]], int]:
    """Rational points on planes spanned by members with >= 2 rational roots."""
    pairs = list(itertools.combinations(_SAMPLE_ROOTS, 2))
    pts: list[list[Fraction]] = []
    planes = 0
    for idx, (r1, r2) in enumerate(pairs):
        if idx % 2 != offset % 2 and offset >= 0:
            continue
        m = net.member_through(r1, r2)
        if m is None:
            continue
        r3 = third_root(m, r1, r2)
        if r3 is False or r3 in (r1, r2):
            continue
        corners = [gamma_point(r, 5) for r in (r1, r2, r3)]
        if rank(Matrix(corners)) < 3:
            continue
        planes += 1
        for w in _WEIGHTS:
            pts.append([sum(w[k] * corners[k][i] for k in range(3)) for i in range(6)])
        if len(pts) >= count:
            break
    return pts, planes


def fit_cubic(points: Sequence[Sequence[Fraction]], nvars: int = 6) -> list[MultiPoly]:
    mons = monomials(nvars, 3)
    rows = []
    for pt in points:
        row = []
        for e in mons:
            v = Fraction(1)
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            row.append(v)
        rows.append(row)
    return [MultiPoly(nvars, dict(zip(mons, vec))).scaled_integral() for vec in kernel_basis(Matrix(rows, len(mons)))]


def y_g_fit(net: NetOnQuinticRNC, samples: int = 64, offset: int = 0) -> YGFit:
    if samples < 60:
        raise ValueError("at least 60 sample points are required")
    pts, planes = y_g_samples(net, samples, offset)
    if len(pts) < 60:
        raise ValueError(f"only {len(pts)} sample points; widen the root pool")
    ker = fit_cubic(pts)
    if not ker:
        raise PipelineBug("no cubic through the sampled planes")
    if len(ker) > 1:
        raise ValueError(f"rank-deficient sample: {len(ker)}-dimensional solution space")
    Y = ker[0]
    m, mons = linear_conditions_matrix(3, rnc(5), double=True)
    coeffs = [Y.coefficient(e) for e in mons]
    doubly = not any(m.apply(coeffs))
    return YGFit(Y, len(pts), planes, len(ker), doubly)


def is_cone_with_vertex(p: MultiPoly, v) -> bool:
    """sum_i v_i dp/dX_i vanishes identically."""
    v = v if isinstance(v, ProjPoint) else ProjPoint(v)
    acc = MultiPoly.zero(p.nvars)
    for x, g in zip(v.coords, p.gradient()):
        if x:
            acc = acc + g * x
    return acc.is_zero()


def vertex_space(p: MultiPoly) -> list[list[Fraction]]:
    """Basis of {v : sum_i v_i dp/dX_i = 0}; nonempty iff V(p) is a cone."""
    grads = p.gradient()
    keys = sorted({e for g in grads for e, _ in g.items()})
    if not keys:
        return [list(map(Fraction, _e(p.nvars, i))) for i in range(p.nvars)]
    # columns: partials; rows: monomials
    m = Matrix([[g.coefficient(e) for g in grads] for e in keys], p.nvars)
    return kernel_basis(m)


def has_base_point(net: NetOnQuinticRNC) -> list:
    """Common roots of the net on P^1 (rational ones and infinity)."""
    from .polygeom import u_gcd, u_trim

    g = list(net.basis[0])
    for v in net.basis[1:]:
        g = u_gcd(g, list(v))
    roots: list = u_rational_roots(g) if len(u_trim(g)) > 1 else []
    if all(v[3] == 0 for v in net.basis):
        roots.append(None)
    return roots


# -- a cubic containing a 3-space -------------------------------------------------


@dataclass(frozen=True)
class TantipianiReport:
    F: MultiPoly
    G: MultiPoly
    ranks: tuple[int, int]
    delta: list[Fraction]  # coefficients of delta(lambda), lowest first
    delta_degree: int
    roots: list[Fraction]
    singular_residuals: dict  # root -> rank of the residual quadric
    kernel_checks: dict  # root -> (point, Jacobian rank of the residual at it)
    smooth_at_infinity: bool


def residual_quadric(F: MultiPoly, G: MultiPoly, lam) -> MultiPoly:
    """Residual of V(X5 - lam X4) . Y beyond Omega = V(X4, X5), in X0..X4."""
    X = variables(5)
    images = X + [X[4] * lam]
    return F.substitute(images) + G.substitute(images) * lam


def tantipiani_example(
    F: MultiPoly | None = None, G: MultiPoly | None = None
) -> TantipianiReport:
    """Y = V(F X4 + G X5) contains Omega = V(X4, X5); the pencil of hyperplanes
    through Omega has residual quadrics with symmetric matrix over Q[lambda]."""
    F = F or MultiPoly.parse("X0*X1 + X2*X3", 6)
    G = G or MultiPoly.parse("X0^2 + X1^2 + X2^2 + X3^2 + X5^2", 6)
    X = variables(6)
    zero = MultiPoly.zero(6)
    rF = quadratic_form_rank(F.substitute(X[:5] + [zero]))
    rG = quadratic_form_rank(G.substitute(X[:4] + [zero, X[5]]))
    # residual quadric over Q[lambda]: 6 variables, X5 plays lambda
    L = variables(6)[5]
    Xs = variables(6)
    images = Xs[:5] + [Xs[4] * L]
    Q = F.substitute(images) + G.substitute(images) * L
    # symmetric matrix entries as polynomials in lambda (X5)
    mat: list[list[MultiPoly]] = [[MultiPoly.zero(1) for _ in range(5)] for _ in range(5)]
    for e, v in Q.items():
        idx = [i for i in range(5) for _ in range(e[i])]
        lam_term = MultiPoly(1, {(e[5],): v})
        i, j = idx
        if i == j:
            mat[i][i] = mat[i][i] + lam_term
        else:
            mat[i][j] = mat[i][j] + lam_term / 2
            mat[j][i] = mat[j][i] + lam_term / 2
    delta = poly_det(mat)
    coeffs = upoly_from_multi(delta)
    deg = len(coeffs) - 1
    roots = u_rational_roots(coeffs) if coeffs else []
    sing = {}
    kchecks = {}
    for r in roots:
        q = residual_quadric(F, G, r)
        sing[r] = quadratic_form_rank(q)
        ker = kernel_basis(quadratic_form_matrix(q))
        if ker:
            pt = ProjPoint(ker[0])
            kchecks[r] = (pt, jacobian_rank_at([q], pt))
    # Z = V(X4): residual is G(X0..X3, 0, X5)
    inf_rank = rG
    return TantipianiReport(F, G, (rF, rG), coeffs, deg, roots, sing, kchecks, inf_rank == 5)
