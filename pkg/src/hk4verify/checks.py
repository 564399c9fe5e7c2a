"""Registry of exact verification checks, grouped by scope.

Every check compares an expected value with a computed one after rendering
both with ``render``; comparison is string equality of exact values.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import charclass as cc
from . import cubic4fold as c4
from . import polygeom as pg
from .exact_core import invariant_factors
from .lattice import (
    find_isotropic_partner,
    make_E8,
    make_Lambda,
    norm,
    orbit_invariants,
    orthogonal_complement,
    pairing,
    parse_lattice,
)
from .sym2 import (
    Sym2Space,
    decompose_H4,
    generic_identity_lattices,
    half_integer_lattice_check,
    lambda_h,
    omega_lattice_disc,
    q_dual,
    qdecomp_check,
    square_class_obstruction,
)

SCOPES = ("lattice", "sym2", "charclass", "cubic")


@dataclass(frozen=True)
class Options:
    seed: int = 0
    box: int = 3
    truncation: int = 6


@dataclass(frozen=True)
class Record:
    check_id: str
    anchor: str
    expected: str
    computed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {
            "check-id": self.check_id,
            "anchor": self.anchor,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
        }


def render(x) -> str:
    """Canonical exact text for nested values."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(render(v) for v in x) + ")"
    if isinstance(x, (set, frozenset)):
        return "{" + ", ".join(sorted(render(v) for v in x)) + "}"
    if x is None:
        return "none"
    return str(x)


CheckFn = Callable[[Options], Iterator[tuple[str, str, object, object]]]
REGISTRY: dict[str, list[CheckFn]] = {s: [] for s in SCOPES}


def check(scope: str):
    def deco(fn: CheckFn) -> CheckFn:
        REGISTRY[scope].append(fn)
        return fn

    return deco


def run(scope: str, opts: Options | None = None) -> list[Record]:
    opts = opts or Options()
    if scope == "all":
        scopes = SCOPES
    elif scope in SCOPES:
        scopes = (scope,)
    else:
        raise KeyError(f"unknown scope {scope!r}")
    records = []
    for s in scopes:
        for fn in REGISTRY[s]:
            for cid, anchor, expected, computed in fn(opts):
                records.append(Record(cid, anchor, render(expected), render(computed)))
    ids = [r.check_id for r in records]
    if len(ids) != len(set(ids)):
        raise AssertionError("duplicate check ids")
    return sorted(records, key=lambda r: r.check_id)


def _snf_text(factors: list[int]) -> str:
    out = []
    for f in sorted(set(factors)):
        k = factors.count(f)
        out.append(f"{f}^{k}" if k > 1 else str(f))
    return ",".join(out)


# -- lattice -----------------------------------------------------------------


@check("lattice")
def _lambda_invariants(o: Options):
    L = make_Lambda()
    yield "lambda-rank", "lambdadef", 23, L.rank
    yield "lambda-disc", "lambdadef", 2, abs(L.det())
    yield "lambda-signature", "lambdadef", (3, 20, 0), L.signature()
    yield "lambda-snf", "lambdadef", "1^22,2", _snf_text(L.invariant_factors())
    yield "lambda-parse", "lambdadef", True, parse_lattice("U + U + U + E8(-1) + E8(-1) + <-2>") == L
    yield "e8-unimodular", "lambdadef", (1, (8, 0, 0)), (make_E8().det(), make_E8().signature())


@check("lattice")
def _hperp(o: Options):
    L = make_Lambda()
    h = lambda_h(L)
    comp = orthogonal_complement(L, h)
    yield "h-orbit-invariants", "lambdadef", (2, 1, True), orbit_invariants(L, h)
    yield "hperp-rank", "disctreper", 22, comp.lattice.rank
    yield "hperp-disc", "disctreper", 4, abs(comp.lattice.det())
    yield "hperp-snf", "disctreper", "1^20,2^2", _snf_text(invariant_factors(comp.lattice.gram))
    yield "hperp-signature", "disctreper", (2, 20, 0), comp.lattice.signature()


@check("lattice")
def _partner(o: Options):
    L = make_Lambda()
    h = lambda_h(L)
    beta = find_isotropic_partner(L, h, box=o.box)
    yield "isotropic-partner", "halfint", (1, 0), (pairing(L, h, beta), norm(L, beta))


# -- sym2 ----------------------------------------------------------------------


@check("sym2")
def _qdual(o: Options):
    L = make_Lambda()
    S = Sym2Space(L)
    q = q_dual(L)
    n = L.rank
    good = sum(
        1
        for i, j in S.index
        if S.pair(q, S.product(L.basis_vector(i), L.basis_vector(j))) == (n + 2) * L.gram[i][j]
    )
    yield "qdualint-monomials", "qdualint", S.dim, good
    yield "qdualint-575", "qdualqdual", 575, S.pair(q, q)
    yield "qdualqdual-gram-route", "qdualqdual", 575, S.pair_via_gram(q, q)
    h = lambda_h(L)
    qh, residual = qdecomp_check(L, h)
    yield "qdecomp-residual", "qdecomp", 0, sum(1 for v in residual if v)


@check("sym2")
def _generic_identity(o: Options):
    lats = generic_identity_lattices(seed=o.seed, count=20, max_rank=6)
    ok = 0
    for L in lats:
        S = Sym2Space(L)
        q = q_dual(L)
        n = L.rank
        # brute-force pairing from the Gram matrix of monomials
        if all(
            S.pair_via_gram(q, S.monomial(i, j)) == (n + 2) * L.gram[i][j]
            for i, j in S.index
        ):
            ok += 1
    yield "qdualint-generic", "qdualint", 20, ok


@check("sym2")
def _decomposition(o: Options):
    L = make_Lambda()
    rep = decompose_H4(L, lambda_h(L))
    yield "h4-dims", "accaquattro", (2, 22, 252), rep.dims
    yield "h4-total", "accaquattro", 276, sum(rep.dims)
    yield "cucs-span", "cucs", True, rep.checks["cucs_orthogonal_to_q"]
    yield "spqr-span", "spqr", True, rep.checks["spqr_in_sym2_hperp"]
    yield "h4-structure", "accaquattro", True, all(rep.checks.values())


@check("sym2")
def _omega(o: Options):
    r = omega_lattice_disc()
    yield "smalldisc-gram", "smalldisc", ((12, 20), (20, 92)), r.gram
    yield "smalldisc-704", "smalldisc", 704, r.disc
    yield "smalldisc-factor", "smalldisc", (6, 11), (_two_adic(int(r.disc)), int(r.disc) >> _two_adic(int(r.disc)))
    yield "smallindex-8", "smallindex", 8, r.index_bound
    yield "halfint", "halfint", True, half_integer_lattice_check().ok


def _two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


@check("sym2")
def _square_class(o: Options):
    r = square_class_obstruction()
    yield "disctreper-pullback", "disctreper", 3 * 2**44, r.det_pullback
    yield "ventiquattro-det", "ventiquattro", 2**22 * r.hperp_disc, r.det_h_times_hperp
    yield "squareclass-3", "disctreper", 3, r.class_a
    yield "squareclass-1", "ventiquattro", 1, r.class_b
    yield "squareclass-distinct", "ventiquattro", True, r.distinct


# -- charclass -------------------------------------------------------------------


@check("charclass")
def _rr(o: Options):
    yield "eulchar-coefficients", "eulchar", (Fraction(3), 0, Fraction(5, 2), 0, Fraction(1, 2)), tuple(
        cc.hrr_coefficients()[k] for k in range(5)
    )
    yield "eulchar-values", "eulchar", (6, 3, 6, 21), tuple(cc.chi_nH(n) for n in (-1, 0, 1, 2))
    p = cc.solve_c2()
    yield "toddofx", "toddofx", 240 * 3, p.c2_squared - Fraction(p.c4, 3)
    yield "c2quadro-828", "c2quadro", 828, p.c2_squared
    yield "c2formula-a", "c2formula", Fraction(6, 5), p.c2_coefficient
    yield "miyaoka-60", "c2formula", 60, p.c2_dot_h2


@check("charclass")
def _fixed(o: Options):
    f = cc.fixed_surface()
    yield "cardiy-b4", "cardiy", 254, f.b4_Y
    yield "cardiy-258", "cardiy", 258, f.chi_Y
    yield "cardif-192", "cardif", 192, f.chi_F
    yield "normlagr-192", "normlagr", f.chi_F, f.cl_F_squared
    yield "belnum-1728", "belnum", 1728, f.bel_number
    yield "classevera", "classevera", (5, Fraction(-2, 5)), f.cl_F_coefficients
    yield "cherndieffe-360", "cherndieffe", (40, 360), (f.h2_dot_clF, f.c1_F_squared)


@check("charclass")
def _cases(o: Options):
    rows = cc.enumerate_cases()
    yield "varicasi-table", "varicasi", True, tuple(cc.case_table(rows)) == cc.GOLDEN_CASE_TABLE
    keys = {(r.dim_y, r.deg_y, r.deg_f): r for r in rows}
    yield "varicasi-434", "productbound", (True, True), ((4, 3, 4) in keys, keys.get((4, 3, 4)) and keys[(4, 3, 4)].b_empty)
    yield "varicasi-443", "productbound", (True, True), ((4, 4, 3) in keys, keys.get((4, 4, 3)) and keys[(4, 4, 3)].b_empty)
    yield "ynice-452", "ynice", False, (4, 5, 2) in keys
    changed = sum(
        1 for name in cc.CONSTRAINTS if tuple(cc.case_table(cc.enumerate_cases([name]))) != cc.GOLDEN_CASE_TABLE
    )
    yield "varicasi-mutation", "productbound", len(cc.CONSTRAINTS), changed


@check("charclass")
def _intprop(o: Options):
    yield "poscond-feasible", "poscond", ((Fraction(1, 2), 0),), tuple(cc.intprop_positivity())
    r = cc.cubic_curve_cycle_arith()
    yield "classesigma", "classesigma", (1, 2), (r.m, r.h_dot_sigma)
    yield "contributi", "contributi", 12, sum(r.balance)
    yield "contraddizione", "contraddizione", (), r.doubled_solutions
    yield "lambdap-nonempty", "contraddizione", True, r.lambda_p_nonempty


# -- cubic -----------------------------------------------------------------------


@check("cubic")
def _psi(o: Options):
    rng = random.Random(o.seed)
    ok = 0
    for _ in range(5):
        F, G = c4.random_form(5, 2, rng), c4.random_form(5, 3, rng)
        ok += c4.psi_inverse_identity(F, G).is_zero()
    yield "invdipsi-identity", "invdipsi", 5, ok


@check("cubic")
def _two_node(o: Options):
    rng = random.Random(o.seed)
    e = (1, 2, -1, 1)
    det_ok = pm_ok = fib_ok = 0
    for _ in range(5):
        data = c4.two_node_discriminant(c4.random_two_node_cubic(rng, through=e))
        det_ok += data.det_M == data.f * data.P and data.P.degree() == 4
        pm = c4.partialmod_check(data, e)
        pm_ok += pm.identity_holds and all(a == b for a, b in pm.point_values) and pm.gradient_nonzero
        fib_ok += all(
            r.membership and r.points_on_P and r.points_checked > 0
            for r in (c4.fiber_check(data, "prima", e), c4.fiber_check(data, "seconda", e))
        )
    yield "determatrix-identity", "determatrix", 5, det_ok
    yield "partialmod-gradient", "partialmod", 5, pm_ok
    yield "prima-seconda-fibers", "prima", 5, fib_ok


@check("cubic")
def _linear_systems(o: Options):
    yield "eccecubica-dim", "eccecubica", 4, pg.linear_conditions_dim(3, 6, pg.rnc(5))
    stable = {pg.linear_conditions_dim(3, 6, pg.rnc(5), truncation=k) for k in (15, 16, 20)}
    yield "eccecubica-stable", "eccecubica", {4}, stable
    yield "rnc4-cubics", "razquattro", 22, pg.linear_conditions_dim(3, 5, pg.rnc(4), double=False)
    yield "twisted-cubic-quadrics", "razquattro", 3, pg.linear_conditions_dim(2, 4, pg.rnc(3), double=False)


@check("cubic")
def _duval(o: Options):
    P = lambda s: pg.MultiPoly.parse(s, 3)
    v = [0, 0, 1]
    t = o.truncation
    models = {
        "duvalse-node": P("X0*X1*X2 + X0^3 + X1^3"),
        "duvalse-cusp": P("X1^2*X2 - X0^3"),
        "duvalse-triple-x2y": P("X0^2*X1*X2 + X1^4"),
        "duvalse-triple-x3": P("X0^3*X2 + X1^4"),
    }
    expected = {
        "duvalse-node": (2, 2, "accepted"),
        "duvalse-cusp": (2, 1, "accepted"),
        "duvalse-triple-x2y": (3, 2, "accepted"),
        "duvalse-triple-x3": (3, 1, "rejected"),
    }
    for cid, curve in models.items():
        r = pg.du_val_plane_criterion(curve, v, t)
        yield cid, "duvalse", expected[cid], (r.multiplicity, r.distinct_tangents, r.label)
    r = c4.equaloc_check(truncation=t)
    yield "equaloc-boundary", "equaloc", (3, True, "accepted"), (r.multiplicity, r.distinct_tangents >= 2, r.label)
    for w in c4.branch_witnesses(t):
        yield f"branchdiv-{w.name}", "branchdiv", "accepted", w.verdict.label


@check("cubic")
def _chords(o: Options):
    h = c4.chord_rnc4_cubic()
    yield "razquattro-degrees", "razquattro", (3, 6, 5), tuple(
        c4.chord_secant_degree(d, g) for d, g in ((4, 0), (5, 0), (5, 1))
    )
    yield "hankel-double", "razquattro", True, c4.vanishes_doubly_on_rnc(h)
    yield "hankel-chords", "razquattro", True, c4.chord_identity(h).is_zero()
    yield "hankel-nonchord", "razquattro", -1, h.eval([1, 0, 1, 0, 0])
    # gamma(0) + gamma(infinity) is on a chord
    yield "hankel-chord-endpoints", "razquattro", 0, h.eval([1, 0, 0, 0, 1])


NETS = {
    "generic": [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]],
    "other": [[1, 1, 0, 0], [0, 1, 0, 1], [0, 0, 1, 1]],
}


@check("cubic")
def _yg(o: Options):
    net = c4.NetOnQuinticRNC(NETS["generic"])
    a = c4.y_g_fit(net)
    b = c4.y_g_fit(net, offset=1)
    other = c4.y_g_fit(c4.NetOnQuinticRNC(NETS["other"]))
    yield "gidef-unique", "gidef", (1, True), (a.kernel_dim, a.doubly_vanishing)
    yield "gidef-sample-independent", "gidef", True, a.cubic.is_proportional(b.cubic)
    yield "gidef-not-cone", "gidef", 0, len(c4.vertex_space(a.cubic))
    yield "birigata-injective", "birigata", False, a.cubic.is_proportional(other.cubic)
    cone = c4.y_g_fit(c4.NetOnQuinticRNC.base_point(2))
    yield "dimensig-cone", "dimensig", True, c4.is_cone_with_vertex(cone.cubic, c4.gamma_point(2, 5))
    kernel = pg.linear_conditions_kernel(3, pg.rnc(5))
    yield "eccecubica-membership", "eccecubica", True, pg.in_span(a.cubic, kernel)


@check("cubic")
def _tantipiani(o: Options):
    r = c4.tantipiani_example()
    yield "tantipiani-ranks", "tantipiani", (4, 5), r.ranks
    yield "epimappa-nonconstant", "epimappa", True, r.delta_degree >= 1
    yield "epimappa-singular-root", "epimappa", True, bool(r.roots) and all(k < 5 for k in r.singular_residuals.values())
    yield "epimappa-smooth-member", "epimappa", True, r.smooth_at_infinity


@check("cubic")
def _singsing(o: Options):
    # two nodes: adapt at [0,...,0,1]; the second node is [0,0,0,0,1,0]
    rng = random.Random(o.seed)
    cubic = c4.random_two_node_cubic(rng)
    node = c4.adapt_to_node(cubic, [0, 0, 0, 0, 0, 1])
    r = c4.sing_correspondence(node, [0, 0, 0, 0, 1, 0])
    yield "singsing-second-node", "singsing", (True, True, True, True), (
        r.y_singular, r.jacob_solvable, r.s_singular_on_S_p, r.cone_smooth_at_s
    )
    # a line of singular points: A X4 + B X5 + C with A, B quadrics and C cubic in X0..X3
    A, B, C = (c4.random_form(4, k, rng).extend(6) for k in (2, 2, 3))
    X = pg.variables(6)
    node = c4.adapt_to_node(A * X[4] + B * X[5] + C, [0, 0, 0, 0, 0, 1])
    r = c4.sing_correspondence(node, [0, 0, 0, 0, 1, 0])
    yield "singsing-line", "singsing", (True, 4), (r.y_singular, r.tangent_dim)
    # a smooth point produced by psi^-1
    F, G = c4.random_form(5, 2, rng), c4.random_form(5, 3, rng)
    cn = c4.CubicWithNode(F, G)
    y = c4.psi_inverse(cn, [1, 2, 0, 1, 3])
    r = c4.sing_correspondence(cn, y)
    yield "singsing-smooth", "singsing", (False, False), (r.y_singular, r.jacob_solvable)
