"""Riemann-Roch and Chern class arithmetic on Lambda, the fixed surface of an
anti-symplectic involution, and the feasibility table for the map to |H|^dual.

Model axioms (inputs, not computations): b_3 = 0, Sym^2 H^2 = H^4 via cup
product, Fujiki constant 3, chi(O_X) = 3 and topological Euler number 324.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .lattice import Lattice, make_Lambda, norm
from .sym2 import Sym2Space, lambda_h, q_dual

FUJIKI_CONSTANT = 3
CHI_O = 3
EULER_NUMBER = 324  # c_4, taken as given
MODEL_AXIOMS = (
    "b3 = 0",
    "Sym^2 H^2(Q) -> H^4(Q) is an isomorphism",
    f"Fujiki constant c = {FUJIKI_CONSTANT}",
    f"chi(O_X) = {CHI_O}",
    f"c4 = chi_top = {EULER_NUMBER}",
)


class InconsistentInputs(ValueError):
    pass


@dataclass(frozen=True)
class Setting:
    """Lambda, the polarization h and the Sym2 quantities used everywhere."""

    L: Lattice
    h: tuple[int, ...]
    S: Sym2Space
    q: tuple
    h2: tuple

    @classmethod
    def standard(cls) -> "Setting":
        L = make_Lambda()
        h = lambda_h(L)
        S = Sym2Space(L)
        return cls(L, h, S, q_dual(L), S.square(h))

    def pair(self, x, y) -> Fraction:
        return self.S.pair(x, y)


_SETTING: Setting | None = None


def standard_setting() -> Setting:
    global _SETTING
    if _SETTING is None:
        _SETTING = Setting.standard()
    return _SETTING


# -- Riemann-Roch ------------------------------------------------------------


@dataclass(frozen=True)
class RRProfile:
    fujiki: int
    c4: int
    chi_O: int
    c2_coefficient: Fraction  # c2 = a * q^dual
    c2_squared: Fraction
    c2_dot_h2: Fraction


def hrr_coefficients(st: Setting | None = None) -> dict[int, Fraction]:
    """Coefficients of chi(O(nH)) = (int h^4/24) n^4 + (<c2,h^2>/24) n^2 + chi(O)."""
    st = st or standard_setting()
    h4 = FUJIKI_CONSTANT * Fraction(norm(st.L, st.h)) ** 2
    assert h4 == st.pair(st.h2, st.h2)
    c2 = solve_c2(st=st)
    return {4: h4 / 24, 3: Fraction(0), 2: c2.c2_dot_h2 / 24, 1: Fraction(0), 0: Fraction(CHI_O)}


def chi_nH(n: int, st: Setting | None = None) -> Fraction:
    coeffs = hrr_coefficients(st)
    return sum((c * Fraction(n) ** k for k, c in coeffs.items()), Fraction(0))


def solve_c2(chi_O: int = CHI_O, c4: int = EULER_NUMBER, st: Setting | None = None) -> RRProfile:
    """Solve 240 chi(O) = c2^2 - c4/3 with c2 = a q^dual, sign from <c2, h^2> >= 0."""
    st = st or standard_setting()
    c2_sq = 240 * Fraction(chi_O) + Fraction(c4, 3)
    qq = st.pair(st.q, st.q)
    a_sq = c2_sq / qq
    a = _rational_sqrt(a_sq)
    if a is None:
        raise InconsistentInputs(f"a^2 = {a_sq} is not a rational square")
    q_h2 = st.pair(st.q, st.h2)
    # Miyaoka: <c2, h^2> = a <q, h^2> must be >= 0
    candidates = [s for s in (a, -a) if s * q_h2 >= 0]
    if not candidates:
        raise InconsistentInputs("no sign of a satisfies <c2, h^2> >= 0")
    a = candidates[0]
    return RRProfile(FUJIKI_CONSTANT, c4, chi_O, a, c2_sq, a * q_h2)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    from math import isqrt

    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def c2_class(st: Setting | None = None) -> tuple:
    st = st or standard_setting()
    a = solve_c2(st=st).c2_coefficient
    return st.S.scale(a, st.q)


# -- fixed surface of the involution ----------------------------------------


@dataclass(frozen=True)
class FixedSurfaceInvariants:
    b4_Y: int
    chi_Y: int
    chi_F: int
    cl_F: tuple = field(repr=False)
    cl_F_coefficients: tuple[Fraction, Fraction]  # cl(F) = x h^2 + y q^dual
    cl_F_squared: Fraction
    lagrangian_ray: tuple[Fraction, Fraction]  # cl(F_i) is a positive multiple of this in (h^2, c2)
    bel_number: Fraction
    h2_dot_clF: Fraction
    c1_F_squared: Fraction


def lagrangian_class_direction(st: Setting | None = None) -> tuple[Fraction, Fraction]:
    """Solve for cl = x h^2 + y c2 with <cl, tau^2> = 0 for tau in h-perp and
    <cl, h^2> > 0; returns the ray (x, y) normalized to y = -1.
    """
    st = st or standard_setting()
    c2 = c2_class(st)
    # any tau in h-perp with (tau, tau) != 0 gives the same linear condition
    tau = [0] * st.L.rank
    tau[2] = tau[3] = 1
    t2 = st.S.square(tau)
    ax, ay = st.pair(st.h2, t2), st.pair(c2, t2)  # x*ax + y*ay = 0
    x, y = ay, -ax
    if x * st.pair(st.h2, st.h2) + y * st.pair(c2, st.h2) < 0:
        x, y = -x, -y
    return (x / -y, Fraction(-1)) if y < 0 else (x / y, Fraction(1))


def fixed_surface(st: Setting | None = None) -> FixedSurfaceInvariants:
    st = st or standard_setting()
    S = st.S
    # H^4 invariants of the involution: C h^2 + Sym^2(h-perp)
    rank_perp = st.L.rank - 1
    b4 = 1 + rank_perp * (rank_perp + 1) // 2
    chi_Y = 1 + 1 + b4 + 1 + 1
    # 324 = 2 chi(Y - F) + chi(F) and chi(Y) = chi(Y - F) + chi(F)
    chi_F = 2 * chi_Y - EULER_NUMBER

    c2 = c2_class(st)
    ray_x, ray_y = lagrangian_class_direction(st)  # (15, -1)
    ray = S.add(S.scale(ray_x, st.h2), S.scale(-ray_y, S.scale(-1, c2)))
    bel = st.pair(ray, ray)
    # <cl F, cl F> = chi(F) (Lagrangian: normal bundle = cotangent bundle)
    k_sq = Fraction(chi_F) / bel
    k = _rational_sqrt(k_sq)
    if k is None:
        raise InconsistentInputs("cl(F) coefficient is not rational")
    cl_F = S.scale(k, ray)
    a = solve_c2(st=st).c2_coefficient
    coeffs = (k * ray_x, k * ray_y * a)
    h2_clF = st.pair(st.h2, cl_F)
    # 2 K_F = 6 H|_F  =>  K_F^2 = 9 int_F h^2
    c1sq = 9 * h2_clF
    return FixedSurfaceInvariants(
        b4_Y=b4,
        chi_Y=chi_Y,
        chi_F=chi_F,
        cl_F=cl_F,
        cl_F_coefficients=coeffs,
        cl_F_squared=st.pair(cl_F, cl_F),
        lagrangian_ray=(ray_x, ray_y),
        bel_number=bel,
        h2_dot_clF=h2_clF,
        c1_F_squared=c1sq,
    )


# -- positivity of effective codimension-2 classes --------------------------


def half_integers(lo: Fraction, hi: Fraction) -> list[Fraction]:
    from math import ceil, floor

    return [Fraction(k, 2) for k in range(ceil(2 * lo), floor(2 * hi) + 1)]


def positivity_coefficients(st: Setting | None = None) -> dict[str, tuple[Fraction, Fraction]]:
    """For cl = s h^2 + t (2q/5): <cl, h^2> = 12s + 20t and
    <cl, tau^2> = (2s + 10t)(tau, tau) for tau in h-perp."""
    st = st or standard_setting()
    S = st.S
    q5 = S.scale(Fraction(2, 5), st.q)
    tau = [0] * st.L.rank
    tau[2] = tau[3] = 1
    t2 = S.square(tau)
    tt = Fraction(norm(st.L, tau))
    return {
        "h2": (st.pair(st.h2, st.h2), st.pair(q5, st.h2)),
        "sigma": (st.pair(st.h2, t2) / tt, st.pair(q5, t2) / tt),
    }


def intprop_feasible(x: Fraction, y: Fraction) -> bool:
    """Both A = x h^2 + y(2q/5) and B = h^2 - A satisfy 3s+5t > 0, s+5t >= 0."""
    return 0 < 3 * x + 5 * y < 3 and 0 <= x + 5 * y <= 1


def intprop_positivity(box: Fraction = Fraction(3)) -> list[tuple[Fraction, Fraction]]:
    """All half-integer (x, y) in [-box, box]^2 with 0 < 3x+5y < 3, 0 <= x+5y <= 1.

    The region is bounded: 2x lies in (-1, 3) and 10y in (-3, 3), so the
    default box is exhaustive.
    """
    pts = half_integers(-box, box)
    return [(x, y) for x in pts for y in pts if intprop_feasible(x, y)]


# -- the case table ----------------------------------------------------------


@dataclass(frozen=True)
class CaseRow:
    dim_y: int
    deg_y: int
    deg_f: int | None  # None: generic fibre positive dimensional
    b_empty: bool
    label: int | None


Constraint = Callable[[int, int, int | None], bool]

DEG_F_MAX = 12
DEG_Y_MAX = 12

CONSTRAINTS: dict[str, Constraint] = {
    # dim Y >= 3 (and Y is the image of a 4-fold)
    "dim_at_least_3": lambda dim, d, f: dim >= 3,
    # dim Y = 3: a non-degenerate 3-fold in P^5 has degree >= 3
    "dim3_lower": lambda dim, d, f: dim != 3 or d >= 3,
    # dim Y = 3: 12 >= 2 deg Y
    "dim3_upper": lambda dim, d, f: dim != 3 or d <= 6,
    # dim Y = 4: non-degenerate hypersurface
    "dim4_nondegenerate": lambda dim, d, f: dim != 4 or d >= 2,
    # deg Y * deg f <= 12
    "product_bound": lambda dim, d, f: dim != 4 or d * f <= 12,
    # birational case: adjunction forces deg Y >= 6
    "birational_adjunction": lambda dim, d, f: dim != 4 or f != 1 or d >= 6,
    # double cover: adjunction plus product bound force deg Y = 6
    "double_cover_sextic": lambda dim, d, f: dim != 4 or f != 2 or d == 6,
}


def _label(dim: int, d: int, f: int | None) -> int | None:
    if dim == 3 and 3 <= d <= 6:
        return 1
    if dim != 4:
        return None
    if d == 2:
        return 2
    if (d, f) == (3, 3):
        return 3
    if (d, f) == (3, 4):
        return 4
    if (d, f) == (4, 3):
        return 5
    if f == 2 and d == 6:
        return 6
    if f == 1 and 6 <= d <= 12:
        return 7
    return None


def enumerate_cases(disabled: Iterable[str] = ()) -> list[CaseRow]:
    """All (dim Y, deg Y, deg f) allowed by the active constraints.

    dim Y ranges over 1..4 and degrees over 1..12; for dim Y < 4 the generic
    fibre is positive dimensional and deg f is recorded as None.
    """
    disabled = set(disabled)
    unknown = disabled - CONSTRAINTS.keys()
    if unknown:
        raise KeyError(f"unknown constraints {sorted(unknown)}")
    active = [c for name, c in CONSTRAINTS.items() if name not in disabled]
    rows = []
    for dim in range(1, 5):
        fs: Sequence[int | None] = range(1, DEG_F_MAX + 1) if dim == 4 else (None,)
        for d, f in itertools.product(range(1, DEG_Y_MAX + 1), fs):
            if all(c(dim, d, f) for c in active):
                b_empty = dim == 4 and d * f == 12
                rows.append(CaseRow(dim, d, f, b_empty, _label(dim, d, f)))
    return rows


@dataclass(frozen=True)
class CaseSummary:
    label: int
    dim_y: int
    deg_y: tuple[int, ...]
    deg_f: tuple[int | None, ...]
    b_empty: tuple[bool, ...]
    notes: str = ""


def case_table(rows: Sequence[CaseRow] | None = None) -> list[CaseSummary]:
    """Group enumerated rows by case label (1)-(7); unlabeled rows get label 0."""
    rows = enumerate_cases() if rows is None else rows
    groups: dict[int, list[CaseRow]] = {}
    for r in rows:
        groups.setdefault(r.label or 0, []).append(r)
    notes = {
        1: "if deg Y = 6 then B is 0-dimensional",
        6: "regular anti-symplectic involution; Y = X / phi",
        7: "f birational",
    }
    out = []
    for label in sorted(groups):
        g = groups[label]
        out.append(
            CaseSummary(
                label=label,
                dim_y=g[0].dim_y if len({r.dim_y for r in g}) == 1 else -1,
                deg_y=tuple(sorted({r.deg_y for r in g})),
                deg_f=tuple(sorted({r.deg_f for r in g}, key=lambda f: (f is None, f or 0))),
                b_empty=tuple(sorted({r.b_empty for r in g})),
                notes=notes.get(label, ""),
            )
        )
    return out


GOLDEN_CASE_TABLE = (
    CaseSummary(1, 3, (3, 4, 5, 6), (None,), (False,), "if deg Y = 6 then B is 0-dimensional"),
    CaseSummary(2, 4, (2,), (3, 4, 5, 6), (False, True)),
    CaseSummary(3, 4, (3,), (3,), (False,)),
    CaseSummary(4, 4, (3,), (4,), (True,)),
    CaseSummary(5, 4, (4,), (3,), (True,)),
    CaseSummary(6, 4, (6,), (2,), (True,), "regular anti-symplectic involution; Y = X / phi"),
    CaseSummary(7, 4, tuple(range(6, 13)), (1,), (False, True), "f birational"),
)


# -- the cubic case with a 1-dimensional base locus --------------------------


@dataclass(frozen=True)
class CubicCycleReport:
    solutions: tuple[tuple[int, int], ...]  # (m, sum of local multiplicities)
    m: int
    h_dot_sigma: int
    balance: tuple[int, int, int]  # deg Y * deg f, sum mult, int_Sigma h
    doubled_solutions: tuple[tuple[int, int], ...]
    lambda_p_nonempty: bool


def cubic_curve_cycle_arith(deg_y: int = 3, deg_f: int = 3, h4: int = 12) -> CubicCycleReport:
    """12 = deg Y deg f + sum mult_p + int_Sigma h with cl(Sigma) = m h^3/6.

    int_Sigma h = m * h^4 / 6.  Both m and the multiplicity sum are >= 1;
    forcing a point of multiplicity >= 2 leaves no solution.
    """
    rest = h4 - deg_y * deg_f
    per_m = h4 // 6
    sols = tuple((m, rest - per_m * m) for m in range(1, rest + 1) if rest - per_m * m >= 1)
    doubled = tuple((m, s) for m, s in sols if s >= 2)
    m, s = sols[0] if len(sols) == 1 else (0, 0)
    # Lambda_p has codimension <= 3 in a 3-dimensional projective family
    dim_family, codim = 3, 3
    return CubicCycleReport(
        solutions=sols,
        m=m,
        h_dot_sigma=per_m * m,
        balance=(deg_y * deg_f, s, per_m * m),
        doubled_solutions=doubled,
        lambda_p_nonempty=dim_family - codim >= 0,
    )
