"""The symmetric square of a lattice with its induced pairing.

Basis convention: monomials a_i a_j with i <= j.  An element written as a sum
over *all* ordered pairs, sum_{i,j} m_ij a_i a_j with m symmetric, has
coordinate m_ii on a_i^2 and 2 m_ij on a_i a_j (i < j).

The pairing on monomials is the polarization

    <a1 a2, a3 a4> = (a1,a2)(a3,a4) + (a1,a3)(a2,a4) + (a1,a4)(a2,a3).

For elements given by symmetric matrices X, Y (over all ordered pairs) this
is tr(XG) tr(YG) + 2 tr(XGYG), which is what ``Sym2Space.pair`` uses; the
monomial Gram matrix is built separately from the polarization formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

from .exact_core import Matrix, det, inverse, kernel_basis, largest_square_divisor_root, rank, square_class
from .lattice import (
    Lattice,
    direct_sum,
    make_A2,
    make_E8,
    make_Lambda,
    make_U,
    norm,
    orthogonal_complement,
    pairing,
)

Sym2Element = tuple  # tuple of Fractions over the monomial basis


class DegenerateLatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Sym2Space:
    base: Lattice

    @property
    def n(self) -> int:
        return self.base.rank

    @cached_property
    def index(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i in range(self.n) for j in range(i, self.n))

    @cached_property
    def position(self) -> dict[tuple[int, int], int]:
        return {ij: k for k, ij in enumerate(self.index)}

    @property
    def dim(self) -> int:
        return self.n * (self.n + 1) // 2

    def monomial_pairing(self, i: int, j: int, k: int, l: int) -> int:
        g = self.base.gram
        return g[i][j] * g[k][l] + g[i][k] * g[j][l] + g[i][l] * g[j][k]

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Pairing matrix on the monomial basis, straight from the polarization."""
        idx = self.index
        return tuple(tuple(self.monomial_pairing(i, j, k, l) for (k, l) in idx) for (i, j) in idx)

    def pairing_matrix(self) -> Matrix:
        return Matrix(self.gram, self.dim)

    # -- coordinates ---------------------------------------------------------

    def zero(self) -> Sym2Element:
        return tuple(Fraction(0) for _ in range(self.dim))

    def monomial(self, i: int, j: int) -> Sym2Element:
        out = [Fraction(0)] * self.dim
        out[self.position[(min(i, j), max(i, j))]] = Fraction(1)
        return tuple(out)

    def from_symmetric(self, m: Sequence[Sequence]) -> Sym2Element:
        """Coordinates of sum_{i,j} m_ij a_i a_j (sum over all ordered pairs)."""
        return tuple(
            Fraction(m[i][i]) if i == j else 2 * Fraction(m[i][j]) for (i, j) in self.index
        )

    def to_symmetric(self, x: Sym2Element) -> list[list[Fraction]]:
        n = self.n
        out = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in zip(self.index, x):
            if i == j:
                out[i][i] = Fraction(c)
            else:
                out[i][j] = out[j][i] = Fraction(c) / 2
        return out

    def product(self, v: Sequence, w: Sequence) -> Sym2Element:
        """The element v*w for v, w in the base lattice (rational coordinates)."""
        n = self.n
        m = [[(Fraction(v[i]) * w[j] + Fraction(v[j]) * w[i]) / 2 for j in range(n)] for i in range(n)]
        return self.from_symmetric(m)

    def square(self, v: Sequence) -> Sym2Element:
        return self.product(v, v)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def add(*xs: Sym2Element) -> Sym2Element:
        return tuple(sum(cs, Fraction(0)) for cs in zip(*xs))

    @staticmethod
    def scale(c, x: Sym2Element) -> Sym2Element:
        c = Fraction(c)
        return tuple(c * a for a in x)

    def combine(self, *terms: tuple) -> Sym2Element:
        """Linear combination from (coefficient, element) pairs."""
        return self.add(*(self.scale(c, x) for c, x in terms)) if terms else self.zero()

    def pair(self, x: Sym2Element, y: Sym2Element) -> Fraction:
        g = self.base.matrix()
        xg = Matrix(self.to_symmetric(x)) @ g
        yg = Matrix(self.to_symmetric(y)) @ g
        n = self.n
        tx = sum(xg.rows[i][i] for i in range(n))
        ty = sum(yg.rows[i][i] for i in range(n))
        txy = sum(xg.rows[i][k] * yg.rows[k][i] for i in range(n) for k in range(n) if xg.rows[i][k])
        return tx * ty + 2 * txy

    def pair_via_gram(self, x: Sym2Element, y: Sym2Element) -> Fraction:
        g = self.gram
        total = Fraction(0)
        for a, xa in enumerate(x):
            if xa:
                row = g[a]
                total += xa * sum((row[b] * yb for b, yb in enumerate(y) if yb), Fraction(0))
        return total

    def sparse(self, x: Sym2Element) -> list[tuple[int, int, Fraction]]:
        """Serialize as (i, j, coefficient) triples, zero coefficients dropped."""
        return [(i, j, c) for (i, j), c in zip(self.index, x) if c]

    def from_sparse(self, triples) -> Sym2Element:
        out = [Fraction(0)] * self.dim
        for i, j, c in triples:
            out[self.position[(min(i, j), max(i, j))]] += Fraction(c)
        return tuple(out)


def induced_pairing(L: Lattice) -> Sym2Space:
    return Sym2Space(L)


def q_dual(L: Lattice) -> Sym2Element:
    """The dual class of the form: sum_{i,j} m_ij a_i a_j with m = G^{-1}."""
    if det(L.matrix()) == 0:
        raise DegenerateLatticeError("q_dual needs a nondegenerate lattice")
    m = inverse(L.matrix())
    return Sym2Space(L).from_symmetric(m.rows)


# -- decomposition relative to a class h ------------------------------------


def _adapted(L: Lattice, h: Sequence[int]):
    """Rational basis (h, beta_1, ..., beta_{n-1}) with beta_i a Z-basis of h-perp."""
    comp = orthogonal_complement(L, h)
    basis = [tuple(h)] + list(comp.basis)
    gram = [[pairing(L, a, b) for b in basis] for a in basis]
    return Lattice.from_rows(gram, "adapted"), basis, comp


def change_of_basis(S: Sym2Space, T: Sym2Space, basis: Sequence[Sequence[int]], x: Sym2Element) -> Sym2Element:
    """Map an element of Sym2 over the basis ``basis`` (space T) into S."""
    # x = sum X_ab b_a b_b with b_a = sum_i P_ia e_i  =>  X' = P X P^T
    P = Matrix([[basis[a][i] for a in range(len(basis))] for i in range(S.n)])
    X = Matrix(T.to_symmetric(x))
    return S.from_symmetric((P @ X @ P.T).rows)


def qdecomp_check(L: Lattice, h: Sequence[int]) -> tuple[Sym2Element, Sym2Element]:
    """Compute q_h^dual (dual of the form restricted to h-perp) and the residual
    q^dual - (h,h)^{-1} h^2 - q_h^dual, both in the monomial basis of L.

    h need not be primitive; h-perp only depends on the line through h.
    """
    hh = norm(L, h)
    if hh == 0:
        raise ValueError("qdecomp needs (h, h) != 0")
    from math import gcd

    g = gcd(*h)
    h_prim = tuple(c // g for c in h)
    comp = orthogonal_complement(L, h_prim)
    S = Sym2Space(L)
    T = Sym2Space(comp.lattice)
    qh_dual = change_of_basis(S, T, comp.basis, q_dual(comp.lattice))
    residual = S.add(q_dual(L), S.scale(Fraction(-1, hh), S.square(h)), S.scale(-1, qh_dual))
    return qh_dual, residual


@dataclass
class DecompositionReport:
    dims: tuple[int, int, int]
    basis: list[tuple[int, ...]]  # rational basis of L used for adapted coordinates
    level0: list[Sym2Element]
    level2: list[Sym2Element]
    level4: list[Sym2Element]
    split: Callable  # adapted coordinates -> (level0, level2, level4) parts
    cucs_generator: Sym2Element
    spqr_generator: Sym2Element
    checks: dict[str, bool]

    def projector_matrices(self) -> tuple[Matrix, Matrix, Matrix]:
        """The three projectors as N x N matrices in adapted coordinates."""
        N = len(self.level0[0])
        cols = [[], [], []]
        for k in range(N):
            e = tuple(Fraction(int(i == k)) for i in range(N))
            for c, part in zip(cols, self.split(e)):
                c.append(part)
        return tuple(Matrix([list(r) for r in zip(*c)]) for c in cols)


def decompose_H4(L: Lattice, h: Sequence[int]) -> DecompositionReport:
    """Split Sym2 into (C h^2 + C q^dual) + (h (x) h-perp) + W(h).

    Work happens in adapted coordinates (h, beta_1, ..., beta_{n-1}); the
    q^dual-class is canonical so it can be computed there directly.
    """
    if norm(L, h) != 2:
        raise ValueError("decompose_H4 expects (h, h) = 2")
    A, basis, comp = _adapted(L, h)
    S = Sym2Space(A)
    n = A.rank
    N = S.dim
    qv = q_dual(A)
    h2 = S.monomial(0, 0)
    mixed = [S.monomial(0, i) for i in range(1, n)]
    pos = S.position

    # W(h): h-monomial coordinates vanish and the pairing with q^dual vanishes
    q_row = [S.pair_via_gram(S.monomial(*ij), qv) for ij in S.index]
    cond = [q_row] + [[Fraction(int(k == pos[(0, i)])) for k in range(N)] for i in range(n)]
    W = [tuple(v) for v in kernel_basis(Matrix(cond))]

    qh = S.add(qv, S.scale(Fraction(-1, 2), h2))  # q_h^dual, lies in Sym2(h-perp)
    qh_q = S.pair_via_gram(qh, qv)

    def split(x):
        a = x[pos[(0, 0)]]
        lvl2 = [Fraction(0)] * N
        s = list(x)
        s[pos[(0, 0)]] = Fraction(0)
        for i in range(1, n):
            k = pos[(0, i)]
            lvl2[k] = x[k]
            s[k] = Fraction(0)
        mu = sum((q_row[k] * s[k] for k in range(N) if s[k]), Fraction(0)) / qh_q
        lvl0 = S.add(S.scale(a, h2), S.scale(mu, qh))
        lvl4 = S.add(tuple(s), S.scale(-mu, qh))
        return lvl0, tuple(lvl2), lvl4

    def h_part_zero(x):
        return x[pos[(0, 0)]] == 0 and all(x[pos[(0, i)]] == 0 for i in range(1, n))

    hh = 2
    # x h^2 + y q with x (n+2)(h,h) + y n(n+2) = 0
    cucs = S.add(S.scale(n, h2), S.scale(-hh, qv))
    spqr = S.add(h2, S.scale(-hh, qv))
    # all pieces together span Sym2: block-triangular in adapted coordinates,
    # so independence reduces to q_h^dual not lying in W(h)
    checks = {
        "dims_sum": 2 + (n - 1) + len(W) == N,
        "q_not_orthogonal_to_sym2_hperp": qh_q != 0,
        "W_in_sym2_hperp": all(h_part_zero(w) for w in W),
        "W_orthogonal_to_q": all(S.pair_via_gram(w, qv) == 0 for w in W),
        "cucs_orthogonal_to_q": S.pair_via_gram(cucs, qv) == 0,
        "spqr_in_sym2_hperp": h_part_zero(spqr),
        "h2_q_independent": rank(Matrix([h2, qv])) == 2,
    }
    return DecompositionReport(
        dims=(2, n - 1, len(W)),
        basis=basis,
        level0=[h2, qv],
        level2=mixed,
        level4=W,
        split=split,
        cucs_generator=cucs,
        spqr_generator=spqr,
        checks=checks,
    )


# -- the lattice Omega(h) = Z h^2 + Z (2 q^dual / 5) ------------------------


@dataclass(frozen=True)
class OmegaReport:
    gram: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    disc: Fraction
    index_bound: int


def omega_lattice_disc(L: Lattice | None = None, h: Sequence[int] | None = None) -> OmegaReport:
    L = L or make_Lambda()
    if h is None:
        h = lambda_h(L)
    if norm(L, h) != 2:
        raise ValueError("omega lattice expects (h, h) = 2")
    S = Sym2Space(L)
    h2 = S.square(h)
    q5 = S.scale(Fraction(2, 5), q_dual(L))
    gens = (h2, q5)
    gram = tuple(tuple(S.pair(a, b) for b in gens) for a in gens)
    d = det(Matrix(gram))
    return OmegaReport(gram, d, largest_square_divisor_root(int(d)))


def lambda_h(L: Lattice | None = None) -> tuple[int, ...]:
    """The standard polarization h = e + f in the first U block of Lambda."""
    L = L or make_Lambda()
    v = [0] * L.rank
    v[0] = v[1] = 1
    return tuple(v)


@dataclass(frozen=True)
class HalfIntegerReport:
    beta: tuple[int, ...]
    beta_pairing: tuple[Fraction, Fraction]  # coefficients of (x, y)
    gamma_delta_cases: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[Fraction, Fraction], tuple[Fraction, Fraction]], ...]
    ok: bool


def half_integer_lattice_check(L: Lattice | None = None, h: Sequence[int] | None = None, beta=None) -> HalfIntegerReport:
    """Pair x h^2 + y (2 q^dual/5) against beta^2 and gamma*delta as linear forms in (x, y).

    Expected: beta^2 gives 2x; gamma*delta with (gamma, delta) = 1 gives
    2x(1 + (h,gamma)(h,delta)) + 10y.
    """
    from .lattice import find_isotropic_partner

    L = L or make_Lambda()
    h = tuple(h or lambda_h(L))
    S = Sym2Space(L)
    h2 = S.square(h)
    q5 = S.scale(Fraction(2, 5), q_dual(L))
    beta = tuple(beta or find_isotropic_partner(L, h))

    def coeffs(z):
        return (S.pair(h2, z), S.pair(q5, z))

    bp = coeffs(S.square(beta))
    ok = bp == (2, 0)
    cases = []
    n = L.rank
    for (a, b) in [(2, 3), (0, 1), (4, 5)]:
        if a >= n:
            continue
        g = tuple(int(k == a) for k in range(n))
        d = tuple(int(k == b) for k in range(n))
        if pairing(L, g, d) != 1:
            continue
        got = coeffs(S.product(g, d))
        expected = (Fraction(2 * (1 + pairing(L, h, g) * pairing(L, h, d))), Fraction(10))
        ok = ok and got == expected
        cases.append((g, d, got, expected))
    return HalfIntegerReport(beta, bp, tuple(cases), ok)


# -- square classes of the two Gram determinants on h (x) h-perp -------------


def cubic_fourfold_primitive_lattice() -> Lattice:
    """A rank-22 even lattice of |disc| 3: E8 + E8 + U + U + A2."""
    E = make_E8()
    U = make_U()
    return direct_sum([E, E, U, U, make_A2()])


@dataclass(frozen=True)
class SquareClassReport:
    det_pullback: int
    det_h_times_hperp: int
    hperp_disc: int
    class_a: int
    class_b: int
    distinct: bool


def square_class_obstruction(L: Lattice | None = None, h: Sequence[int] | None = None) -> SquareClassReport:
    L = L or make_Lambda()
    h = tuple(h or lambda_h(L))
    prim = cubic_fourfold_primitive_lattice()
    # pull-back under a degree-4 map multiplies the intersection form by 4
    det_a = abs(int(det(prim.scaled(4).matrix())))
    comp = orthogonal_complement(L, h)
    S = Sym2Space(L)
    hb = [S.product(h, b) for b in comp.basis]
    gram = [[S.pair_via_gram(x, y) for y in hb] for x in hb]
    det_b = abs(int(det(Matrix(gram))))
    ca, cb = square_class(det_a), square_class(det_b)
    return SquareClassReport(det_a, det_b, abs(comp.lattice.det()), ca, cb, ca != cb)


def generic_identity_lattices(seed: int = 0, count: int = 20, max_rank: int = 6):
    """Seeded random nondegenerate integer Gram matrices of rank 1..max_rank."""
    import random

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = 1 + len(out) % max_rank
        rows = [[0] * n for _ in range(n)]
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            rows[i][j] = rows[j][i] = rng.randint(-5, 5)
        L = Lattice.from_rows(rows)
        if L.det() != 0:
            out.append(L)
    return out
