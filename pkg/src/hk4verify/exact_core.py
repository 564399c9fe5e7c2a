"""Exact rational scalars and dense matrix algebra.

Everything here works over ``fractions.Fraction`` (or plain ``int`` where the
input is integral).  No floating point is used anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction


class NotSquareError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Matrix:
    """Rectangular matrix of exact rationals.

    Entries are stored row-major as lists of ``Fraction``.  Instances are
    treated as immutable values; none of the functions in this module modify
    their arguments.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = [[as_scalar(x) for x in row] for row in rows]
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix")
        else:
            width = ncols or 0
        self.rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def diagonal(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        r = self.rows
        return all(r[i][j] == r[j][i] for i in range(self.nrows) for j in range(i))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    def transpose(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.rows)], self.nrows)

    T = property(transpose)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix([[c * x for x in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        brows = other.rows
        width = other.ncols
        for row in self.rows:
            acc = [Fraction(0)] * width
            for k, a in enumerate(row):
                if a:
                    bk = brows[k]
                    for j in range(width):
                        b = bk[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix(out, width)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        vv = [as_scalar(x) for x in v]
        return [sum((a * b for a, b in zip(row, vv) if a and b), Fraction(0)) for row in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], len(cols))

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.rows]


def block_diagonal(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    out = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(out, m)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m: Matrix) -> Fraction:
    """Exact determinant.

    Integer matrices go through Bareiss fraction-free elimination; rational
    ones are scaled to integers first (row-wise common denominators).
    """
    if not m.is_square():
        raise NotSquareError(f"det of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for r in m.rows:
        den = math.lcm(*(x.denominator for x in r))
        scale /= den
        rows.append([int(x * den) for x in r])
    return Fraction(_bareiss(rows)) * scale


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [r[:] for r in m.rows]
    ncols = m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        inv = 1 / pr[c]
        nz = [j for j in range(c, ncols) if pr[j]]
        for j in nz:
            pr[j] *= inv
        for i in range(len(a)):
            if i != r:
                f = a[i][c]
                if f:
                    ri = a[i]
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[list[Fraction]]:
    """Basis of the right null space {x : m x = 0}."""
    rows, pivots = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> list[Fraction]:
    """One particular solution of m x = b; raises if inconsistent."""
    aug = Matrix([list(r) + [as_scalar(bi)] for r, bi in zip(m.rows, b)])
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        raise ValueError("inconsistent linear system")
    x = [Fraction(0)] * m.ncols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return x


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise NotSquareError(f"inverse of non-square {m.shape} matrix")
    n = m.nrows
    aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)])
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return Matrix([r[n:] for r in rows], n)


def inertia(m: Matrix) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) by congruence diagonalization.

    Zero diagonal with a nonzero off-diagonal entry is handled as a 2x2
    hyperbolic block, which contributes one positive and one negative
    direction.
    """
    if not m.is_symmetric():
        raise NotSymmetricError("inertia needs a symmetric matrix")
    a = [r[:] for r in m.rows]
    n = m.nrows
    active = list(range(n))
    pos = neg = zero = 0

    def eliminate(block: list[int]):
        # Schur complement of `block` in the active index set.
        rest = [i for i in active if i not in block]
        sub = Matrix([[a[i][j] for j in block] for i in block])
        sub_inv = inverse(sub)
        coup = [[a[i][j] for j in block] for i in rest]
        # w_i = coup_i * sub_inv
        w = [[sum(ci[k] * sub_inv.rows[k][l] for k in range(len(block))) for l in range(len(block))] for ci in coup]
        for x, i in enumerate(rest):
            for y, j in enumerate(rest):
                if y < x:
                    continue
                delta = sum(w[x][l] * coup[y][l] for l in range(len(block)))
                if delta:
                    a[i][j] -= delta
                    if i != j:
                        a[j][i] = a[i][j]
        for i in block:
            active.remove(i)

    while active:
        d = next((i for i in active if a[i][i]), None)
        if d is not None:
            if a[d][d] > 0:
                pos += 1
            else:
                neg += 1
            eliminate([d])
            continue
        pair = next(((i, j) for i in active for j in active if j > i and a[i][j]), None)
        if pair is None:
            zero += len(active)
            break
        pos += 1
        neg += 1
        eliminate(list(pair))
    return pos, neg, zero


def _int_rows(m) -> list[list[int]]:
    if isinstance(m, Matrix):
        return m.to_int_rows()
    return [[int(x) for x in r] for r in m]


def smith_normal_form(m) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form of an integer matrix.

    Returns ``(d, U, V)`` with ``U m V`` diagonal with entries ``d`` (padded
    with zeros to the full shape), ``d[i] | d[i+1]``, and U, V unimodular.
    Invariant factors are returned nonnegative.
    """
    a = _int_rows(m)
    nr = len(a)
    nc = len(a[0]) if a else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in V:
                r[dst] += k * r[src]

    t = 0
    while t < min(nr, nc):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    d = [a[i][i] for i in range(min(nr, nc))]
    return d, Matrix(U), Matrix(V)


def invariant_factors(m) -> list[int]:
    return smith_normal_form(m)[0]


def integer_kernel(row: Sequence[int]) -> list[list[int]]:
    """Z-basis of {x in Z^n : row . x = 0}; saturated by construction."""
    d, _, V = smith_normal_form([list(row)])
    vr = V.to_int_rows()
    n = len(row)
    start = 1 if d and d[0] else 0
    return [[vr[i][j] for i in range(n)] for j in range(start, n)]


def complete_to_unimodular(v: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix whose last column is the primitive vector v."""
    if math.gcd(*v) != 1:
        raise ValueError("vector is not primitive")
    d, _, V = smith_normal_form([list(v)])
    # [1,0,...,0] = U v^T-row V  =>  v = u^{-1} * (first row of V^{-1})
    vinv = inverse(V).to_int_rows()
    first = vinv[0]
    sgn = 1 if first == list(v) else -1
    n = len(v)
    cols = [[sgn * x for x in first]] + [vinv[i] for i in range(1, n)]
    cols = cols[1:] + cols[:1]
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    if abs(det(Matrix(mat))) != 1:
        raise AssertionError("completion is not unimodular")
    return mat


def _squarefree_int(n: int) -> int:
    """Squarefree part of a positive integer (trial division)."""
    out = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
        p += 1 if p == 2 else 2
    return out * n


def square_class(x) -> int:
    """Squarefree integer s with x = s * (rational square); sign kept."""
    x = as_scalar(x)
    if x == 0:
        raise ValueError("square class of zero is undefined")
    sgn = 1 if x > 0 else -1
    # x = a/b ~ a*b modulo squares
    return sgn * _squarefree_int(abs(x.numerator) * x.denominator)


def largest_square_divisor_root(n: int) -> int:
    """Largest k with k^2 | n."""
    n = abs(n)
    k = 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return k
