"""Sparse multivariate polynomials over Q and local analysis of plane curves.

Text format: a sum of terms ``coeff*X0^a0*X1^a1 ...`` where the coefficient
is an integer or a fraction ``p/q`` and factors may be separated by ``*`` or
whitespace.  ``MultiPoly.parse(str(p), p.nvars) == p`` always holds.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .exact_core import Matrix, as_scalar, kernel_basis, rank

Exponent = tuple[int, ...]


class PolyParseError(ValueError):
    pass


class DimensionError(ValueError):
    pass


class NotOnLocusError(ValueError):
    pass


class NonReducedError(ValueError):
    pass


class MultiPoly:
    """Polynomial in ``nvars`` variables; zero coefficients are never stored."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} has length {len(e)}, expected {nvars}")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent")
            c = as_scalar(c)
            if c:
                out[e] = out.get(e, Fraction(0)) + c
                if not out[e]:
                    del out[e]
        self._terms = out
        self._hash = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        return cls(nvars, {tuple(int(k == i) for k in range(nvars)): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        return cls(n, {tuple(int(k == i) for k in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, names: Sequence[str] | None = None) -> "MultiPoly":
        return _parse(text, nvars, names)

    # -- basic access --------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def content_denominator(self) -> int:
        return lcm(*(c.denominator for c in self._terms.values())) if self._terms else 1

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = as_scalar(other)
            return MultiPoly(self.nvars, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c) -> "MultiPoly":
        return self * (1 / as_scalar(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -----------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"variable index {i} out of range")
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def eval(self, x) -> Fraction:
        coords = x.coords if isinstance(x, ProjPoint) else tuple(as_scalar(v) for v in x)
        if len(coords) != self.nvars:
            raise DimensionError(f"point has {len(coords)} coordinates, polynomial has {self.nvars} variables")
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(coords, e):
                if k:
                    t *= v**k
                    if not t:
                        break
            total += t
        return total

    __call__ = eval

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose: replace X_i by images[i] (all in a common ring)."""
        if len(images) != self.nvars:
            raise DimensionError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        m = images[0].nvars
        if any(q.nvars != m for q in images):
            raise DimensionError("images live in different rings")
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            if (i, k) not in cache:
                cache[(i, k)] = MultiPoly.constant(m, 1) if k == 0 else power(i, k - 1) * images[i]
            return cache[(i, k)]

        out = MultiPoly.zero(m)
        acc: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            t = MultiPoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for f, v in t._terms.items():
                acc[f] = acc.get(f, Fraction(0)) + v
        out = MultiPoly(m, acc)
        return out

    def linear_change(self, matrix: Sequence[Sequence]) -> "MultiPoly":
        """P(M x): variable X_i becomes sum_j M[i][j] X_j."""
        return self.substitute([MultiPoly.linear(row) for row in matrix])

    def extend(self, nvars: int, positions: Sequence[int] | None = None) -> "MultiPoly":
        """Embed into a ring with more variables; X_i goes to X_{positions[i]}."""
        positions = list(range(self.nvars)) if positions is None else list(positions)
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for i, k in zip(positions, e):
                f[i] += k
            out[tuple(f)] = c
        return MultiPoly(nvars, out)

    def collect(self, i: int) -> dict[int, "MultiPoly"]:
        """Coefficients with respect to X_i (as polynomials still in nvars variables, X_i-free)."""
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            out.setdefault(k, {})[tuple(f)] = c
        return {k: MultiPoly(self.nvars, v) for k, v in out.items()}

    def scaled_integral(self) -> "MultiPoly":
        """Positive rational multiple with coprime integer coefficients and
        positive leading coefficient (largest exponent)."""
        if not self._terms:
            return self
        from math import gcd

        den = self.content_denominator()
        ints = {e: int(c * den) for e, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[max(ints)]
        s = g if lead > 0 else -g
        return MultiPoly(self.nvars, {e: Fraction(v, s) for e, v in ints.items()})

    def is_proportional(self, other: "MultiPoly") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.scaled_integral() == other.scaled_integral()

    # -- text -------------------------------------------------------------------

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"X{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self._terms[e]
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.format()!r})"


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z_]*\d*)|(?P<op>[-+*^()]))")


def _parse(text: str, nvars: int | None, names: Sequence[str] | None) -> MultiPoly:
    tokens = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _TOKEN_RE.match(stripped, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at {pos}: {stripped[pos:pos + 10]!r}")
        pos = m.end()
        if m["num"]:
            tokens.append(("num", Fraction(m["num"])))
        elif m["var"]:
            tokens.append(("var", m["var"]))
        else:
            tokens.append(("op", m["op"]))
    if not tokens:
        raise PolyParseError("empty polynomial")

    def var_index(name: str) -> int:
        if names is not None:
            if name not in names:
                raise PolyParseError(f"unknown variable {name!r}")
            return list(names).index(name)
        m = re.fullmatch(r"X(\d+)", name)
        if not m:
            raise PolyParseError(f"unknown variable {name!r}; expected X0, X1, ...")
        return int(m[1])

    # collect monomials as (coeff, {var: exp}); then size the ring
    terms: list[tuple[Fraction, dict[int, int]]] = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-" and expect_term:
            sign = -sign if val == "-" else sign
            i += 1
            continue
        if not expect_term:
            if kind == "op" and val in "+-":
                expect_term = True
                sign = 1
                continue
            raise PolyParseError(f"expected + or - near token {i}")
        coeff = Fraction(sign)
        exps: dict[int, int] = {}
        seen = False
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                v = var_index(val)
                k = 1
                if i + 1 < len(tokens) and tokens[i + 1] == ("op", "^"):
                    if i + 2 >= len(tokens) or tokens[i + 2][0] != "num" or tokens[i + 2][1].denominator != 1:
                        raise PolyParseError("exponent must be a nonnegative integer")
                    k = int(tokens[i + 2][1])
                    i += 2
                exps[v] = exps.get(v, 0) + k
                i += 1
            elif kind == "op" and val == "*":
                if not seen:
                    raise PolyParseError("dangling *")
                i += 1
                if i >= len(tokens) or tokens[i][0] not in ("num", "var"):
                    raise PolyParseError("dangling *")
                continue
            else:
                break
            seen = True
        if not seen:
            raise PolyParseError(f"empty term near token {i}")
        terms.append((coeff, exps))
        expect_term = False
        sign = 1
    if expect_term:
        raise PolyParseError("trailing operator")
    top = max((v for _, e in terms for v in e), default=-1) + 1
    if names is not None:
        top = max(top, len(names))
    n = top if nvars is None else nvars
    if n < top:
        raise DimensionError(f"polynomial uses {top} variables but nvars={n}")
    out: dict[Exponent, Fraction] = {}
    for c, e in terms:
        key = tuple(e.get(j, 0) for j in range(n))
        out[key] = out.get(key, Fraction(0)) + c
    return MultiPoly(n, out)


def variables(n: int) -> list[MultiPoly]:
    return [MultiPoly.var(n, i) for i in range(n)]


def monomials(n: int, d: int) -> list[Exponent]:
    """Exponent vectors of degree d in n variables, in descending lex order."""
    out = []
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    assert len(out) == comb(n + d - 1, d)
    return out


# -- projective points ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ProjPoint:
    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        cs = tuple(as_scalar(c) for c in coords)
        if not any(cs):
            raise ValueError("projective point with all coordinates zero")
        object.__setattr__(self, "coords", cs)

    @classmethod
    def parse(cls, text: str) -> "ProjPoint":
        try:
            return cls(Fraction(t.strip()) for t in text.split(","))
        except ValueError as exc:
            raise PolyParseError(f"bad point {text!r}: {exc}") from None

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def normalized(self) -> tuple[Fraction, ...]:
        lead = next(c for c in self.coords if c)
        return tuple(c / lead for c in self.coords)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return len(self.coords) == len(other.coords) and self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.normalized()) + "]"


def restrict_to_plane(p: MultiPoly, points: Sequence) -> MultiPoly:
    """Pull back along [u0:u1:u2] -> u0*P0 + u1*P1 + u2*P2."""
    pts = [tuple(ProjPoint(q).coords) if not isinstance(q, ProjPoint) else q.coords for q in points]
    if len(pts) != 3:
        raise DimensionError("a plane is parametrized by three points")
    if any(len(q) != p.nvars for q in pts):
        raise DimensionError("point dimension does not match the polynomial")
    if rank(Matrix(pts)) != 3:
        raise ValueError("parametrizing points are linearly dependent")
    images = [MultiPoly.linear([pts[k][i] for k in range(3)]) for i in range(p.nvars)]
    return p.substitute(images)


def restrict_to_line(p: MultiPoly, a: Sequence, b: Sequence) -> MultiPoly:
    """Pull back along [s:t] -> s*a + t*b; result in 2 variables."""
    if rank(Matrix([list(a), list(b)])) != 2:
        raise ValueError("line endpoints are dependent")
    images = [MultiPoly.linear([a[i], b[i]]) for i in range(p.nvars)]
    return p.substitute(images)


def jacobian_matrix(gens: Sequence[MultiPoly], x) -> Matrix:
    return Matrix([[g.partial(i).eval(x) for i in range(g.nvars)] for g in gens])


def jacobian_rank_at(gens: Sequence[MultiPoly], x) -> int:
    """Rank of the Jacobian of the generators at a point of their common zero locus."""
    for g in gens:
        if g.eval(x):
            raise NotOnLocusError(f"generator {g} does not vanish at {x}")
    return rank(jacobian_matrix(gens, x))


# -- univariate helpers (coefficient lists, lowest degree first) ------------

UPoly = list[Fraction]


def u_trim(p: Sequence) -> UPoly:
    p = [as_scalar(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def u_deg(p: Sequence) -> int:
    return len(u_trim(p)) - 1


def u_deriv(p: Sequence) -> UPoly:
    return u_trim([k * c for k, c in enumerate(p)][1:])


def u_mul(p: Sequence, q: Sequence) -> UPoly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return u_trim(out)


def u_divmod(p: Sequence, q: Sequence) -> tuple[UPoly, UPoly]:
    p, q = u_trim(p), u_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = list(p)
    while len(rem) >= len(q):
        k = len(rem) - len(q)
        c = rem[-1] / q[-1]
        quo[k] = c
        for i, b in enumerate(q):
            rem[i + k] -= c * b
        rem = u_trim(rem)
    return u_trim(quo), rem


def u_gcd(p: Sequence, q: Sequence) -> UPoly:
    a, b = u_trim(p), u_trim(q)
    while b:
        a, b = b, u_divmod(a, b)[1]
    return [c / a[-1] for c in a] if a else []


def u_squarefree_part(p: Sequence) -> UPoly:
    p = u_trim(p)
    if len(p) <= 1:
        return p
    g = u_gcd(p, u_deriv(p))
    return u_divmod(p, g)[0]


def u_eval(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def u_rational_roots(p: Sequence) -> list[Fraction]:
    """Distinct rational roots, by the rational root theorem."""
    p = u_trim(p)
    if not p:
        raise ValueError("the zero polynomial has every root")
    roots = []
    k = 0
    while not p[k]:
        k += 1
    if k:
        roots.append(Fraction(0))
    p = p[k:]
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> list[int]:
        return [d for d in range(1, n + 1) if n % d == 0]

    for num in divisors(a0):
        for dd in divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, dd)
                if r not in roots and u_eval(p, r) == 0:
                    roots.append(r)
    return sorted(roots)


def upoly_from_multi(p: MultiPoly, i: int = 0) -> UPoly:
    """Coefficient list in X_i of a polynomial involving only X_i."""
    out: dict[int, Fraction] = {}
    for e, c in p.items():
        if any(k for j, k in enumerate(e) if j != i):
            raise ValueError("polynomial involves other variables")
        out[e[i]] = c
    return u_trim([out.get(k, Fraction(0)) for k in range(max(out, default=-1) + 1)])


# -- binary forms -----------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    """sum_k coeffs[k] x^(d-k) y^k, homogeneous of degree d."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count does not match the degree")
        if not any(self.coeffs):
            raise ValueError("zero binary form")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "BinaryForm":
        if p.nvars != 2 or not p.is_homogeneous() or p.is_zero():
            raise ValueError("need a nonzero homogeneous polynomial in 2 variables")
        d = p.degree()
        return cls(d, tuple(p.coefficient((d - k, k)) for k in range(d + 1)))

    def to_poly(self) -> MultiPoly:
        return MultiPoly(2, {(self.degree - k, k): c for k, c in enumerate(self.coeffs)})

    def distinct_roots(self) -> int:
        """Number of distinct points of V(form) in P^1 over an algebraic closure."""
        # dehomogenize at y = 1: g(x) = sum c_k x^(d-k)
        g = u_trim(list(reversed(self.coeffs)))
        at_infinity = u_deg(g) < self.degree  # y divides the form
        return u_deg(u_squarefree_part(g)) + int(at_infinity)


# -- local analysis at a point ------------------------------------------------


def affine_chart(v: ProjPoint) -> int:
    """Index of the coordinate used to dehomogenize around v (last nonzero)."""
    return max(i for i, c in enumerate(v.coords) if c)


def local_expansion(p: MultiPoly, v) -> MultiPoly:
    """Expansion of p around v in affine coordinates (n-1 variables).

    With k = affine_chart(v) and v scaled so v_k = 1, set X_k = 1 and
    X_j = v_j + x_j for j != k.
    """
    v = v if isinstance(v, ProjPoint) else ProjPoint(v)
    if len(v) != p.nvars:
        raise DimensionError("point and polynomial dimensions differ")
    k = affine_chart(v)
    vs = [c / v.coords[k] for c in v.coords]
    m = p.nvars - 1
    images = []
    j = 0
    for i in range(p.nvars):
        if i == k:
            images.append(MultiPoly.constant(m, 1))
        else:
            images.append(MultiPoly.var(m, j) + vs[i])
            j += 1
    return p.substitute(images)


def multiplicity_at(p: MultiPoly, v) -> int:
    if p.eval(v):
        raise NotOnLocusError(f"polynomial does not vanish at {v}")
    loc = local_expansion(p, v)
    if loc.is_zero():
        raise ValueError("polynomial vanishes identically in the chart")
    return loc.min_degree()


def tangent_cone(curve: MultiPoly, v) -> BinaryForm:
    if curve.nvars != 3:
        raise DimensionError("tangent cones are computed for plane curves (3 variables)")
    m = multiplicity_at(curve, v)
    return BinaryForm.from_poly(local_expansion(curve, v).homogeneous_part(m))


def tangent_cone_distinct_factors(curve: MultiPoly, v) -> int:
    return tangent_cone(curve, v).distinct_roots()


def reducedness_certificate(curve: MultiPoly, box: int = 3) -> tuple[tuple, tuple] | None:
    """A line on which the curve restricts to a squarefree form of full degree.

    Such a line exists iff the curve is reduced; the search runs over
    endpoints with integer coordinates in [-box, box].
    """
    if not curve.is_homogeneous() or curve.is_zero():
        raise ValueError("need a nonzero homogeneous polynomial")
    d = curve.degree()
    n = curve.nvars
    pts = [pt for pt in itertools.product(range(-box, box + 1), repeat=n) if any(pt)]
    pts.sort(key=lambda pt: (sum(map(abs, pt)), pt))
    limit = min(len(pts), 60)
    for a, b in itertools.combinations(pts[:limit], 2):
        if rank(Matrix([a, b])) < 2:
            continue
        r = restrict_to_line(curve, a, b)
        if r.is_zero():
            continue
        form = BinaryForm.from_poly(r)
        if form.distinct_roots() == d:
            return a, b
    return None


@dataclass(frozen=True)
class DuValVerdict:
    accepted: bool
    multiplicity: int
    distinct_tangents: int
    reduced_certificate: tuple
    truncation: int

    @property
    def label(self) -> str:
        return "accepted" if self.accepted else "rejected"


def du_val_plane_criterion(curve: MultiPoly, v, truncation: int = 6) -> DuValVerdict:
    """Local test at v on a reduced branch curve D of a double plane.

    Accepted iff mult_v(D) <= 2, or mult_v(D) = 3 and the tangent cone has at
    least two distinct lines.  Multiplicities above ``truncation`` are not
    examined.
    """
    cert = reducedness_certificate(curve)
    if cert is None:
        raise NonReducedError("no reducedness certificate found (curve likely non-reduced)")
    m = multiplicity_at(curve, v)
    if m > truncation:
        raise ValueError(f"multiplicity {m} exceeds working degree {truncation}")
    t = tangent_cone_distinct_factors(curve, v)
    ok = m <= 2 or (m == 3 and t >= 2)
    return DuValVerdict(ok, m, t, cert, truncation)


def quadratic_form_matrix(q: MultiPoly) -> Matrix:
    if q.is_zero():
        return Matrix.zeros(q.nvars, q.nvars)
    if not q.is_homogeneous() or q.degree() != 2:
        raise ValueError("quadratic_form_rank needs a homogeneous degree-2 polynomial")
    n = q.nvars
    m = [[Fraction(0)] * n for _ in range(n)]
    for e, c in q.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            m[i][i] += c
        else:
            m[i][j] += c / 2
            m[j][i] += c / 2
    return Matrix(m)


def quadratic_form_rank(q: MultiPoly) -> int:
    return rank(quadratic_form_matrix(q))


# -- linear systems of hypersurfaces along a parametrized curve ------------


def curve_monomial_table(gamma: Sequence[Sequence], d: int, length: int) -> dict[Exponent, UPoly]:
    """t-expansions of every degree-d monomial along gamma, padded to ``length``."""
    n = len(gamma)
    table = {}
    powers: dict[tuple[int, int], UPoly] = {}

    def pw(i: int, k: int) -> UPoly:
        if (i, k) not in powers:
            powers[(i, k)] = [Fraction(1)] if k == 0 else u_mul(pw(i, k - 1), u_trim(gamma[i]))
        return powers[(i, k)]

    for e in monomials(n, d):
        acc: UPoly = [Fraction(1)]
        for i, k in enumerate(e):
            if k:
                acc = u_mul(acc, pw(i, k))
        row = list(acc[:length]) + [Fraction(0)] * max(0, length - len(acc))
        table[e] = row
    return table


def linear_conditions_matrix(
    d: int,
    gamma: Sequence[Sequence],
    double: bool = True,
    truncation: int | None = None,
) -> tuple[Matrix, list[Exponent]]:
    """Rows: t-coefficients 0..truncation of P(gamma(t)) (and of each
    dP/dX_i(gamma(t)) if ``double``); columns: degree-d monomials."""
    n = len(gamma)
    deg_gamma = max(u_deg(g) for g in gamma)
    bound = d * deg_gamma
    trunc = bound if truncation is None else truncation
    length = trunc + 1
    mons = monomials(n, d)
    rows: list[list[Fraction]] = []
    vals = curve_monomial_table(gamma, d, length)
    for k in range(length):
        rows.append([vals[e][k] for e in mons])
    if double and d >= 1:
        lower = curve_monomial_table(gamma, d - 1, length)
        for i in range(n):
            block = [[Fraction(0)] * len(mons) for _ in range(length)]
            for col, e in enumerate(mons):
                if e[i]:
                    f = list(e)
                    f[i] -= 1
                    series = lower[tuple(f)]
                    for k in range(length):
                        if series[k]:
                            block[k][col] = e[i] * series[k]
            rows.extend(block)
    return Matrix(rows, len(mons)), mons


def linear_conditions_dim(
    d: int,
    n: int,
    gamma: Sequence[Sequence],
    double: bool = True,
    truncation: int | None = None,
) -> int:
    """Dimension of degree-d forms in n variables vanishing (doubly if
    ``double``) along the curve t -> gamma(t).

    ``gamma`` lists n coefficient vectors (lowest power first).  The answer
    stabilizes once ``truncation`` reaches d * deg(gamma), the default.
    """
    if len(gamma) != n:
        raise DimensionError("gamma must have n coordinates")
    m, mons = linear_conditions_matrix(d, gamma, double, truncation)
    return len(mons) - rank(m)


def linear_conditions_kernel(
    d: int, gamma: Sequence[Sequence], double: bool = True
) -> list[MultiPoly]:
    m, mons = linear_conditions_matrix(d, gamma, double)
    n = len(gamma)
    return [MultiPoly(n, dict(zip(mons, v))) for v in kernel_basis(m)]


def rnc(d: int) -> list[UPoly]:
    """t -> [1, t, ..., t^d]."""
    return [[Fraction(int(i == k)) for i in range(k + 1)] for k in range(d + 1)]


def in_span(p: MultiPoly, basis: Sequence[MultiPoly]) -> bool:
    """Whether p is a linear combination of ``basis``."""
    keys = sorted({e for q in (*basis, p) for e, _ in q.items()})
    base = Matrix([[q.coefficient(e) for e in keys] for q in basis], len(keys)) if basis else None
    r0 = rank(base) if base is not None else 0
    full = Matrix([[q.coefficient(e) for e in keys] for q in (*basis, p)], len(keys))
    return rank(full) == r0


# -- determinants of polynomial matrices -------------------------------------


def poly_det(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by Laplace expansion along rows with memoized minors."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    nv = m[0][0].nvars
    memo: dict[tuple[int, ...], MultiPoly] = {}

    def minor(row: int, cols: tuple[int, ...]) -> MultiPoly:
        if row == n:
            return MultiPoly.constant(nv, 1)
        if cols in memo:
            return memo[cols]
        acc = MultiPoly.zero(nv)
        for pos, c in enumerate(cols):
            entry = m[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))
