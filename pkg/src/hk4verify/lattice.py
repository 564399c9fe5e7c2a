"""Integral lattices given by Gram matrices.

Building blocks: the hyperbolic plane U, the negative E8 lattice, rank-one
lattices <n>, and orthogonal direct sums.  ``make_Lambda`` returns
U^3 + E8(-1)^2 + <-2>, the second cohomology lattice of a Hilbert square of
a K3 surface.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

from .exact_core import (
    Matrix,
    block_diagonal,
    det,
    inertia,
    integer_kernel,
    invariant_factors,
)


class SearchExhausted(LookupError):
    """A bounded search found nothing; this is not a nonexistence proof."""


LatVector = tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows, name: str = "") -> "Lattice":
        return cls(tuple(tuple(int(x) for x in r) for r in rows), name)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> Matrix:
        return Matrix(self.gram, self.rank)

    def det(self) -> int:
        return int(det(self.matrix()))

    def signature(self) -> tuple[int, int, int]:
        return inertia(self.matrix())

    def invariant_factors(self) -> list[int]:
        return invariant_factors(self.gram)

    def basis_vector(self, i: int) -> LatVector:
        return tuple(int(k == i) for k in range(self.rank))

    def scaled(self, k: int) -> "Lattice":
        return Lattice.from_rows([[k * x for x in r] for r in self.gram], f"{self.name}({k})")

    def __add__(self, other: "Lattice") -> "Lattice":
        return direct_sum([self, other])


def make_U() -> Lattice:
    return Lattice(((0, 1), (1, 0)), "U")


# Cartan matrix of E8 (Bourbaki labelling, node 2 attached to node 4).
_E8_CARTAN = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)

_A2_CARTAN = ((2, -1), (-1, 2))


def make_E8() -> Lattice:
    return Lattice(_E8_CARTAN, "E8")


def make_E8_neg() -> Lattice:
    return make_E8().scaled(-1)


def make_A2() -> Lattice:
    return Lattice(_A2_CARTAN, "A2")


def make_rank1(n: int) -> Lattice:
    return Lattice(((n,),), f"<{n}>")


def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    m = block_diagonal([p.matrix() for p in parts])
    return Lattice.from_rows(m.to_int_rows(), " + ".join(p.name for p in parts))


def make_Lambda() -> Lattice:
    U = make_U()
    E = make_E8_neg()
    lam = direct_sum([U, U, U, E, E, make_rank1(-2)])
    return Lattice(lam.gram, "Lambda")


# Coordinates of the standard blocks inside make_Lambda().
LAMBDA_U_BLOCKS = ((0, 1), (2, 3), (4, 5))
LAMBDA_E8_BLOCKS = (tuple(range(6, 14)), tuple(range(14, 22)))
LAMBDA_DELTA = 22


def vector(rank: int, coords: dict[int, int]) -> LatVector:
    v = [0] * rank
    for i, c in coords.items():
        v[i] = c
    return tuple(v)


def _check_dims(L: Lattice, *vs):
    for v in vs:
        if len(v) != L.rank:
            raise ValueError(f"vector of length {len(v)} in a rank-{L.rank} lattice")


def dual_row(L: Lattice, v: Sequence[int]) -> list[int]:
    """The row v^T G, i.e. the pairings of v with the basis."""
    _check_dims(L, v)
    g = L.gram
    n = L.rank
    return [sum(v[i] * g[i][j] for i in range(n) if v[i]) for j in range(n)]


def pairing(L: Lattice, v: Sequence[int], w: Sequence[int]) -> int:
    _check_dims(L, v, w)
    row = dual_row(L, v)
    return sum(a * b for a, b in zip(row, w))


def norm(L: Lattice, v: Sequence[int]) -> int:
    return pairing(L, v, v)


def divisibility(L: Lattice, v: Sequence[int]) -> int:
    """gcd of (v, w) over the lattice; an O(L)-orbit invariant."""
    if not any(v):
        raise ValueError("divisibility of the zero vector")
    d = math.gcd(*dual_row(L, v))
    if d == 0:
        raise ValueError("vector lies in the radical")
    return d


def is_primitive(v: Sequence[int]) -> bool:
    return math.gcd(*v) == 1


def orbit_invariants(L: Lattice, v: Sequence[int]) -> tuple[int, int, bool]:
    """(norm, divisibility, primitive).

    Agreement of these triples is necessary for two vectors to be in the same
    O(L)-orbit; when L contains U + U (Eichler) it is also sufficient for
    primitive vectors.
    """
    if not any(v):
        raise ValueError("orbit invariants of the zero vector")
    return norm(L, v), divisibility(L, v), is_primitive(v)


@dataclass(frozen=True)
class Complement:
    lattice: Lattice
    basis: tuple[LatVector, ...]


def orthogonal_complement(L: Lattice, v: Sequence[int]) -> Complement:
    """Saturated sublattice {w in L : (v, w) = 0} with a Z-basis and its Gram."""
    _check_dims(L, v)
    if not is_primitive(v):
        raise ValueError("orthogonal_complement needs a primitive vector")
    if norm(L, v) == 0:
        raise ValueError("orthogonal_complement needs (v, v) != 0")
    row = dual_row(L, v)
    basis = [tuple(b) for b in integer_kernel(row)]
    gram = [[pairing(L, a, b) for b in basis] for a in basis]
    return Complement(Lattice.from_rows(gram, f"{L.name or 'L'} perp"), tuple(basis))


def enumerate_square_vectors(
    L: Lattice,
    target: int,
    box: int,
    support: Sequence[int] | None = None,
) -> list[LatVector]:
    """Nonzero v with entries in [-box, box] on ``support`` (zero elsewhere)
    and (v, v) = target, in lexicographic order of the support coordinates.

    The default support is every coordinate, which is only practical for
    small ranks.
    """
    if box < 1:
        raise ValueError("box must be >= 1")
    idx = list(range(L.rank)) if support is None else list(support)
    g = L.gram
    sub = [[g[i][j] for j in idx] for i in idx]
    k = len(idx)
    out = []
    for coeffs in itertools.product(range(-box, box + 1), repeat=k):
        if not any(coeffs):
            continue
        nrm = 0
        for a in range(k):
            ca = coeffs[a]
            if ca:
                ra = sub[a]
                nrm += ca * (ra[a] * ca + 2 * sum(ra[b] * coeffs[b] for b in range(a + 1, k) if coeffs[b]))
        if nrm == target:
            v = [0] * L.rank
            for i, c in zip(idx, coeffs):
                v[i] = c
            out.append(tuple(v))
    return out


def find_isotropic_partner(L: Lattice, alpha: Sequence[int], box: int = 3, max_support: int = 3) -> LatVector:
    """Find beta with (alpha, beta) = 1 and (beta, beta) = 0.

    Searches vectors supported on at most ``max_support`` coordinates with
    entries in [-box, box], smallest supports first.
    """
    _check_dims(L, alpha)
    row = dual_row(L, alpha)
    g = L.gram
    values = [c for c in range(-box, box + 1) if c]
    for k in range(1, max_support + 1):
        for idx in itertools.combinations(range(L.rank), k):
            if not any(row[i] for i in idx):
                continue
            for coeffs in itertools.product(values, repeat=k):
                if sum(row[i] * c for i, c in zip(idx, coeffs)) != 1:
                    continue
                nrm = sum(g[i][j] * ci * cj for i, ci in zip(idx, coeffs) for j, cj in zip(idx, coeffs))
                if nrm == 0:
                    beta = [0] * L.rank
                    for i, c in zip(idx, coeffs):
                        beta[i] = c
                    beta = tuple(beta)
                    assert pairing(L, alpha, beta) == 1 and norm(L, beta) == 0
                    return beta
    raise SearchExhausted(f"no isotropic partner within box {box}, support <= {max_support}")


_TOKEN = re.compile(
    r"""\s*(?:(?P<mult>\d+)\s*\*?\s*)?
        (?:
            (?P<name>U|E8|A2)(?:\((?P<twist>[+-]?\d+)\))?
          | <(?P<rank1>[+-]?\d+)>
        )\s*""",
    re.VERBOSE,
)


def parse_lattice(text: str) -> Lattice:
    """Parse expressions like ``U + U + U + E8(-1) + E8(-1) + <-2>``.

    Summands: ``U``, ``E8``, ``A2``, each with an optional twist ``(n)``
    scaling the form, and rank-one lattices ``<n>``; ``3U`` or ``3*U``
    repeat a summand.
    """
    parts: list[Lattice] = []
    for chunk in text.split("+"):
        if not chunk.strip():
            raise ValueError(f"empty summand in {text!r}")
        m = _TOKEN.fullmatch(chunk)
        if m is None:
            raise ValueError(f"cannot parse lattice summand {chunk.strip()!r}")
        if m["rank1"] is not None:
            lat = make_rank1(int(m["rank1"]))
        else:
            lat = {"U": make_U, "E8": make_E8, "A2": make_A2}[m["name"]]()
            if m["twist"] is not None and int(m["twist"]) != 1:
                lat = lat.scaled(int(m["twist"]))
        parts.extend([lat] * int(m["mult"] or 1))
    return direct_sum(parts)
