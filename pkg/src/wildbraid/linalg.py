"""Small exact linear algebra over the rationals.

Everything here works on tuples of ``fractions.Fraction`` (or ints), sized
for root-system computations: matrices have at most a few dozen rows and at
most ~10 columns, so plain Gaussian elimination is more than enough.  No
floating point anywhere; rank, span and kernel questions must be decided
exactly because they encode discrete invariants.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]


def vec(values) -> Vec:
    return tuple(Fraction(v) for v in values)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def scale(u, c) -> Vec:
    return tuple(Fraction(c) * a for a in u)


def add(u, v) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u, v) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def is_zero(u) -> bool:
    return all(a == 0 for a in u)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy); returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows) -> int:
    reduced, _ = rref([list(r) for r in rows])
    return len(reduced)


def in_row_space(reduced: list[list[Fraction]], pivots: list[int], v) -> bool:
    """Membership of v in the span of an rref basis."""
    w = list(map(Fraction, v))
    for row, p in zip(reduced, pivots):
        if w[p] != 0:
            f = w[p]
            w = [x - f * y for x, y in zip(w, row)]
    return all(x == 0 for x in w)


def nullspace(rows, ncols: int) -> list[Vec]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    reduced, pivots = rref([list(r) for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vec] = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[fc]
        basis.append(tuple(x))
    return basis


def primitive(v) -> tuple[int, ...]:
    """Scale a nonzero rational covector to primitive integers, first nonzero > 0.

    This is the canonical representative of a hyperplane: denominators are
    cleared, the gcd divided out, and the overall sign fixed.
    """
    fracs = [Fraction(x) for x in v]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("primitive() called on the zero covector")
    ints = [a // g for a in ints]
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        ints = [-a for a in ints]
    return tuple(ints)
