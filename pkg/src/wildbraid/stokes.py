"""Verifier for the explicit SL_3 braiding action on Stokes representations.

A Stokes tuple is (h, B^1_1, B^1_3, B^2_1, B^2_2, B^2_3, B^2_4), seven 3x3
matrices of exact rationals with determinant 1, h diagonal, subject to the
relation

    h . (B^1_3 B^1_1) . (B^2_4 B^2_3 B^2_2 B^2_1) = 1.

Two commuting actions are verified entrywise:

    sigma: level-2 entries cycle two steps with an h1-conjugation,
           h1 = h B^1_3 B^1_1;
    tau1:  the level-1 pair shuffles through an h-conjugation and the
           level-2 entries are conjugated by b1 = B^1_1.

The matrices are arbitrary determinant-1 rationals (no unipotent shape is
enforced): the relation and the commutation/equivariance properties do not
depend on triangularity, so the verifier checks them in full generality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

Mat = tuple[tuple[Fraction, ...], ...]


def mat(rows) -> Mat:
    m = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise ValueError("3x3 matrix required")
    return m


IDENTITY: Mat = mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def mmul(*ms: Mat) -> Mat:
    out = ms[0]
    for m in ms[1:]:
        out = tuple(
            tuple(sum(out[i][k] * m[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )
    return out


def mdet(m: Mat) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def minv(m: Mat) -> Mat:
    d = mdet(m)
    if d == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [
        [
            (m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3])
            - (m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3])
            for i in range(3)
        ]
        for j in range(3)
    ]
    return tuple(tuple(c / d for c in row) for row in cof)


def is_diagonal(m: Mat) -> bool:
    return all(m[i][j] == 0 for i in range(3) for j in range(3) if i != j)


def diagonal(a, b, c) -> Mat:
    return mat([[a, 0, 0], [0, b, 0], [0, 0, c]])


@dataclass(frozen=True)
class StokesTuple:
    """(h, B^1_1, B^1_3, B^2_1, B^2_2, B^2_3, B^2_4), dets 1, h diagonal.

    The quasi moment-map relation is checked by relation_holds(); it is not
    enforced at construction so that deliberately corrupted tuples can be run
    through the verifier as negative controls.
    """

    h: Mat
    b11: Mat
    b31: Mat
    b12: Mat
    b22: Mat
    b32: Mat
    b42: Mat

    def __post_init__(self):
        for name, m in self.entries():
            if mdet(m) != 1:
                raise ValueError(f"determinant of {name} must be 1")
        if not is_diagonal(self.h):
            raise ValueError("h must be diagonal")

    def entries(self) -> list[tuple[str, Mat]]:
        return [
            ("h", self.h),
            ("B1^1", self.b11),
            ("B3^1", self.b31),
            ("B1^2", self.b12),
            ("B2^2", self.b22),
            ("B3^2", self.b32),
            ("B4^2", self.b42),
        ]

    def relation_holds(self) -> bool:
        return (
            mmul(self.h, self.b31, self.b11, self.b42, self.b32, self.b22, self.b12)
            == IDENTITY
        )

    def validate(self) -> None:
        if not self.relation_holds():
            raise ValueError("quasi moment-map relation violated")


def solve_relation(h: Mat, b11: Mat, b31: Mat, b12: Mat, b22: Mat, b32: Mat) -> StokesTuple:
    """Fill in B^2_4 so the relation holds exactly."""
    b42 = mmul(minv(mmul(h, b31, b11)), minv(mmul(b32, b22, b12)))
    t = StokesTuple(h, b11, b31, b12, b22, b32, b42)
    t.validate()
    return t


def act_sigma(t: StokesTuple) -> StokesTuple:
    """Level-2 generator: (B^2_*) -> (B^2_3, B^2_4, h1^-1 B^2_1 h1, h1^-1 B^2_2 h1)."""
    h1 = mmul(t.h, t.b31, t.b11)
    h1i = minv(h1)
    return StokesTuple(
        t.h,
        t.b11,
        t.b31,
        t.b32,
        t.b42,
        mmul(h1i, t.b12, h1),
        mmul(h1i, t.b22, h1),
    )


def act_tau1(t: StokesTuple) -> StokesTuple:
    """Level-1 generator: (B^1_1, B^1_3) -> (B^1_3, h^-1 b1 h), level 2 conjugated by b1."""
    b1 = t.b11
    b1i = minv(b1)
    return StokesTuple(
        t.h,
        t.b31,
        mmul(minv(t.h), b1, t.h),
        mmul(b1, t.b12, b1i),
        mmul(b1, t.b22, b1i),
        mmul(b1, t.b32, b1i),
        mmul(b1, t.b42, b1i),
    )


def conjugate_tuple(d: Mat, t: StokesTuple) -> StokesTuple:
    """Simultaneous conjugation of every entry by a diagonal d."""
    di = minv(d)
    conj = lambda m: mmul(d, m, di)
    return StokesTuple(*(conj(m) for _, m in t.entries()))


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[tuple[str, str]]:
        return [(name, detail) for name, ok, detail in self.checks if not ok]


def verify_properties(t: StokesTuple, rng: random.Random | None = None) -> VerificationReport:
    """Check relation preservation, commutation, and torus equivariance for t."""
    rng = rng or random.Random(7)
    checks: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str = ""):
        checks.append((name, ok, detail))

    ok0 = t.relation_holds()
    check("relation", ok0, "" if ok0 else f"violated by {t}")
    st, tt = act_sigma(t), act_tau1(t)
    check("sigma preserves relation", st.relation_holds())
    check("tau1 preserves relation", tt.relation_holds())
    check("actions commute", act_tau1(st) == act_sigma(tt))
    for name, m in st.entries() + tt.entries():
        if mdet(m) != 1:
            check("determinants preserved", False, f"{name} has det {mdet(m)}")
            break
    else:
        check("determinants preserved", True)
    for _ in range(3):
        a, b = _nonzero_rational(rng), _nonzero_rational(rng)
        d = diagonal(a, b, 1 / (a * b))
        equi = conjugate_tuple(d, act_sigma(t)) == act_sigma(conjugate_tuple(d, t)) and (
            conjugate_tuple(d, act_tau1(t)) == act_tau1(conjugate_tuple(d, t))
        )
        if not equi:
            check("torus equivariance", False, f"fails for d = diag({a},{b},{1/(a*b)})")
            break
    else:
        check("torus equivariance", True)
    return VerificationReport(tuple(checks))


def _nonzero_rational(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 2, 3])
    return Fraction(num, den)


def _shear_product(rng: random.Random, factors: int = 3) -> Mat:
    """Random determinant-1 matrix: product of elementary shears I + c E_ij."""
    m = IDENTITY
    for _ in range(factors):
        i, j = rng.sample(range(3), 2)
        rows = [[Fraction(int(a == b)) for b in range(3)] for a in range(3)]
        rows[i][j] = _nonzero_rational(rng)
        m = mmul(m, mat(rows))
    return m


def random_tuple(rng: random.Random) -> StokesTuple:
    """Random exact tuple satisfying the relation, via solve_relation."""
    a, b = _nonzero_rational(rng), _nonzero_rational(rng)
    h = diagonal(a, b, 1 / (a * b))
    return solve_relation(
        h,
        _shear_product(rng),
        _shear_product(rng),
        _shear_product(rng),
        _shear_product(rng),
        _shear_product(rng),
    )
