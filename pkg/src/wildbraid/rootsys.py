"""Classical root systems and Levi-subsystem combinatorics, exactly.

Coordinate realizations (all integer covectors):

* ``A_n``   in ``C^{n+1}``: the differences ``e_i - e_j`` (Cartan elements are
  trace-free).
* ``B_n``   in ``C^n``: ``+-e_i +- e_j`` and the short roots ``+-e_i``.
* ``C_n``   in ``C^n``: ``+-e_i +- e_j`` and the long roots ``+-2e_i``.
* ``D_n``   in ``C^n``: ``+-e_i +- e_j`` only.
* ``G2``    in the sum-zero subspace of ``C^3``: short ``e_i - e_j`` and long
  ``2e_i - e_j - e_k``.

A Levi subsystem (annihilator of a Cartan element) of a classical system is
described by a *signed fusion* of the coordinate set: coordinates are glued
in pairs ``x_i = +-x_j`` by the two-entry roots, and pinned to zero by the
one-entry roots of B/C or by a sign conflict (the reducible "D_2 pair"
``e_i - e_j, e_i + e_j``).  That fusion drives the kernel bases, the induced
coordinate partitions, and the classification of restricted hyperplane
arrangements against the model families A / BC / D / exotic (B_r/C_r)D_s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import linalg

FAMILIES = ("A", "B", "C", "D", "G2")

ARRANGEMENT_KINDS = ("Empty", "TypeA", "TypeBC", "TypeD", "Exotic", "G2Full")


class UnsupportedRankError(ValueError):
    """Raised by build_root_system for an unsupported family/rank combination."""


class SubsystemError(ValueError):
    """Raised when a set of roots fails root-subsystem validation."""


class ClassificationError(ValueError):
    """Raised when a restricted arrangement does not match any model family."""


# ---------------------------------------------------------------------------
# Root systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    ambient_dim: int
    roots: tuple[tuple[int, ...], ...]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {r: i for i, r in enumerate(self.roots)}

    def index_of(self, root: tuple[int, ...]) -> int:
        return self._index[root]

    def contains(self, vector: tuple[int, ...]) -> bool:
        return vector in self._index

    @cached_property
    def positive_indices(self) -> tuple[int, ...]:
        """Indices of the lexicographically positive roots (one per +- pair)."""
        return tuple(i for i, r in enumerate(self.roots) if _lex_positive(r))

    @cached_property
    def negation(self) -> tuple[int, ...]:
        return tuple(self._index[tuple(-c for c in r)] for r in self.roots)

    def __repr__(self) -> str:  # pragma: no cover
        return f"RootSystem({self.family}{self.rank})"


def _lex_positive(r: tuple[int, ...]) -> bool:
    for c in r:
        if c != 0:
            return c > 0
    return False


def dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def cartan_int(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Cartan number <a, b^vee> = 2(a,b)/(b,b); integral for roots."""
    num = 2 * dot(a, b)
    den = dot(b, b)
    q, rem = divmod(num, den)
    if rem:
        raise SubsystemError(f"non-integral Cartan number for {a}, {b}")
    return q


def reflect(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Reflection s_b(a) = a - <a,b^vee> b."""
    c = cartan_int(a, b)
    return tuple(x - c * y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Construct the root system in its standard coordinate realization.

    Roots are lex-sorted for a deterministic ordering.  D needs rank >= 2
    (D_1 is empty and rejected); G2 forces rank 2.
    """
    if family not in FAMILIES:
        raise UnsupportedRankError(f"unknown family {family!r}")
    if family == "G2":
        if rank != 2:
            raise UnsupportedRankError("unsupported rank: G2 requires rank 2")
        roots = []
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                short = [0, 0, 0]
                short[i], short[j] = 1, -1
                roots.append(tuple(short))
            lng = [-1, -1, -1]
            lng[i] = 2
            roots.append(tuple(lng))
            roots.append(tuple(-c for c in lng))
        return RootSystem("G2", 2, 3, tuple(sorted(set(roots))))
    if rank < 1:
        raise UnsupportedRankError(f"unsupported rank {rank} for {family}")
    if family == "D" and rank < 2:
        raise UnsupportedRankError("unsupported rank: D requires rank >= 2")
    roots = []
    if family == "A":
        dim = rank + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i], v[j] = 1, -1
                    roots.append(tuple(v))
        return RootSystem("A", rank, dim, tuple(sorted(roots)))
    dim = rank
    for i in range(dim):
        for j in range(i + 1, dim):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * dim
                    v[i], v[j] = si, sj
                    roots.append(tuple(v))
    if family == "B":
        for i in range(dim):
            for s in (1, -1):
                v = [0] * dim
                v[i] = s
                roots.append(tuple(v))
    elif family == "C":
        for i in range(dim):
            for s in (2, -2):
                v = [0] * dim
                v[i] = s
                roots.append(tuple(v))
    return RootSystem(family, rank, dim, tuple(sorted(roots)))


# ---------------------------------------------------------------------------
# Cartan elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanElement:
    rs: RootSystem
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.rs.ambient_dim:
            raise ValueError(
                f"coordinate length {len(self.coords)} != ambient dim {self.rs.ambient_dim}"
            )
        if self.rs.family in ("A", "G2") and sum(self.coords) != 0:
            raise ValueError("trace-free coordinates required for families A and G2")

    def root_value(self, root: tuple[int, ...]) -> Fraction:
        return sum((c * x for c, x in zip(root, self.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)


def cartan(rs: RootSystem, values) -> CartanElement:
    return CartanElement(rs, tuple(Fraction(v) for v in values))


def project_traceless(values) -> tuple[Fraction, ...]:
    """Project onto the sum-zero subspace (families A and G2)."""
    vals = [Fraction(v) for v in values]
    shift = sum(vals) / len(vals)
    return tuple(v - shift for v in vals)


# ---------------------------------------------------------------------------
# Root subsystems
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSubsystem:
    parent: RootSystem
    members: tuple[int, ...]  # sorted root indices

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members)):
            raise SubsystemError("members must be sorted and duplicate-free")

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.parent.roots[i] for i in self.members)

    @cached_property
    def positive_members(self) -> tuple[int, ...]:
        return tuple(i for i in self.members if _lex_positive(self.parent.roots[i]))

    @cached_property
    def rank(self) -> int:
        return linalg.matrix_rank(self.vectors)

    def validate(self) -> None:
        """Closure under negation and under reflections by its own members."""
        rs = self.parent
        mset = self.member_set
        for i in self.members:
            if rs.negation[i] not in mset:
                raise SubsystemError("subsystem not closed under negation")
        for i in self.members:
            for j in self.members:
                image = reflect(rs.roots[i], rs.roots[j])
                if rs.index_of(image) not in mset:
                    raise SubsystemError("subsystem not closed under reflection")

    def is_levi(self) -> bool:
        """Levi property: members = span(members) /\\ parent.roots."""
        reduced, pivots = linalg.rref([list(v) for v in self.vectors])
        mset = self.member_set
        for i, root in enumerate(self.parent.roots):
            if linalg.in_row_space(reduced, pivots, root) != (i in mset):
                return False
        return True

    def __repr__(self) -> str:  # pragma: no cover
        return f"RootSubsystem({self.parent!r}, {len(self.members)} roots)"


def subsystem(rs: RootSystem, indices) -> RootSubsystem:
    return RootSubsystem(rs, tuple(sorted(set(indices))))


def subsystem_from_vectors(rs: RootSystem, vectors) -> RootSubsystem:
    return subsystem(rs, (rs.index_of(tuple(v)) for v in vectors))


def levi_of_element(rs: RootSystem, a: CartanElement) -> RootSubsystem:
    """The Levi subsystem { alpha : alpha(a) = 0 }."""
    if a.rs is not rs and a.rs != rs:
        raise ValueError("Cartan element belongs to a different root system")
    return subsystem(rs, (i for i, r in enumerate(rs.roots) if a.root_value(r) == 0))


# ---------------------------------------------------------------------------
# Signed coordinate fusion (families A, B, C, D)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fusion:
    """Coordinate relations cut out by a subsystem on the Cartan subalgebra.

    ``parts`` are the fused coordinate classes (including untouched
    singletons) on which the kernel is free, each with a sign per coordinate
    (the smallest coordinate is normalized to +1); ``zero`` are the
    coordinates pinned to 0.  Parts are sorted by smallest coordinate.
    """

    parts: tuple[tuple[int, ...], ...]
    signs: tuple[tuple[int, ...], ...]
    zero: tuple[int, ...]

    @cached_property
    def part_of(self) -> dict[int, int]:
        return {c: k for k, part in enumerate(self.parts) for c in part}

    @cached_property
    def sign_of(self) -> dict[int, int]:
        return {
            c: s
            for part, sgns in zip(self.parts, self.signs)
            for c, s in zip(part, sgns)
        }

    @cached_property
    def zero_set(self) -> frozenset[int]:
        return frozenset(self.zero)

    def part_vectors(self, dim: int) -> list[tuple[int, ...]]:
        vecs = []
        for part, sgns in zip(self.parts, self.signs):
            v = [0] * dim
            for c, s in zip(part, sgns):
                v[c] = s
            vecs.append(tuple(v))
        return vecs

    def restrict(self, root: tuple[int, ...]) -> tuple[int, ...]:
        """Value vector of a covector on the part basis (zero coords drop out)."""
        out = [0] * len(self.parts)
        for c, x in enumerate(root):
            if x and c not in self.zero_set:
                out[self.part_of[c]] += x * self.sign_of[c]
        return tuple(out)


def fusion_of(sub: RootSubsystem) -> Fusion:
    """Signed union-find over the subsystem's roots; classical families only."""
    rs = sub.parent
    if rs.family == "G2":
        raise ValueError("fusion is defined for classical families only")
    n = rs.ambient_dim
    parent = list(range(n))
    rel = [1] * n  # sign relative to the class representative
    pinned = [False] * n

    def find(x: int) -> tuple[int, int]:
        if parent[x] == x:
            return x, 1
        root, s = find(parent[x])
        parent[x] = root
        rel[x] *= s
        return root, rel[x]

    def union(i: int, j: int, s: int) -> None:
        ri, si = find(i)
        rj, sj = find(j)
        if ri == rj:
            if si * sj != s:
                pinned[ri] = True
            return
        parent[rj] = ri
        rel[rj] = si * s * sj
        pinned[ri] = pinned[ri] or pinned[rj]

    for v in sub.vectors:
        support = [c for c, x in enumerate(v) if x]
        if len(support) == 1:
            r, _ = find(support[0])
            pinned[r] = True
        else:
            i, j = support
            union(i, j, -1 if v[i] * v[j] > 0 else 1)

    classes: dict[int, list[int]] = {}
    for c in range(n):
        r, _ = find(c)
        classes.setdefault(r, []).append(c)
    parts, signs, zero = [], [], []
    for r, coords in classes.items():
        coords.sort()
        if pinned[r]:
            zero.extend(coords)
            continue
        base = find(coords[0])[1]
        parts.append(tuple(coords))
        signs.append(tuple(find(c)[1] * base for c in coords))
    order = sorted(range(len(parts)), key=lambda k: parts[k][0])
    return Fusion(
        tuple(parts[k] for k in order),
        tuple(signs[k] for k in order),
        tuple(sorted(zero)),
    )


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------


def kernel_basis(rs: RootSystem, sub: RootSubsystem) -> list[CartanElement]:
    """Exact basis of the common kernel of the subsystem inside the Cartan.

    For family A the basis consists of differences of normalized fused
    vectors e_I/|I| (so each basis vector is trace-free); for B/C/D it is the
    fused vectors themselves; for G2 a generic nullspace computation inside
    the sum-zero subspace.
    """
    if rs.family == "G2":
        rows = [list(map(Fraction, v)) for v in sub.vectors]
        rows.append([Fraction(1)] * 3)
        return [CartanElement(rs, b) for b in linalg.nullspace(rows, 3)]
    fus = fusion_of(sub)
    vecs = fus.part_vectors(rs.ambient_dim)
    if rs.family != "A":
        return [cartan(rs, v) for v in vecs]
    if len(vecs) <= 1:
        return []
    last = vecs[-1]
    nlast = Fraction(1, len(fus.parts[-1]))
    basis = []
    for part, v in zip(fus.parts[:-1], vecs[:-1]):
        np = Fraction(1, len(part))
        basis.append(
            CartanElement(rs, tuple(np * a - nlast * b for a, b in zip(v, last)))
        )
    return basis


# ---------------------------------------------------------------------------
# Irreducible components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    support: tuple[int, ...]
    cartan_type: str  # "A_k", "B_k", "C_k", "D_k", "G2", "A1_short", "A1_long"
    members: tuple[int, ...]  # root indices (both signs)


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]
    a_parts: tuple[tuple[int, ...], ...]  # type-A parts incl. singletons
    zero_block: tuple[int, ...]  # the at-most-one B/C/D coordinate block

    @property
    def partition(self) -> tuple[tuple[int, ...], ...]:
        parts = list(self.a_parts)
        if self.zero_block:
            parts.append(self.zero_block)
        return tuple(sorted(parts))

    def type_multiset(self) -> tuple[str, ...]:
        return tuple(sorted(c.cartan_type for c in self.components))


def _simple_roots(positive: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    pset = set(positive)
    simples = []
    for p in positive:
        if not any(
            tuple(a - b for a, b in zip(p, q)) in pset for q in positive if q != p
        ):
            simples.append(p)
    return simples


def _classify_component(roots: list[tuple[int, ...]], family: str) -> str:
    positive = [r for r in roots if _lex_positive(r)]
    simples = _simple_roots(positive)
    k = len(simples)
    if k == 1:
        if family in ("B", "C", "G2"):
            short_norm = {"B": 1, "C": 2, "G2": 2}[family]
            return "A1_short" if dot(simples[0], simples[0]) == short_norm else "A1_long"
        return "A_1"
    bonds = {}
    maxdeg = 0
    bondmax = 1
    for i in range(k):
        deg = 0
        for j in range(k):
            if i == j:
                continue
            b = cartan_int(simples[i], simples[j]) * cartan_int(simples[j], simples[i])
            if b:
                deg += 1
                bondmax = max(bondmax, b)
                bonds[(i, j)] = b
        maxdeg = max(maxdeg, deg)
    if bondmax == 3:
        return "G2"
    if bondmax == 2:
        norms = sorted(dot(s, s) for s in simples)
        if k == 2:
            return f"{'C' if family == 'C' else 'B'}_2"
        # B_k has a unique short simple root, C_k a unique long one.
        return f"B_{k}" if norms.count(norms[0]) == 1 else f"C_{k}"
    if maxdeg >= 3:
        return f"D_{k}"
    return f"A_{k}"


def irreducible_components(rs: RootSystem, sub: RootSubsystem) -> ComponentDecomposition:
    """Connected components of the non-orthogonality graph, classified by Cartan type.

    Classification looks at each component's own Cartan matrix (plus root
    lengths relative to the ambient family), so Levis that are not in
    standard Dynkin position are still typed correctly.  The coordinate
    partition lists the type-A parts (with singletons) and the pinned
    zero block; the reducible "D_2 pair" contributes two A_1 components but a
    single two-coordinate zero block.
    """
    sub.validate()
    pos = list(sub.positive_members)
    adj: dict[int, list[int]] = {i: [] for i in pos}
    for a in range(len(pos)):
        for b in range(a + 1, len(pos)):
            if dot(rs.roots[pos[a]], rs.roots[pos[b]]) != 0:
                adj[pos[a]].append(pos[b])
                adj[pos[b]].append(pos[a])
    seen: set[int] = set()
    components = []
    for start in pos:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        members = sorted(comp + [rs.negation[i] for i in comp])
        vectors = [rs.roots[i] for i in comp]
        support = sorted({c for v in vectors for c, x in enumerate(v) if x})
        ctype = _classify_component([rs.roots[i] for i in members], rs.family)
        components.append(Component(tuple(support), ctype, tuple(members)))
    components.sort(key=lambda c: (c.support, c.members))

    if rs.family == "G2":
        a_parts, zero = _g2_partition(components)
    else:
        fus = fusion_of(sub)
        a_parts, zero = fus.parts, fus.zero
    return ComponentDecomposition(tuple(components), a_parts, zero)


def _g2_partition(components) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    # Support-fusion only; G2 has no fission tree so this is informational.
    parts: list[set[int]] = [{0}, {1}, {2}]
    for comp in components:
        merged = {c for p in parts for c in p if p & set(comp.support)} | set(comp.support)
        parts = [p for p in parts if not (p & merged)] + [merged]
    return tuple(sorted(tuple(sorted(p)) for p in parts)), ()


# ---------------------------------------------------------------------------
# Restricted arrangements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArrangementType:
    """Classification of a restricted hyperplane arrangement.

    ``raw_hyperplanes`` are the deduplicated restricted covectors written on
    the canonical kernel coordinates (fused parts for A-D, kernel basis for
    G2); they are the authoritative data, the kind is the pattern match.
    """

    kind: str
    d: int = 0
    r: int = 0
    s: int = 0
    raw_hyperplanes: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ARRANGEMENT_KINDS:
            raise ValueError(f"unknown arrangement kind {self.kind!r}")
        expected = self.expected_count()
        if expected is not None and len(self.raw_hyperplanes) != expected:
            raise ClassificationError(
                f"{self.describe()} expects {expected} hyperplanes, "
                f"got {len(self.raw_hyperplanes)}"
            )

    def expected_count(self) -> int | None:
        if self.kind == "Empty":
            return 0
        if self.kind == "TypeA":
            return self.d * (self.d + 1) // 2
        if self.kind == "TypeBC":
            return self.d * self.d
        if self.kind == "TypeD":
            return self.d * (self.d - 1)
        if self.kind == "Exotic":
            t = self.r + self.s
            return t * (t - 1) + self.r
        if self.kind == "G2Full":
            return 6
        return None

    @property
    def hyperplane_count(self) -> int:
        return len(self.raw_hyperplanes)

    def describe(self) -> str:
        if self.kind in ("TypeA", "TypeBC", "TypeD"):
            return f"{self.kind}({self.d})"
        if self.kind == "Exotic":
            return f"Exotic({self.r},{self.s})"
        return self.kind

    @property
    def annotation(self) -> str | None:
        if self.kind == "Exotic" and (self.r, self.s) == (1, 1):
            return "isomorphic to the A_2 arrangement (PB_3)"
        return None


def _check_levi_pair(rs: RootSystem, inner: RootSubsystem, outer: RootSubsystem) -> None:
    if not inner.member_set <= outer.member_set:
        raise SubsystemError("inner subsystem is not contained in the outer one")
    inner.validate()
    outer.validate()
    # Levi inside outer: span(inner) meets outer exactly in inner.
    reduced, pivots = linalg.rref([list(v) for v in inner.vectors])
    for i in outer.members:
        if linalg.in_row_space(reduced, pivots, rs.roots[i]) and i not in inner.member_set:
            raise SubsystemError("inner subsystem is not Levi inside the outer one")


def _restricted_covectors(
    rs: RootSystem, inner: RootSubsystem, outer: RootSubsystem
) -> list[tuple[int, ...]]:
    """Deduplicated restrictions of outer \\ inner to Ker(inner), on fused coordinates.

    For family A the fused value vectors are differences of two unit entries;
    such covectors are never proportional modulo the trace relation, so
    deduplication on the value vectors equals deduplication on the trace-free
    kernel.
    """
    if rs.family == "G2":
        basis = kernel_basis(rs, inner)
        seen = []
        for i in outer.members:
            if i in inner.member_set or not _lex_positive(rs.roots[i]):
                continue
            vals = [b.root_value(rs.roots[i]) for b in basis]
            if all(v == 0 for v in vals):
                raise SubsystemError(
                    "root restricts to zero on the kernel (inner is not Levi)"
                )
            cov = linalg.primitive(vals)
            if cov not in seen:
                seen.append(cov)
        return seen
    fus = fusion_of(inner)
    seen = []
    for i in outer.members:
        if i in inner.member_set or not _lex_positive(rs.roots[i]):
            continue
        w = fus.restrict(rs.roots[i])
        if all(x == 0 for x in w):
            raise SubsystemError(
                "root restricts to zero on the kernel (inner is not Levi)"
            )
        cov = linalg.primitive(w)
        if cov not in seen:
            seen.append(cov)
    return seen


def _classify_block(covectors: list[tuple[int, ...]], family: str) -> ArrangementType:
    """Pattern-match one support-connected block of restricted covectors."""
    support = sorted({c for cov in covectors for c, x in enumerate(cov) if x})
    axes: set[int] = set()
    diff: dict[tuple[int, int], bool] = {}
    summ: dict[tuple[int, int], bool] = {}
    for cov in covectors:
        nz = [(c, x) for c, x in enumerate(cov) if x]
        if len(nz) == 1:
            axes.add(nz[0][0])
        elif len(nz) == 2 and abs(nz[0][1]) == 1 and abs(nz[1][1]) == 1:
            key = (nz[0][0], nz[1][0])
            if nz[0][1] * nz[1][1] < 0:
                diff[key] = True
            else:
                summ[key] = True
        else:
            raise ClassificationError(f"covector {cov} matches no model pattern")
    k = len(support)
    pairs = [(a, b) for i, a in enumerate(support) for b in support[i + 1 :]]
    raw = tuple(covectors)
    if k == 1:
        return ArrangementType("TypeBC", d=1, raw_hyperplanes=raw)
    both = all(diff.get(p) and summ.get(p) for p in pairs)
    if both:
        if len(axes) == k:
            return ArrangementType("TypeBC", d=k, raw_hyperplanes=raw)
        if not axes:
            return ArrangementType("TypeD", d=k, raw_hyperplanes=raw)
        return ArrangementType("Exotic", r=len(axes), s=k - len(axes), raw_hyperplanes=raw)
    single = not axes and all(bool(diff.get(p)) != bool(summ.get(p)) for p in pairs)
    if single and _sign_consistent(support, diff, summ):
        return ArrangementType("TypeA", d=k - 1, raw_hyperplanes=raw)
    raise ClassificationError("hyperplane set matches no model family")


def _sign_consistent(support, diff, summ) -> bool:
    """Whether coordinate sign flips turn every pair covector into a difference."""
    sign: dict[int, int] = {}
    for c in support:
        if c in sign:
            continue
        sign[c] = 1
        stack = [c]
        while stack:
            a = stack.pop()
            for (x, y), _ in list(diff.items()) + list(summ.items()):
                if a not in (x, y):
                    continue
                b = y if a == x else x
                want = sign[a] * (1 if diff.get((x, y)) else -1)
                if b in sign:
                    if sign[b] != want:
                        return False
                else:
                    sign[b] = want
                    stack.append(b)
    return True


def _blocks(covectors: list[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    """Group covectors by shared support coordinates."""
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cov in covectors:
        supp = [c for c, x in enumerate(cov) if x]
        for c in supp:
            parent.setdefault(c, c)
        for c in supp[1:]:
            parent[find(supp[0])] = find(c)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for cov in covectors:
        root = find(next(c for c, x in enumerate(cov) if x))
        groups.setdefault(root, []).append(cov)
    return [groups[k] for k in sorted(groups)]


def restricted_arrangement_blocks(
    rs: RootSystem, inner: RootSubsystem, outer: RootSubsystem
) -> list[ArrangementType]:
    """All support-connected blocks of the restricted arrangement, classified.

    The restriction of outer \\ inner to Ker(inner) splits as an orthogonal
    product over blocks of kernel coordinates; the fundamental group of the
    complement is the product over blocks.
    """
    _check_levi_pair(rs, inner, outer)
    covectors = _restricted_covectors(rs, inner, outer)
    if not covectors:
        return []
    if rs.family == "G2":
        return [_classify_g2(covectors)]
    return [_classify_block(b, rs.family) for b in _blocks(covectors)]


def _classify_g2(covectors: list[tuple[int, ...]]) -> ArrangementType:
    if len(covectors) == 1:
        return ArrangementType("TypeA", d=1, raw_hyperplanes=tuple(covectors))
    if len(covectors) == 6:
        return ArrangementType("G2Full", raw_hyperplanes=tuple(covectors))
    raise ClassificationError(f"unexpected G2 restriction with {len(covectors)} classes")


def restricted_arrangement(
    rs: RootSystem, inner: RootSubsystem, outer: RootSubsystem
) -> ArrangementType:
    """Classify the arrangement cut on Ker(inner) by the roots of outer \\ inner.

    Requires the restriction to form a single model block (always the case
    when outer is irreducible relative to inner, e.g. outer = full system);
    use restricted_arrangement_blocks for arbitrary filtration levels.
    """
    blocks = restricted_arrangement_blocks(rs, inner, outer)
    if not blocks:
        return ArrangementType("Empty")
    if len(blocks) > 1:
        raise ClassificationError(
            f"arrangement splits into {len(blocks)} orthogonal blocks; "
            "use restricted_arrangement_blocks"
        )
    return blocks[0]
