"""Fission filtrations, decorated fission trees, and group decompositions.

An irregular type is a polynomial Q = sum A_i x^i with Cartan coefficients.
Evaluating Q on each root alpha gives a polynomial of degree d_alpha (the
degree profile), the sets Phi_i = {alpha : d_alpha < i} form an increasing
filtration of Levi subsystems, and the fundamental group of the space of
admissible deformations of Q splits as a product of one factor per
filtration level.  Two independent computations of that product are
implemented:

* the tree fast path: build the decorated fission tree from the coordinate
  partitions of the filtration levels and read the factors off the nodes;
* the arrangement oracle: restrict each level's new roots to the kernel of
  the previous level and classify the resulting hyperplane arrangement
  block by block.

The two must agree on families A-D; ``decompose(..., method="check")``
raises if they ever differ.  G2 is handled by the oracle only (there is no
fission tree for G2).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import rootsys
from .rootsys import (
    ArrangementType,
    CartanElement,
    RootSubsystem,
    RootSystem,
    cartan,
    fusion_of,
    project_traceless,
    subsystem,
)


class DecompositionMismatchError(AssertionError):
    """Tree fast path and arrangement oracle disagreed; both results included."""


class UnsupportedFamilyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Irregular types, degree profiles, filtrations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IrregularType:
    """Coefficients A_1..A_p, listed by ascending power of x."""

    rs: RootSystem
    coefficients: tuple[CartanElement, ...]

    def __post_init__(self):
        if len(self.coefficients) < 1:
            raise ValueError("p >= 1 required")
        for c in self.coefficients:
            if c.rs != self.rs:
                raise ValueError("coefficient belongs to a different root system")

    @property
    def p(self) -> int:
        return len(self.coefficients)


def irregular_type(rs: RootSystem, coefficient_vectors) -> IrregularType:
    return IrregularType(rs, tuple(cartan(rs, v) for v in coefficient_vectors))


@dataclass(frozen=True)
class DegreeProfile:
    rs: RootSystem
    p: int
    by_root: tuple[int, ...]  # aligned with rs.roots; d_alpha = d_{-alpha}

    def d(self, root_index: int) -> int:
        return self.by_root[root_index]

    def positive_items(self) -> list[tuple[int, int]]:
        return [(i, self.by_root[i]) for i in self.rs.positive_indices]


def degree_profile(q: IrregularType) -> DegreeProfile:
    """d_alpha = max{ i : alpha(A_i) != 0 }, with 0 for the zero polynomial."""
    degrees = []
    for root in q.rs.roots:
        d = 0
        for i, coeff in enumerate(q.coefficients, start=1):
            if coeff.root_value(root) != 0:
                d = i
        degrees.append(d)
    return DegreeProfile(q.rs, q.p, tuple(degrees))


@dataclass(frozen=True)
class Filtration:
    rs: RootSystem
    levels: tuple[RootSubsystem, ...]  # levels[i] = Phi_{i+1}, last = full system

    @property
    def p(self) -> int:
        return len(self.levels) - 1

    def level(self, i: int) -> RootSubsystem:
        """Phi_i for i in 1..p+1."""
        return self.levels[i - 1]


_LEVI_CACHE: dict[tuple[str, int, tuple[int, ...]], bool] = {}


def _validate_levi(rs: RootSystem, sub: RootSubsystem) -> None:
    key = (rs.family, rs.rank, sub.members)
    ok = _LEVI_CACHE.get(key)
    if ok is None:
        sub.validate()
        ok = sub.is_levi()
        _LEVI_CACHE[key] = ok
    if not ok:
        raise rootsys.SubsystemError("filtration level is not a Levi subsystem")


def filtration(q: IrregularType) -> Filtration:
    """Phi_1 <= ... <= Phi_{p+1} with Phi_i = {alpha : d_alpha < i}, all Levi."""
    prof = degree_profile(q)
    levels = []
    for i in range(1, q.p + 2):
        sub = subsystem(q.rs, (j for j, d in enumerate(prof.by_root) if d < i))
        _validate_levi(q.rs, sub)
        levels.append(sub)
    return Filtration(q.rs, tuple(levels))


def admissible_equivalent(q: IrregularType, q2: IrregularType) -> bool:
    """Whether q2 lies in the universal deformation space of q (equal profiles)."""
    if q.rs != q2.rs:
        raise ValueError("mismatched root systems")
    return degree_profile(q).by_root == degree_profile(q2).by_root


# ---------------------------------------------------------------------------
# Fission trees
# ---------------------------------------------------------------------------

GREEN, BLUE = "green", "blue"
SMALL, LARGE = "small", "large"


@dataclass(frozen=True)
class TreeNode:
    id: int
    level: int
    parent: int | None
    colour: str
    diameter: str
    coords: tuple[int, ...] | None = None


@dataclass(frozen=True)
class FissionTree:
    family: str
    nodes: tuple[TreeNode, ...]

    @cached_property
    def by_id(self) -> dict[int, TreeNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def children_map(self) -> dict[int, tuple[int, ...]]:
        kids: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            if n.parent is not None:
                kids[n.parent].append(n.id)
        return {i: tuple(sorted(v)) for i, v in kids.items()}

    def children(self, node_id: int) -> tuple[int, ...]:
        return self.children_map[node_id]

    def k(self, node_id: int) -> int:
        return len(self.children_map[node_id])

    @cached_property
    def root_id(self) -> int:
        (rid,) = [n.id for n in self.nodes if n.parent is None]
        return rid

    @cached_property
    def leaf_order(self) -> tuple[int, ...]:
        """Leaves in planar order: depth-first, children by id.

        This is the strand order of the nested cabling; it agrees with the
        coordinate order whenever the partition parts are intervals (Levis in
        standard position) but stays consistent for interleaved parts too.
        """
        order: list[int] = []
        stack = [self.root_id]
        while stack:
            node = stack.pop()
            kids = self.children_map[node]
            if not kids:
                order.append(node)
            stack.extend(reversed(kids))
        return tuple(order)

    @property
    def height(self) -> int:
        return max(n.level for n in self.nodes) - 1

    def level_sizes(self) -> tuple[int, ...]:
        top = max(n.level for n in self.nodes)
        counts = [0] * top
        for n in self.nodes:
            counts[n.level - 1] += 1
        return tuple(counts)


def check_tree_invariants(tree: FissionTree) -> None:
    """Structural and decoration invariants of (generalised) fission trees."""
    nodes = tree.nodes
    roots = [n for n in nodes if n.parent is None]
    if len(roots) != 1:
        raise ValueError("tree must have a unique root")
    top = max(n.level for n in nodes)
    if roots[0].level != top:
        raise ValueError("root must sit at the top level")
    order = {GREEN: 0, BLUE: 1}
    dorder = {SMALL: 0, LARGE: 1}
    for n in nodes:
        if n.parent is not None:
            par = tree.by_id[n.parent]
            if par.level != n.level + 1:
                raise ValueError("parent must sit one level above its child")
            if order[par.colour] < order[n.colour]:
                raise ValueError("parent colour must dominate child colour")
            if dorder[par.diameter] < dorder[n.diameter]:
                raise ValueError("parent diameter must dominate child diameter")
        elif n.level != top:
            raise ValueError("only the root may lack a parent")
        if n.colour == BLUE and n.diameter != LARGE:
            raise ValueError("blue nodes must be large")
        kids = tree.children(n.id)
        if sum(1 for c in kids if tree.by_id[c].colour == BLUE) > 1:
            raise ValueError("at most one blue child per node")
        if n.diameter == SMALL and len(kids) > 1:
            raise ValueError("small nodes have at most one child")
        if n.level > 1 and not kids:
            raise ValueError("non-leaf levels must not contain childless nodes")
    if not tree.leaf_order:
        raise ValueError("tree must have at least one leaf at level 1")
    if tree.family == "A" and any(
        n.colour != GREEN or n.diameter != LARGE for n in nodes
    ):
        raise ValueError("family A trees are all green/large")


_FUSION_CACHE: dict[tuple[str, int, tuple[int, ...]], rootsys.Fusion] = {}


def _fusion(rs: RootSystem, sub: RootSubsystem) -> rootsys.Fusion:
    key = (rs.family, rs.rank, sub.members)
    fus = _FUSION_CACHE.get(key)
    if fus is None:
        fus = fusion_of(sub)
        _FUSION_CACHE[key] = fus
    return fus


def fission_tree(q: IrregularType) -> FissionTree:
    """Decorated fission tree of an irregular type over a classical family.

    One node per part of the level-l coordinate partition (type-A parts,
    singletons included) plus one blue node per level while the pinned
    B/C/D block is nonempty; parents are given by part containment.  Family
    A trees carry the degenerate all-green/all-large decoration; in the
    other families green nodes of singleton parts are small.
    """
    rs = q.rs
    if rs.family == "G2":
        raise UnsupportedFamilyError("no fission tree for G2; use the arrangement path")
    filt = filtration(q)
    per_level: list[list[tuple[tuple[int, ...], str]]] = []
    for sub in filt.levels:
        fus = _fusion(rs, sub)
        entries = [(p, GREEN) for p in fus.parts]
        if fus.zero:
            entries.append((fus.zero, BLUE))
        entries.sort(key=lambda e: e[0][0])
        per_level.append(entries)

    nodes: list[TreeNode] = []
    ids_by_level: list[list[int]] = []
    next_id = 0
    for level0, entries in enumerate(per_level):
        ids = []
        for coords, colour in entries:
            if rs.family == "A":
                diameter = LARGE
            else:
                diameter = LARGE if colour == BLUE or len(coords) >= 2 else SMALL
            nodes.append(
                TreeNode(next_id, level0 + 1, None, colour, diameter, coords)
            )
            ids.append(next_id)
            next_id += 1
        ids_by_level.append(ids)
    # Wire parents by coordinate containment.
    finished: list[TreeNode] = []
    for level0, ids in enumerate(ids_by_level):
        for nid in ids:
            node = nodes[nid]
            parent = None
            if level0 + 1 < len(ids_by_level):
                for pid in ids_by_level[level0 + 1]:
                    if node.coords[0] in nodes[pid].coords:
                        parent = pid
                        break
                if parent is None:
                    raise AssertionError("partition refinement broke containment")
            finished.append(
                TreeNode(nid, node.level, parent, node.colour, node.diameter, node.coords)
            )
    tree = FissionTree(rs.family, tuple(sorted(finished, key=lambda n: n.id)))
    check_tree_invariants(tree)
    return tree


# ---------------------------------------------------------------------------
# Group decompositions
# ---------------------------------------------------------------------------

_KIND_ORDER = {"Z": 0, "PB": 1, "PBBC": 2, "PBBCD": 3, "G2BRAID": 4}


@dataclass(frozen=True)
class Factor:
    kind: str
    a: int = 0
    b: int = 0

    def sort_key(self) -> tuple[int, int, int]:
        return (_KIND_ORDER[self.kind], self.a, self.b)

    @property
    def is_infinite_cyclic(self) -> bool:
        return self.kind == "Z" or (self.kind, self.a) in (("PB", 2), ("PBBC", 1))

    @property
    def annotation(self) -> str | None:
        if self.kind in ("PB", "PBBC") and self.is_infinite_cyclic:
            return "~ Z"
        if self.kind == "PBBCD":
            if (self.a, self.b) == (1, 1):
                return "~ PB_3"
            if (self.a, self.b) == (0, 2):
                return "~ Z^2"
            if self.a == 0:
                return f"~ PBD_{self.b}"
        return None

    def __str__(self) -> str:
        if self.kind == "PB":
            return f"PB_{self.a}"
        if self.kind == "PBBC":
            return f"PB_BC_{self.a}"
        if self.kind == "PBBCD":
            return f"PB_BCD({self.a},{self.b})"
        if self.kind == "G2BRAID":
            return "PBraid(G2)"
        return "Z"


def _canonical_factor(kind: str, a: int = 0, b: int = 0) -> Factor | None:
    """Canonicalization: trivial factors drop out, degenerate kinds collapse."""
    if kind == "PB":
        return Factor("PB", a) if a >= 2 else None
    if kind == "PBBC":
        return Factor("PBBC", a) if a >= 1 else None
    if kind == "PBBCD":
        if a == 0 and b <= 1:
            return None
        if b == 0:
            return _canonical_factor("PBBC", a)
        return Factor("PBBCD", a, b)
    if kind in ("Z", "G2BRAID"):
        return Factor(kind)
    raise ValueError(f"unknown factor kind {kind!r}")


@dataclass(frozen=True)
class GroupDecomposition:
    factors: tuple[Factor, ...]  # canonical, sorted, no trivial entries

    @staticmethod
    def from_factors(raw: list[Factor | None]) -> "GroupDecomposition":
        factors = sorted((f for f in raw if f is not None), key=Factor.sort_key)
        return GroupDecomposition(tuple(factors))

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def canonical_string(self) -> str:
        """Sorted factors with exponents collected, e.g. ``PB_2 x PB_3^2 x PB_4``.

        Infinite-cyclic factors are listed one by one (``PB_2 x PB_2``,
        ``Z x Z``) rather than collected; exotic factors carry their
        identification annotations in brackets.
        """
        if not self.factors:
            return "1"
        pieces = []
        for f, group in itertools.groupby(self.factors):
            count = len(list(group))
            name = str(f)
            if f.kind == "PBBCD" and f.annotation:
                name = f"{name} [{f.annotation}]"
            if count >= 2 and not f.is_infinite_cyclic:
                pieces.append(f"{name}^{count}")
            else:
                pieces.extend([name] * count)
        return " x ".join(pieces)

    def iso_signature(self) -> tuple[tuple, ...]:
        """Multiset of isomorphism-class labels, splitting decomposable factors."""
        labels: list[tuple] = []
        for f in self.factors:
            if f.is_infinite_cyclic:
                labels.append(("Z",))
            elif f.kind == "PB":
                labels.append(("A", f.a))
            elif f.kind == "PBBC":
                labels.append(("BC", f.a))
            elif f.kind == "PBBCD":
                if (f.a, f.b) == (1, 1):
                    labels.append(("A", 3))
                elif (f.a, f.b) == (0, 2):
                    labels.extend([("Z",), ("Z",)])
                elif f.a == 0:
                    labels.append(("D", f.b))
                else:
                    labels.append(("X", f.a, f.b))
            else:
                labels.append(("G2",))
        return tuple(sorted(labels))

    def __str__(self) -> str:  # pragma: no cover
        return self.canonical_string()


def merge_decompositions(parts) -> GroupDecomposition:
    """Product across independent runs (the many-point case)."""
    factors: list[Factor] = []
    for d in parts:
        factors.extend(d.factors)
    return GroupDecomposition.from_factors(factors)


def decomposition_from_tree(tree: FissionTree) -> GroupDecomposition:
    """Read the factor multiset off a decorated fission tree."""
    check_tree_invariants(tree)
    factors: list[Factor | None] = []
    if tree.family == "A":
        for n in tree.nodes:
            factors.append(_canonical_factor("PB", tree.k(n.id)))
        return GroupDecomposition.from_factors(factors)
    blue = [n for n in tree.nodes if n.colour == BLUE]
    deepest_blue = None
    if tree.family == "D":
        no_blue_child = [
            n
            for n in blue
            if all(tree.by_id[c].colour != BLUE for c in tree.children(n.id))
        ]
        if len(no_blue_child) != 1:
            raise ValueError("family D tree must have a unique deepest blue node")
        deepest_blue = no_blue_child[0]
    for n in tree.nodes:
        kids = tree.children(n.id)
        if n.colour == GREEN:
            factors.append(_canonical_factor("PB", len(kids)))
        elif deepest_blue is not None and n.id == deepest_blue.id:
            r0 = sum(1 for c in kids if tree.by_id[c].diameter == LARGE)
            s0 = sum(1 for c in kids if tree.by_id[c].diameter == SMALL)
            factors.append(_canonical_factor("PBBCD", r0, s0))
        else:
            greens = sum(1 for c in kids if tree.by_id[c].colour == GREEN)
            factors.append(_canonical_factor("PBBC", greens))
    return GroupDecomposition.from_factors(factors)


def _factor_of_arrangement(arr: ArrangementType, family: str) -> Factor | None:
    if arr.kind == "Empty":
        return None
    if arr.kind == "TypeA":
        if family == "G2":
            # Rank-1 kernels in G2: the factor is infinite cyclic.
            return _canonical_factor("Z")
        return _canonical_factor("PB", arr.d + 1)
    if arr.kind == "TypeBC":
        return _canonical_factor("PBBC", arr.d)
    if arr.kind == "TypeD":
        return _canonical_factor("PBBCD", 0, arr.d)
    if arr.kind == "Exotic":
        return _canonical_factor("PBBCD", arr.r, arr.s)
    return _canonical_factor("G2BRAID")


_ORACLE_CACHE: dict[tuple, tuple[ArrangementType, ...]] = {}


def _oracle_level(
    rs: RootSystem, inner: RootSubsystem, outer: RootSubsystem
) -> tuple[ArrangementType, ...]:
    key = (rs.family, rs.rank, inner.members, outer.members)
    got = _ORACLE_CACHE.get(key)
    if got is None:
        got = tuple(rootsys.restricted_arrangement_blocks(rs, inner, outer))
        _ORACLE_CACHE[key] = got
    return got


def level_factors(q: IrregularType) -> list[tuple[int, tuple[Factor, ...]]]:
    """Canonical factors contributed by each filtration level (oracle path)."""
    filt = filtration(q)
    out = []
    for i in range(q.p):
        inner, outer = filt.levels[i], filt.levels[i + 1]
        factors: list[Factor] = []
        if inner.members != outer.members:
            for arr in _oracle_level(q.rs, inner, outer):
                f = _factor_of_arrangement(arr, q.rs.family)
                if f is not None:
                    factors.append(f)
        out.append((i + 1, tuple(sorted(factors, key=Factor.sort_key))))
    return out


def decomposition_via_arrangements(q: IrregularType) -> GroupDecomposition:
    """Oracle path: classify the restricted arrangement of every level."""
    factors: list[Factor] = []
    for _, fs in level_factors(q):
        factors.extend(fs)
    return GroupDecomposition.from_factors(factors)


def decompose(q: IrregularType, method: str = "tree") -> GroupDecomposition:
    """Group decomposition of the pure local wild mapping class group of q.

    method="tree" uses the fission-tree fast path (arrangement oracle for
    G2); method="oracle" forces the arrangement path; method="check" runs
    both and raises DecompositionMismatchError on disagreement.
    """
    if method not in ("tree", "oracle", "check"):
        raise ValueError(f"unknown method {method!r}")
    if q.rs.family == "G2" or method == "oracle":
        return decomposition_via_arrangements(q)
    if method == "tree":
        return decomposition_from_tree(fission_tree(q))
    via_tree = decomposition_from_tree(fission_tree(q))
    via_arr = decomposition_via_arrangements(q)
    if via_tree != via_arr:
        raise DecompositionMismatchError(
            f"tree path gave [{via_tree}] but arrangement oracle gave [{via_arr}]"
        )
    return via_tree


# ---------------------------------------------------------------------------
# Enumeration and sampling of irregular types
# ---------------------------------------------------------------------------


def enumerate_levi_subsystems(
    rs: RootSystem,
) -> list[tuple[RootSubsystem, CartanElement]]:
    """All Levi subsystems of rs, each with a witness Cartan element.

    The witness annihilates exactly the subsystem, so chains of Levis can be
    realized as degree profiles by using witnesses as coefficients.
    """
    seen: dict[tuple[int, ...], tuple[RootSubsystem, CartanElement]] = {}

    def record(values):
        elem = cartan(rs, values)
        sub = rootsys.levi_of_element(rs, elem)
        seen.setdefault(sub.members, (sub, elem))

    n = rs.ambient_dim
    if rs.family == "G2":
        record(project_traceless([1, 2, 4]))
        record([0, 0, 0])
        for i in rs.positive_indices:
            rows = [list(map(Fraction, rs.roots[i])), [Fraction(1)] * 3]
            (v,) = rootsys.linalg.nullspace(rows, 3)
            record(v)
        return sorted(seen.values(), key=lambda t: t[0].members)
    if rs.family == "A":
        for part in _set_partitions(list(range(n))):
            values = [0] * n
            for k, block in enumerate(part):
                for c in block:
                    values[c] = k + 1
            record(project_traceless(values))
        return sorted(seen.values(), key=lambda t: t[0].members)
    coords = list(range(n))
    for zero_size in range(n + 1):
        for zero in itertools.combinations(coords, zero_size):
            rest = [c for c in coords if c not in zero]
            for part in _set_partitions(rest):
                for signs in itertools.product(
                    *[[(1,) + s for s in itertools.product((1, -1), repeat=len(b) - 1)] for b in part]
                ):
                    values = [0] * n
                    for k, (block, sgn) in enumerate(zip(part, signs)):
                        for c, s in zip(block, sgn):
                            values[c] = s * (k + 1)
                    record(values)
    return sorted(seen.values(), key=lambda t: t[0].members)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def enumerate_filtration_chains(rs: RootSystem, p: int):
    """All weak chains L_1 <= ... <= L_p of Levi subsystems, as witness tuples.

    Yields tuples of (subsystem, witness) of length p; the corresponding
    irregular type with coefficients = witnesses realizes exactly this
    filtration.
    """
    levis = enumerate_levi_subsystems(rs)
    contains: dict[int, list[int]] = {}
    for i, (a, _) in enumerate(levis):
        contains[i] = [
            j for j, (b, _) in enumerate(levis) if a.member_set <= b.member_set
        ]

    def rec(prefix: list[int]):
        if len(prefix) == p:
            yield tuple(levis[i] for i in prefix)
            return
        for j in contains[prefix[-1]] if prefix else range(len(levis)):
            yield from rec(prefix + [j])

    yield from rec([])


def irregular_type_for_chain(rs: RootSystem, chain) -> IrregularType:
    return IrregularType(rs, tuple(witness for _, witness in chain))


_VALUE_POOL = (0, 0, 1, 1, -1, 2, -2, 3, Fraction(1, 2))


def random_irregular_type(rs: RootSystem, p: int, rng: random.Random) -> IrregularType:
    """Random irregular type with a degeneracy-prone coefficient pool."""
    coeffs = []
    for _ in range(p):
        values = [rng.choice(_VALUE_POOL) for _ in range(rs.ambient_dim)]
        if rs.family in ("A", "G2"):
            values = project_traceless(values)
        coeffs.append(cartan(rs, values))
    return IrregularType(rs, tuple(coeffs))
