"""Exact pure-braid-word algebra: Artin generators, cabling, linking numbers.

Words in the Artin generators s_1..s_{n-1} compose left to right.  Equality
of braids is decided by the faithful Artin action on the free group F_n
(s_i: x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i), with the permutation and
the linking matrix as fast pre-filters.

The operad composition gamma(sigma; tau_1..tau_n) is the block braid of
sigma (each strand fattened to the width of its tau) preceded in word order
by the direct sum of the taus; with this convention
gamma(s1^2; s1^-2, Id_1) is letter-for-letter the word s1^-1 s1^-1 s2 s1 s1 s2,
which pins down the composition order once and for all.  Every test that
depends on the order cites this convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .fission import FissionTree


@dataclass(frozen=True)
class BraidWord:
    """A word in signed Artin generators on ``strands`` strands."""

    strands: int
    letters: tuple[tuple[int, int], ...]  # (generator index 1..n-1, sign +-1)

    def __post_init__(self):
        if self.strands < 0:
            raise ValueError("strand count must be nonnegative")
        for g, s in self.letters:
            if not 1 <= g <= self.strands - 1:
                raise ValueError(f"generator s{g} needs at least {g + 1} strands")
            if s not in (1, -1):
                raise ValueError("signs must be +-1")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("strand-count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(
            self.strands, tuple((g, -s) for g, s in reversed(self.letters))
        )

    def __len__(self) -> int:
        return len(self.letters)


def identity(n: int) -> BraidWord:
    return BraidWord(n, ())


def generator(n: int, i: int, sign: int = 1) -> BraidWord:
    return BraidWord(n, ((i, sign),))


def word(n: int, *letters: tuple[int, int]) -> BraidWord:
    return BraidWord(n, tuple(letters))


def parse_word(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated tokens ``s<i>`` and ``s<i>^-1``."""
    letters = []
    for tok in text.split():
        sign = 1
        body = tok
        if tok.endswith("^-1"):
            sign = -1
            body = tok[:-3]
        if not body.startswith("s") or not body[1:].isdigit():
            raise ValueError(f"bad braid token {tok!r}")
        letters.append((int(body[1:]), sign))
    return BraidWord(strands, tuple(letters))


def format_word(b: BraidWord) -> str:
    return " ".join(f"s{g}" if s > 0 else f"s{g}^-1" for g, s in b.letters)


# ---------------------------------------------------------------------------
# Permutations and linking numbers
# ---------------------------------------------------------------------------


def permutation(b: BraidWord) -> tuple[int, ...]:
    """Image in the symmetric group: entry j (1-based) is the end position of
    the strand starting at position j."""
    current = list(range(1, b.strands + 1))
    for g, _ in b.letters:
        current[g - 1], current[g] = current[g], current[g - 1]
    out = [0] * b.strands
    for pos, strand in enumerate(current, start=1):
        out[strand - 1] = pos
    return tuple(out)


def is_pure(b: BraidWord) -> bool:
    return permutation(b) == tuple(range(1, b.strands + 1))


def linking_matrix(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Half the signed crossing count between each strand pair (pure braids)."""
    n = b.strands
    counts = [[0] * n for _ in range(n)]
    current = list(range(n))
    for g, s in b.letters:
        u, v = current[g - 1], current[g]
        counts[u][v] += s
        counts[v][u] += s
        current[g - 1], current[g] = v, u
    if current != list(range(n)):
        raise ValueError("linking matrix is only defined for pure braids")
    for i in range(n):
        for j in range(n):
            if counts[i][j] % 2:
                raise AssertionError("odd signed crossing count on a pure braid")
            counts[i][j] //= 2
    return tuple(tuple(row) for row in counts)


# ---------------------------------------------------------------------------
# Artin action on the free group (the word-problem oracle)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word; letters are signed 1-based generator indices."""

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise ValueError("word is not freely reduced")

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return FreeWord(self.rank, _reduce_concat(self.letters, other.letters))

    def is_identity(self) -> bool:
        return not self.letters


def _reduce_concat(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    stack = list(x)
    for t in y:
        if stack and stack[-1] == -t:
            stack.pop()
        else:
            stack.append(t)
    return tuple(stack)


def _inv(x: list[int]) -> list[int]:
    return [-t for t in reversed(x)]


def _mul(*words: list[int]) -> list[int]:
    out: list[int] = []
    for w in words:
        for t in w:
            if out and out[-1] == -t:
                out.pop()
            else:
                out.append(t)
    return out


def _artin_images(b: BraidWord) -> list[list[int]]:
    imgs: list[list[int]] = [[j] for j in range(1, b.strands + 1)]
    for g, s in b.letters:
        i = g - 1
        a, c = imgs[i], imgs[i + 1]
        if s > 0:
            imgs[i], imgs[i + 1] = _mul(a, c, _inv(a)), a
        else:
            imgs[i], imgs[i + 1] = c, _mul(_inv(c), a, c)
    return imgs


def artin_action(b: BraidWord) -> tuple[FreeWord, ...]:
    """Images of the free generators x_1..x_n under the braid automorphism.

    The assignment is a homomorphism into Aut(F_n) with composition
    (f o g)(x) = f(g(x)): artin_action(a * b) composes the two actions.
    """
    return tuple(FreeWord(b.strands, tuple(w)) for w in _artin_images(b))


def braids_equal(a: BraidWord, b: BraidWord) -> bool:
    """Exact word-problem decision via the Artin action, with fast pre-filters."""
    if a.strands != b.strands:
        raise ValueError("strand-count mismatch")
    pa, pb = permutation(a), permutation(b)
    if pa != pb:
        return False
    ident = tuple(range(1, a.strands + 1))
    if pa == ident and linking_matrix(a) != linking_matrix(b):
        return False
    ia, ib = _artin_images(a), _artin_images(b)
    return all(x == y for x, y in zip(ia, ib))


def is_identity_braid(b: BraidWord) -> bool:
    if not is_pure(b):
        return False
    if any(any(row) for row in linking_matrix(b)):
        return False
    return all(img == [j + 1] for j, img in enumerate(_artin_images(b)))


# ---------------------------------------------------------------------------
# Cabling operad
# ---------------------------------------------------------------------------


def direct_sum(parts: list[BraidWord]) -> BraidWord:
    """Juxtaposition: generator indices shift by the cumulative strand counts."""
    letters: list[tuple[int, int]] = []
    offset = 0
    for part in parts:
        letters.extend((g + offset, s) for g, s in part.letters)
        offset += part.strands
    return BraidWord(offset, tuple(letters))


def _block_crossing(offset: int, a: int, b: int, sign: int) -> list[tuple[int, int]]:
    """Cable word swapping a width-a block over a width-b block at ``offset``."""
    if sign > 0:
        out = []
        for t in range(a):
            start = offset + a - 1 - t
            out.extend((start + u, 1) for u in range(b))
        return out
    return [(g, -1) for g, _ in reversed(_block_crossing(offset, b, a, 1))]


def block_braid(b: BraidWord, widths: list[int]) -> BraidWord:
    """Replace strand i of b by widths[i] parallel copies (width 0 deletes it)."""
    if len(widths) != b.strands:
        raise ValueError("widths length must equal the strand count")
    if any(w < 0 for w in widths):
        raise ValueError("widths must be nonnegative")
    order = list(range(b.strands))
    letters: list[tuple[int, int]] = []
    for g, s in b.letters:
        i = g - 1
        left, right = order[i], order[i + 1]
        offset = 1 + sum(widths[order[k]] for k in range(i))
        letters.extend(_block_crossing(offset, widths[left], widths[right], s))
        order[i], order[i + 1] = right, left
    return BraidWord(sum(widths), tuple(letters))


def gamma(sigma: BraidWord, taus: list[BraidWord]) -> BraidWord:
    """Operadic composition: insert tau_i into the i-th strand of sigma.

    Word order: the tau block first, then the blocked sigma (the convention
    fixed by the cabling example in the module docstring).
    """
    if len(taus) != sigma.strands:
        raise ValueError("arity mismatch: need one tau per strand of sigma")
    if not is_pure(sigma) or any(not is_pure(t) for t in taus):
        raise ValueError("gamma is defined on pure braids only")
    widths = [t.strands for t in taus]
    summed = direct_sum(taus)
    blocked = block_braid(sigma, widths)
    return BraidWord(blocked.strands, summed.letters + blocked.letters)


def cable_at(sigma: BraidWord, i: int, tau: BraidWord) -> BraidWord:
    """Cable tau onto the i-th strand of sigma (both pure)."""
    if not 1 <= i <= sigma.strands:
        raise ValueError("strand index out of range")
    taus = [identity(1)] * sigma.strands
    taus[i - 1] = tau
    return gamma(sigma, taus)


# ---------------------------------------------------------------------------
# Pure cabled braid groups from fission trees
# ---------------------------------------------------------------------------


def pure_generator(n: int, j: int, k: int) -> BraidWord:
    """Standard pure braid generator A_{jk} = (s_{k-1}..s_{j+1}) s_j^2 (..inverse..)."""
    if not 1 <= j < k <= n:
        raise ValueError("need 1 <= j < k <= n")
    letters = [(m, 1) for m in range(k - 1, j, -1)]
    letters += [(j, 1), (j, 1)]
    letters += [(m, -1) for m in range(j + 1, k)]
    return BraidWord(n, tuple(letters))


def _lift_through_tree(tree: FissionTree, node_id: int, label: BraidWord) -> BraidWord:
    def rec(u: int) -> BraidWord:
        kids = tree.children(u)
        if not kids:
            return identity(1)
        top = label if u == node_id else identity(len(kids))
        return gamma(top, [rec(c) for c in kids])

    return rec(tree.root_id)


def cabled_group_generators(
    tree: FissionTree,
) -> list[tuple[int, tuple[BraidWord, ...]]]:
    """Standard pure generators of each tree node, lifted to the leaf strands.

    For each node with k >= 2 children the k(k-1)/2 generators A_{jk} of the
    pure braid group on its children are cabled through the lower levels
    (identity everywhere else), producing pure braids on one strand per leaf.
    Returns (node id, generators) pairs grouped by node.
    """
    if tree.family != "A":
        raise ValueError("cabled generators are defined for family A trees")
    out = []
    for node in tree.nodes:
        k = tree.k(node.id)
        if k < 2:
            continue
        gens = [
            _lift_through_tree(tree, node.id, pure_generator(k, j, m))
            for j in range(1, k + 1)
            for m in range(j + 1, k + 1)
        ]
        out.append((node.id, tuple(gens)))
    return out


def leaves_under(tree: FissionTree, node_id: int) -> tuple[int, ...]:
    """Leaf strand positions (1-based) below a node, in leaf order."""
    reach = {node_id}
    changed = True
    while changed:
        changed = False
        for n in tree.nodes:
            if n.parent in reach and n.id not in reach:
                reach.add(n.id)
                changed = True
    return tuple(
        pos + 1 for pos, leaf in enumerate(tree.leaf_order) if leaf in reach
    )
