"""Ground-truth permutations for the binary tree group on {1, ..., 2^n}.

Points are binary words w1...wn read most significant bit first, so word
w corresponds to point 1 + sum(2^(n-i) * wi).  Generator i flips letter
wi exactly when the prefix w1...w(i-1) is all zeros.  Products act on the
right: (w)(pq) = ((w)p)q.

This module is the independent oracle for the mask calculus in
:mod:`rigidcomm.rigid`: everything here is computed on explicit image
arrays, never through the closed-form product.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .rigid import RigidCommutator

EXPAND_MAX_RANK = 12    # 2^12-point arrays; raise explicitly to go beyond
BRUTE_MAX_RANK = 3      # exhaustive Sym(2^n) scans stop at 8 points

__all__ = [
    "EXPAND_MAX_RANK",
    "BRUTE_MAX_RANK",
    "ScaleGuardError",
    "TreePermutation",
    "LevelFlipPattern",
    "identity",
    "generator",
    "compose",
    "inverse",
    "perm_commutator",
    "expand",
    "level_flip_pattern",
    "flip_pattern_permutation",
    "generate_group",
    "elementary_abelian_order",
    "translation_checks",
    "brute_normalizer_in_sym",
    "perm_to_json",
    "perm_from_json",
]


class ScaleGuardError(Exception):
    """Raised when an operation would exceed its configured scale cap."""


class TreePermutation:
    """A bijection of {1, ..., 2^n}, stored as a read-only image array.

    Public input and output are 1-based; the internal array is 0-based.
    Instances are immutable, hashable, and compare by value.
    """

    __slots__ = ("n", "_img", "_hash")

    def __init__(self, images: Iterable[int], n: int | None = None) -> None:
        arr = np.asarray(list(images), dtype=np.int64)
        size = arr.shape[0]
        if n is None:
            n = max(size.bit_length() - 1, 0)
        if size != (1 << n) or arr.ndim != 1:
            raise ValueError(f"image array must have length 2^{n}, got {size}")
        arr = arr - 1
        if not np.array_equal(np.sort(arr), np.arange(size)):
            raise ValueError("images are not a permutation of 1..2^n")
        self.n = n
        self._img = arr.astype(np.int32)
        self._img.flags.writeable = False
        self._hash = None

    @classmethod
    def _from0(cls, arr: np.ndarray, n: int) -> "TreePermutation":
        # trusted constructor: arr is a 0-based permutation array
        self = object.__new__(cls)
        self.n = n
        img = np.ascontiguousarray(arr, dtype=np.int32)
        img.flags.writeable = False
        self._img = img
        self._hash = None
        return self

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image tuple: entry x-1 is the image of point x."""
        return tuple(int(v) + 1 for v in self._img)

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self._img, np.arange(1 << self.n)))

    def __call__(self, point: int) -> int:
        if not 1 <= point <= (1 << self.n):
            raise ValueError(f"point {point} outside 1..2^{self.n}")
        return int(self._img[point - 1]) + 1

    def __mul__(self, other: "TreePermutation") -> "TreePermutation":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreePermutation):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._img, other._img)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._img.tobytes()))
        return self._hash

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles on 1-based points, fixed points omitted.

        Each cycle starts at its smallest point; cycles are sorted by
        first point.
        """
        img = self._img
        seen = np.zeros(img.shape[0], dtype=bool)
        out = []
        for start in range(img.shape[0]):
            if seen[start] or img[start] == start:
                seen[start] = True
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = int(img[x])
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_string(self) -> str:
        """Cycle notation like "(1, 33)(2, 34)"; "()" for the identity."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ", ".join(str(p) for p in c) + ")" for c in cycs)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"TreePermutation(n={self.n}, {self.cycle_string()})"


def identity(n: int) -> TreePermutation:
    return TreePermutation._from0(np.arange(1 << n), n)


def generator(i: int, n: int) -> TreePermutation:
    """The i-th tree generator: flips letter i under an all-zero prefix.

    As a permutation it is the involution (1, 1+2^(n-i))(2, 2+2^(n-i))...
    with support {1, ..., 2^(n-i+1)}.
    """
    if not 1 <= i <= n:
        raise ValueError(f"generator index {i} outside 1..{n}")
    step = 1 << (n - i)
    img = np.arange(1 << n)
    img[: 2 * step] ^= step
    return TreePermutation._from0(img, n)


def compose(p: TreePermutation, q: TreePermutation) -> TreePermutation:
    """Right-action product: apply p first, then q."""
    if p.n != q.n:
        raise ValueError(f"rank mismatch: {p.n} != {q.n}")
    return TreePermutation._from0(q._img[p._img], p.n)


def inverse(p: TreePermutation) -> TreePermutation:
    inv = np.empty_like(p._img)
    inv[p._img] = np.arange(p._img.shape[0], dtype=np.int32)
    return TreePermutation._from0(inv, p.n)


def perm_commutator(p: TreePermutation, q: TreePermutation) -> TreePermutation:
    """Group commutator p^-1 q^-1 p q on explicit images."""
    return compose(compose(inverse(p), inverse(q)), compose(p, q))


def expand(c: RigidCommutator, *, max_rank: int = EXPAND_MAX_RANK) -> TreePermutation:
    """Evaluate a rigid commutator as an explicit permutation.

    Folds the left-normed word over the generators of its index set in
    descending order, entirely at the permutation level.
    """
    if c.n > max_rank:
        raise ScaleGuardError(
            f"expand at rank {c.n} exceeds the cap {max_rank}; pass max_rank= to override"
        )
    if c.is_identity:
        return identity(c.n)
    idx = c.elements
    p = generator(idx[0], c.n)
    for k in idx[1:]:
        p = perm_commutator(p, generator(k, c.n))
    return p


# ── level flip patterns ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class LevelFlipPattern:
    """Which (level-1)-bit prefixes see their next letter flipped.

    Prefixes are integers with w1 as the most significant bit.  Elements
    that only touch letter ``level`` are exactly determined by such a
    pattern.
    """

    level: int
    flips: frozenset[int]

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be >= 1")
        limit = 1 << (self.level - 1)
        if any(not 0 <= f < limit for f in self.flips):
            raise ValueError("flip prefixes out of range for this level")


def level_flip_pattern(p: TreePermutation, level: int) -> LevelFlipPattern:
    """Read the letter-``level`` flip behaviour of p.

    Samples, for every prefix, the word with that prefix and zeros
    elsewhere.  Faithful for permutations that fix all letters below
    ``level`` and act on letter ``level`` per prefix (residuals during
    factorization are of this shape).
    """
    n = p.n
    if not 1 <= level <= n:
        raise ValueError(f"level {level} outside 1..{n}")
    shift = n - level
    prefixes = np.arange(1 << (level - 1))
    points = prefixes << (shift + 1)
    flipped = (p._img[points] >> shift) & 1
    return LevelFlipPattern(level, frozenset(int(q) for q in prefixes[flipped == 1]))


def flip_pattern_permutation(pattern: LevelFlipPattern, n: int) -> TreePermutation:
    """The permutation that flips letter ``pattern.level`` on exactly those prefixes."""
    level = pattern.level
    if level > n:
        raise ValueError(f"level {level} exceeds rank {n}")
    shift = n - level
    flags = np.zeros(1 << (level - 1), dtype=np.int32)
    for q in pattern.flips:
        flags[q] = 1
    pts = np.arange(1 << n)
    img = pts ^ (flags[pts >> (shift + 1)] << shift)
    return TreePermutation._from0(img, n)


# ── brute-force group machinery ──────────────────────────────────────────────

def generate_group(generators: Iterable[TreePermutation], *, limit: int | None = None) -> set[TreePermutation]:
    """Closure of the generators under composition (breadth-first, with dedup)."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise ValueError("rank mismatch among generators")
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
                    if limit is not None and len(elems) > limit:
                        raise ScaleGuardError(f"group closure exceeded {limit} elements")
        frontier = nxt
    return elems


def elementary_abelian_order(generators: Iterable[TreePermutation]) -> int:
    """Order of the group generated by commuting involutions.

    Checks the hypotheses, then counts by incremental closure rather
    than by rank, so it stays an independent witness.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("rank mismatch among generators")
        if not compose(g, g).is_identity:
            raise ValueError("generators must be involutions")
    for a, b in itertools.combinations(gens, 2):
        if compose(a, b) != compose(b, a):
            raise ValueError("generators must commute pairwise")
    return len(generate_group(gens))


def translation_checks(n: int, *, max_rank: int = EXPAND_MAX_RANK) -> dict:
    """Sanity report for the full-interval commutators t_i = [{1..i}].

    Verifies that each is an involution, that they commute pairwise,
    that the orbit of point 1 under the group they generate is all of
    {1..2^n}, and that the stabilizer of point 1 is trivial.
    """
    ts = [expand(RigidCommutator((1 << i) - 1, n), max_rank=max_rank) for i in range(1, n + 1)]
    involutions = all(compose(t, t).is_identity for t in ts)
    commute = all(
        compose(a, b) == compose(b, a) for a, b in itertools.combinations(ts, 2)
    )
    # orbit of point 0 (internally) under the generators
    size = 1 << n
    seen = np.zeros(size, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for t in ts:
                y = int(t._img[x])
                if not seen[y]:
                    seen[y] = True
                    nxt.append(y)
        frontier = nxt
    orbit_size = int(seen.sum())
    group = generate_group(ts)
    stabilizer_trivial = sum(1 for g in group if g._img[0] == 0) == 1
    return {
        "involutions": involutions,
        "pairwise_commute": commute,
        "orbit_size": orbit_size,
        "orbit_full": orbit_size == size,
        "stabilizer_trivial": stabilizer_trivial,
    }


def brute_normalizer_in_sym(group_elements: Iterable[TreePermutation], n: int) -> set[TreePermutation]:
    """Exact normalizer of a subgroup inside the full symmetric group.

    Scans every permutation of {1..2^n}; n is capped hard at
    ``BRUTE_MAX_RANK`` because the scan is factorial in 2^n.
    """
    if n > BRUTE_MAX_RANK:
        raise ScaleGuardError(f"exhaustive Sym(2^{n}) scan refused; cap is n <= {BRUTE_MAX_RANK}")
    elems = [tuple(int(v) for v in p._img) for p in group_elements]
    if not elems:
        raise ValueError("need the subgroup's elements")
    elem_set = frozenset(elems)
    size = 1 << n
    rng = range(size)
    out = set()
    for sigma in itertools.permutations(rng):
        sinv = [0] * size
        for x in rng:
            sinv[sigma[x]] = x
        ok = True
        for g in elems:
            conj = tuple(sigma[g[sinv[x]]] for x in rng)
            if conj not in elem_set:
                ok = False
                break
        if ok:
            out.add(TreePermutation._from0(np.array(sigma, dtype=np.int32), n))
    return out


# ── serialization ────────────────────────────────────────────────────────────

def perm_to_json(p: TreePermutation, *, indent: int | None = None) -> str:
    """JSON dump {"n": ..., "images": [...]} with 1-based images."""
    return json.dumps({"n": p.n, "images": list(p.images)}, indent=indent)


def perm_from_json(text: str) -> TreePermutation:
    d = json.loads(text)
    if not isinstance(d, dict) or "n" not in d or "images" not in d:
        raise ValueError('expected {"n": ..., "images": [...]}')
    return TreePermutation(d["images"], int(d["n"]))
