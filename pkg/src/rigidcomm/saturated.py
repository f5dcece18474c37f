"""Commutation-closed sets of rigid commutators and what they generate.

A set of nonempty rigid commutators is saturated when the commutator of
any two members is again a member or the identity.  Saturated sets are
exact coordinates for the subgroups they generate: the subgroup has
order 2^(member count), each level contributes an elementary abelian
block, and every element factors uniquely over the members taken in the
canonical order.

Internally everything runs on raw bitmasks; the public surface speaks
:class:`~rigidcomm.rigid.RigidCommutator`.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from . import permutations as perm
from .rigid import RigidCommutator, commutator_mask, mask_order_key

FACTORIZE_MAX_RANK = 12

__all__ = [
    "FACTORIZE_MAX_RANK",
    "SaturatedSet",
    "Factorization",
    "full_rigid_set",
    "saturate",
    "normalizing_step",
    "normalizer_in",
    "normal_closure",
    "factorize",
    "members_from_json",
]


def _translation_masks(n: int) -> tuple[int, ...]:
    return tuple((1 << i) - 1 for i in range(1, n + 1))


def _coerce_masks(members: Iterable, n: int) -> frozenset[int]:
    masks = set()
    for m in members:
        if isinstance(m, RigidCommutator):
            if m.n != n:
                raise ValueError(f"rank mismatch: member has rank {m.n}, set has {n}")
            mask = m.mask
        elif isinstance(m, int):
            mask = m
        else:
            raise TypeError(f"members must be RigidCommutator or int masks, got {type(m)!r}")
        if not 0 <= mask < (1 << n):
            raise ValueError(f"mask {mask} out of range for rank {n}")
        if mask:
            masks.add(mask)  # the identity is implicit, never stored
    return frozenset(masks)


def _closure_defect(masks: frozenset[int]) -> tuple[int, int] | None:
    for x in masks:
        for y in masks:
            c = commutator_mask(x, y)
            if c and c not in masks:
                return (x, y)
    return None


class SaturatedSet:
    """A commutation-closed set of nonempty rigid commutators.

    The constructor verifies closure and raises if it fails; operations
    whose result is closed by construction skip the check.  The one
    deliberate exception is :func:`normalizing_step` applied to a set
    that does not contain all the full-interval commutators: there the
    guarantee lapses, so the result is returned with ``is_closed``
    recording an explicit verification instead.
    """

    __slots__ = ("n", "masks", "_closed")

    def __init__(self, n: int, members: Iterable = ()) -> None:
        masks = _coerce_masks(members, n)
        defect = _closure_defect(masks)
        if defect is not None:
            x, y = defect
            raise ValueError(
                "set is not closed under commutation: "
                f"{RigidCommutator(x, n)} with {RigidCommutator(y, n)} "
                f"gives {RigidCommutator(commutator_mask(x, y), n)}"
            )
        self.n = n
        self.masks = masks
        self._closed = True

    @classmethod
    def _make(cls, n: int, masks: frozenset[int], closed: bool) -> "SaturatedSet":
        self = object.__new__(cls)
        self.n = n
        self.masks = frozenset(masks)
        self._closed = closed
        return self

    @property
    def is_closed(self) -> bool:
        return self._closed

    @property
    def contains_translations(self) -> bool:
        """Whether every full-interval commutator t_i = [{1..i}] is a member."""
        return all(t in self.masks for t in _translation_masks(self.n))

    @property
    def log2_order(self) -> int:
        """log2 of the order of the generated subgroup (= member count)."""
        return len(self.masks)

    @property
    def members(self) -> tuple[RigidCommutator, ...]:
        """Members in canonical order (base ascending, then mask value)."""
        return tuple(
            RigidCommutator(m, self.n) for m in sorted(self.masks, key=mask_order_key)
        )

    def level_dims(self) -> tuple[int, ...]:
        """Member count per base, levels 1..n ascending.

        Level j contributes an elementary abelian block of this rank to
        the generated subgroup.
        """
        dims = [0] * self.n
        for m in self.masks:
            dims[m.bit_length() - 1] += 1
        return tuple(dims)

    def __contains__(self, item) -> bool:
        if isinstance(item, RigidCommutator):
            if item.n != self.n:
                return False
            return item.mask == 0 or item.mask in self.masks
        if isinstance(item, int):
            return item == 0 or item in self.masks
        return False

    def __iter__(self) -> Iterator[RigidCommutator]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SaturatedSet):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.n, self.masks))

    def issubset(self, other: "SaturatedSet") -> bool:
        return self.n == other.n and self.masks <= other.masks

    def __repr__(self) -> str:
        return f"SaturatedSet(n={self.n}, log2_order={self.log2_order})"

    # ── serialization ────────────────────────────────────────────────

    def to_json_dict(self) -> dict:
        return {"n": self.n, "members": [list(c.elements) for c in self.members]}

    def to_json(self, *, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "SaturatedSet":
        n, members = members_from_json(text)
        return cls(n, members)


def members_from_json(text: str) -> tuple[int, tuple[RigidCommutator, ...]]:
    """Read {"n": ..., "members": [...]} without requiring closure.

    Member entries may be descending integer lists like [6,5,4,3] or hex
    bitmask strings like "0x3c".
    """
    d = json.loads(text)
    if not isinstance(d, dict) or "n" not in d or "members" not in d:
        raise ValueError('expected {"n": ..., "members": [...]}')
    n = int(d["n"])
    out = []
    for entry in d["members"]:
        if isinstance(entry, str):
            mask = int(entry, 16)
            out.append(RigidCommutator(mask, n))
        elif isinstance(entry, list):
            out.append(RigidCommutator.from_elements(entry, n))
        else:
            raise ValueError(f"member entries must be lists or hex strings, got {entry!r}")
    return n, tuple(out)


def full_rigid_set(n: int) -> SaturatedSet:
    """All 2^n - 1 nonempty rigid commutators; generates the whole group."""
    # closed by construction: commutators of rigid commutators are rigid
    return SaturatedSet._make(n, frozenset(range(1, 1 << n)), True)


def saturate(members: Iterable[RigidCommutator], n: int | None = None) -> SaturatedSet:
    """Smallest saturated set containing the given commutators.

    Generates the same subgroup as the seed.  Rank is taken from the
    members when not given.
    """
    seed = list(members)
    if n is None:
        if not seed:
            raise ValueError("cannot infer rank from an empty seed")
        n = seed[0].n
    masks = set(_coerce_masks(seed, n))
    frontier = list(masks)
    while frontier:
        nxt = []
        for x in frontier:
            for y in list(masks):
                for c in (commutator_mask(x, y), commutator_mask(y, x)):
                    if c and c not in masks:
                        masks.add(c)
                        nxt.append(c)
        frontier = nxt
    return SaturatedSet._make(n, frozenset(masks), True)


# ── normalizer machinery ─────────────────────────────────────────────────────

def _normalizes(c: int, masks: frozenset[int]) -> bool:
    for m in masks:
        r = commutator_mask(c, m)
        if r and r not in masks:
            return False
    return True


def _scan_range(args) -> list[int]:
    lo, hi, masks = args
    return [c for c in range(lo, hi) if _normalizes(c, masks)]


def normalizing_step(M: SaturatedSet, *, jobs: int = 1) -> SaturatedSet:
    """All rigid commutators whose commutator with every member stays inside.

    This is one step of the normalizer chain: when the result contains
    the full-interval commutators it is the member set of the normalizer
    of the subgroup generated by ``M``, and is itself saturated.  When it
    does not (``contains_translations`` False), no group-level meaning is
    claimed; closure is then verified and recorded in ``is_closed``.
    """
    n = M.n
    total = 1 << n
    if jobs > 1:
        chunk = max(1, (total - 1) // jobs + 1)
        spans = [(lo, min(lo + chunk, total), M.masks) for lo in range(1, total, chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_scan_range, spans)
        cand = frozenset(c for part in parts for c in part)
    else:
        cand = frozenset(c for c in range(1, total) if _normalizes(c, M.masks))
    if all(t in cand for t in _translation_masks(n)):
        return SaturatedSet._make(n, cand, True)
    return SaturatedSet._make(n, cand, _closure_defect(cand) is None)


def normalizer_in(B: SaturatedSet, A: SaturatedSet) -> SaturatedSet:
    """Members of B normalizing the subgroup generated by A.

    Requires A to be a subset of B and to contain the full-interval
    commutators; the result then generates the normalizer of <A> inside
    <B> and is saturated.
    """
    if not A.issubset(B):
        raise ValueError("A must be a subset of B (same rank, members contained)")
    if not A.contains_translations:
        raise ValueError("A must contain all full-interval commutators t_1..t_n")
    cand = frozenset(b for b in B.masks if _normalizes(b, A.masks))
    return SaturatedSet._make(B.n, cand, True)


def normal_closure(A: SaturatedSet, B: SaturatedSet) -> SaturatedSet:
    """Smallest subset of B containing A and closed under commutation with all of B.

    Generates the normal closure of <A> in <B>.
    """
    if not A.issubset(B):
        raise ValueError("A must be a subset of B (same rank, members contained)")
    masks = set(A.masks)
    frontier = list(masks)
    while frontier:
        nxt = []
        for c in frontier:
            for b in B.masks:
                for r in (commutator_mask(c, b), commutator_mask(b, c)):
                    if r and r not in masks:
                        masks.add(r)
                        nxt.append(r)
        frontier = nxt
    return SaturatedSet._make(B.n, frozenset(masks), True)


# ── unique factorization over rigid commutators ──────────────────────────────

@dataclass(frozen=True)
class Factorization:
    """Unique decomposition of a tree permutation over rigid commutators.

    ``factors`` lists the exponent-1 commutators in canonical order; all
    other rigid commutators have exponent 0.  ``member`` reports whether
    every factor lay in the queried set (always True against the full
    set).
    """

    n: int
    factors: tuple[RigidCommutator, ...]
    member: bool

    def exponent(self, c: RigidCommutator) -> int:
        return 1 if c in set(self.factors) else 0

    def to_permutation(self, *, max_rank: int = FACTORIZE_MAX_RANK) -> perm.TreePermutation:
        """Re-expand the product of the factors, in canonical order."""
        out = perm.identity(self.n)
        for c in self.factors:
            out = perm.compose(out, perm.expand(c, max_rank=max_rank))
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "[]"
        return " ".join(str(c) for c in self.factors)


def _gf2_invert(mat: np.ndarray) -> np.ndarray:
    """Inverse of a square matrix over GF(2) by Gauss-Jordan elimination."""
    m = mat.shape[0]
    aug = np.concatenate([mat.astype(np.uint8) & 1, np.eye(m, dtype=np.uint8)], axis=1)
    for col in range(m):
        pivots = np.nonzero(aug[col:, col])[0]
        if pivots.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        piv = col + int(pivots[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        rows = np.nonzero(aug[:, col])[0]
        rows = rows[rows != col]
        aug[rows] ^= aug[col]
    return aug[:, m:]


@lru_cache(maxsize=None)
def _level_basis(n: int, level: int) -> tuple[tuple[int, ...], np.ndarray]:
    """Rigid commutators based at ``level`` and the inverse of their pattern matrix.

    Column k of the pattern matrix is the flip pattern of the k-th basis
    commutator, read off its expanded permutation; the columns are a
    GF(2) basis of all patterns at that level, so the matrix inverts.
    """
    top = 1 << (level - 1)
    masks = tuple(sub | top for sub in range(top))
    size = len(masks)
    mat = np.zeros((size, size), dtype=np.uint8)
    for k, mask in enumerate(masks):
        pat = perm.level_flip_pattern(
            perm.expand(RigidCommutator(mask, n), max_rank=n), level
        )
        for q in pat.flips:
            mat[q, k] = 1
    return masks, _gf2_invert(mat)


def factorize(
    g: perm.TreePermutation,
    within: SaturatedSet | None = None,
    *,
    max_rank: int = FACTORIZE_MAX_RANK,
) -> Factorization:
    """Factor a tree permutation uniquely over rigid commutators.

    Peels one level at a time: reads the letter-i flip pattern of the
    residual, solves for the exponents over the basis of rigid
    commutators based at i, divides the level off, and continues.  A
    non-identity final residual means the input is not in the tree
    group's coordinates.  With ``within`` given, ``member`` reports
    whether every factor lies in that set.
    """
    n = g.n
    if n > max_rank:
        raise perm.ScaleGuardError(
            f"factorize at rank {n} exceeds the cap {max_rank}; pass max_rank= to override"
        )
    if within is not None and within.n != n:
        raise ValueError(f"rank mismatch: permutation has rank {n}, set has {within.n}")
    pts = np.arange(1 << n)
    res = g._img
    factor_masks: list[int] = []
    for level in range(1, n + 1):
        shift = n - level
        prefixes = np.arange(1 << (level - 1))
        f = ((res[prefixes << (shift + 1)] >> shift) & 1).astype(np.uint8)
        if f.any():
            masks, inv = _level_basis(n, level)
            exps = inv.astype(np.int64) @ f.astype(np.int64) & 1
            factor_masks.extend(m for m, e in zip(masks, exps) if e)
            level_img = pts ^ (f[pts >> (shift + 1)].astype(np.int64) << shift)
            res = res[level_img]
    if not np.array_equal(res, pts):
        raise ValueError(
            "permutation is not an element of the rank-n tree group "
            "(residual after peeling all levels is not the identity)"
        )
    factors = tuple(RigidCommutator(m, n) for m in factor_masks)
    member = True if within is None else all(m in within.masks for m in factor_masks)
    return Factorization(n, factors, member)
