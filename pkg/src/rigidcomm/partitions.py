"""Distinct-part partition counts and the closed form of the chain terms.

The growth of the normalizer chain is governed by partitions into at
least two distinct parts: b_j counts them for total j, a_j is the
partial sum b_1 + ... + b_j, and each chain term is, in closed form, the
baseline set plus the punctured commutators whose puncture sets are such
partitions of a bounded total.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rigid import RigidCommutator, punctured_commutator
from .saturated import SaturatedSet

__all__ = [
    "PartitionTable",
    "distinct_partitions",
    "euler_table",
    "punctured_family",
    "predicted_chain_set",
]


@lru_cache(maxsize=None)
def _distinct_desc(total: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    # strictly decreasing partitions of total with parts <= max_part
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _distinct_desc(total - first, first - 1):
            out.append((first,) + rest)
    return tuple(out)


def distinct_partitions(
    total: int, *, min_parts: int = 2, max_part: int | None = None
) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into distinct parts, each a descending tuple.

    Defaults to at least two parts, the case that drives the chain
    indices.  ``max_part`` bounds the largest part.
    """
    if total < 0:
        raise ValueError("total must be >= 0")
    cap = total if max_part is None else min(max_part, total)
    return [p for p in _distinct_desc(total, cap) if len(p) >= min_parts]


@dataclass(frozen=True)
class PartitionTable:
    """Counts b_j of distinct-part (>= 2 parts) partitions and partial sums a_j.

    Both tuples are indexed by j = 0..max_total.
    """

    b: tuple[int, ...]
    a: tuple[int, ...]

    @property
    def max_total(self) -> int:
        return len(self.b) - 1


def euler_table(max_total: int) -> PartitionTable:
    """Tabulate b_j and a_j for j = 0..max_total."""
    if max_total < 0:
        raise ValueError("max_total must be >= 0")
    b = [len(distinct_partitions(j)) for j in range(max_total + 1)]
    a = []
    run = 0
    for count in b:
        run += count
        a.append(run)
    return PartitionTable(tuple(b), tuple(a))


def punctured_family(base: int, total: int, n: int) -> frozenset[RigidCommutator]:
    """Punctured commutators at ``base`` whose punctures are >= 2 distinct
    parts summing to ``total``.

    These are the sets {1..base} minus I with |I| >= 2, sum(I) = total,
    I inside {1..base-1}.
    """
    if not 1 <= base <= n:
        raise ValueError(f"base must be in 1..{n}, got {base}")
    return frozenset(
        punctured_commutator(base, p, n)
        for p in distinct_partitions(total, max_part=base - 1)
    )


def predicted_chain_set(n: int, i: int, *, method: str = "closed") -> SaturatedSet:
    """Closed-form description of the i-th chain term, 0 <= i <= n-2.

    ``method="closed"`` applies the membership rule directly: a
    commutator with base b and puncture set J belongs when |J| <= 1, or
    when |J| >= 2 and sum(J) <= i + 2 - (n - b).  ``method="recursive"``
    instead accumulates the per-step families; the two agree and are
    cross-checked in the tests.
    """
    if not 0 <= i <= n - 2:
        raise ValueError(f"step must satisfy 0 <= i <= n-2 = {n - 2}, got {i}")
    if method == "closed":
        members = []
        for b in range(1, n + 1):
            full = (1 << b) - 1
            # puncture sets J run over the submasks of {1..b-1}
            for j_mask in range(1 << (b - 1)):
                holes = bin(j_mask).count("1")
                if holes <= 1:
                    members.append(full & ~j_mask)
                    continue
                total = sum(k for k in range(1, b) if (j_mask >> (k - 1)) & 1)
                if total <= i + 2 - (n - b):
                    members.append(full & ~j_mask)
        return SaturatedSet(n, members)
    if method == "recursive":
        masks = {(1 << b) - 1 for b in range(1, n + 1)}
        for b in range(2, n + 1):
            full = (1 << b) - 1
            masks.update(full & ~(1 << (j - 1)) for j in range(1, b))
        for s in range(1, i + 1):
            for j in range(1, s + 1):
                for c in punctured_family(n + j - s, j + 2, n):
                    masks.add(c.mask)
        return SaturatedSet(n, masks)
    raise ValueError(f"unknown method {method!r}")
