"""The normalizer chain, started from the normalizer of the translations.

The chain begins with the generating set of the normalizer of the
regular elementary abelian subgroup spanned by the full-interval
commutators, and repeatedly applies :func:`rigidcomm.saturated.normalizing_step`.
In a 2-group every proper subgroup is properly contained in its
normalizer, so the log2 orders climb strictly until the full group is
reached, after which the chain is a fixpoint.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Iterable

from .rigid import RigidCommutator, mask_order_key
from .saturated import SaturatedSet, normalizing_step
from . import partitions

__all__ = [
    "ChainStep",
    "ChainReport",
    "translation_set",
    "translation_normalizer_set",
    "run_chain",
    "verify_theoretical",
]


def translation_set(n: int) -> SaturatedSet:
    """The full-interval commutators t_i = [{1..i}], i = 1..n.

    They span a regular elementary abelian subgroup of order 2^n.
    """
    return SaturatedSet(n, [(1 << i) - 1 for i in range(1, n + 1)])


def translation_normalizer_set(n: int) -> SaturatedSet:
    """Members of the normalizer of the translation span: the t_i plus
    every full interval with a single puncture.

    Has n(n+1)/2 members, so the subgroup has order 2^(n(n+1)/2).
    """
    masks = [(1 << i) - 1 for i in range(1, n + 1)]
    for i in range(2, n + 1):
        ti = (1 << i) - 1
        masks.extend(ti & ~(1 << (j - 1)) for j in range(1, i))
    return SaturatedSet(n, masks)


@dataclass(frozen=True)
class ChainStep:
    """One chain term: step index, size, growth, level profile, new members.

    ``level_dims`` counts members per base, levels 1..n ascending.
    ``index_log2`` is log2 of the index over the previous term; for step
    0 it is reported against the translation span.  ``seconds`` is a
    wall-clock diagnostic and takes no part in comparisons or JSON.
    """

    i: int
    log2_order: int
    index_log2: int
    level_dims: tuple[int, ...]
    new_members: tuple[RigidCommutator, ...]
    seconds: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class ChainReport:
    """Full record of a chain run.

    ``terminated_at`` is the step where the full group was reached, or
    the step budget if that ran out first; ``reached_full`` says which.
    """

    n: int
    steps: tuple[ChainStep, ...]
    terminated_at: int
    reached_full: bool

    def index_sequence(self, count: int) -> tuple[int, ...]:
        """log2 indices for steps 1..count, padding a full-group fixpoint with zeros.

        Refuses to pad a budget-terminated report: those later indices
        were never computed.
        """
        have = [s.index_log2 for s in self.steps[1:]]
        if count <= len(have):
            return tuple(have[:count])
        if not self.reached_full:
            raise ValueError(
                f"only {len(have)} steps computed and the chain had not reached "
                "the full group; cannot pad"
            )
        return tuple(have) + (0,) * (count - len(have))

    def member_masks_at(self, i: int) -> frozenset[int]:
        """Member set of the i-th term, rebuilt from the recorded deltas."""
        if not 0 <= i <= self.terminated_at:
            raise ValueError(f"step {i} outside 0..{self.terminated_at}")
        masks = set()
        for step in self.steps[: i + 1]:
            masks.update(c.mask for c in step.new_members)
        for t in range(1, self.n + 1):
            masks.add((1 << t) - 1)
        return frozenset(masks)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "terminated_at": self.terminated_at,
            "reached_full": self.reached_full,
            "steps": [
                {
                    "i": s.i,
                    "log2_order": s.log2_order,
                    "index_log2": s.index_log2,
                    "level_dims": list(s.level_dims),
                    "new_members": [list(c.elements) for c in s.new_members],
                }
                for s in self.steps
            ],
        }

    def to_json(self, *, indent: int | None = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _sorted_members(n: int, masks: Iterable[int]) -> tuple[RigidCommutator, ...]:
    return tuple(RigidCommutator(m, n) for m in sorted(masks, key=mask_order_key))


def run_chain(
    n: int,
    max_steps: int | None = None,
    *,
    stop_at_full: bool = True,
    jobs: int = 1,
) -> ChainReport:
    """Run the normalizer chain at rank n.

    Step 0 is the translation-normalizer baseline, its index reported
    against the translation span (n(n-1)/2).  Subsequent steps apply the
    normalizing step until the full group or the step budget (default
    2^n) is reached.  With ``stop_at_full`` False, fixpoint steps after
    the full group are appended as zero-index rows without recomputation,
    since the full group is its own normalizer.
    """
    if n < 1:
        raise ValueError("rank must be at least 1")
    if max_steps is not None and max_steps < 0:
        raise ValueError("step budget cannot be negative")
    budget = (1 << n) if max_steps is None else max_steps
    full_log2 = (1 << n) - 1
    t0 = time.perf_counter()
    current = translation_normalizer_set(n)
    baseline = ChainStep(
        i=0,
        log2_order=current.log2_order,
        index_log2=n * (n - 1) // 2,
        level_dims=current.level_dims(),
        new_members=_sorted_members(
            n, current.masks - frozenset((1 << i) - 1 for i in range(1, n + 1))
        ),
        seconds=time.perf_counter() - t0,
    )
    steps = [baseline]
    i = 0
    terminated_at = 0
    reached_full = current.log2_order == full_log2
    while i < budget and not reached_full:
        t0 = time.perf_counter()
        nxt = normalizing_step(current, jobs=jobs)
        i += 1
        steps.append(
            ChainStep(
                i=i,
                log2_order=nxt.log2_order,
                index_log2=nxt.log2_order - current.log2_order,
                level_dims=nxt.level_dims(),
                new_members=_sorted_members(n, nxt.masks - current.masks),
                seconds=time.perf_counter() - t0,
            )
        )
        current = nxt
        terminated_at = i
        reached_full = current.log2_order == full_log2
    if reached_full and not stop_at_full:
        # past the full group the chain is constant; report without recomputing
        while i < budget:
            i += 1
            steps.append(
                ChainStep(
                    i=i,
                    log2_order=full_log2,
                    index_log2=0,
                    level_dims=current.level_dims(),
                    new_members=(),
                    seconds=0.0,
                )
            )
        terminated_at = i
    return ChainReport(n, tuple(steps), terminated_at, reached_full)


def verify_theoretical(report: ChainReport) -> list[tuple[int, bool]]:
    """Compare each computed term against the closed-form prediction.

    Valid for steps 0..n-2; returns (step, matches) pairs.
    """
    n = report.n
    out = []
    for i in range(0, n - 1):
        if i > report.terminated_at:
            break
        predicted = partitions.predicted_chain_set(n, i)
        out.append((i, report.member_masks_at(i) == predicted.masks))
    return out
