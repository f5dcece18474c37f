"""Subset-coded rigid commutators.

A rigid commutator in the rank-n binary tree group is the left-normed
commutator of the standard generators taken along a strictly decreasing
index sequence, so it is determined by its index set alone.  Index sets
are coded as bitmasks (element k <-> bit k-1); the empty set stands for
the group identity.  The commutator of two rigid commutators is again
rigid or trivial and is given by a closed-form mask expression, so every
product in this module is O(1).

All values are immutable and every function is pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_RANK = 63  # element k occupies bit k-1 of a machine-word-sized int

__all__ = [
    "MAX_RANK",
    "RigidCommutator",
    "PuncturedForm",
    "commutator",
    "commutator_mask",
    "star",
    "reduce_left_normed",
    "to_punctured",
    "from_punctured",
    "punctured_commutator",
    "order_key",
    "mask_order_key",
    "format_commutator",
    "format_punctured",
    "parse_commutator",
    "evaluate_expression",
]


def _check_rank(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_RANK:
        raise ValueError(f"rank must be an integer in 1..{MAX_RANK}, got {n!r}")


@dataclass(frozen=True)
class RigidCommutator:
    """A rigid commutator, identified with a subset of {1, ..., n}.

    ``mask`` codes the index set; ``n`` is the ambient rank.  Mask 0 is
    the identity.  Instances are hashable and compare by value.
    """

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_rank(self.n)
        if not isinstance(self.mask, int) or not 0 <= self.mask < (1 << self.n):
            raise ValueError(
                f"mask must be in 0..2^{self.n}-1, got {self.mask!r}"
            )

    @classmethod
    def identity(cls, n: int) -> "RigidCommutator":
        return cls(0, n)

    @classmethod
    def from_elements(cls, elements: Iterable[int], n: int | None = None) -> "RigidCommutator":
        """Build from explicit indices, e.g. ``from_elements([6, 5, 4, 3])``."""
        mask = 0
        for k in elements:
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"indices must be positive integers, got {k!r}")
            mask |= 1 << (k - 1)
        if n is None:
            n = max(1, mask.bit_length())
        return cls(mask, n)

    @property
    def is_identity(self) -> bool:
        return self.mask == 0

    @property
    def base(self) -> int:
        """Largest index in the set.  Undefined for the identity."""
        if self.mask == 0:
            raise ValueError("the identity commutator has no base")
        return self.mask.bit_length()

    @property
    def hang(self) -> int:
        """Smallest index in the set.  Undefined for the identity."""
        if self.mask == 0:
            raise ValueError("the identity commutator has no hang")
        return (self.mask & -self.mask).bit_length()

    @property
    def elements(self) -> tuple[int, ...]:
        """Indices in descending order, matching the bracket notation."""
        return tuple(k for k in range(self.n, 0, -1) if (self.mask >> (k - 1)) & 1)

    def __str__(self) -> str:
        return format_commutator(self)


def commutator_mask(x: int, y: int) -> int:
    """Commutator of two rigid commutators, on raw masks.

    The product vanishes when either factor is the identity, when the
    bases agree, or when the smaller base already occurs in the
    larger-based set.  Otherwise the result keeps the smaller base,
    everything the two sets share, and the part of the larger-based set
    above the smaller base.
    """
    if x == 0 or y == 0:
        return 0
    a = x.bit_length()
    b = y.bit_length()
    if a == b:
        return 0
    if a < b:
        x, y = y, x
        b = a
    if (x >> (b - 1)) & 1:
        return 0
    return (1 << (b - 1)) | (x & y) | (x & ~((1 << b) - 1))


def commutator(x: RigidCommutator, y: RigidCommutator) -> RigidCommutator:
    """Group commutator x^-1 y^-1 x y of two rigid commutators."""
    if x.n != y.n:
        raise ValueError(f"rank mismatch: {x.n} != {y.n}")
    return RigidCommutator(commutator_mask(x.mask, y.mask), x.n)


def star(x: RigidCommutator, y: RigidCommutator) -> RigidCommutator:
    """Commutator viewed as a bilinear-style product on index sets.

    Same operation as :func:`commutator`; under it the nonempty subsets
    span a commutative algebra with x*x = 0 over the two-element field.
    """
    return commutator(x, y)


def reduce_left_normed(word: Sequence[int], n: int | None = None) -> RigidCommutator:
    """Collapse a left-normed generator word [i1, i2, ..., ik] to rigid form.

    Folds the closed-form product left to right, so arbitrary index
    sequences are allowed; strictly decreasing ones reproduce their own
    index set, and any adjacent repeat collapses the whole word.
    """
    if len(word) == 0:
        raise ValueError("word must have length >= 1")
    if n is None:
        n = max(word)
    _check_rank(n)
    for k in word:
        if not 1 <= k <= n:
            raise ValueError(f"index {k} outside 1..{n}")
    mask = 1 << (word[0] - 1)
    for k in word[1:]:
        mask = commutator_mask(mask, 1 << (k - 1))
    return RigidCommutator(mask, n)


# ── punctured view ───────────────────────────────────────────────────────────

@dataclass(frozen=True)
class PuncturedForm:
    """A nonempty rigid commutator written as a full interval minus holes.

    ``base`` is the top index b, ``punctures`` the set of missing indices
    below it; the pair denotes the index set {1..b} minus punctures.
    ``n`` is the ambient rank, carried so the round-trip needs no extra
    argument.
    """

    base: int
    punctures: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        _check_rank(self.n)
        if not 1 <= self.base <= self.n:
            raise ValueError(f"base must be in 1..{self.n}, got {self.base}")
        object.__setattr__(self, "punctures", frozenset(self.punctures))
        if any(not 1 <= p <= self.base - 1 for p in self.punctures):
            raise ValueError("punctures must lie strictly below the base")

    def __str__(self) -> str:
        inner = ",".join(str(p) for p in sorted(self.punctures, reverse=True))
        return f"{self.base}^{{{inner}}}"


def to_punctured(c: RigidCommutator) -> PuncturedForm:
    """Write a nonempty rigid commutator in base-and-punctures form."""
    if c.is_identity:
        raise ValueError("the identity has no punctured form")
    b = c.base
    missing = frozenset(k for k in range(1, b) if not (c.mask >> (k - 1)) & 1)
    return PuncturedForm(b, missing, c.n)


def from_punctured(p: PuncturedForm) -> RigidCommutator:
    mask = (1 << p.base) - 1
    for hole in p.punctures:
        mask &= ~(1 << (hole - 1))
    return RigidCommutator(mask, p.n)


def punctured_commutator(base: int, punctures: Iterable[int], n: int | None = None) -> RigidCommutator:
    """Convenience builder: the commutator with index set {1..base} minus punctures."""
    if n is None:
        n = base
    return from_punctured(PuncturedForm(base, frozenset(punctures), n))


# ── canonical order ──────────────────────────────────────────────────────────

def mask_order_key(mask: int) -> tuple[int, int]:
    """Sort key for raw masks: base ascending, then mask value ascending."""
    return (mask.bit_length(), mask)


def order_key(c: RigidCommutator) -> tuple[int, int]:
    """Canonical order on rigid commutators; the identity sorts first."""
    return mask_order_key(c.mask)


# ── text forms ───────────────────────────────────────────────────────────────

def format_commutator(c: RigidCommutator) -> str:
    """Canonical bracket form, indices descending: "[6,5,4,3]"; identity is "[]"."""
    return "[" + ",".join(str(k) for k in c.elements) + "]"


def format_punctured(c: RigidCommutator) -> str:
    """Base-and-punctures form, punctures descending: "6^{2,1}"."""
    return str(to_punctured(c))


_PUNCTURED_RE = re.compile(r"^(\d+)\^\{([\d,\s]*)\}$")


def parse_commutator(text: str, n: int | None = None) -> RigidCommutator:
    """Parse a canonical text form: "[6,5,4,3]", "[]", or "6^{2,1}".

    Bracket lists must be strictly descending (use
    :func:`evaluate_expression` for arbitrary nested words).  The rank
    defaults to the largest index seen, or 1 for the identity.
    """
    s = text.strip()
    m = _PUNCTURED_RE.match(s)
    if m is not None:
        base = int(m.group(1))
        inner = m.group(2).strip()
        holes = [int(t) for t in inner.split(",")] if inner else []
        if n is not None and base > n:
            raise ValueError(f"base {base} exceeds rank {n}")
        return punctured_commutator(base, holes, n if n is not None else base)
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"not a commutator literal: {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return RigidCommutator(0, n if n is not None else 1)
    try:
        ks = [int(t) for t in inner.split(",")]
    except ValueError:
        raise ValueError(f"not a commutator literal: {text!r}") from None
    if any(ks[i] <= ks[i + 1] for i in range(len(ks) - 1)):
        raise ValueError(f"canonical form requires strictly descending indices: {text!r}")
    return RigidCommutator.from_elements(ks, n)


# ── expression evaluator ─────────────────────────────────────────────────────
#
# Grammar for nested commutator words:
#   expr  := '[' items? ']' | INT '^' '{' ints? '}'
#   items := item (',' item)*
#   item  := INT | expr
# A bracket list folds left-normed: [a, b, c] = [[a, b], c], with bare
# integers meaning single-generator commutators.

class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> None:
        if self.peek() != ch:
            raise ValueError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ValueError(f"expected integer at position {start} in {self.text!r}")
        return int(self.text[start:self.pos])


def _parse_node(sc: _Scanner):
    ch = sc.peek()
    if ch == "[":
        sc.take("[")
        items = []
        if sc.peek() != "]":
            items.append(_parse_node(sc))
            while sc.peek() == ",":
                sc.take(",")
                items.append(_parse_node(sc))
        sc.take("]")
        return ("word", items)
    k = sc.take_int()
    if sc.peek() == "^":
        sc.take("^")
        sc.take("{")
        holes = []
        if sc.peek() != "}":
            holes.append(sc.take_int())
            while sc.peek() == ",":
                sc.take(",")
                holes.append(sc.take_int())
        sc.take("}")
        return ("punctured", k, holes)
    return ("gen", k)


def _node_max_index(node) -> int:
    kind = node[0]
    if kind == "gen":
        return node[1]
    if kind == "punctured":
        return node[1]
    return max((_node_max_index(it) for it in node[1]), default=0)


def _eval_node(node, n: int) -> int:
    kind = node[0]
    if kind == "gen":
        k = node[1]
        if not 1 <= k <= n:
            raise ValueError(f"index {k} outside 1..{n}")
        return 1 << (k - 1)
    if kind == "punctured":
        base, holes = node[1], node[2]
        return punctured_commutator(base, holes, n).mask
    items = node[1]
    if not items:
        return 0
    mask = _eval_node(items[0], n)
    for it in items[1:]:
        mask = commutator_mask(mask, _eval_node(it, n))
    return mask


def evaluate_expression(text: str, n: int | None = None) -> RigidCommutator:
    """Evaluate a nested commutator word such as "[[6,5,4,3],[2,1]]".

    Bare integers are generators, bracket lists fold left-normed, and
    punctured literals like "6^{2,1}" are accepted anywhere.  The rank
    defaults to the largest index in the expression.
    """
    sc = _Scanner(text)
    node = _parse_node(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ValueError(f"trailing input at position {sc.pos} in {text!r}")
    top = _node_max_index(node)
    if n is None:
        n = max(1, top)
    _check_rank(n)
    if top > n:
        raise ValueError(f"index {top} outside 1..{n}")
    return RigidCommutator(_eval_node(node, n), n)
