"""
The permutation oracle
======================

Every rigid commutator expands to an honest permutation of the 2^n
leaves of the binary tree.  Expansion is slow and the mask product is
instant; running both and comparing is the standing cross-check that
keeps the fast layer honest.
"""

from rigidcomm import (
    RigidCommutator,
    commutator,
    expand,
    generator,
    perm_commutator,
    translation_checks,
)
from rigidcomm.rigid import commutator_mask

n = 4

# the generators themselves: s_i flips letter i on all-zero prefixes,
# so s_1 swaps the two halves and s_n swaps the first two points
print("s_1 =", generator(1, n).cycle_string())
print(f"s_{n} =", generator(n, n).cycle_string())

# full intervals act freely: every point is moved by a fixed stride
t3 = RigidCommutator.from_elements([3, 2, 1], n)
print("t_3 =", expand(t3).cycle_string())

# the oracle agreement, exhaustively over all pairs at this rank
perms = [expand(RigidCommutator(m, n)) for m in range(1 << n)]
mismatches = 0
for a in range(1 << n):
    for b in range(1 << n):
        fast = commutator_mask(a, b)
        slow = perm_commutator(perms[a], perms[b])
        if slow != perms[fast]:
            mismatches += 1
print(f"oracle disagreements over all {(1 << n) ** 2} pairs:", mismatches)

# one pair spelled out
a = RigidCommutator.from_elements([4, 3, 2], n)
b = RigidCommutator.from_elements([2, 1], n)
print("mask product:   ", commutator(a, b))
print("perm commutator:", perm_commutator(expand(a), expand(b)).cycle_string())
print("expanded product:", expand(commutator(a, b)).cycle_string())

# the full intervals span a regular elementary abelian subgroup
print("translation checks at rank", n, "->", translation_checks(n))
