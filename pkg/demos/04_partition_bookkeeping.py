"""
Partition counts drive the chain indices
========================================

The growth of the normalizer chain is governed by partitions into at
least two distinct parts: step i at rank n adds commutators whose
puncture sets sum to small totals, and the count of those is a partial
sum of partition numbers.  The matrix of indices makes the pattern
plain: a stable prefix independent of the rank, then a tail that is
still unexplained.
"""

from rigidcomm import (
    distinct_partitions,
    euler_table,
    predicted_chain_set,
    punctured_family,
    run_chain,
)

# partitions of j into at least two distinct parts
for j in (3, 5, 6, 9):
    print(f"partitions of {j}:", distinct_partitions(j))
print()

# their counts b_j and partial sums a_j
table = euler_table(14)
print("j  :", " ".join(f"{j:>3}" for j in range(15)))
print("b_j:", " ".join(f"{v:>3}" for v in table.b))
print("a_j:", " ".join(f"{v:>3}" for v in table.a))
print()

# the punctured commutators whose punctures sum to j
for j in (3, 5):
    fam = sorted(str(c) for c in punctured_family(6, j, 6))
    print(f"base-6 puncture sum {j}:", " ".join(fam))
print()

# the index matrix: rows are ranks, columns are chain steps; the first
# n-2 entries of row n are a_3, a_4, ... regardless of n
print("n  | log2 indices, steps 1..14")
for n in range(3, 13):
    seq = run_chain(n, 14).index_sequence(14)
    print(f"{n:>2} | {' '.join(f'{v:>3}' for v in seq)}")
print()

# the closed form names each early term exactly
n, i = 7, 3
predicted = predicted_chain_set(n, i)
computed = run_chain(n, i).member_masks_at(i)
print(f"rank {n} step {i}: closed form = computed chain term:",
      predicted.masks == computed)
