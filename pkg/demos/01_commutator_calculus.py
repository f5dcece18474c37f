"""
Rigid commutator arithmetic on subsets
======================================

A rigid commutator is the left-normed commutator of tree generators
taken along a strictly decreasing index word.  It is determined by the
set of indices alone, so the whole calculus runs on bitmasks: one
machine word per group element, one formula per product.
"""

from rigidcomm import (
    RigidCommutator,
    commutator,
    evaluate_expression,
    format_commutator,
    parse_commutator,
    reduce_left_normed,
    to_punctured,
)

# build from explicit index sets; the string form lists indices descending
x = RigidCommutator.from_elements([6, 5, 4, 3], 6)
y = RigidCommutator.from_elements([2, 1], 6)
print("x =", x)
print("y =", y)

# the product needs no permutation at all: it is a bit formula
print("[x, y] =", commutator(x, y))

# the same via the tiny expression language
print("parsed:", evaluate_expression("[[6,5,4,3],[2,1]]"))

# commutators with equal base collapse
print("[x, x'] =", commutator(x, RigidCommutator.from_elements([6, 2], 6)))

# arbitrary generator words reduce to a single rigid commutator
print("reduce [3,1,2] ->", reduce_left_normed([3, 1, 2]))
print("reduce [3,3,2] ->", reduce_left_normed([3, 3, 2]))

# deep intervals with a few indices removed come up constantly, so they
# get a shorthand: base with punctures
c = parse_commutator("[6,5,4,3]")
print(format_commutator(c), "is", to_punctured(c), "in punctured form")
