"""
Saturated sets, closures, and unique factorization
==================================================

A set of rigid commutators closed under commutation spans a subgroup
whose order is read off the set size.  Inside that world normalizers
and normal closures are subset scans, and every element of the tree
group factors uniquely as an ordered product of rigid commutators.
"""

import random

from rigidcomm import (
    RigidCommutator,
    SaturatedSet,
    compose,
    expand,
    factorize,
    full_rigid_set,
    identity,
    normal_closure,
    normalizing_step,
    saturate,
    translation_normalizer_set,
)

n = 4

# close a seed set under commutation
seed = [RigidCommutator.from_elements(s, n) for s in ([3, 1], [2])]
closed = saturate(seed, n)
print("saturating {[3,1], [2]} gives:", " ".join(str(c) for c in closed.members))
print("log2 of the spanned subgroup:", closed.log2_order)
print()

# one normalizer step: the largest commutator set normalizing the span
u = translation_normalizer_set(n)
stepped = normalizing_step(u)
print("baseline grows by:", " ".join(str(c) for c in stepped.members
                                     if c.mask not in u.masks))
print()

# normal closure of a single deep commutator in the full ambient set
seed_set = SaturatedSet(n, [RigidCommutator.from_elements([4, 2], n)])
clo = normal_closure(seed_set, full_rigid_set(n))
print("normal closure of [4,2]:", " ".join(str(c) for c in clo.members))
print()

# every element of the tree group factors uniquely over rigid
# commutators in a fixed order; multiply a random word, factor, compare
rng = random.Random(7)
g = identity(n)
for _ in range(6):
    g = compose(g, expand(RigidCommutator(rng.randrange(1, 1 << n), n)))
fac = factorize(g)
print("random product factors as:", fac)
print("re-expanding reproduces it:", fac.to_permutation() == g)

# membership verdicts come along for free
fac_in_u = factorize(g, translation_normalizer_set(n))
print("inside the translation normalizer:", fac_in_u.member)
