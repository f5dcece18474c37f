"""Permutation oracle: generators, expansion, and agreement with the mask rule.

The oracle is deliberately dumb (image arrays, left-normed folds); these
tests pin its conventions against frozen cycle forms and then use it to
certify the closed-form product.
"""

import itertools
import random

import numpy as np
import pytest

from rigidcomm import (
    RigidCommutator,
    ScaleGuardError,
    TreePermutation,
    brute_normalizer_in_sym,
    compose,
    elementary_abelian_order,
    expand,
    flip_pattern_permutation,
    generate_group,
    generator,
    identity,
    inverse,
    level_flip_pattern,
    perm_commutator,
    perm_from_json,
    perm_to_json,
    translation_checks,
)
from rigidcomm.permutations import LevelFlipPattern
from rigidcomm.rigid import commutator_mask

C = RigidCommutator.from_elements


def interval(i, n):
    return RigidCommutator((1 << i) - 1, n)


# ── generators and conventions ───────────────────────────────────────────────

def test_generator_cycle_forms_n2():
    assert generator(1, 2).cycle_string() == "(1, 3)(2, 4)"
    assert generator(2, 2).cycle_string() == "(1, 2)"


def test_generator_is_involution_with_prefix_support():
    for n in (1, 3, 5):
        for i in range(1, n + 1):
            s = generator(i, n)
            assert compose(s, s).is_identity
            moved = [p for p in range(1, (1 << n) + 1) if s(p) != p]
            assert moved == list(range(1, (1 << (n - i + 1)) + 1))


def test_right_action_composition():
    # apply p then q: point 1 under s1*s2 at n=2: s1 sends 1->3, s2 fixes 3
    p = compose(generator(1, 2), generator(2, 2))
    assert p(1) == 3
    # the other order: s2 sends 1->2, s1 sends 2->4
    q = compose(generator(2, 2), generator(1, 2))
    assert q(1) == 4


def test_interval_commutator_cycle_forms():
    # the full interval t_i flips letter i under every prefix, pairing
    # x with x + 2^(n-i); frozen rank-6 forms (1,33)(2,34)..., (1,17)...,
    # down to t6 = (1,2)(3,4)...(63,64)
    n = 6
    for i in range(1, n + 1):
        stride = 1 << (n - i)
        expected = "".join(
            f"({x + 1}, {x + 1 + stride})"
            for x in range(1 << n)
            if not (x // stride) % 2
        )
        assert expand(interval(i, n)).cycle_string() == expected
    # the doubly punctured interval frees letters 3..5 but pins 1..2 to
    # zero: computed once on the oracle, frozen here
    eta6 = expand(C([6, 5, 4, 3], 6))
    assert eta6.cycle_string() == "(1, 2)(3, 4)(5, 6)(7, 8)(9, 10)(11, 12)(13, 14)(15, 16)"


def test_permutation_value_semantics():
    a = generator(2, 3)
    b = generator(2, 3)
    assert a == b and hash(a) == hash(b)
    assert a != generator(1, 3)
    assert len({a, b}) == 1


def test_images_are_one_based():
    s = generator(1, 1)
    assert s.images == (2, 1)
    assert TreePermutation((2, 1)) == s
    with pytest.raises(ValueError):
        TreePermutation((1, 1))
    with pytest.raises(ValueError):
        TreePermutation((1, 2, 3))


def test_inverse_and_commutator():
    p = compose(generator(1, 3), generator(2, 3))
    assert compose(p, inverse(p)).is_identity
    q = generator(3, 3)
    c = perm_commutator(p, q)
    assert c == compose(compose(inverse(p), inverse(q)), compose(p, q))


def test_json_round_trip():
    p = expand(C([3, 2], 3))
    assert perm_from_json(perm_to_json(p)) == p
    with pytest.raises(ValueError):
        perm_from_json('{"images": [1]}')


# ── expand as a homomorphic oracle ───────────────────────────────────────────

def test_expand_of_identity_and_singletons():
    assert expand(RigidCommutator.identity(4)).is_identity
    for i in range(1, 5):
        assert expand(C([i], 4)) == generator(i, 4)


def test_expand_scale_guard():
    with pytest.raises(ScaleGuardError):
        expand(RigidCommutator(1, 13))
    # override is available
    assert expand(RigidCommutator(1, 13), max_rank=13).n == 13


def test_oracle_equivalence_exhaustive_small():
    for n in range(1, 7):
        perms = [expand(RigidCommutator(m, n)) for m in range(1 << n)]
        for x in range(1 << n):
            for y in range(1 << n):
                assert perm_commutator(perms[x], perms[y]) == perms[commutator_mask(x, y)]


def test_oracle_equivalence_exhaustive_n8():
    n = 8
    perms = [expand(RigidCommutator(m, n)) for m in range(1 << n)]
    invs = [inverse(p) for p in perms]
    for x in range(1 << n):
        px, ipx = perms[x], invs[x]
        for y in range(1 << n):
            lhs = compose(compose(ipx, invs[y]), compose(px, perms[y]))
            assert lhs == perms[commutator_mask(x, y)]


# ── the six product clauses, sampled ─────────────────────────────────────────

def _mask_to_desc(mask):
    return tuple(k for k in range(mask.bit_length(), 0, -1) if (mask >> (k - 1)) & 1)


def test_product_clauses_sampled():
    # 10^4 random pairs across ranks 2..10; checks every clause of the
    # closed form directly on permutations
    rng = random.Random(0xC0FFEE)
    cache = {}

    def ex(mask, n):
        key = (mask, n)
        if key not in cache:
            cache[key] = expand(RigidCommutator(mask, n), max_rank=10)
        return cache[key]

    for _ in range(10_000):
        n = rng.randint(2, 10)
        x = rng.randrange(1, 1 << n)
        y = rng.randrange(1, 1 << n)
        px, py = ex(x, n), ex(y, n)
        c = perm_commutator(px, py)

        # symmetry and involution
        assert c == perm_commutator(py, px)
        assert compose(c, c).is_identity

        a, b = x.bit_length(), y.bit_length()
        if a == b:
            assert c.is_identity
            continue
        if a < b:
            x, y = y, x
            a, b = b, a
            px, py = py, px
        if (x >> (b - 1)) & 1:
            # smaller base occurs in the larger set: trivial product
            assert c.is_identity
            continue
        # dropping the hang of the smaller word changes nothing while it
        # stays below the larger word's hang
        y_rest = y & (y - 1)
        if y_rest and (y & -y) < (x & -x):
            assert c == perm_commutator(px, ex(y_rest, n))
        # shared-hang peel: strip the common lowest index, commute, re-append
        if y_rest and (y & -y) == (x & -x):
            m = (y & -y).bit_length()
            peeled = perm_commutator(ex(x & (x - 1), n), ex(y_rest, n))
            assert c == perm_commutator(peeled, ex(1 << (m - 1), n))
        # full closed form
        expected = (1 << (b - 1)) | (x & y) | (x & ~((1 << b) - 1))
        assert c == ex(expected, n)


# ── flip patterns ────────────────────────────────────────────────────────────

def test_flip_pattern_round_trip():
    n = 4
    pat = LevelFlipPattern(3, frozenset({0, 3}))
    p = flip_pattern_permutation(pat, n)
    assert level_flip_pattern(p, 3) == pat
    assert compose(p, p).is_identity


def test_flip_pattern_of_generator():
    # generator i flips only under the all-zero prefix
    for n in (2, 4):
        for i in range(1, n + 1):
            pat = level_flip_pattern(generator(i, n), i)
            assert pat.flips == frozenset({0})


def test_flip_pattern_validation():
    with pytest.raises(ValueError):
        LevelFlipPattern(2, frozenset({2}))
    with pytest.raises(ValueError):
        level_flip_pattern(identity(3), 4)


# ── brute-force group machinery ──────────────────────────────────────────────

def test_generate_group_dihedral():
    # rank 2 tree group: order 8
    group = generate_group([generator(1, 2), generator(2, 2)])
    assert len(group) == 8


def test_elementary_abelian_order_examples():
    n = 3
    ts = [expand(interval(i, n)) for i in range(1, n + 1)]
    assert elementary_abelian_order(ts) == 2 ** 3
    # all four commutators based at level 3 are independent
    base3 = [expand(RigidCommutator(m, n)) for m in (0b100, 0b101, 0b110, 0b111)]
    assert elementary_abelian_order(base3) == 2 ** 4
    with pytest.raises(ValueError):
        elementary_abelian_order([generator(1, 2), generator(2, 2)])  # don't commute


def test_translation_checks_small():
    for n in (1, 2, 3, 6):
        report = translation_checks(n)
        assert report["involutions"]
        assert report["pairwise_commute"]
        assert report["orbit_size"] == 1 << n
        assert report["orbit_full"]
        assert report["stabilizer_trivial"]


def test_brute_normalizer_of_baseline_n2():
    # the baseline set already spans the whole rank-2 tree group, which
    # is self-normalizing in Sym(4)... it is dihedral of order 8, and
    # its normalizer in Sym(4) is itself.
    masks = [0b01, 0b11, 0b10]
    elems = generate_group([expand(RigidCommutator(m, 2)) for m in masks])
    nor = brute_normalizer_in_sym(elems, 2)
    assert len(nor) == 8
    assert nor == elems


def test_brute_normalizer_scale_guard():
    with pytest.raises(ScaleGuardError):
        brute_normalizer_in_sym([identity(4)], 4)
