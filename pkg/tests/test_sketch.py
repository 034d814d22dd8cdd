import random

import numpy as np
import pytest

from substream import (
    BottomHSketch,
    ParameterError,
    jaccard_estimate,
    make_permutation,
    sketch_insert,
    sketch_of,
    sketch_union,
)


class TestPermutation:
    def test_domain_one(self):
        perm = make_permutation(42, 1)
        assert perm(0) == 0

    def test_deterministic(self):
        a = make_permutation(99, 500)
        b = make_permutation(99, 500)
        assert np.array_equal(a.table, b.table)

    def test_bijection(self):
        perm = make_permutation(5, 1000)
        assert sorted(perm.table.tolist()) == list(range(1000))

    def test_zero_domain_rejected(self):
        with pytest.raises(ParameterError):
            make_permutation(1, 0)


class TestInsert:
    def test_into_empty(self):
        sk = sketch_insert(BottomHSketch(4), 7)
        assert sk.values == (7,)

    def test_larger_than_all_ignored_when_full(self):
        sk = BottomHSketch(2, (1, 3))
        assert sketch_insert(sk, 9).values == (1, 3)

    def test_keeps_two_smallest(self):
        sk = BottomHSketch(2)
        for v in (5, 3, 9, 1):
            sk = sketch_insert(sk, v)
        assert sk.values == (1, 3)

    def test_duplicates_ignored(self):
        sk = BottomHSketch(3, (2, 5))
        assert sketch_insert(sk, 5).values == (2, 5)

    def test_order_independent(self):
        rng = random.Random(8)
        values = [rng.randrange(1000) for _ in range(40)]
        for _ in range(10):
            shuffled = values[:]
            rng.shuffle(shuffled)
            sk = BottomHSketch(8)
            for v in shuffled:
                sk = sketch_insert(sk, v)
            assert sk.values == tuple(sorted(set(values))[:8])


class TestUnion:
    def test_identity(self):
        sk = BottomHSketch(4, (1, 5, 9))
        assert sketch_union(sk, BottomHSketch(4)).values == sk.values

    def test_commutative_idempotent(self):
        a = BottomHSketch(4, (1, 4, 9))
        b = BottomHSketch(4, (2, 4, 11))
        assert sketch_union(a, b) == sketch_union(b, a)
        assert sketch_union(a, a) == a

    def test_matches_full_set_sketch(self):
        rng = random.Random(3)
        perm = make_permutation(12, 512)
        for _ in range(40):
            a = rng.sample(range(512), rng.randint(0, 60))
            b = rng.sample(range(512), rng.randint(0, 60))
            merged = sketch_union(sketch_of(perm, a, 8), sketch_of(perm, b, 8))
            assert merged == sketch_of(perm, set(a) | set(b), 8)

    def test_mismatched_h_rejected(self):
        with pytest.raises(ParameterError):
            sketch_union(BottomHSketch(4), BottomHSketch(8))

    def test_mismatched_domain_rejected(self):
        with pytest.raises(ParameterError):
            sketch_union(BottomHSketch(4, (), 100), BottomHSketch(4, (), 200))


class TestJaccard:
    def test_identical_sketches_distance_zero(self):
        sk = BottomHSketch(4, (3, 8, 20))
        assert jaccard_estimate(sk, sk) == 0.0

    def test_disjoint_bottom_values_distance_one(self):
        a = BottomHSketch(2, (1, 2))
        b = BottomHSketch(2, (5, 6))
        assert jaccard_estimate(a, b) == 1.0

    def test_both_empty_defined_as_one(self):
        assert jaccard_estimate(BottomHSketch(4), BottomHSketch(4)) == 1.0

    def test_exact_when_union_fits(self):
        perm = make_permutation(77, 256)
        a = [1, 2, 3]
        b = [2, 3, 9, 11]
        est = jaccard_estimate(sketch_of(perm, a, 8), sketch_of(perm, b, 8))
        truth = 1 - len(set(a) & set(b)) / len(set(a) | set(b))
        assert est == truth

    def test_mean_estimate_converges(self):
        # smaller-scale version of the acceptance check
        rng = random.Random(5)
        a = set(rng.sample(range(256), 64))
        b = set(rng.sample(range(256), 64) + list(rng.sample(sorted(a), 20)))
        truth = 1 - len(a & b) / len(a | b)
        total = 0.0
        trials = 1500
        for seed in range(trials):
            perm = make_permutation(seed, 256)
            total += jaccard_estimate(sketch_of(perm, a, 8), sketch_of(perm, b, 8))
        assert total / trials == pytest.approx(truth, abs=0.05)
