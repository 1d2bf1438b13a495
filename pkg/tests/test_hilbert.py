"""Subset sums, cube search vs. the naive oracle, counting, experiments."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exlab.errors import CapacityError, InputError
from exlab.hilbert import (
    CubeDimension,
    count_small_sigma_sets,
    find_hilbert_cube,
    find_hilbert_cube_naive,
    max_cube_dimension,
    random_subset_experiment,
    subset_sums,
    trial_subset,
)

# frozen from a verified run: n=2^10, delta=0.3, 50 trials, seed 7
SEED7_DIMS = tuple([4] * 44 + [5] + [4] * 5)


class TestSubsetSums:
    def test_binary_upper(self):
        assert subset_sums([1, 2, 4]).size == 8

    def test_interval_lower(self):
        prof = subset_sums([1, 2, 3])
        assert prof.sums == (0, 1, 2, 3, 4, 5, 6)
        assert prof.size == math.comb(4, 2) + 1

    def test_empty(self):
        assert subset_sums([]).sums == (0,)

    def test_rejects_bad_input(self):
        with pytest.raises(InputError):
            subset_sums([0, 1])
        with pytest.raises(InputError):
            subset_sums([2, 2])

    def test_bounds_with_witnesses_to_12(self):
        for d in range(1, 13):
            lo = subset_sums(range(1, d + 1))
            hi = subset_sums([1 << i for i in range(d)])
            assert lo.size == math.comb(d + 1, 2) + 1  # lower bound tight
            assert hi.size == 2**d  # upper bound tight

    @settings(max_examples=80, deadline=None)
    @given(st.sets(st.integers(1, 400), min_size=0, max_size=10), st.integers(1, 400))
    def test_doubling_dichotomy(self, xs, x):
        # |Sigma(X u {x})| <= 2|Sigma(X)|, equality iff x not in Sigma - Sigma
        if x in xs:
            return
        base = set(subset_sums(sorted(xs)).sums)
        grown = set(subset_sums(sorted(xs | {x})).sums)
        assert len(grown) <= 2 * len(base)
        diffs = {a - b for a in base for b in base}
        assert (len(grown) == 2 * len(base)) == (x not in diffs)


class TestCubeSearch:
    def test_interval(self):
        cube = find_hilbert_cube(range(8), 3)
        assert cube is not None and cube.x0 == 0

    def test_odds(self):
        cube = find_hilbert_cube([1, 3, 5, 7], 2)
        assert (cube.x0, cube.generators) == (1, (2, 4))

    def test_powers_absent(self):
        assert find_hilbert_cube([1, 2, 4, 8, 16], 2) is None

    def test_budget_raises(self):
        with pytest.raises(CapacityError):
            find_hilbert_cube(range(64), 4, max_nodes=3)

    def test_agrees_with_naive_seeded(self):
        rng = random.Random("oracle-small")
        for _ in range(150):
            n = rng.randrange(4, 41)
            d = rng.randrange(1, 4)
            dens = rng.uniform(0.15, 0.95)
            a = [v for v in range(n + 1) if rng.random() < dens]
            got = find_hilbert_cube(a, d)
            want = find_hilbert_cube_naive(a, d)
            assert (got is None) == (want is None), (a, d)
            if got is not None:
                assert (got.x0, got.generators) == (want.x0, want.generators)


class TestMaxDimension:
    def test_interval16(self):
        assert max_cube_dimension(range(16), 8).value >= 4

    def test_singleton(self):
        assert max_cube_dimension([9], 4) == CubeDimension(0, True)

    def test_empty(self):
        assert max_cube_dimension([], 4) == CubeDimension(0, True)

    def test_seeded_regression_255(self):
        rng = random.Random("maxdim-regression")
        a = [v for v in range(256) if rng.random() < 0.5]
        assert max_cube_dimension(a, 10) == CubeDimension(4, True)

    def test_monotone_under_superset(self):
        rng = random.Random("mono")
        for _ in range(20):
            n = rng.randrange(10, 60)
            a = {v for v in range(n) if rng.random() < 0.4}
            b = a | {v for v in range(n) if rng.random() < 0.3}
            da = max_cube_dimension(a, 6).value
            db = max_cube_dimension(b, 6).value
            assert da <= db

    def test_budget_reports_uncertified(self):
        got = max_cube_dimension(range(128), 8, max_nodes=5)
        assert not got.certified


class TestCounting:
    def test_at_upper_bound_everything(self):
        assert count_small_sigma_sets(10, 3, 8) == math.comb(10, 3)

    def test_below_lower_bound_nothing(self):
        assert count_small_sigma_sets(10, 3, 6) == 0

    def test_minimal_sigma_triples(self):
        # |Sigma| = 7 for exactly the {x, y, x+y} triples: 20 of them in [1,10]
        assert count_small_sigma_sets(10, 3, 7) == 20

    def test_caps(self):
        with pytest.raises(CapacityError):
            count_small_sigma_sets(31, 3, 8)
        with pytest.raises(CapacityError):
            count_small_sigma_sets(10, 7, 200)


class TestExperiment:
    def test_dense_small(self):
        rep = random_subset_experiment(64, 0.999, 10, seed=3)
        assert rep.min >= 5
        assert rep.certified

    def test_delta_zero(self):
        rep = random_subset_experiment(32, 0.0, 5, seed=1)
        assert rep.dims == (0,) * 5

    def test_parallel_matches_serial(self):
        a = random_subset_experiment(128, 0.4, 8, seed=11, jobs=1)
        b = random_subset_experiment(128, 0.4, 8, seed=11, jobs=4)
        assert a.dims == b.dims

    def test_trial_streams_stable(self):
        assert trial_subset(64, 0.5, 9, 3) == trial_subset(64, 0.5, 9, 3)
        assert trial_subset(64, 0.5, 9, 3) != trial_subset(64, 0.5, 9, 4)

    def test_tsv_shape(self):
        rep = random_subset_experiment(32, 0.5, 3, seed=2)
        lines = rep.tsv().splitlines()
        assert lines[0] == "trial\tdim" and len(lines) == 4

    @pytest.mark.slow
    def test_seed7_regression_distribution(self):
        rep = random_subset_experiment(1024, 0.3, 50, seed=7)
        assert rep.dims == SEED7_DIMS
