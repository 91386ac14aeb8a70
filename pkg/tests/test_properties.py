"""Structural invariants of the criterion: order, scaling, monotonicity, locality."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radext.criteria import (
    binomial_irreducibility,
    build_tower,
    decide_full_degree,
    find_even_defect,
    local_view,
)
from radext.fuzzing import (
    FuzzBounds,
    criterion_invariant_failures,
    generate_tower,
    instance_seed,
)

BOUNDS = FuzzBounds(max_ell=4, max_m=8, max_abs_n=30, max_dim=10**9)


entry_lists = st.lists(
    st.tuples(
        st.integers(min_value=-30, max_value=30).filter(lambda n: n != 0),
        st.integers(min_value=1, max_value=8),
    ),
    min_size=1,
    max_size=4,
)


class TestOrderAndScale:
    @given(entry_lists)
    @settings(max_examples=100, deadline=None)
    def test_permutation_invariance(self, entries):
        full = decide_full_degree(build_tower(entries)).full_degree
        for perm in itertools.permutations(entries):
            assert decide_full_degree(build_tower(list(perm))).full_degree == full

    @given(
        entry_lists,
        st.integers(min_value=-3, max_value=3).filter(lambda c: c != 0),
        st.integers(min_value=0, max_value=3),
    )
    @settings(max_examples=100, deadline=None)
    def test_scaling_invariance(self, entries, c, pos):
        i = pos % len(entries)
        full = decide_full_degree(build_tower(entries)).full_degree
        n, m = entries[i]
        scaled = list(entries)
        scaled[i] = (n * c**m, m)
        assert decide_full_degree(build_tower(scaled)).full_degree == full

    def test_rational_scaling_invariance(self):
        # the same statement with a fractional scale factor
        entries = [(Fraction(3, 2), 4), (5, 2)]
        full = decide_full_degree(build_tower(entries)).full_degree
        scaled = [(Fraction(3, 2) * Fraction(1, 3) ** 4, 4), (5, 2)]
        assert decide_full_degree(build_tower(scaled)).full_degree == full


class TestMonotonicity:
    @given(entry_lists)
    @settings(max_examples=100, deadline=None)
    def test_subsequences_stay_full(self, entries):
        if not decide_full_degree(build_tower(entries)).full_degree:
            return
        ell = len(entries)
        for r in range(1, ell):
            for keep in itertools.combinations(range(ell), r):
                sub = [entries[i] for i in keep]
                assert decide_full_degree(build_tower(sub)).full_degree, (entries, keep)

    @given(entry_lists)
    @settings(max_examples=100, deadline=None)
    def test_divisor_replacement_stays_full(self, entries):
        if not decide_full_degree(build_tower(entries)).full_degree:
            return
        for i, (n, m) in enumerate(entries):
            for div in range(1, m + 1):
                if m % div == 0:
                    reduced = list(entries)
                    reduced[i] = (n, div)
                    assert decide_full_degree(build_tower(reduced)).full_degree, (entries, i, div)


class TestPerPrimeConsistency:
    @given(entry_lists)
    @settings(max_examples=100, deadline=None)
    def test_verdict_is_and_over_primes(self, entries):
        tower = build_tower(entries)
        full = decide_full_degree(tower).full_degree
        partials = []
        for p in tower.prime_support:
            restricted = []
            for n, m in entries:
                if m % p == 0:
                    part = 1
                    while m % p == 0:
                        part *= p
                        m //= p
                    restricted.append((n, part))
            partials.append(decide_full_degree(build_tower(restricted)).full_degree)
        assert full == all(partials)


class TestUniquenessAssertion:
    @given(entry_lists)
    @settings(max_examples=150, deadline=None)
    def test_defect_search_never_trips_its_invariants(self, entries):
        # the minus-square member must be unique whenever no product is a square;
        # InternalInvariantError escaping here would mean the uniqueness claim broke
        tower = build_tower(entries)
        for p in tower.prime_support:
            if p != 2:
                continue
            view = local_view(tower, 2)
            from radext.criteria import _first_pth_power

            if _first_pth_power(view) is None:
                find_even_defect(view)


class TestSingleRadicalAgainstBinomialCriterion:
    def test_exhaustive_small_range(self):
        # one radical: the tower criterion must equal the binomial criterion
        for m in range(1, 17):
            for n in range(-100, 101):
                if n == 0:
                    continue
                full = decide_full_degree(build_tower([(n, m)])).full_degree
                irr = binomial_irreducibility(m, n).irreducible
                assert full == irr, (n, m)


class TestBundledInvariantChecker:
    def test_random_instances_are_clean(self):
        rng = random.Random(20240817)
        for i in range(100):
            entries = generate_tower(instance_seed(99, i), BOUNDS)
            failures = criterion_invariant_failures(entries, rng)
            assert not failures, (entries, failures)
