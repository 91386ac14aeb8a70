from fractions import Fraction

import pytest

from radext.criteria import build_tower, decide_full_degree
from radext.errors import CapacityError, DomainError
from radext.etale import (
    build_algebra,
    is_field,
    minimal_polynomial,
    multiply,
    verify_primitive_sum,
)
from radext.polyfactor import binomial_poly, factor_over_Q


def algebra_for(entries, max_dim=32):
    return build_algebra(build_tower(entries), max_dim=max_dim)


class TestAlgebra:
    def test_dims(self):
        assert algebra_for([(2, 2)]).dim == 2
        assert algebra_for([(-1, 4), (2, 4)]).dim == 16
        assert algebra_for([(2, 3), (3, 3)]).dim == 9

    def test_dimension_cap(self):
        with pytest.raises(CapacityError):
            algebra_for([(2, 5), (3, 7)])

    def test_basis_is_lexicographic(self):
        a = algebra_for([(2, 2), (3, 3)])
        assert a.basis_exponents == (
            (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
        )

    def test_rejects_wrong_length(self):
        a = algebra_for([(2, 2)])
        with pytest.raises(DomainError):
            a.element([1, 2, 3])


class TestMultiply:
    def test_reduction_rule(self):
        a = algebra_for([(2, 2)])
        x = a.generator(0)
        assert (x * x).coeffs == (2, 0)

    def test_binomial_square(self):
        a = algebra_for([(2, 2)])
        u = a.element([1, 1])  # 1 + x
        assert (u * u).coeffs == (3, 2)

    def test_identity(self):
        a = algebra_for([(2, 3), (3, 3)])
        u = a.element(list(range(1, 10)))
        assert multiply(a, u, a.one()).coeffs == u.coeffs

    def test_commutative_and_associative(self):
        a = algebra_for([(2, 2), (-3, 2)])
        u = a.element([1, 2, 0, 1])
        v = a.element([0, 1, 1, 1])
        w = a.element([2, 0, 1, 0])
        assert (u * v).coeffs == (v * u).coeffs
        assert ((u * v) * w).coeffs == (u * (v * w)).coeffs

    def test_rational_radicand(self):
        a = algebra_for([(Fraction(1, 2), 2)])
        x = a.generator(0)
        assert (x * x).coeffs[0] == Fraction(1, 2)


class TestMinimalPolynomial:
    def test_generator_sqrt2(self):
        a = algebra_for([(2, 2)])
        assert minimal_polynomial(a, a.generator(0)) == (-2, 0, 1)

    def test_constant_one(self):
        a = algebra_for([(2, 2)])
        assert minimal_polynomial(a, a.one()) == (-1, 1)

    def test_sum_of_square_roots(self):
        # (sqrt2 + sqrt3)^2 = 5 + 2*sqrt6; (5 + 2 sqrt6)^2 = 49 + 20 sqrt6
        # and 49 + 20 sqrt6 - 10(5 + 2 sqrt6) + 1 = 0, hence t^4 - 10t^2 + 1
        a = algebra_for([(2, 2), (3, 2)])
        u = a.generator(0) + a.generator(1)
        assert minimal_polynomial(a, u) == (1, 0, -10, 0, 1)

    def test_degenerate_element(self):
        a = algebra_for([(2, 2), (3, 2)])
        u = a.generator(0)  # sqrt2 inside a 4-dimensional algebra
        assert minimal_polynomial(a, u) == (-2, 0, 1)

    def test_zero_element(self):
        a = algebra_for([(2, 2)])
        assert minimal_polynomial(a, a.zero()) == (0, 1)

    def test_rational_coefficients(self):
        a = algebra_for([(Fraction(1, 2), 2)])
        mp = minimal_polynomial(a, a.generator(0))
        assert mp == (Fraction(-1, 2), 0, 1)

    def test_modular_path_matches_exact(self):
        # same element, both paths; dim 36 > threshold for the modular one
        small = algebra_for([(2, 2), (3, 2)])
        u_small = small.element([0, 3, 2, 0])
        exact = minimal_polynomial(small, u_small)

        from radext.etale import _minpoly_modular

        assert _minpoly_modular(small, u_small) == exact

    def test_modular_path_large_dim(self):
        from radext.etale import _minpoly_modular

        a = algebra_for([(2, 2), (3, 2), (5, 2), (7, 2), (11, 2)], max_dim=32)
        u = a.zero()
        for i, c in enumerate([1, 1, 1, 1, 1]):
            u = u + a.generator(i).scale(c)
        exact = minimal_polynomial(a, u)
        assert len(exact) - 1 == 32  # sum of five square roots generates
        assert _minpoly_modular(a, u) == exact


class TestIsField:
    def test_classic_pair_splits(self):
        result = is_field(algebra_for([(-1, 4), (2, 4)]), seed=7)
        assert not result.is_field
        assert result.factor_degrees == (8, 8)

    def test_cube_pair_splits(self):
        result = is_field(algebra_for([(2, 3), (4, 3)]))
        assert not result.is_field
        assert result.factor_degrees == (3, 6)

    def test_cube_pair_field(self):
        result = is_field(algebra_for([(2, 3), (3, 3)]))
        assert result.is_field
        assert result.factor_degrees == (9,)

    def test_seed_independence(self):
        for entries in ([(-1, 4), (2, 4)], [(2, 3), (3, 3)], [(12, 2), (3, 2)]):
            a = algebra_for(entries)
            results = [is_field(a, seed=s) for s in range(5)]
            assert len({r.is_field for r in results}) == 1
            assert len({r.factor_degrees for r in results}) == 1

    def test_seed_independence_on_random_instances(self):
        from radext.fuzzing import FuzzBounds, generate_tower, instance_seed

        bounds = FuzzBounds(max_ell=3, max_m=6, max_abs_n=20, max_dim=16)
        for i in range(10):
            entries = generate_tower(instance_seed(31, i), bounds)
            a = build_algebra(build_tower(entries), max_dim=bounds.max_dim)
            results = [is_field(a, seed=s) for s in (0, 1, 2)]
            assert len({r.is_field for r in results}) == 1, entries
            assert len({r.factor_degrees for r in results}) == 1, entries

    def test_single_radical_matches_direct_factorization(self):
        for n, m in [(2, 6), (-4, 4), (8, 3), (5, 4), (36, 2)]:
            a = algebra_for([(n, m)])
            result = is_field(a)
            direct = factor_over_Q(binomial_poly(m, n)).degree_multiset()
            assert result.factor_degrees == direct

    def test_degrees_sum_to_dim(self):
        for entries in ([(4, 4)], [(-1, 2), (2, 2)], [(2, 2), (18, 2)]):
            a = algebra_for(entries)
            result = is_field(a)
            assert sum(result.factor_degrees) == a.dim

    def test_minpoly_has_full_degree(self):
        a = algebra_for([(2, 3), (3, 3)])
        result = is_field(a)
        assert len(result.minpoly) - 1 == a.dim


class TestPrimitiveSum:
    def test_two_square_roots(self):
        a = algebra_for([(2, 2), (3, 2)])
        assert verify_primitive_sum(a, [1, 1])

    def test_single_radical(self):
        a = algebra_for([(2, 2)])
        assert verify_primitive_sum(a, [1])

    def test_two_cube_roots(self):
        a = algebra_for([(2, 3), (3, 3)])
        assert verify_primitive_sum(a, [1, 1])

    def test_rejects_zero_weight(self):
        a = algebra_for([(2, 2), (3, 2)])
        with pytest.raises(DomainError):
            verify_primitive_sum(a, [1, 0])

    def test_weighted_sums_generate(self):
        a = algebra_for([(2, 2), (3, 2), (5, 2)])
        for b in ([1, 1, 1], [2, -1, 3], [Fraction(1, 2), 1, -1]):
            assert verify_primitive_sum(a, b)


class TestOracleAgainstCriterion:
    @pytest.mark.parametrize(
        "entries",
        [
            [(-1, 4), (2, 4)],
            [(-4, 4)],
            [(-1, 4)],
            [(2, 3), (3, 3)],
            [(2, 3), (4, 3)],
            [(2, 2), (3, 2)],
            [(9, 2)],
            [(2, 1)],
            [(6, 4), (15, 4), (-10, 2)],
            [(Fraction(1, 2), 2), (3, 2)],
            [(Fraction(-9, 4), 2)],
        ],
    )
    def test_agreement(self, entries):
        tower = build_tower(entries)
        report = decide_full_degree(tower)
        result = is_field(build_algebra(tower, max_dim=32))
        assert report.full_degree == result.is_field, entries
