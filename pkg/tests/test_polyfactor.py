from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from radext.errors import DomainError
from radext.polyfactor import (
    FactorizationResult,
    IntPolynomial,
    NotSquarefreeModPError,
    binomial_poly,
    factor_mod_p,
    factor_over_Q,
    factor_over_Z,
    is_irreducible_over_Q,
    squarefree_decomposition,
)


def poly(*coeffs):
    """Polynomial from ascending coefficients."""
    return IntPolynomial(tuple(coeffs))


class TestSquarefree:
    def test_multiple_root(self):
        # (x - 1)^2 (x + 2) = x^3 - 3x + 2
        cont, parts = squarefree_decomposition(poly(2, -3, 0, 1))
        assert cont == 1
        assert parts == [(poly(2, 1), 1), (poly(-1, 1), 2)]

    def test_already_squarefree(self):
        cont, parts = squarefree_decomposition(poly(-2, 0, 1))
        assert cont == 1
        assert parts == [(poly(-2, 0, 1), 1)]

    def test_pure_power(self):
        cont, parts = squarefree_decomposition(poly(0, 0, 0, 1))
        assert cont == 1
        assert parts == [(poly(0, 1), 3)]

    def test_content_and_sign(self):
        # -12 (x - 1)^2 = -12x^2 + 24x - 12
        cont, parts = squarefree_decomposition(poly(-12, 24, -12))
        assert cont == -12
        assert parts == [(poly(-1, 1), 2)]

    def test_constant_rejected(self):
        with pytest.raises(DomainError):
            squarefree_decomposition(poly(5))


class TestFactorModP:
    def test_split_mod_7(self):
        # 3*3 = 9 = 2 mod 7, so x^2 - 2 = (x - 3)(x - 4) = (x + 4)(x + 3) mod 7
        facs = factor_mod_p(poly(-2, 0, 1), 7)
        assert facs == [poly(3, 1), poly(4, 1)]

    def test_inert_mod_5(self):
        # 2 is a quadratic nonresidue mod 5
        facs = factor_mod_p(poly(-2, 0, 1), 5)
        assert facs == [poly(3, 0, 1)]

    def test_not_squarefree_mod_2(self):
        # x^2 + 1 = (x + 1)^2 mod 2
        with pytest.raises(NotSquarefreeModPError):
            factor_mod_p(poly(1, 0, 1), 2)

    def test_leading_coefficient_divisible(self):
        with pytest.raises(DomainError):
            factor_mod_p(poly(1, 5), 5)

    def test_mod_2_splitting(self):
        # x^2 + x = x (x + 1) mod 2
        facs = factor_mod_p(poly(0, 1, 1), 2)
        assert facs == [poly(0, 1), poly(1, 1)]

    @pytest.mark.parametrize("p", [3, 7, 11, 13])
    def test_product_reconstructs(self, p):
        f = poly(3, 1, 4, 1, 5, 9, 2, 6, 1)
        try:
            facs = factor_mod_p(f, p)
        except NotSquarefreeModPError:
            return
        prod = [1]
        for g in facs:
            new = [0] * (len(prod) + g.degree)
            for i, a in enumerate(prod):
                for j, b in enumerate(g.coeffs):
                    new[i + j] = (new[i + j] + a * b) % p
            prod = new
        scaled = [c * f.leading % p for c in prod]
        assert scaled == [c % p for c in f.coeffs]


class TestFactorOverZ:
    def test_sophie_germain(self):
        # x^4 + 4 = (x^2 - 2x + 2)(x^2 + 2x + 2), checked by direct expansion
        res = factor_over_Z(poly(4, 0, 0, 0, 1))
        assert res.unit == 1
        assert res.factors == ((poly(2, -2, 1), 1), (poly(2, 2, 1), 1))

    def test_irreducible_quadratic(self):
        res = factor_over_Z(poly(-2, 0, 1))
        assert res.is_irreducible()

    def test_biquadratic_field_poly(self):
        # minimal polynomial of sqrt(2) + sqrt(3)
        res = factor_over_Z(poly(1, 0, -10, 0, 1))
        assert res.is_irreducible()

    def test_with_content_and_multiplicity(self):
        # 6 (x - 1)^2 (x^2 + 1)
        f = poly(6, -12, 6) * poly(1, 0, 1)
        res = factor_over_Z(f)
        assert res.unit == 6
        assert res.factors == ((poly(-1, 1), 2), (poly(1, 0, 1), 1))

    def test_non_monic(self):
        # (2x + 3)(5x - 7) = 10x^2 + x - 21
        res = factor_over_Z(poly(-21, 1, 10))
        assert res.factors == ((poly(-7, 5), 1), (poly(3, 2), 1))

    def test_linear_times_wide(self):
        # x (x - 1) (x + 1) (x^2 + x + 1)
        f = poly(0, 1) * poly(-1, 1) * poly(1, 1) * poly(1, 1, 1)
        res = factor_over_Z(f)
        assert res.degree_multiset() == (1, 1, 1, 2)

    def test_is_irreducible_examples(self):
        assert not is_irreducible_over_Q(poly(4, 0, 0, 0, 1))
        assert is_irreducible_over_Q(poly(-2, 0, 0, 1))
        assert is_irreducible_over_Q(poly(-72, 0, 0, 0, 0, 0, 1))

    def test_cyclotomic_8(self):
        assert is_irreducible_over_Q(poly(1, 0, 0, 0, 1))

    def test_rational_coefficients(self):
        # (x/2 - 1/3)(x + 1) cleared: unit carries 1/6
        res = factor_over_Q([Fraction(-1, 3), Fraction(1, 6), Fraction(1, 2)])
        assert res.unit == Fraction(1, 6)
        assert res.factors == ((poly(-2, 3), 1), (poly(1, 1), 1))

    def test_binomial_helper(self):
        assert binomial_poly(4, -4) == [4, 0, 0, 0, 1]
        with pytest.raises(DomainError):
            binomial_poly(0, 3)


@st.composite
def small_factor_lists(draw):
    k = draw(st.integers(min_value=1, max_value=3))
    polys = []
    for _ in range(k):
        deg = draw(st.integers(min_value=1, max_value=3))
        coeffs = [draw(st.integers(min_value=-5, max_value=5)) for _ in range(deg)]
        lead = draw(st.integers(min_value=1, max_value=4))
        polys.append(IntPolynomial(tuple(coeffs + [lead])))
    return polys


class TestReconstruction:
    @given(small_factor_lists())
    @settings(max_examples=60, deadline=None)
    def test_factor_product_round_trip(self, polys):
        f = polys[0]
        for g in polys[1:]:
            f = f * g
        res = factor_over_Z(f)
        assert res.product_coeffs() == [Fraction(c) for c in f.coeffs]
        for factor, _ in res.factors:
            assert is_irreducible_over_Q(factor)

    def test_cross_prime_agreement(self):
        from radext.polyfactor import _candidate_primes, _recombine

        f = poly(4, 0, 0, 0, 1) * poly(-2, 0, 1)
        cands = _candidate_primes(list(f.coeffs))
        degree_sets = set()
        for _, p, facs in cands[:4]:
            parts = _recombine(list(f.coeffs), p, facs)
            degree_sets.add(tuple(sorted(len(g) - 1 for g in parts)))
        assert degree_sets == {(2, 2, 2)}


class TestAgainstSympy:
    @given(
        st.lists(st.integers(min_value=-20, max_value=20), min_size=3, max_size=9),
        st.integers(min_value=1, max_value=20),
    )
    @settings(max_examples=80, deadline=None)
    def test_matches_sympy_factor_list(self, lows, lead):
        import sympy

        coeffs = lows + [lead]
        f = IntPolynomial(tuple(coeffs))
        x = sympy.symbols("x")
        expr = sum(c * x**i for i, c in enumerate(coeffs))
        _, sympy_factors = sympy.Poly(expr, x).factor_list()
        expected = sorted(
            (p.degree(), m) for p, m in sympy_factors if p.degree() > 0
        )
        got = sorted((g.degree, m) for g, m in factor_over_Z(f).factors)
        assert got == expected

    def test_binomial_degrees_divide_group_order(self):
        # factor degrees of x^n - a divide n * phi(n)
        from math import gcd

        def phi(n):
            return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)

        for n in range(2, 9):
            for a in (-9, -2, 2, 5, 16, 36):
                res = factor_over_Q(binomial_poly(n, a))
                for d in res.degree_multiset():
                    assert (n * phi(n)) % d == 0
