"""series-core: exact arithmetic, q-products, theta partial sums."""

import random
from fractions import Fraction

import pytest

from theta_trunc.series import (
    NonIntegralExponent,
    NonUnitConstantTerm,
    PowerSeries,
    ProductSpec,
    ThetaParams,
    euler_product,
    finite_pochhammer,
    pochhammer_inv,
    ps_div_pochhammer,
    ps_inv,
    ps_mul,
    qbinomial,
    theta_partial,
)
from oracles import count_partitions, naive_finite_pochhammer, qbinomial_by_division


def geometric(order):
    return PowerSeries([1] * order, order)


class TestPsMul:
    def test_difference_of_squares(self):
        f = PowerSeries([1, 1], 4)
        g = PowerSeries([1, -1], 4)
        assert ps_mul(f, g) == PowerSeries([1, 0, -1, 0], 4)

    def test_identity(self):
        f = PowerSeries([3, 1, 4, 1, 5], 5)
        assert ps_mul(f, PowerSeries.one(5)) == f

    def test_geometric_telescopes(self):
        f = PowerSeries([1, -1], 8)
        assert ps_mul(f, geometric(8)) == PowerSeries.one(8)

    def test_truncates_to_smaller_order(self):
        f = PowerSeries([1, 1, 1], 3)
        g = PowerSeries([1, 1], 7)
        assert ps_mul(f, g).order == 3

    def test_commutative_associative_random(self):
        rng = random.Random(20260809)
        for _ in range(40):
            n = rng.randrange(1, 30)
            f, g, h = (
                PowerSeries([rng.randrange(-9, 10) for _ in range(n)], n)
                for _ in range(3)
            )
            assert ps_mul(f, g) == ps_mul(g, f)
            assert ps_mul(ps_mul(f, g), h) == ps_mul(f, ps_mul(g, h))


class TestPsInv:
    def test_geometric(self):
        assert ps_inv(PowerSeries([1, -1], 6)) == geometric(6)

    def test_one(self):
        assert ps_inv(PowerSeries.one(4)) == PowerSeries.one(4)

    def test_partition_numbers(self):
        # independent oracle: enumerate partitions of n <= 5
        inv = ps_inv(euler_product(6))
        expect = [count_partitions(n, range(1, 6)) for n in range(6)]
        assert inv.coeffs == expect == [1, 1, 2, 3, 5, 7]

    def test_rejects_non_unit(self):
        with pytest.raises(NonUnitConstantTerm):
            ps_inv(PowerSeries([2, 1], 4))

    def test_roundtrip_random_units(self):
        rng = random.Random(97)
        for _ in range(100):
            n = rng.randrange(1, 40)
            coeffs = [rng.choice([1, -1])] + [
                rng.randrange(-5, 6) for _ in range(n - 1)
            ]
            f = PowerSeries(coeffs, n)
            assert ps_mul(f, ps_inv(f)) == PowerSeries.one(n)


class TestFinitePochhammer:
    def test_empty_product(self):
        assert finite_pochhammer(0, 5) == PowerSeries.one(5)

    def test_n2(self):
        assert finite_pochhammer(2, 5) == PowerSeries([1, -1, -1, 1, 0], 5)

    def test_n3_against_naive_expansion(self):
        assert finite_pochhammer(3, 8).coeffs == naive_finite_pochhammer(3, 8)
        assert finite_pochhammer(3, 8).coeffs == [1, -1, -1, 0, 1, 1, -1, 0]

    def test_large_n_matches_naive(self):
        assert finite_pochhammer(9, 25).coeffs == naive_finite_pochhammer(9, 25)


class TestQBinomial:
    def test_smallest_nontrivial(self):
        assert qbinomial(2, 1, 5) == PowerSeries([1, 1, 0, 0, 0], 5)

    def test_out_of_range_is_zero(self):
        assert qbinomial(4, -1, 5) == PowerSeries.zero(5)
        assert qbinomial(3, 4, 5) == PowerSeries.zero(5)

    def test_l4_k2_by_polynomial_division(self):
        assert qbinomial(4, 2, 8).coeffs == qbinomial_by_division(4, 2, 8)
        assert qbinomial(4, 2, 8).coeffs == [1, 1, 2, 1, 1, 0, 0, 0]

    def test_nonneg_and_degree(self):
        order = 50
        for L in range(13):
            for K in range(L + 1):
                poly = qbinomial(L, K, order)
                assert all(c >= 0 for c in poly.coeffs)
                deg = max((i for i, c in enumerate(poly.coeffs) if c), default=0)
                assert deg == K * (L - K)

    def test_matches_division_randomly(self):
        rng = random.Random(5)
        for _ in range(10):
            L = rng.randrange(0, 9)
            K = rng.randrange(0, L + 1)
            assert qbinomial(L, K, 30).coeffs == qbinomial_by_division(L, K, 30)


class TestPochhammerInv:
    def test_partition_numbers(self):
        got = pochhammer_inv(ProductSpec([(1, 1)]), 6)
        expect = [count_partitions(n, range(1, 6)) for n in range(6)]
        assert got.coeffs == expect

    def test_parts_avoiding_multiples_of_three(self):
        got = pochhammer_inv(ProductSpec([(1, 3), (2, 3)]), 6)
        parts = [p for p in range(1, 6) if p % 3]
        expect = [count_partitions(n, parts) for n in range(6)]
        assert got.coeffs == expect == [1, 1, 2, 2, 4, 5]

    def test_empty_spec(self):
        assert pochhammer_inv(ProductSpec([]), 7) == PowerSeries.one(7)

    def test_coefficients_non_negative(self):
        for spec in (ProductSpec([(1, 2)]), ProductSpec([(2, 5), (3, 5)])):
            assert all(c >= 0 for c in pochhammer_inv(spec, 80).coeffs)

    def test_div_pochhammer_equals_mul_by_inverse(self):
        rng = random.Random(11)
        spec = ProductSpec([(1, 3), (2, 3)])
        f = PowerSeries([rng.randrange(-4, 5) for _ in range(40)], 40)
        assert ps_div_pochhammer(f, spec) == ps_mul(f, pochhammer_inv(spec, 40))

    def test_repeated_pair_gives_two_colours(self):
        got = pochhammer_inv(ProductSpec([(1, 1), (1, 1)]), 5)
        # parts of two colours: generating function 1/(q;q)_inf^2
        single = pochhammer_inv(ProductSpec([(1, 1)]), 5)
        assert got == ps_mul(single, single)


class TestProductSpec:
    def test_rejects_bad_pairs(self):
        with pytest.raises(ValueError):
            ProductSpec([(0, 3)])
        with pytest.raises(ValueError):
            ProductSpec([(4, 3)])

    def test_allows_equal_pair(self):
        # (q^R; q^R)_inf needs A == B
        assert ProductSpec([(3, 3)]).parts(10) == [3, 6, 9]


class TestThetaPartial:
    def test_basic_exponents(self):
        p = ThetaParams(Fraction(2), Fraction(1), 0)
        got = theta_partial(p, 12)
        assert [i for i, c in enumerate(got.coeffs) if c] == [0, 3, 10]

    def test_pentagonal_exponents(self):
        # j(3j+1)/2 = 0, 2, 7, 15, ...
        p = ThetaParams(Fraction(3, 2), Fraction(1, 2), 0)
        got = theta_partial(p, 16)
        assert [i for i, c in enumerate(got.coeffs) if c] == [0, 2, 7, 15]

    def test_half_denominators(self):
        p = ThetaParams(Fraction(9, 2), Fraction(11, 2), 1)
        got = theta_partial(p, 12)
        assert [i for i, c in enumerate(got.coeffs) if c] == [1, 11]

    def test_invariant_validation(self):
        with pytest.raises(ValueError):
            ThetaParams(Fraction(-1), Fraction(0), 0)  # a <= 0
        with pytest.raises(ValueError):
            ThetaParams(Fraction(1, 2), Fraction(0), 0)  # a + c not integral
        with pytest.raises(ValueError):
            ThetaParams(Fraction(1, 3), Fraction(2, 3), 0)  # denominator 3
        with pytest.raises(ValueError):
            ThetaParams(Fraction(1), Fraction(-2), 0)  # a + c negative
        with pytest.raises(ValueError):
            ThetaParams(Fraction(1), Fraction(0), -1)  # d negative

    def test_exponent_method_flags_non_integral(self):
        p = ThetaParams(Fraction(2), Fraction(1), 0)
        object.__setattr__(p, "c", Fraction(1, 2))
        with pytest.raises(NonIntegralExponent):
            theta_partial(p, 10)

    def test_colliding_exponents_accumulate(self):
        # a + c = 0 sends j = 0 and j = 1 to the same exponent
        p = ThetaParams(Fraction(1), Fraction(-1), 0)
        got = theta_partial(p, 13)
        assert got[0] == 2
        assert [i for i, c in enumerate(got.coeffs) if c] == [0, 2, 6, 12]

    def test_from_terms_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            PowerSeries.from_terms([(-1, 1)], 5)


class TestPentagonalIdentity:
    def test_order_200(self):
        from theta_trunc.families import pentagonal_sides

        lhs, rhs = pentagonal_sides(200)
        assert lhs == rhs
