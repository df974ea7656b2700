"""Polynomial representation, evaluation, histograms, and enumeration."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringcensus.budget import BudgetError
from ringcensus.poly import (
    Poly,
    coef_count,
    count_constrained,
    enumerate_coefficient_space,
    format_poly,
    monomials,
    parse_poly,
)
from ringcensus.ring_core import RingSpec


def brute_histogram(P):
    """Independent oracle: evaluate P pointwise over all of Z_m^n."""
    m = P.ring.modulus
    counts = [0] * m
    for point in itertools.product(range(m), repeat=P.n_vars):
        counts[P.evaluate(point).value] += 1
    return counts


class TestMonomialOrder:
    def test_counts_match_census_formula(self):
        for n in range(1, 7):
            assert coef_count(n, 1) == n
            assert coef_count(n, 2) == n + n * (n + 1) // 2
            assert coef_count(n, 3) == n + n * (n + 1) // 2 + n * (n + 1) * (n + 2) // 6

    def test_nested_loop_order_n3_d3(self):
        # worked index table: linear block, quadratic pairs, cubic triples
        assert monomials(3, 3) == (
            (0,), (1,), (2,),
            (0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2),
            (0, 0, 0), (0, 0, 1), (0, 0, 2), (0, 1, 1), (0, 1, 2), (0, 2, 2),
            (1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2),
        )


class TestEvaluate:
    def test_zero_poly(self):
        P = Poly.zero(RingSpec(6), 2, 2)
        assert P.evaluate((4, 5)).value == 0

    def test_square_plus_linear(self):
        # x^2 + y over Z_8 at (2, 1)
        ring = RingSpec(8)
        P = Poly(ring, 2, 2, [0, 1, 1, 0, 0])
        assert P.evaluate((2, 1)).value == 5

    def test_univariate_sweep(self):
        ring = RingSpec(4)
        P = Poly(ring, 1, 2, [1, 2])  # 2x^2 + x
        assert tuple(P.evaluate((x,)).value for x in range(4)) == (0, 3, 2, 1)

    def test_dimension_mismatch(self):
        P = Poly.zero(RingSpec(4), 2, 2)
        with pytest.raises(ValueError):
            P.evaluate((1,))


class TestValueHistogram:
    def test_zero_poly_all_in_zero(self):
        P = Poly.zero(RingSpec(2), 2, 2)
        assert P.value_histogram().counts == (4, 0)

    def test_squares_mod_4(self):
        P = Poly(RingSpec(4), 1, 2, [0, 1])
        assert P.value_histogram().counts == (2, 2, 0, 0)

    def test_product_fiber_matches_closed_form(self):
        # xy over Z_4: zero fiber has (r+2) * 2^(r-1) = 8 points
        P = Poly(RingSpec(4), 2, 2, [0, 0, 0, 1, 0])
        assert P.value_histogram().counts[0] == 8

    def test_matches_brute_force(self):
        ring = RingSpec(6)
        P = Poly(ring, 2, 2, [1, 4, 2, 3, 5], constant=2)
        assert list(P.value_histogram().counts) == brute_histogram(P)

    def test_sums_to_domain_size(self):
        for m, n, d in ((2, 3, 3), (5, 2, 2), (8, 1, 3), (12, 2, 1)):
            ring = RingSpec(m)
            P = Poly(ring, n, d, range(1, coef_count(n, d) + 1), constant=3)
            assert P.value_histogram().total() == m**n

    def test_budget_guard(self, monkeypatch):
        monkeypatch.setenv("RINGCENSUS_BUDGET", "100")
        P = Poly.zero(RingSpec(8), 6, 2)
        with pytest.raises(BudgetError, match="domain too large"):
            P.value_histogram()


class TestCountSolutions:
    def test_zero_poly(self):
        P = Poly.zero(RingSpec(3), 1, 2)
        assert P.count_solutions(0) == 3

    def test_unit_product_fiber(self):
        # xy - 1 over Z_8: (order(1)+1) * 2^(r-1) = 4 solutions of xy = 1
        P = Poly(RingSpec(8), 2, 2, [0, 0, 0, 1, 0], constant=-1)
        assert P.count_solutions(0) == 4

    def test_doubled_square(self):
        P = Poly(RingSpec(8), 1, 2, [0, 2])
        assert P.count_solutions(2) == 4

    def test_translation_invariance(self):
        ring = RingSpec(6)
        base = Poly(ring, 2, 2, [2, 5, 1, 0, 3], constant=1)
        for c in range(6):
            shifted = Poly(ring, 2, 2, base.coeffs, constant=base.constant + c)
            for k in range(6):
                assert base.count_solutions(k) == shifted.count_solutions(k + c)


class TestCountConstrained:
    def test_projection(self):
        # Q = z with z := 0: every (x, y) solves target 0
        ring = RingSpec(4)
        Q = Poly(ring, 3, 2, [0, 0, 1, 0, 0, 0, 0, 0, 0])
        assert count_constrained(Q, (0, 0), 0, 0) == 16

    def test_identity_substitution(self):
        # Q = z - x with z := x over Z_3
        ring = RingSpec(3)
        Q = Poly(ring, 3, 2, [-1, 0, 1, 0, 0, 0, 0, 0, 0])
        assert count_constrained(Q, (1, 0), 0, 0) == 9

    def test_mixed_quadratic(self):
        # Q = x^2 + y*z with z := y over Z_4 -> count of x^2 + y^2 = 0 is 4
        # (both x and y must be even; the spec sheet's "8" miscounts this)
        ring = RingSpec(4)
        Q = Poly(ring, 3, 2, [0, 0, 0, 1, 0, 0, 0, 1, 0])
        brute = sum(
            1 for x in range(4) for y in range(4) if (x * x + y * y) % 4 == 0
        )
        assert brute == 4
        assert count_constrained(Q, (0, 1), 0, 0) == brute

    def test_rejects_wrong_arity(self):
        Q = Poly.zero(RingSpec(4), 3, 2)
        with pytest.raises(ValueError):
            count_constrained(Q, (0, 0, 1), 0, 0)

    def test_agrees_with_symbolic_substitution(self):
        # brute-force equality of the two substitution routes, m <= 8, n = 3
        import random

        rng = random.Random(11)
        for m in (2, 3, 4, 8):
            ring = RingSpec(m)
            for _ in range(20):
                d = rng.choice((2, 3))
                Q = Poly(
                    ring, 3, d,
                    [rng.randrange(m) for _ in range(coef_count(3, d))],
                    constant=rng.randrange(m),
                )
                t_coeffs = (rng.randrange(m), rng.randrange(m))
                t_const = rng.randrange(m)
                sub = Q.substitute_last(t_coeffs, t_const)
                for k in range(m):
                    assert count_constrained(Q, t_coeffs, t_const, k) == \
                        sub.count_solutions(k)


class TestEnumeration:
    def test_first_emitted_is_all_zeros(self):
        ring = RingSpec(2)
        stream = list(enumerate_coefficient_space(ring, 1, 1))
        assert [P.coeffs for P in stream] == [(0,), (1,)]
        assert all(P.constant == 0 for P in stream)

    def test_odometer_order_last_index_fastest(self):
        ring = RingSpec(3)
        stream = list(enumerate_coefficient_space(ring, 2, 1))
        assert [P.coeffs for P in stream][:4] == [(0, 0), (0, 1), (0, 2), (1, 0)]

    def test_cell_counts(self):
        assert sum(1 for _ in enumerate_coefficient_space(RingSpec(3), 2, 2)) == 3**5
        assert sum(1 for _ in enumerate_coefficient_space(RingSpec(2), 3, 3)) == 2**19

    @pytest.mark.parametrize("m,n,d", [(2, 2, 2), (3, 1, 3), (4, 2, 1), (2, 3, 3)])
    def test_vectors_distinct(self, m, n, d):
        seen = {P.coeffs for P in enumerate_coefficient_space(RingSpec(m), n, d)}
        assert len(seen) == m ** coef_count(n, d)


coef_lists = st.integers(2, 16).flatmap(
    lambda m: st.tuples(
        st.just(m),
        st.integers(1, 3),
        st.integers(1, 3),
    ).flatmap(
        lambda mnd: st.tuples(
            st.just(mnd),
            st.lists(
                st.integers(0, mnd[0] - 1),
                min_size=coef_count(mnd[1], mnd[2]),
                max_size=coef_count(mnd[1], mnd[2]),
            ),
            st.integers(0, mnd[0] - 1),
        )
    )
)


class TestTextualFormat:
    def test_spec_shape(self):
        ring = RingSpec(8)
        P = Poly(ring, 2, 2, [2, 0, 0, 1, 0], constant=1)
        assert format_poly(P) == "poly mod 8: 1 + 2*x1 + x1*x2"

    def test_zero_poly(self):
        assert format_poly(Poly.zero(RingSpec(5), 2, 2)) == "poly mod 5: 0"

    def test_parse_examples(self):
        P = parse_poly("poly mod 8: 1 + 2*x1 + x1*x2")
        assert P.ring.modulus == 8 and P.constant == 1
        assert P.coeffs[0] == 2 and P.coeffs[3] == 1

    def test_parse_rejects_garbage(self):
        for bad in ("1 + x1", "poly mod 8: 1 + y2", "poly mod 8: x1*x1*x1*x1"):
            with pytest.raises(ValueError):
                parse_poly(bad)

    @settings(max_examples=200, deadline=None)
    @given(coef_lists)
    def test_round_trip(self, case):
        (m, n, d), coeffs, constant = case
        P = Poly(RingSpec(m), n, d, coeffs, constant)
        assert parse_poly(format_poly(P), n_vars=n, degree=d) == P
