"""Closed-form divisibility bounds."""

import pytest

from ringcensus.bounds import (
    ax_bound,
    ceil_div,
    marshall_ramage_bound,
    theorem1_bound,
    theorem2_bound,
)
from ringcensus.ring_core import RingSpec


class TestAxBound:
    def test_published_grid_values(self):
        assert ax_bound(2, 1, 3, 2).value == 2
        assert ax_bound(3, 1, 5, 2).value == 9

    def test_trivial_when_n_at_most_d(self):
        for p, r in ((2, 1), (5, 2)):
            for d in (1, 2, 3):
                for n in range(1, d + 1):
                    assert ax_bound(p, r, n, d).value == 1

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            ax_bound(2, 1, 3, 0)


class TestMarshallRamageBound:
    def test_power_of_two_cell(self):
        assert marshall_ramage_bound(16, 3, 2).value == 32

    def test_composite_cell(self):
        assert marshall_ramage_bound(12, 3, 2).value == 12

    def test_prime_trivial(self):
        for p in (2, 3, 7, 13):
            assert marshall_ramage_bound(p, 2, 2).value == 1

    def test_single_variable_column_is_trivial(self):
        # 2x^2 + x has exactly one zero over Z_8, so no power divides the
        # n = 1 counts; the published grid shows 1 all down that column
        for m in (4, 8, 9, 16, 12):
            for d in (1, 2, 3):
                assert marshall_ramage_bound(m, 1, d).value == 1

    def test_published_table_spot_values(self):
        # degree-2 divisibility table rows (8, 9, 12, 16), and the 12/4 cell
        assert marshall_ramage_bound(8, 2, 2).value == 4
        assert marshall_ramage_bound(9, 2, 2).value == 3
        assert marshall_ramage_bound(12, 4, 2).value == 24
        assert marshall_ramage_bound(16, 6, 2).value == 2048
        # degree-3 rows: only squarefree primes feel the degree
        assert marshall_ramage_bound(12, 3, 3).value == 4
        assert marshall_ramage_bound(8, 6, 3).value == 256

    def test_equals_ax_for_primes(self):
        for p in (2, 3, 5, 7, 11):
            for n in range(1, 7):
                for d in (1, 2, 3):
                    assert marshall_ramage_bound(p, n, d).value == \
                        ax_bound(p, 1, n, d).value


class TestTheorem1Bound:
    def test_reduces_to_marshall_ramage_at_zero(self):
        for m in range(2, 101):
            ring = RingSpec(m)
            zeros = (0,) * len(ring.factorization)
            for n in range(2, 7):
                for d in (1, 2, 3):
                    assert theorem1_bound(ring, n, d, zeros).value == \
                        marshall_ramage_bound(ring, n, d).value

    def test_spot_values(self):
        assert theorem1_bound(4, 2, 2, (1,)).value == 4
        assert theorem1_bound(12, 2, 2, (1, 1)).value == 12

    def test_q_above_r_rejected(self):
        with pytest.raises(ValueError):
            theorem1_bound(12, 2, 2, (3, 1))
        with pytest.raises(ValueError):
            theorem1_bound(12, 2, 2, (1,))


class TestTheorem2Bound:
    def test_spot_values(self):
        assert theorem2_bound(2, 3, 0, 0).value == 2
        assert theorem2_bound(3, 3, 1, 3).value == 32
        assert theorem2_bound(4, 4, 0, 2).value == 2**7

    def test_monotone_in_each_parameter(self):
        for r in range(1, 6):
            for n in (3, 4, 5):
                for q in range(r + 1):
                    for v in range(r + 1):
                        here = theorem2_bound(r, n, q, v).value
                        if q + 1 <= r:
                            assert theorem2_bound(r, n, q + 1, v).value >= here
                        if v + 1 <= r:
                            assert theorem2_bound(r, n, v=v + 1, q=q).value >= here
                        assert theorem2_bound(r, n + 1, q, v).value >= here

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            theorem2_bound(2, 2, 0, 0)
        with pytest.raises(ValueError):
            theorem2_bound(2, 3, 3, 0)


def test_ceil_div():
    assert ceil_div(0, 3) == 0
    assert ceil_div(7, 2) == 4
    assert ceil_div(6, 2) == 3
    with pytest.raises(ValueError):
        ceil_div(-1, 2)


def test_formula_text_mentions_value():
    b = marshall_ramage_bound(16, 3, 2)
    assert "32" in b.formula()
    assert int(b) == 32
