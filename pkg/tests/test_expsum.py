"""Boolean-cube fiber counts and exponential sums."""

import cmath
import itertools

import pytest

from ringcensus.bounds import marshall_ramage_bound
from ringcensus.expsum import amplitude_sum, boolean_fiber_counts, exponential_sum
from ringcensus.poly import Poly, coef_count
from ringcensus.ring_core import RingSpec


def brute_cube_counts(P):
    m = P.ring.modulus
    counts = [0] * m
    for point in itertools.product((0, 1), repeat=P.n_vars):
        counts[P.evaluate(point).value] += 1
    return counts


class TestBooleanFiberCounts:
    def test_zero_poly(self):
        P = Poly.zero(RingSpec(4), 3, 2)
        assert boolean_fiber_counts(P) == [8, 0, 0, 0]

    def test_sum_of_two_bits(self):
        P = Poly(RingSpec(4), 2, 2, [1, 1, 0, 0, 0])
        assert boolean_fiber_counts(P) == [1, 2, 1, 0]

    def test_stabilizer_style_terms(self):
        # y1^2 + 2*y1*y2 over Z_4: cube values 0, 0, 1, 3
        P = Poly(RingSpec(4), 2, 2, [0, 0, 1, 2, 0])
        assert boolean_fiber_counts(P) == brute_cube_counts(P) == [2, 1, 0, 1]

    def test_counts_total_is_cube_size(self):
        for n in (1, 2, 4):
            P = Poly(RingSpec(6), n, 2, range(coef_count(n, 2)), constant=5)
            assert sum(boolean_fiber_counts(P)) == 2**n


class TestExponentialSum:
    def test_zero_poly_counts_cube(self):
        P = Poly.zero(RingSpec(5), 3, 2)
        assert exponential_sum(P) == pytest.approx(8.0)

    def test_single_bit_cancellation(self):
        P = Poly(RingSpec(2), 1, 1, [1])
        assert exponential_sum(P) == pytest.approx(0.0)

    def test_square_over_z4(self):
        P = Poly(RingSpec(4), 1, 2, [0, 1])
        assert exponential_sum(P) == pytest.approx(1 + 1j)

    def test_matches_manual_weighting(self):
        P = Poly(RingSpec(8), 3, 2, [1, 2, 3, 4, 5, 6, 7, 0, 1], constant=2)
        omega = cmath.exp(2j * cmath.pi / 8)
        expected = sum(c * omega**k for k, c in enumerate(brute_cube_counts(P)))
        assert exponential_sum(P) == pytest.approx(expected, abs=1e-9)

    def test_full_domain_counts_share_theorem_divisor(self):
        # the weighted sum lives on the D-lattice because every count does
        for m, n in ((4, 3), (8, 3), (6, 3)):
            bound = marshall_ramage_bound(m, n, 2).value
            P = Poly(RingSpec(m), n, 2, range(1, coef_count(n, 2) + 1), constant=1)
            counts = P.value_histogram().counts
            assert all(c % bound == 0 for c in counts)
            direct = exponential_sum(P, restrict_to_cube=False)
            omega = cmath.exp(2j * cmath.pi / m)
            weighted = sum(c * omega**k for k, c in enumerate(counts))
            assert direct == pytest.approx(weighted, abs=1e-9)


class TestAmplitudeSum:
    def test_bundles_counts_and_sum(self):
        P = Poly(RingSpec(4), 2, 2, [0, 0, 1, 2, 0])
        amp = amplitude_sum(P, normalizer=2.0)
        assert amp.m == 4
        assert list(amp.counts) == boolean_fiber_counts(P)
        assert amp.amplitude == pytest.approx(amp.sum / 2.0)
        assert abs(amp.sum) <= 2**P.n_vars + 1e-9

    def test_normalizer_must_be_positive(self):
        P = Poly.zero(RingSpec(4), 2, 2)
        with pytest.raises(ValueError):
            amplitude_sum(P, normalizer=0.0)
