"""Boolean-cube fiber counts and the exponential sum over omega = e^(2*pi*i/m).

The weighted sum sum_k counts[k] * omega^k ties the solution-set sizes of
Q - k to a transition amplitude; counts stay exact integers and only the
final complex weighting is floating point.  Both the direct summation over
the domain and the count-then-weight route are computed and must agree to
1e-9 before a value is returned.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass

from .budget import BudgetError, budget_limit
from .poly import Poly

TWO_PATH_TOLERANCE = 1e-9


@dataclass(frozen=True)
class AmplitudeSum:
    """Residue counts over the Boolean cube and their omega-weighted sum."""

    m: int
    counts: tuple[int, ...]
    sum: complex
    normalizer: float = 1.0

    @property
    def amplitude(self) -> complex:
        return self.sum / self.normalizer


def boolean_fiber_counts(Q: Poly) -> list[int]:
    """counts[k] = #{y in {0,1}^n : Q(y) = k}."""
    m = Q.ring.modulus
    if 2**Q.n_vars * (len(Q.coeffs) + 1) > budget_limit():
        raise BudgetError("Boolean cube too large for the configured budget")
    counts = [0] * m
    for point in itertools.product((0, 1), repeat=Q.n_vars):
        counts[Q.evaluate(point).value] += 1
    return counts


def exponential_sum(Q: Poly, restrict_to_cube: bool = True) -> complex:
    """sum over the domain of omega^(Q(y)), omega = e^(2*pi*i/m).

    The domain is the Boolean cube by default, or all of Z_m^n.  The sum is
    evaluated both directly and by weighting the fiber counts; the two paths
    must agree to 1e-9.
    """
    m = Q.ring.modulus
    omega = cmath.exp(2j * cmath.pi / m)
    powers = [omega**k for k in range(m)]

    if restrict_to_cube:
        counts = boolean_fiber_counts(Q)
        direct = 0j
        for point in itertools.product((0, 1), repeat=Q.n_vars):
            direct += powers[Q.evaluate(point).value]
    else:
        counts = list(Q.value_histogram().counts)
        direct = sum(
            (count * powers[k] for k, count in enumerate(counts)), start=0j
        )
        # Re-derive the direct path pointwise only when the domain is small;
        # the histogram route is itself exact in the counts.
        if m**Q.n_vars <= 1 << 16:
            direct = 0j
            for point in itertools.product(range(m), repeat=Q.n_vars):
                direct += powers[Q.evaluate(point).value]

    weighted = sum((count * powers[k] for k, count in enumerate(counts)), start=0j)
    if abs(direct - weighted) > TWO_PATH_TOLERANCE:
        raise AssertionError(
            f"summation paths disagree: {direct} vs {weighted}"
        )
    return weighted


def amplitude_sum(Q: Poly, normalizer: float = 1.0) -> AmplitudeSum:
    """Bundle the cube counts with their weighted sum; the caller supplies R."""
    if normalizer <= 0:
        raise ValueError("normalizer must be positive")
    counts = boolean_fiber_counts(Q)
    total = exponential_sum(Q, restrict_to_cube=True)
    return AmplitudeSum(Q.ring.modulus, tuple(counts), total, normalizer)
