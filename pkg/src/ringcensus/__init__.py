"""Solution-count censuses and divisibility structure for polynomials over Z_m.

The package enumerates every low-degree polynomial of a cell (ring size m,
n variables, degree bound d), tabulates how many polynomials attain each
solution count, derives the census metrics (minimum divisibility, slot
usage, first/last gaps), evaluates the closed-form divisibility bounds, and
mechanically verifies the ladder-sum divisibility theorems and the slice
structure of quadratic images over Z_{2^r} against brute force.
"""

from .budget import BudgetError, budget_limit
from .bounds import (
    DivisibilityBound,
    ax_bound,
    marshall_ramage_bound,
    theorem1_bound,
    theorem2_bound,
)
from .census import (
    MetricsReport,
    ProbeViolation,
    Spectrum,
    census_cost,
    derive_metrics,
    format_percent,
    metrics_to_json,
    random_divisibility_probe,
    run_census,
    spectrum_from_csv,
    spectrum_from_json,
    spectrum_to_csv,
    spectrum_to_json,
    spectrum_to_markdown,
)
from .expsum import AmplitudeSum, amplitude_sum, boolean_fiber_counts, exponential_sum
from .image_multiset import (
    IntersectionCheck,
    Slice,
    SliceMultiset,
    count_product_pairs,
    cumulative_slice_count,
    image_quadratic,
    image_quadratic_restricted,
    intersection_size,
    intersection_with_S,
    multiplicative_intersection,
    slice_count,
    square_fiber,
)
from .poly import (
    Poly,
    ValueHistogram,
    coef_count,
    count_constrained,
    enumerate_coefficient_space,
    format_poly,
    monomials,
    parse_poly,
)
from .ring_core import RingElem, RingSpec, hensel_lift, order, unit_inverse
from .theorem_check import (
    AffineForm,
    CheckReport,
    TheoremViolation,
    corollary1_lhs,
    theorem1_lhs,
    theorem2_lhs,
    verify_corollary1,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"
