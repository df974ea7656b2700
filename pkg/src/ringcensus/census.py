"""Exhaustive census of solution counts over all degree-<=d polynomials.

For a cell (m, n, d) the engine walks every coefficient vector in odometer
order (last coefficient fastest, all-zero vector first), keeps the value
vector of the current polynomial over all m^n points up to date
incrementally, and reads off the value histogram per vector.  Each residue
class v of a histogram is the solution count of exactly one polynomial with
a constant term (the vector minus v), so one constant-free sweep covers all
m^(coef_count+1) polynomials.

The innermost coefficients are batched: a block of m^B related value
vectors is materialized at once and histogrammed with a single offset
bincount, which keeps the per-polynomial cost at a few nanoseconds per
point.  Workers own contiguous, block-aligned ranges of the coefficient
stream; merging is key-wise addition, so results are identical for any
worker count.
"""

from __future__ import annotations

import concurrent.futures
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .budget import BudgetError, budget_limit
from .poly import _monomial_table, coef_count
from .ring_core import RingSpec

__all__ = [
    "Spectrum",
    "MetricsReport",
    "ProbeViolation",
    "census_cost",
    "run_census",
    "derive_metrics",
    "random_divisibility_probe",
    "spectrum_to_csv",
    "spectrum_from_csv",
    "spectrum_to_markdown",
    "spectrum_to_json",
    "spectrum_from_json",
    "metrics_to_json",
    "format_percent",
]


@dataclass(frozen=True)
class Spectrum:
    """Histogram of a census cell: solution count -> number of polynomials."""

    m: int
    n: int
    d: int
    entries: dict[int, int]

    def total_polynomials(self) -> int:
        return sum(self.entries.values())

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.entries.items())

    def keys(self) -> list[int]:
        return sorted(self.entries)


def census_cost(m: int, n: int, d: int) -> int:
    """Point evaluations needed for the cell: m^coef_count * m^n."""
    return m ** coef_count(n, d) * m**n


def _block_exponent(m: int, n: int, d: int) -> int:
    """Batch the innermost B coefficients so a block is ~2^18 values."""
    k = coef_count(n, d)
    points = m**n
    b = 1
    while b < k and m ** (b + 1) * points <= 1 << 18:
        b += 1
    return b


def _census_range(m: int, n: int, d: int, block_lo: int, block_hi: int) -> np.ndarray:
    """Spectrum contribution of coefficient vectors in blocks [block_lo, block_hi)."""
    table = _monomial_table(m, n, d)
    k = coef_count(n, d)
    points = m**n
    b = _block_exponent(m, n, d)
    n_pref = k - b
    block = m**b

    # Offsets of one block: value vectors of every suffix-combination, with
    # 2m-strided row offsets folded in so one bincount covers the block.
    digits = np.array(
        [[(t // m ** (b - 1 - j)) % m for j in range(b)] for t in range(block)],
        dtype=np.int64,
    )
    offsets = digits @ table[n_pref:] % m
    offsets += (np.arange(block, dtype=np.int64) * (2 * m))[:, None]

    out = np.zeros(points + 1, dtype=np.int64)

    # Value vector of the prefix polynomial (suffix coefficients all zero).
    pref = [(block_lo // m ** (n_pref - 1 - j)) % m for j in range(n_pref)]
    values = np.zeros(points, dtype=np.int64)
    for j, digit in enumerate(pref):
        if digit:
            values = (values + digit * table[j]) % m

    fold = 2 * m * block
    for _ in range(block_lo, block_hi):
        work = values + offsets
        hist = np.bincount(work.ravel(), minlength=fold).reshape(block, 2 * m)
        fibers = hist[:, :m] + hist[:, m:]
        out += np.bincount(fibers.ravel(), minlength=points + 1)

        # Advance the prefix odometer; every changed slot (increment or
        # wrap m-1 -> 0) shifts the value vector by exactly +table[slot].
        for j in range(n_pref - 1, -1, -1):
            values = (values + table[j]) % m
            if pref[j] < m - 1:
                pref[j] += 1
                break
            pref[j] = 0
        else:
            break
    return out


def run_census(
    m: int,
    n: int,
    d: int,
    worker_count: int = 1,
    *,
    budget: int | None = None,
    force: bool = False,
) -> Spectrum:
    """Exact Spectrum for the cell; deterministic for any worker count."""
    if m < 2:
        raise ValueError("ring size must be >= 2")
    if worker_count < 1:
        raise ValueError("worker_count must be >= 1")
    limit = budget if budget is not None else budget_limit()
    cost = census_cost(m, n, d)
    if cost > limit and not force:
        raise BudgetError(
            f"census cell ({m},{n},{d}) needs ~{cost} point evaluations, "
            f"over the budget of {limit}; pass force=True/--force to run anyway",
            estimate=cost,
        )

    k = coef_count(n, d)
    b = _block_exponent(m, n, d)
    n_blocks = m ** (k - b)
    points = m**n

    if worker_count == 1 or n_blocks == 1:
        arr = _census_range(m, n, d, 0, n_blocks)
    else:
        w = min(worker_count, n_blocks)
        bounds = [n_blocks * i // w for i in range(w + 1)]
        arr = np.zeros(points + 1, dtype=np.int64)
        with concurrent.futures.ProcessPoolExecutor(max_workers=w) as pool:
            jobs = [
                pool.submit(_census_range, m, n, d, lo, hi)
                for lo, hi in zip(bounds, bounds[1:])
                if lo < hi
            ]
            for job in jobs:
                arr += job.result()

    entries = {int(s): int(c) for s, c in enumerate(arr) if c}
    return Spectrum(m, n, d, entries)


# -- derived metrics -----------------------------------------------------------


@dataclass(frozen=True)
class MetricsReport:
    """Derived statistics of one census cell.

    Percentages are kept as exact fractions; rendering rounds half-up to one
    decimal.  A spectrum whose only key is 0 is degenerate: its divisibility
    is reported as 0 and the percentage fields are zeroed.
    """

    m: int
    n: int
    d: int
    min_divisibility: int
    pct_min_div: Fraction
    slots_used: int
    pct_slots_used: Fraction
    first_gap: int | None
    last_gap: int | None
    degenerate: bool = False


def derive_metrics(spectrum: Spectrum) -> MetricsReport:
    if not spectrum.entries:
        raise ValueError("empty spectrum")
    m, n, d = spectrum.m, spectrum.n, spectrum.d
    keys = spectrum.keys()
    nonzero = [key for key in keys if key != 0]

    div = 0
    for key in nonzero:
        div = gcd(div, key)
    if div == 0:
        # Only the 0 key is present; never happens for real cells (the zero
        # polynomial always contributes the key m^n) but must not crash.
        return MetricsReport(m, n, d, 0, Fraction(0), len(keys), Fraction(0),
                             None, None, degenerate=True)

    total = spectrum.total_polynomials()
    # "Minimum divisibility and nothing more": the divisibility lattice is
    # graded per prime, so a count sits at the minimum when it is a multiple
    # of D but not of D times the radical of m (for squarefree m that is
    # D*m; for prime powers it is D*p, i.e. exact p-valuation).  This is
    # what reproduces the published percentage grids at m = 4, 8, 9, 16.
    radical = 1
    for p, _ in RingSpec(m).factorization:
        radical *= p
    at_minimum = sum(
        count
        for key, count in spectrum.entries.items()
        if key % div == 0 and key % (div * radical) != 0
    )
    pct_min = Fraction(at_minimum, total)

    domain = m**n
    if domain % div != 0:
        raise AssertionError("minimum divisibility must divide the domain size")
    slots_allowed = domain // div + 1
    slots = len(keys)
    pct_slots = Fraction(slots, slots_allowed)

    first_gap = min(nonzero)
    last_gap = keys[-1] - keys[-2] if len(keys) >= 2 else None
    return MetricsReport(
        m, n, d, div, pct_min, slots, pct_slots, first_gap, last_gap
    )


def format_percent(x: Fraction) -> str:
    """Render an exact fraction as a percentage, one decimal, half-up."""
    scaled = x * 1000
    q, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        q += 1
    return f"{q // 10}.{q % 10}%"


# -- random divisibility probe --------------------------------------------------


@dataclass(frozen=True)
class ProbeViolation:
    """A sampled polynomial whose count for some residue missed the divisor."""

    coeffs: tuple[int, ...]
    residue: int
    count: int
    remainder: int


def random_divisibility_probe(
    m: int,
    n: int,
    d: int,
    divisor: int,
    tries: int,
    seed: int | None = None,
) -> list[ProbeViolation]:
    """Sample constant-free coefficient vectors and test every residue count.

    Each try draws all coefficients uniformly, computes the full value
    histogram, and records every residue class whose count is not a multiple
    of ``divisor``.  An empty list means the hypothesis survived the probe.
    """
    if tries < 1:
        raise ValueError("tries must be >= 1")
    if divisor < 1:
        raise ValueError("divisor must be >= 1")
    k = coef_count(n, d)
    points = m**n
    cost = tries * points * (k + 1)
    if cost > budget_limit():
        raise BudgetError(
            f"probe needs ~{cost} operations, over the budget of {budget_limit()}",
            estimate=cost,
        )

    rng = random.Random(seed)
    draws = [[rng.randrange(m) for _ in range(k)] for _ in range(tries)]

    table = _monomial_table(m, n, d)
    violations: list[ProbeViolation] = []
    # Exactness guard for the float matmul: every dot product stays below
    # 2^53, so the BLAS path is exact; otherwise fall back to int64.
    exact_float = k * (m - 1) ** 2 < 2**53
    chunk = max(1, min(64, (1 << 25) // max(points, 1)))
    for start in range(0, tries, chunk):
        batch = draws[start : start + chunk]
        cmat = np.array(batch, dtype=np.int64).T
        if exact_float:
            vals = np.rint(table.astype(np.float64).T @ cmat.astype(np.float64))
            vals = vals.astype(np.int64)
        else:
            vals = table.T @ cmat
        vals %= m
        for j, coeffs in enumerate(batch):
            hist = np.bincount(vals[:, j], minlength=m)
            for residue in range(m):
                rem = int(hist[residue]) % divisor
                if rem:
                    violations.append(
                        ProbeViolation(tuple(coeffs), residue, int(hist[residue]), rem)
                    )
    return violations


# -- serialization --------------------------------------------------------------


def spectrum_to_csv(spectrum: Spectrum) -> str:
    lines = ["solutions,polynomials"]
    lines += [f"{k},{v}" for k, v in spectrum.sorted_items()]
    return "\n".join(lines) + "\n"


def spectrum_from_csv(text: str, m: int, n: int, d: int) -> Spectrum:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0] != "solutions,polynomials":
        raise ValueError("missing 'solutions,polynomials' header")
    entries = {}
    for ln in lines[1:]:
        key_s, _, val_s = ln.partition(",")
        entries[int(key_s)] = int(val_s)
    return Spectrum(m, n, d, entries)


def spectrum_to_markdown(spectrum: Spectrum) -> str:
    """Two-column block in the layout of the published census tables."""
    lines = [
        f"| m{spectrum.m} n{spectrum.n} d{spectrum.d} | |",
        "| ---: | ---: |",
    ]
    lines += [f"| {k} | {v} |" for k, v in spectrum.sorted_items()]
    return "\n".join(lines) + "\n"


def spectrum_to_json(spectrum: Spectrum) -> str:
    payload = {
        "m": spectrum.m,
        "n": spectrum.n,
        "d": spectrum.d,
        "spectrum": {str(k): v for k, v in spectrum.sorted_items()},
    }
    return json.dumps(payload, indent=2) + "\n"


def spectrum_from_json(text: str) -> Spectrum:
    payload = json.loads(text)
    entries = {int(k): int(v) for k, v in payload["spectrum"].items()}
    return Spectrum(int(payload["m"]), int(payload["n"]), int(payload["d"]), entries)


def metrics_to_json(report: MetricsReport) -> str:
    payload = {
        "m": report.m,
        "n": report.n,
        "d": report.d,
        "min_divisibility": report.min_divisibility,
        "pct_min_div": format_percent(report.pct_min_div),
        "pct_min_div_exact": [
            report.pct_min_div.numerator,
            report.pct_min_div.denominator,
        ],
        "slots_used": report.slots_used,
        "pct_slots_used": format_percent(report.pct_slots_used),
        "pct_slots_used_exact": [
            report.pct_slots_used.numerator,
            report.pct_slots_used.denominator,
        ],
        "first_gap": report.first_gap,
        "last_gap": report.last_gap if report.last_gap is not None else "undefined",
        "degenerate": report.degenerate,
    }
    return json.dumps(payload, indent=2) + "\n"
