"""Executable verifiers for the divisibility theorems.

Each theorem asserts that a ladder-summed solution count is a multiple of a
closed-form power product.  The verifiers sweep polynomials (exhaustively on
small rings, seeded-randomly on larger ones) against a canonical parameter
grid and record every instance whose sum misses its divisor.  A violation is
a hard finding: it would falsify the theorem (or, with a scaled divisor,
demonstrate sharpness).

Two code paths exist on purpose.  ``theorem1_lhs`` / ``theorem2_lhs`` /
``corollary1_lhs`` compute the sums term by term straight from their
definitions (one solution count per summand); the ``verify_*`` sweeps use a
vectorized engine that histograms whole batches of polynomials at once.
The test suite holds the two paths equal on sampled instances.

Grid conventions: residue-shift multipliers (w, g, u) range over {0, 1, m-1};
any other multiplier is equivalent to one of these up to re-indexing the
ladder by an odd unit, which permutes the summands.  Substitution targets T
range over affine forms with 0/1 variable coefficients and all constants.
In exhaustive sweeps the polynomial constant is folded into the shift k:
checking every constant-free vector against every k covers exactly the same
set of statements as every (vector, constant) pair, at a fraction of the
work.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .budget import BudgetError, budget_limit
from .bounds import theorem1_bound, theorem2_bound
from .poly import Poly, coef_count, count_constrained, monomials
from .ring_core import RingSpec


class AffineForm(NamedTuple):
    """T(x) = sum coeffs[i] * x_i + const, over the non-substituted variables."""

    coeffs: tuple[int, ...]
    const: int


@dataclass(frozen=True)
class TheoremViolation:
    coeffs: tuple[int, ...]
    constant: int
    params: dict
    lhs: int
    divisor: int
    remainder: int


MAX_STORED_VIOLATIONS = 1000


@dataclass
class CheckReport:
    theorem: str
    cell: dict
    mode: str
    seed: int | None
    instances: int = 0
    lhs_total: int = 0
    divisors_used: list[int] = field(default_factory=list)
    violations: list[TheoremViolation] = field(default_factory=list)
    violations_total: int = 0

    @property
    def ok(self) -> bool:
        return self.violations_total == 0


def _shift_grid(m: int) -> list[int]:
    """Residue-shift multipliers: zero, the unit 1, and the unit -1."""
    return sorted({0, 1, m - 1})


def _affine_grid(m: int, n_free: int) -> list[AffineForm]:
    """Affine substitution targets: 0/1 variable coefficients, all constants."""
    return [
        AffineForm(coeffs, const)
        for coeffs in itertools.product((0, 1), repeat=n_free)
        for const in range(m)
    ]


# -- definitional sums -----------------------------------------------------------


def theorem1_lhs(
    Q: Poly, k: int, w_list: Sequence[int], q_list: Sequence[int]
) -> int:
    """Ladder sum over all index tuples, one solution count per term."""
    ring = Q.ring
    m = ring.modulus
    factors = ring.factorization
    if len(w_list) != len(factors) or len(q_list) != len(factors):
        raise ValueError("w_list and q_list must have one entry per prime factor")
    for (p, r), q in zip(factors, q_list):
        if not 0 <= q <= r:
            raise ValueError(f"need 0 <= q <= r_i, got q={q} for {p}^{r}")
    ladders = [
        [w * (m // p**q) * i for i in range(p**q)]
        for (p, _), w, q in zip(factors, w_list, q_list)
    ]
    total = 0
    for combo in itertools.product(*ladders):
        total += Q.count_solutions((k + sum(combo)) % m)
    return total


def theorem2_lhs(
    Q: Poly,
    T: AffineForm,
    k: int,
    w: int,
    g: int,
    u: int,
    q: int,
    v: int,
) -> int:
    """Double ladder sum, one constrained count per term."""
    r = _ring_exponent(Q.ring)
    if Q.n_vars < 3:
        raise ValueError("need at least 3 variables")
    if Q.degree > 2:
        raise ValueError("degree must be at most 2")
    if not (0 <= q <= r and 0 <= v <= r):
        raise ValueError("need 0 <= q, v <= r")
    m = Q.ring.modulus
    total = 0
    for j in range(2**v):
        offset = u * 2 ** (r - v) * j
        for i in range(2**q):
            target = (k + w * 2 ** (r - q) * i + g * 2 ** (r - v) * j) % m
            total += count_constrained(Q, T.coeffs, T.const + offset, target)
    return total


def corollary1_lhs(
    variant: str, Q: Poly, l: int, k: int, w: int, g: int, q: int, v: int
) -> int:
    """The three specialized ladder sums with z pinned to the coset l + g*2^(r-v)*j."""
    r = _ring_exponent(Q.ring)
    if Q.n_vars < 3 or Q.degree > 2:
        raise ValueError("need n >= 3 and degree <= 2")
    if not (0 <= q <= r and 0 <= v <= r):
        raise ValueError("need 0 <= q, v <= r")
    m = Q.ring.modulus
    zeros = (0,) * (Q.n_vars - 1)
    total = 0
    for j in range(2**v):
        z_const = l + g * 2 ** (r - v) * j
        if variant == "a":
            targets: Iterable[int] = (k,)
        elif variant == "b":
            targets = ((k + w * 2 ** (r - q) * i) % m for i in range(2**q))
        elif variant == "c":
            targets = ((k + w * 2 ** (r - q) * j) % m,)
        else:
            raise ValueError(f"unknown corollary variant {variant!r}")
        for target in targets:
            total += count_constrained(Q, zeros, z_const, target)
    return total


def _ring_exponent(ring: RingSpec) -> int:
    p, r = ring.local_params()
    if p != 2:
        raise ValueError("this check requires a ring Z_{2^r}")
    return r


# -- verifier for the composite-modulus theorem ----------------------------------


def _batch_histograms(m: int, n: int, d: int, cmat: np.ndarray) -> np.ndarray:
    """Value histograms of many polynomials at once; rows = polys, cols = residues.

    cmat rows are the coefficient vector followed by the constant term.
    """
    from .poly import _monomial_table

    table = _monomial_table(m, n, d)
    n_polys = cmat.shape[1]
    values = table.T @ cmat[:-1]
    values += cmat[-1][None, :]
    values %= m
    values += np.arange(n_polys, dtype=np.int64)[None, :] * m
    flat = np.bincount(values.ravel(), minlength=n_polys * m)
    return flat.reshape(n_polys, m)


def verify_theorem1(
    m: int,
    n: int,
    d: int,
    *,
    samples: int | None = None,
    seed: int | None = None,
    divisor_scale: int = 1,
    divisor_override: int | None = None,
) -> CheckReport:
    """Check the ladder-sum divisibility over every polynomial of the cell.

    Exhaustive mode (samples is None) sweeps all m^(coef_count+1) coefficient
    vectors including the constant; sampled mode draws that many uniformly.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    ring = RingSpec(m)
    k_count = coef_count(n, d)
    mode = "exhaustive" if samples is None else f"sampled({samples})"
    report = CheckReport(
        "theorem1", {"m": m, "n": n, "d": d, "divisor_scale": divisor_scale},
        mode, seed,
    )

    if samples is None:
        n_polys = m ** (k_count + 1)
        if n_polys * m**n > budget_limit():
            raise BudgetError(
                f"exhaustive sweep needs ~{n_polys * m ** n} evaluations, "
                f"over the budget of {budget_limit()}"
            )
        cmat = np.indices((m,) * (k_count + 1), dtype=np.int64).reshape(
            k_count + 1, -1
        )
    else:
        rng = random.Random(seed)
        cmat = np.array(
            [[rng.randrange(m) for _ in range(k_count + 1)] for _ in range(samples)],
            dtype=np.int64,
        ).T
        n_polys = samples

    hists = _batch_histograms(m, n, d, cmat)  # (n_polys, m)

    factors = ring.factorization
    shift = _shift_grid(m)
    divisors_used: set[int] = set()

    for q_list in itertools.product(*[range(r + 1) for _, r in factors]):
        base = theorem1_bound(ring, n, d, q_list).value
        divisor = divisor_override if divisor_override is not None else base * divisor_scale
        divisors_used.add(divisor)
        for w_list in itertools.product(*[shift] * len(factors)):
            ladders = [
                [w * (m // p**q) * i for i in range(p**q)]
                for (p, _), w, q in zip(factors, w_list, q_list)
            ]
            offsets = [sum(combo) for combo in itertools.product(*ladders)]
            for k in range(m):
                lhs = np.zeros(n_polys, dtype=np.int64)
                for off in offsets:
                    lhs += hists[:, (k + off) % m]
                report.instances += n_polys
                report.lhs_total += int(lhs.sum())
                bad = np.nonzero(lhs % divisor)[0]
                report.violations_total += len(bad)
                for idx in bad[: max(0, MAX_STORED_VIOLATIONS - len(report.violations))]:
                    coeffs = tuple(int(x) for x in cmat[:k_count, idx])
                    report.violations.append(
                        TheoremViolation(
                            coeffs, int(cmat[k_count, idx]),
                            {"k": k, "w_list": w_list, "q_list": q_list},
                            int(lhs[idx]), divisor, int(lhs[idx]) % divisor,
                        )
                    )
    report.divisors_used = sorted(divisors_used)
    return report


# -- verifier engine for the power-of-two theorem --------------------------------


def _substitution_histograms(
    r: int, n: int, cmat: np.ndarray, T: AffineForm
) -> np.ndarray:
    """G[delta, residue, poly]: fiber sizes of Q(x, T(x)+delta) over x.

    cmat rows are the degree-2 coefficient vector followed by the constant.
    """
    from .poly import _point_table

    m = 1 << r
    mons = monomials(n, 2)
    pts = _point_table(m, n - 1)
    n_pts = pts.shape[1]
    n_polys = cmat.shape[1]
    t_vals = np.full(n_pts, T.const % m, dtype=np.int64)
    for coeff, row in zip(T.coeffs, pts):
        if coeff % m:
            t_vals = (t_vals + (coeff % m) * row) % m

    G = np.empty((m, m, n_polys), dtype=np.int64)
    z = n - 1
    col_off = np.arange(n_polys, dtype=np.int64)[None, :] * m
    for delta in range(m):
        zrow = (t_vals + delta) % m
        rows = []
        for mono in mons:
            term = np.ones(n_pts, dtype=np.int64)
            for idx in mono:
                term = term * (zrow if idx == z else pts[idx]) % m
            rows.append(term)
        rows.append(np.ones(n_pts, dtype=np.int64))  # constant column
        amat = np.array(rows, dtype=np.int64)
        values = (amat.T @ cmat) % m
        flat = np.bincount((values + col_off).ravel(), minlength=n_polys * m)
        G[delta] = flat.reshape(n_polys, m).T
    return G


def _theorem2_engine(
    r: int,
    n: int,
    cmat: np.ndarray,
    t_list: Sequence[AffineForm],
    report: CheckReport,
    *,
    divisor_scale: int,
    divisor_override: int | None,
    variant: str | None = None,
) -> None:
    """Shared sweep: the full double-ladder grid, or one corollary variant.

    For the corollary variants the substitution target is a bare constant
    and the z-ladder multiplier (engine parameter u) plays the published g;
    there is then no separate residue shift along the j index except in
    variant c, where the shift is w*2^(r-q)*j.
    """
    m = 1 << r
    n_polys = cmat.shape[1]
    shift = _shift_grid(m)
    kvec = np.arange(m)
    divisors_used: set[int] = set(report.divisors_used)
    g_grid = shift if variant is None else [0]
    if variant == "a":
        qw_grid: list[tuple[int, int]] = [(0, 0)]
    else:
        qw_grid = list(itertools.product(range(r + 1), shift))

    for T in t_list:
        G = _substitution_histograms(r, n, cmat, T)

        # Ladder-summed histograms over the i index: S[q, w][delta, k, :].
        S: dict[tuple[int, int], np.ndarray] = {}
        if variant != "c":
            for q, w in qw_grid:
                idx = (
                    kvec[:, None]
                    + w * (1 << (r - q)) * np.arange(1 << q)[None, :]
                ) % m
                S[q, w] = G[:, idx, :].sum(axis=2)

        for v in range(r + 1):
            jrange = range(1 << v)
            if variant == "c":
                # The j-ladder shift w*2^(r-q)*j collapses into the ladder
                # only when q <= v; for q > v the claim has counterexamples.
                pairs = [(q, w) for q, w in qw_grid if q <= v]
            else:
                pairs = qw_grid
            for u in shift:
                deltas = [u * (1 << (r - v)) * j % m for j in jrange]
                for g in g_grid:
                    kshifts = [g * (1 << (r - v)) * j % m for j in jrange]
                    for q, w in pairs:
                        lhs = np.zeros((m, n_polys), dtype=np.int64)
                        if variant == "c":
                            for j in jrange:
                                krow = (kvec + kshifts[j] + w * (1 << (r - q)) * j) % m
                                lhs += G[deltas[j]][krow, :]
                        else:
                            for j in jrange:
                                krow = (kvec + kshifts[j]) % m
                                lhs += S[q, w][deltas[j]][krow, :]
                        q_for_bound = q if variant in (None, "b") else 0
                        base = theorem2_bound(r, n, q_for_bound, v).value
                        divisor = (
                            divisor_override
                            if divisor_override is not None
                            else base * divisor_scale
                        )
                        divisors_used.add(divisor)
                        report.instances += m * n_polys
                        report.lhs_total += int(lhs.sum())
                        bad_k, bad_p = np.nonzero(lhs % divisor)
                        report.violations_total += len(bad_k)
                        room = max(0, MAX_STORED_VIOLATIONS - len(report.violations))
                        for kk, idx in zip(bad_k[:room], bad_p[:room]):
                            report.violations.append(
                                TheoremViolation(
                                    tuple(int(x) for x in cmat[:-1, idx]),
                                    int(cmat[-1, idx]),
                                    {
                                        "T": T, "k": int(kk), "w": w, "g": g,
                                        "u": u, "q": q, "v": v,
                                    },
                                    int(lhs[kk, idx]), divisor,
                                    int(lhs[kk, idx]) % divisor,
                                )
                            )
    report.divisors_used = sorted(divisors_used)


def _theorem2_cmat(
    r: int, n: int, samples: int | None, seed: int | None
) -> np.ndarray:
    """Coefficient matrix (coef_count+1 rows) for the sweep.

    Exhaustive mode enumerates constant-free vectors only: the constant is
    covered by the full k grid, since shifting the polynomial by c and the
    target by c is the same statement.
    """
    m = 1 << r
    k_count = coef_count(n, 2)
    if samples is None:
        n_polys = m**k_count
        cost = n_polys * m ** (n - 1) * m
        if cost > budget_limit():
            raise BudgetError(
                f"exhaustive sweep needs ~{cost} evaluations, over the "
                f"budget of {budget_limit()}"
            )
        digits = np.indices((m,) * k_count, dtype=np.int64).reshape(k_count, -1)
        return np.vstack([digits, np.zeros(n_polys, dtype=np.int64)])
    rng = random.Random(seed)
    return np.array(
        [[rng.randrange(m) for _ in range(k_count + 1)] for _ in range(samples)],
        dtype=np.int64,
    ).T


def verify_theorem2(
    r: int,
    n: int,
    *,
    samples: int | None = None,
    seed: int | None = None,
    divisor_scale: int = 1,
    divisor_override: int | None = None,
    chunk: int = 1 << 16,
) -> CheckReport:
    """Sweep the double-ladder divisibility for degree-<=2 polys over Z_{2^r}."""
    if n < 3:
        raise ValueError("need n >= 3")
    mode = "exhaustive" if samples is None else f"sampled({samples})"
    report = CheckReport(
        "theorem2",
        {"r": r, "n": n, "divisor_scale": divisor_scale,
         "constants_folded": samples is None},
        mode, seed,
    )
    cmat = _theorem2_cmat(r, n, samples, seed)
    t_list = _affine_grid(1 << r, n - 1)
    for start in range(0, cmat.shape[1], chunk):
        _theorem2_engine(
            r, n, cmat[:, start : start + chunk], t_list, report,
            divisor_scale=divisor_scale, divisor_override=divisor_override,
        )
    return report


def verify_corollary1(
    variant: str,
    r: int,
    n: int,
    *,
    samples: int | None = None,
    seed: int | None = None,
    divisor_scale: int = 1,
    divisor_override: int | None = None,
    chunk: int = 1 << 16,
) -> CheckReport:
    """Sweep one corollary variant (a, b or c); z is pinned to a coset ladder."""
    if variant not in ("a", "b", "c"):
        raise ValueError("variant must be 'a', 'b' or 'c'")
    if n < 3:
        raise ValueError("need n >= 3")
    mode = "exhaustive" if samples is None else f"sampled({samples})"
    report = CheckReport(
        f"corollary1{variant}",
        {"r": r, "n": n, "divisor_scale": divisor_scale,
         "constants_folded": samples is None},
        mode, seed,
    )
    cmat = _theorem2_cmat(r, n, samples, seed)
    m = 1 << r
    # T = l with zero variable coefficients; the l grid is the constant grid.
    t_list = [AffineForm((0,) * (n - 1), l) for l in range(m)]
    for start in range(0, cmat.shape[1], chunk):
        _theorem2_engine(
            r, n, cmat[:, start : start + chunk], t_list, report,
            divisor_scale=divisor_scale, divisor_override=divisor_override,
            variant=variant,
        )
    return report
