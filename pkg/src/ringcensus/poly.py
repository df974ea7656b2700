"""Dense n-variable polynomials of degree <= 3 over Z_m.

The coefficient vector follows the census order: the n linear terms in
variable order, then the quadratic pairs (i, j) with i <= j in nested-loop
order, then the cubic triples (i, j, k) with i <= j <= k, again nested-loop.
The constant term is carried separately so that one sweep over the
coefficient space serves all m constants at once (each residue class of the
value histogram is the solution count of "this vector minus that constant").

Full-domain sweeps are vectorized with numpy; every count is an exact
integer throughout.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .budget import BudgetError, budget_limit
from .ring_core import RingElem, RingSpec


@lru_cache(maxsize=None)
def monomials(n_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Monomial index tuples in census coefficient order."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    if degree not in (1, 2, 3):
        raise ValueError("degree must be 1, 2 or 3")
    mons: list[tuple[int, ...]] = [(i,) for i in range(n_vars)]
    if degree >= 2:
        mons += [(i, j) for i in range(n_vars) for j in range(i, n_vars)]
    if degree >= 3:
        mons += [
            (i, j, k)
            for i in range(n_vars)
            for j in range(i, n_vars)
            for k in range(j, n_vars)
        ]
    return tuple(mons)


def coef_count(n_vars: int, degree: int) -> int:
    """Number of non-constant coefficients for the (n_vars, degree) shape."""
    return len(monomials(n_vars, degree))


class ValueHistogram:
    """Fiber sizes of a polynomial over its full domain: counts[v] = #{x : P(x) = v}."""

    __slots__ = ("modulus", "counts")

    def __init__(self, modulus: int, counts: Sequence[int]):
        if len(counts) != modulus:
            raise ValueError("histogram length must equal the modulus")
        self.modulus = modulus
        self.counts = tuple(int(c) for c in counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v % self.modulus]

    def total(self) -> int:
        return sum(self.counts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ValueHistogram)
            and other.modulus == self.modulus
            and other.counts == self.counts
        )

    def __repr__(self) -> str:
        return f"ValueHistogram({self.modulus}, {self.counts})"


class Poly:
    """An n-variable polynomial of degree <= 3 with a dense coefficient vector."""

    __slots__ = ("ring", "n_vars", "degree", "coeffs", "constant")

    def __init__(
        self,
        ring: RingSpec,
        n_vars: int,
        degree: int,
        coeffs: Sequence[int],
        constant: int | RingElem = 0,
    ):
        mons = monomials(n_vars, degree)
        if len(coeffs) != len(mons):
            raise ValueError(
                f"expected {len(mons)} coefficients for n={n_vars}, d={degree}, "
                f"got {len(coeffs)}"
            )
        m = ring.modulus
        self.ring = ring
        self.n_vars = n_vars
        self.degree = degree
        self.coeffs = tuple(int(c) % m for c in coeffs)
        self.constant = int(constant) % m

    @classmethod
    def zero(cls, ring: RingSpec, n_vars: int, degree: int) -> "Poly":
        return cls(ring, n_vars, degree, [0] * coef_count(n_vars, degree))

    def evaluate(self, point: Sequence[int | RingElem]) -> RingElem:
        if len(point) != self.n_vars:
            raise ValueError(f"expected {self.n_vars} coordinates, got {len(point)}")
        m = self.ring.modulus
        vals = [int(x) % m for x in point]
        acc = self.constant
        for mono, c in zip(monomials(self.n_vars, self.degree), self.coeffs):
            if c == 0:
                continue
            term = c
            for idx in mono:
                term = term * vals[idx] % m
            acc += term
        return RingElem(acc, self.ring)

    def value_histogram(self) -> ValueHistogram:
        """Exact fiber sizes over all of Z_m^n."""
        m = self.ring.modulus
        work = m**self.n_vars * (len(self.coeffs) + 1)
        if work > budget_limit():
            raise BudgetError(
                f"domain too large: ~{work} operations exceed the budget "
                f"of {budget_limit()}",
                estimate=work,
            )
        values = _values_on_grid(
            m, self.n_vars, self.degree, self.coeffs, self.constant
        )
        return ValueHistogram(m, np.bincount(values, minlength=m))

    def count_solutions(self, k: int | RingElem) -> int:
        """#{x in Z_m^n : P(x) = k}."""
        return self.value_histogram()[int(k) % self.ring.modulus]

    def univariate_coeffs(self) -> list[int]:
        """Coefficients [c0, c1, ...] by ascending power; one-variable polys only."""
        if self.n_vars != 1:
            raise ValueError("univariate_coeffs requires a one-variable polynomial")
        return [self.constant, *self.coeffs]

    def substitute_last(self, t_coeffs: Sequence[int], t_const: int) -> "Poly":
        """Symbolically replace the last variable by the affine form T(x).

        T is given by its coefficients over the remaining n-1 variables plus
        a constant; the result is an (n-1)-variable polynomial of the same
        degree bound.
        """
        n = self.n_vars
        if n < 2:
            raise ValueError("substitution needs at least two variables")
        if len(t_coeffs) != n - 1:
            raise ValueError("affine form must cover exactly the first n-1 variables")
        m = self.ring.modulus
        z = n - 1
        # z expands to sum_i t_i * x_i + t_const; distribute monomial by monomial.
        replacement = [(int(t) % m, (i,)) for i, t in enumerate(t_coeffs)]
        replacement.append((int(t_const) % m, ()))

        out_idx = {mono: pos for pos, mono in enumerate(monomials(n - 1, self.degree))}
        out = [0] * len(out_idx)
        out_const = self.constant

        def add_term(c: int, factors: tuple[int, ...]) -> None:
            nonlocal out_const
            if c == 0:
                return
            if not factors:
                out_const = (out_const + c) % m
            else:
                key = tuple(sorted(factors))
                out[out_idx[key]] = (out[out_idx[key]] + c) % m

        for mono, c in zip(monomials(n, self.degree), self.coeffs):
            if c == 0:
                continue
            fixed = tuple(i for i in mono if i != z)
            z_power = len(mono) - len(fixed)
            if z_power == 0:
                add_term(c, fixed)
                continue
            for combo in itertools.product(replacement, repeat=z_power):
                cc = c
                factors = fixed
                for tc, tf in combo:
                    cc = cc * tc % m
                    factors = factors + tf
                add_term(cc, factors)
        return Poly(self.ring, n - 1, self.degree, out, out_const)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and other.ring == self.ring
            and other.n_vars == self.n_vars
            and other.degree == self.degree
            and other.coeffs == self.coeffs
            and other.constant == self.constant
        )

    def __hash__(self) -> int:
        return hash((self.ring.modulus, self.n_vars, self.degree, self.coeffs, self.constant))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return (
            f"Poly({self.ring!r}, n_vars={self.n_vars}, degree={self.degree}, "
            f"coeffs={self.coeffs}, constant={self.constant})"
        )


@lru_cache(maxsize=8)
def _point_table(m: int, n_vars: int) -> np.ndarray:
    """All points of Z_m^n as an (n, m^n) array; last variable fastest."""
    return np.indices((m,) * n_vars, dtype=np.int64).reshape(n_vars, -1)


@lru_cache(maxsize=6)
def _monomial_table(m: int, n_vars: int, degree: int) -> np.ndarray:
    """Monomial values at every point, shape (coef_count, m^n), reduced mod m."""
    pts = _point_table(m, n_vars)
    rows = []
    for mono in monomials(n_vars, degree):
        term = pts[mono[0]].copy()
        for idx in mono[1:]:
            term = term * pts[idx] % m
        rows.append(term % m)
    return np.array(rows, dtype=np.int64)


def _values_on_grid(
    m: int, n_vars: int, degree: int, coeffs: Sequence[int], constant: int
) -> np.ndarray:
    """P(x) mod m at every point of Z_m^n, as an int64 vector."""
    table = _monomial_table(m, n_vars, degree)
    cvec = np.asarray(coeffs, dtype=np.int64)
    # Keep the dot product inside int64: coefficients and monomial values are
    # both < m, so the bound below is exact.
    if len(coeffs) * (m - 1) ** 2 + m < 2**62:
        values = cvec @ table
        values += constant
        values %= m
    else:
        values = np.full(table.shape[1], constant, dtype=np.int64)
        for c, row in zip(coeffs, table):
            if c:
                values = (values + c * row) % m
    return values


def count_constrained(
    Q: Poly, t_coeffs: Sequence[int], t_const: int, target: int | RingElem
) -> int:
    """#{x : Q(x, T(x)) = target} with the last variable set to the affine T.

    The count runs over the m^(n-1) assignments to the remaining variables.
    """
    n = Q.n_vars
    if n < 2:
        raise ValueError("constrained counts need at least two variables")
    if len(t_coeffs) != n - 1:
        raise ValueError("affine form must not reference the substituted variable")
    m = Q.ring.modulus
    pts = _point_table(m, n - 1)
    t = np.full(pts.shape[1], int(t_const) % m, dtype=np.int64)
    for c, row in zip(t_coeffs, pts):
        if c % m:
            t = (t + (c % m) * row) % m
    full = np.vstack([pts, t[None, :]])
    values = np.full(full.shape[1], Q.constant, dtype=np.int64)
    for mono, c in zip(monomials(n, Q.degree), Q.coeffs):
        if c == 0:
            continue
        term = np.full(full.shape[1], c, dtype=np.int64)
        for idx in mono:
            term = term * full[idx] % m
        values = (values + term) % m
    return int(np.count_nonzero(values == int(target) % m))


def enumerate_coefficient_space(
    ring: RingSpec, n_vars: int, degree: int
) -> Iterator[Poly]:
    """All m^coef_count coefficient vectors, constant 0, in odometer order.

    The last coefficient advances fastest and the all-zero vector is emitted
    first, matching the census stream exactly.
    """
    m = ring.modulus
    k = coef_count(n_vars, degree)
    vec = [0] * k
    while True:
        yield Poly(ring, n_vars, degree, vec)
        for idx in range(k - 1, -1, -1):
            if vec[idx] < m - 1:
                vec[idx] += 1
                break
            vec[idx] = 0
        else:
            return


# -- textual format -----------------------------------------------------------
#
# `poly mod 8: 1 + 2*x1 + x1*x2` -- the constant first, then nonzero terms in
# coefficient order, variables 1-based, squares written as repeated factors.

_TERM_RE = re.compile(r"^(?:(\d+)\s*)?((?:\*?\s*x\d+\s*)*)$")


def format_poly(P: Poly) -> str:
    parts = []
    if P.constant or not any(P.coeffs):
        parts.append(str(P.constant))
    for mono, c in zip(monomials(P.n_vars, P.degree), P.coeffs):
        if c == 0:
            continue
        factors = "*".join(f"x{i + 1}" for i in mono)
        parts.append(factors if c == 1 else f"{c}*{factors}")
    return f"poly mod {P.ring.modulus}: " + " + ".join(parts)


def parse_poly(
    text: str, n_vars: int | None = None, degree: int | None = None
) -> Poly:
    """Parse the textual polynomial format; inverse of :func:`format_poly`.

    The shape (n_vars, degree) is inferred from the highest variable index
    and largest monomial seen unless given explicitly.
    """
    head, sep, body = text.partition(":")
    if not sep:
        raise ValueError("missing 'poly mod M:' prefix")
    mhead = re.fullmatch(r"\s*poly\s+mod\s+(\d+)\s*", head)
    if not mhead:
        raise ValueError(f"bad polynomial header: {head!r}")
    ring = RingSpec(int(mhead.group(1)))

    constant = 0
    terms: list[tuple[tuple[int, ...], int]] = []
    max_var = 0
    max_deg = 1
    for raw in body.split("+"):
        raw = raw.strip()
        if not raw:
            raise ValueError("empty term")
        match = _TERM_RE.match(raw)
        if not match:
            raise ValueError(f"bad term: {raw!r}")
        coeff_s, vars_s = match.groups()
        idxs = tuple(sorted(int(v) - 1 for v in re.findall(r"x(\d+)", vars_s)))
        coeff = int(coeff_s) if coeff_s else 1
        if not idxs:
            if coeff_s is None:
                raise ValueError(f"bad term: {raw!r}")
            constant += coeff
            continue
        if any(i < 0 for i in idxs):
            raise ValueError("variable indices are 1-based")
        if len(idxs) > 3:
            raise ValueError("degree above 3 is not supported")
        max_var = max(max_var, idxs[-1] + 1)
        max_deg = max(max_deg, len(idxs))
        terms.append((idxs, coeff))

    n = n_vars if n_vars is not None else max(max_var, 1)
    d = degree if degree is not None else max_deg
    if max_var > n:
        raise ValueError(f"term references x{max_var} but n_vars={n}")
    if max_deg > d:
        raise ValueError(f"term of degree {max_deg} exceeds degree bound {d}")
    pos = {mono: i for i, mono in enumerate(monomials(n, d))}
    coeffs = [0] * len(pos)
    for idxs, coeff in terms:
        coeffs[pos[idxs]] = (coeffs[pos[idxs]] + coeff) % ring.modulus
    return Poly(ring, n, d, coeffs, constant)
