"""Closed-form divisibility bounds for solution counts over Z_m.

Four families: the classical prime-power bound p^(r*(ceil(n/d)-1)); its
extension to general composite moduli as a product over prime factors (with
exponent ceil(r_i*n/2)-1 on non-squarefree parts); the refinement that adds
q_i to each local exponent when counts are summed over residue ladders; and
the power-of-two bound 2^(ceil((r(n-1)+min(2v,r))/2)+q-1) for degree <= 2
over Z_{2^r} with one variable confined to a coset ladder.

All values are exact integers; exponent arithmetic uses ceiling division on
non-negative operands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ring_core import RingSpec

PROVENANCES = ("Ax", "MarshallRamage", "Theorem1", "Theorem2")


def ceil_div(a: int, b: int) -> int:
    if a < 0 or b <= 0:
        raise ValueError("ceil_div expects non-negative a and positive b")
    return (a + b - 1) // b


@dataclass(frozen=True)
class DivisibilityBound:
    """A proven divisor of a (summed) solution count, with its provenance."""

    value: int
    provenance: str
    parameters: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.value < 1:
            raise ValueError("bound must be a positive integer")

    def __int__(self) -> int:
        return self.value

    def formula(self) -> str:
        p = self.parameters
        if self.provenance == "Ax":
            return f"{p['p']}^({p['r']}*(ceil({p['n']}/{p['d']})-1)) = {self.value}"
        if self.provenance == "MarshallRamage":
            parts = []
            for pi, ri in p["factorization"]:
                if ri == 1:
                    parts.append(f"{pi}^(ceil({p['n']}/{p['d']})-1)")
                elif p["n"] >= 2:
                    parts.append(f"{pi}^(ceil({ri}*{p['n']}/2)-1)")
                else:
                    parts.append(f"{pi}^({ri}*(ceil({p['n']}/{p['d']})-1))")
            return " * ".join(parts) + f" = {self.value}"
        if self.provenance == "Theorem1":
            parts = [
                (
                    f"{pi}^(ceil({ri}*{p['n']}/2)+{qi}-1)"
                    if ri > 1
                    else f"{pi}^(ceil({p['n']}/{p['d']})+{qi}-1)"
                )
                for (pi, ri), qi in zip(p["factorization"], p["q_list"])
            ]
            return " * ".join(parts) + f" = {self.value}"
        return (
            f"2^(ceil(({p['r']}*({p['n']}-1)+min(2*{p['v']},{p['r']}))/2)"
            f"+{p['q']}-1) = {self.value}"
        )


def ax_bound(p: int, r: int, n: int, d: int) -> DivisibilityBound:
    """Prime-power bound p^(r*(ceil(n/d)-1)) for a degree-d polynomial in n variables."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    value = p ** (r * (ceil_div(n, d) - 1))
    return DivisibilityBound(value, "Ax", {"p": p, "r": r, "n": n, "d": d})


def marshall_ramage_bound(ring: RingSpec | int, n: int, d: int) -> DivisibilityBound:
    """Composite-modulus bound: squarefree primes contribute p^(ceil(n/d)-1),
    higher powers p^(ceil(r*n/2)-1).

    The higher-power exponent is only a theorem for n >= 2; at n = 1 it
    would promise a false divisor (2x^2 + x has exactly one zero over Z_8),
    and indeed the published divisibility grids show 1 all down the n = 1
    column.  A single variable therefore falls back to the prime-power
    exponent r*(ceil(n/d)-1), which is 0 there.
    """
    rs = ring if isinstance(ring, RingSpec) else RingSpec(ring)
    if d < 1 or n < 1:
        raise ValueError("need n >= 1 and d >= 1")
    value = 1
    for p, r in rs.factorization:
        if r == 1:
            value *= p ** (ceil_div(n, d) - 1)
        elif n >= 2:
            value *= p ** (ceil_div(r * n, 2) - 1)
        else:
            value *= p ** (r * (ceil_div(n, d) - 1))
    return DivisibilityBound(
        value,
        "MarshallRamage",
        {"m": rs.modulus, "n": n, "d": d, "factorization": rs.factorization},
    )


def theorem1_bound(
    ring: RingSpec | int, n: int, d: int, q_list: Sequence[int]
) -> DivisibilityBound:
    """Ladder-summed bound: each local exponent gains its q_i."""
    rs = ring if isinstance(ring, RingSpec) else RingSpec(ring)
    if n < 2:
        raise ValueError("need n >= 2")
    if d < 1:
        raise ValueError("degree must be >= 1")
    if len(q_list) != len(rs.factorization):
        raise ValueError(
            f"q_list must have one entry per prime factor "
            f"({len(rs.factorization)} for {rs})"
        )
    value = 1
    for (p, r), q in zip(rs.factorization, q_list):
        if not 0 <= q <= r:
            raise ValueError(f"need 0 <= q_i <= r_i, got q={q} at p={p}^{r}")
        if r == 1:
            value *= p ** (ceil_div(n, d) + q - 1)
        else:
            value *= p ** (ceil_div(r * n, 2) + q - 1)
    return DivisibilityBound(
        value,
        "Theorem1",
        {
            "m": rs.modulus,
            "n": n,
            "d": d,
            "q_list": tuple(q_list),
            "factorization": rs.factorization,
        },
    )


def theorem2_bound(r: int, n: int, q: int, v: int) -> DivisibilityBound:
    """Degree-<=2 bound over Z_{2^r}: 2^(ceil((r(n-1)+min(2v,r))/2)+q-1)."""
    if n < 3:
        raise ValueError("need n >= 3")
    if not (0 <= q <= r and 0 <= v <= r):
        raise ValueError(f"need 0 <= q, v <= r, got q={q}, v={v}, r={r}")
    value = 2 ** (ceil_div(r * (n - 1) + min(2 * v, r), 2) + q - 1)
    return DivisibilityBound(value, "Theorem2", {"r": r, "n": n, "q": q, "v": v})
