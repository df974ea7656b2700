"""Exact arithmetic in Z_m.

A ``RingSpec`` is a modulus m >= 2 together with its prime factorization,
computed once by trial division and cached for the lifetime of the object.
``RingElem`` wraps a reduced residue and supports the usual ring operations.

On top of that this module provides the two local-ring primitives the rest
of the package leans on: the order of an element of Z_{p^r} (the largest
e <= r with p^e dividing it, with order(0) = r by convention) and Hensel
lifting of a simple root from Z_{p^r} to Z_{p^{r'}} for r < r' <= 2r.
"""

from __future__ import annotations

import math

# Everything is exact integer arithmetic; the cap keeps products of two
# residues inside 64-bit machine words for the vectorized sweeps.
MAX_MODULUS = 2**31


def _factor(m: int) -> tuple[tuple[int, int], ...]:
    factors = []
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return tuple(factors)


class RingSpec:
    """The ring Z_m with its factorization m = p_1^r_1 * ... * p_k^r_k cached."""

    __slots__ = ("modulus", "factorization")

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or isinstance(modulus, bool):
            raise ValueError("modulus must be an integer")
        if modulus < 2:
            raise ValueError("modulus must be >= 2")
        if modulus > MAX_MODULUS:
            raise ValueError(f"modulus must be <= 2^31, got {modulus}")
        self.modulus = modulus
        self.factorization = _factor(modulus)

    def element(self, value: int | "RingElem") -> "RingElem":
        return RingElem(int(value), self)

    def is_local(self) -> bool:
        """True when the modulus is a prime power p^r."""
        return len(self.factorization) == 1

    def local_params(self) -> tuple[int, int]:
        """Return (p, r) for a prime-power modulus p^r."""
        if not self.is_local():
            raise ValueError("order requires local ring")
        return self.factorization[0]

    def units(self):
        """All residues coprime to the modulus, ascending."""
        m = self.modulus
        return [x for x in range(m) if math.gcd(x, m) == 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, RingSpec) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("RingSpec", self.modulus))

    def __repr__(self) -> str:
        return f"RingSpec({self.modulus})"

    def __str__(self) -> str:
        return f"Z_{self.modulus}"


class RingElem:
    """A residue of Z_m, always stored reduced into [0, m)."""

    __slots__ = ("value", "ring")

    def __init__(self, value: int, ring: RingSpec):
        self.value = value % ring.modulus
        self.ring = ring

    def _coerce(self, other) -> int:
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise ValueError(f"mixed rings: {self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElem(self.value + v, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElem(self.value - v, self.ring)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElem(v - self.value, self.ring)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return RingElem(self.value * v, self.ring)

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(-self.value, self.ring)

    def __pow__(self, exponent: int):
        return RingElem(pow(self.value, exponent, self.ring.modulus), self.ring)

    def __eq__(self, other) -> bool:
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ring.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.ring.modulus))

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __repr__(self) -> str:
        return f"RingElem({self.value}, {self.ring!r})"


def _as_value_ring(x: int | RingElem, ring: RingSpec | None) -> tuple[int, RingSpec]:
    if isinstance(x, RingElem):
        return x.value, x.ring
    if ring is None:
        raise ValueError("a RingSpec is required for plain-int arguments")
    return int(x) % ring.modulus, ring


def order(x: int | RingElem, ring: RingSpec | None = None) -> int:
    """Order of x in a local ring Z_{p^r}: max e <= r with p^e | x.

    order(0) is r by convention; several closed forms downstream (e.g. the
    product-pair count) rely on that value rather than treating 0 specially.
    """
    v, rs = _as_value_ring(x, ring)
    p, r = rs.local_params()
    if v == 0:
        return r
    e = 0
    while v % p == 0:
        v //= p
        e += 1
    return e


def unit_inverse(x: int | RingElem, ring: RingSpec | None = None) -> RingElem:
    """Multiplicative inverse of a unit of Z_m."""
    v, rs = _as_value_ring(x, ring)
    if math.gcd(v, rs.modulus) != 1:
        raise ValueError("not a unit")
    return RingElem(pow(v, -1, rs.modulus), rs)


def _univariate_coeffs(f) -> tuple[list[int], RingSpec]:
    if hasattr(f, "univariate_coeffs"):
        return list(f.univariate_coeffs()), f.ring
    raise TypeError("hensel_lift expects a one-variable polynomial")


def hensel_lift(f, u: int | RingElem, r: int, r_prime: int) -> RingElem:
    """Lift a simple root of f from Z_{p^r} to the unique root of Z_{p^{r'}}.

    f is a one-variable polynomial over Z_{p^{r'}} (any object exposing
    ``ring`` and ``univariate_coeffs()``, such as a one-variable
    :class:`ringcensus.poly.Poly`).  Requires r < r' <= 2r, f(u) = 0 mod p^r
    and f'(u) a unit mod p; returns the v mod p^{r'} with f(v) = 0 mod p^{r'}
    and v = u mod p^r. One Newton step suffices because r' <= 2r.
    """
    coeffs, rs = _univariate_coeffs(f)
    p, rp = rs.local_params()
    if rp != r_prime:
        raise ValueError(f"f must be given over Z_{{p^{r_prime}}}, got {rs}")
    if not (0 < r < r_prime <= 2 * r):
        raise ValueError(f"need 0 < r < r' <= 2r, got r={r}, r'={r_prime}")

    mod_hi = p**r_prime
    uv = int(u) % p**r
    fu = 0
    for c in reversed(coeffs):
        fu = (fu * uv + c) % mod_hi
    if fu % p**r != 0:
        raise ValueError("not a root")
    dfu = 0
    for i in range(len(coeffs) - 1, 0, -1):
        dfu = (dfu * uv + i * coeffs[i]) % mod_hi
    if dfu % p == 0:
        raise ValueError("non-simple root")
    v = (uv - fu * pow(dfu, -1, mod_hi)) % mod_hi
    return RingElem(v, rs)
