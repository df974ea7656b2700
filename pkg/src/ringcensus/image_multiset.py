"""Closed-form images of univariate quadratics over Z_{2^r} as slice multisets.

A slice is a coset of an ideal of Z_{2^r}: an arithmetic progression with a
power-of-two period, carried here together with a multiplicity.  The image
of P(x) = a*x^2 + b*x + c, as a multiset, decomposes into finitely many
slices whose shape depends only on how the orders of a and b compare:

* order(a) > order(b): one slice of period 2^mu and multiplicity 2^mu where
  mu = min of the two orders (P is injective-after-projection there);
* equal orders: one slice of period and multiplicity 2^(mu+1) (or the single
  value c taken 2^r times in the degenerate mu = r case);
* order(a) < order(b): a ladder of quadratic-residue slices, one per level
  f, plus a tail singleton; the tail value is t = c - b^2/(2^(mu+2)*q) with
  q the odd part of a, which is well defined because 2^(mu+2) divides b^2
  exactly and q is invertible.

The same decomposition is available with the domain restricted to a coset
ladder {l + 2^(r-v)*j}; substituting the ladder parametrization yields a
quadratic with primed coefficients and divides all occurrence counts by
2^(r-v).

The module also carries the closed counting forms used alongside the
slices (product-pair counts, square fiber sizes, slice cardinalities) and
the two multiplicative-intersection divisibility checks.  Intersections are
counted by brute force over the restricted domains; the closed forms are
verified against materialized multisets wherever both are available.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

EXPAND_LIMIT = 12  # multiset comparisons expand fully up to this ring exponent


def _order2(x: int, r: int) -> int:
    """Order of x in Z_{2^r} with order(0) = r."""
    x %= 1 << r
    if x == 0:
        return r
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class Slice:
    """multiplicity * {offset + period*i : i in [0, 2^r/period)} inside Z_{2^r}."""

    offset: int
    period: int
    multiplicity: int

    def __post_init__(self):
        if self.period < 1 or self.period & (self.period - 1):
            raise ValueError("period must be a power of two")
        if not 0 <= self.offset < self.period:
            raise ValueError("offset must be reduced modulo the period")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")


@dataclass
class SliceMultiset:
    r: int
    slices: list[Slice] = field(default_factory=list)

    def add(self, offset: int, period: int, multiplicity: int) -> None:
        if period > (1 << self.r):
            raise ValueError("period exceeds the ring size")
        if multiplicity > 0:
            self.slices.append(Slice(offset % period, period, multiplicity))

    def total_count(self) -> int:
        return sum(s.multiplicity * ((1 << self.r) // s.period) for s in self.slices)

    def as_counter(self) -> Counter[int]:
        """Fully expanded value -> occurrence-count map."""
        if self.r > EXPAND_LIMIT:
            raise ValueError(f"refusing to expand a multiset with r={self.r}")
        size = 1 << self.r
        out: Counter[int] = Counter()
        for s in self.slices:
            for i in range(size // s.period):
                out[s.offset + s.period * i] += s.multiplicity
        return out

    def normalized(self) -> list[Slice]:
        merged: dict[tuple[int, int], int] = {}
        for s in self.slices:
            key = (s.period, s.offset)
            merged[key] = merged.get(key, 0) + s.multiplicity
        return [
            Slice(off, per, mult)
            for (per, off), mult in sorted(merged.items())
            if mult > 0
        ]

    def same_multiset(self, other: "SliceMultiset") -> bool:
        """Semantic equality: expanded comparison up to r = 12, normal form above."""
        if self.r != other.r:
            return False
        if self.r <= EXPAND_LIMIT:
            return self.as_counter() == other.as_counter()
        return self.normalized() == other.normalized()


def image_quadratic(a: int, b: int, c: int, r: int) -> SliceMultiset:
    """Image of a*x^2 + b*x + c over all of Z_{2^r}, as a slice multiset."""
    if r < 1:
        raise ValueError("need r >= 1")
    return _image_from_params(a, b, c, r, k=0)


def image_quadratic_restricted(
    a: int, b: int, c: int, r: int, l: int, v: int
) -> SliceMultiset:
    """Image of a*x^2 + b*x + c with x confined to {l + 2^(r-v)*j : j < 2^v}.

    Writing x = l + 2^k * j with k = r - v turns P into a quadratic in j with
    coefficients a' = a*2^(2k), b' = (2al + b)*2^k, c' = P(l); since j covers
    only 2^v points, every occurrence count from the unrestricted formula is
    divided by 2^k.
    """
    if not 0 <= v <= r:
        raise ValueError("need 0 <= v <= r")
    size = 1 << r
    k = r - v
    a1 = (a << (2 * k)) % size
    b1 = (((2 * a * l + b) % size) << k) % size
    c1 = (a * l * l + b * l + c) % size
    return _image_from_params(a1, b1, c1, r, k=k)


def _image_from_params(a: int, b: int, c: int, r: int, k: int) -> SliceMultiset:
    size = 1 << r
    a %= size
    b %= size
    c %= size
    w = _order2(a, r)
    h = _order2(b, r)
    mu = min(w, h)

    out = SliceMultiset(r)
    if w > h:
        period = 1 << mu
        out.add(c % period, period, (1 << mu) >> k)
        return out
    if w == h:
        if mu == r:
            out.add(c % size, size, size >> k)
        else:
            period = 1 << (mu + 1)
            out.add(c % period, period, (1 << (mu + 1)) >> k)
        return out

    # w < h: quadratic-residue ladder.  q is the odd part of a; 2^(mu+2)
    # divides b^2 exactly (2h >= 2mu + 2), so t is a plain ring element.
    q = a >> w
    qinv = pow(q, -1, size)
    bsq_shifted = (b * b) >> (mu + 2)
    t = (c - bsq_shifted * qinv) % size
    for f in range((r - mu + 1) // 2):
        mult_exp = min(f + 2, r - f - 1) + min(mu, max(0, r - 2 * f - 3))
        count = max(1, 1 << max(0, r - 2 * f - 3 - mu))
        period = size // count
        offset = (q * (1 << (2 * f + mu)) + t) % period
        out.add(offset, period, (1 << mult_exp) >> k)
    out.add(t % size, size, (1 << ((r + mu) // 2)) >> k)
    return out


def count_product_pairs(m_target: int, r: int) -> int:
    """#{(x, y) in Z_{2^r}^2 : x*y = m_target}.

    (order(m)+1) * 2^(r-1) for nonzero targets, (r+2) * 2^(r-1) for zero.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    m_target %= 1 << r
    if m_target == 0:
        return (r + 2) << (r - 1)
    return (_order2(m_target, r) + 1) << (r - 1)


def square_fiber(a_exp: int, k_param: int, r: int) -> tuple[int, int | None]:
    """#{t in Z_{2^r} : t^2 = 2^(2a) + 2^(2a+3)k}, plus the common order of t.

    For a < r/2 the fiber has 2^min(a+2, r-a-1) elements, all of order a;
    otherwise the target collapses to 0 and the fiber is the 2^floor(r/2)
    elements of order >= ceil(r/2) (returned with order None).
    """
    if not 0 <= a_exp <= r:
        raise ValueError("need 0 <= a <= r")
    if 2 * a_exp < r:
        return 1 << min(a_exp + 2, r - a_exp - 1), a_exp
    return 1 << (r // 2), None


def slice_count(f: int, m_prime: int, k: int, r: int) -> int:
    """Element count of the single level-f ladder slice: 2^(r-f-k-1).

    Both the closed form and the materialized slice are computed; they must
    agree, otherwise the parameters were out of range.
    """
    if not (0 <= k <= m_prime < r):
        raise ValueError("need r > m' >= k >= 0")
    if not 0 <= f <= (r - m_prime + 1) // 2 - 1:
        raise ValueError("need 0 <= f <= ceil((r-m')/2) - 1")
    closed = 1 << (r - f - k - 1)
    mult_exp = min(f + 2, r - f - 1) + min(m_prime, max(0, r - 2 * f - 3)) - k
    distinct = max(1, 1 << max(0, r - 2 * f - 3 - m_prime))
    ms = SliceMultiset(r)
    ms.add((1 << (2 * f + m_prime)) % ((1 << r) // distinct),
           (1 << r) // distinct, 1 << mult_exp)
    if ms.total_count() != closed:
        raise AssertionError("materialized slice count disagrees with closed form")
    return closed


def cumulative_slice_count(f_s: int, m_prime: int, k: int, r: int) -> int:
    """Element count of the ladder tail from level f_s up, including {t'}: 2^(r-f_s-k)."""
    if not (0 <= k <= m_prime <= r):
        raise ValueError("need 0 <= k <= m' <= r")
    top = (r - m_prime + 1) // 2
    if not 0 <= f_s <= top:
        raise ValueError("need 0 <= f_s <= ceil((r-m')/2)")
    closed = 1 << (r - f_s - k)
    materialized = 1 << ((r + m_prime) // 2 - k)
    for f in range(f_s, top):
        materialized += slice_count(f, m_prime, k, r)
    if materialized != closed:
        raise AssertionError("materialized tail count disagrees with closed form")
    return closed


# -- multiplicative intersections ------------------------------------------------


def multiplicative_intersection(first: Counter[int], second: Counter[int]) -> int:
    """Size of the multiset overlap: sum of count products over equal values."""
    if len(second) < len(first):
        first, second = second, first
    return sum(c * second[v] for v, c in first.items() if v in second)


def _domain_image(a: int, b: int, c: int, r: int, l: int, v: int) -> Counter[int]:
    """Brute-force image multiset of a quadratic on the ladder {l + 2^(r-v)j}."""
    size = 1 << r
    step = 1 << (r - v)
    out: Counter[int] = Counter()
    for j in range(1 << v):
        x = (l + step * j) % size
        out[(a * x * x + b * x + c) % size] += 1
    return out


@dataclass(frozen=True)
class IntersectionCheck:
    """Result of one divisibility check on a multiplicative intersection."""

    count: int
    divisor: int

    @property
    def ok(self) -> bool:
        return self.count % self.divisor == 0


def intersection_size(
    p_coeffs: tuple[int, int, int],
    l_x: int,
    v: int,
    q_coeffs: tuple[int, int, int],
    l_y: int,
    q: int,
    d: int,
    r: int,
) -> IntersectionCheck:
    """Count (x, y, h) with P(x) = Q(y) + 2^(r-d)*h on ladder domains.

    x runs over {l_x + 2^(r-v)j}, y over {l_y + 2^(r-q)j}, h over [0, 2^d).
    The count is brute-forced; the asserted divisor is 2^(min(v,q)+d).
    """
    if not (0 <= d <= min(v, q) <= max(v, q) <= r):
        raise ValueError("need d <= min(v, q) <= r")
    size = 1 << r
    img_p = _domain_image(*p_coeffs, r, l_x, v)
    ay, by, cy = q_coeffs
    img_q: Counter[int] = Counter()
    base = _domain_image(ay, by, cy, r, l_y, q)
    step = (1 << (r - d)) % size if d else 0
    for h in range(1 << d):
        shift = step * h % size
        for val, cnt in base.items():
            img_q[(val + shift) % size] += cnt
    count = multiplicative_intersection(img_p, img_q)
    return IntersectionCheck(count, 1 << (min(v, q) + d))


def materialize_S(e: int, v: int, r: int) -> Counter[int]:
    """The ladder-weighted multiset S, first displayed form.

    Union over i < 2^e of: level slices weighted by their level f_s (odd
    ladder points 2^(r-e)i + 2^(r-v+f_s)(2s+1)), plus the base points
    2^(r-e)i with weight v+1.
    """
    if not 0 <= e <= v <= r:
        raise ValueError("need 0 <= e <= v <= r")
    size = 1 << r
    out: Counter[int] = Counter()
    for i in range(1 << e):
        base = (i << (r - e)) % size
        for f_s in range(v):
            if f_s == 0:
                continue
            step = 1 << (r - v + f_s)
            for s in range(1 << (v - f_s - 1)):
                out[(base + step * (2 * s + 1)) % size] += f_s
        out[base] += v + 1
    return out


def materialize_S_regrouped(e: int, v: int, r: int) -> Counter[int]:
    """S after collapsing the coarse levels onto the base subgroup.

    Levels f_s < v-e keep their own slices with weight f_s * 2^e; everything
    at level v-e and above folds into the base points with total weight
    2^e * (v - e + 1).
    """
    if not 0 <= e <= v <= r:
        raise ValueError("need 0 <= e <= v <= r")
    size = 1 << r
    out: Counter[int] = Counter()
    for f_s in range(v - e):
        if f_s == 0:
            continue
        step = 1 << (r - v + f_s)
        for s in range(1 << (v - f_s - 1)):
            out[step * (2 * s + 1) % size] += f_s << e
    for i in range(1 << e):
        out[(i << (r - e)) % size] += (v - e + 1) << e
    return out


def intersection_with_S(
    p_coeffs: tuple[int, int, int],
    l_x: int,
    q_dom: int,
    e: int,
    v: int,
    r: int,
) -> IntersectionCheck:
    """Overlap of S with the image of P on {l_x + 2^(r-q_dom)j}.

    The asserted divisor is 2^(e + min(q_dom, v, ceil(r/2))).
    """
    if not (0 <= e <= min(q_dom, v) <= max(q_dom, v) <= r):
        raise ValueError("need e <= min(q_dom, v) <= r")
    img = _domain_image(*p_coeffs, r, l_x, q_dom)
    s_multiset = materialize_S(e, v, r)
    count = multiplicative_intersection(img, s_multiset)
    return IntersectionCheck(count, 1 << (e + min(q_dom, v, (r + 1) // 2)))
