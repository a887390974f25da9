"""Exact algebra of odd-integer arithmetic progressions and equal-sum pairs.

The progression with even offset ``O >= 0`` and length ``m`` is
``O+1, O+3, ..., O+2m-1``; its sum is ``m*(m+O)``.  With ``O = 2x`` the terms
are the odd gaps between consecutive squares above ``x**2``, so sums of these
progressions are exactly differences of squares: ``(x+m)**2 - x**2``.

Two consecutive progressions of this kind with equal positive sums (an
"AP pair") encode three squares ``a**2 < b**2 < c**2`` in arithmetic
progression.  The ratio ``kappa = n1/n2`` of the two lengths determines the
common sum and both start offsets exactly:

    sum     = n2**2 * kappa * (kappa+1) / (kappa-1)
    offset1 = n2 * ((kappa+1)/(kappa-1) - kappa)
    offset2 = n2 * (kappa*(kappa+1)/(kappa-1) - 1)

Everything here is pure and exact: Python integers (which promote past the
machine word transparently) and ``fractions.Fraction``.  No floats, ever.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

# Exact rational with reduced numerator, positive denominator and structural
# equality -- precisely the stdlib Fraction contract.
Ratio = Fraction

__all__ = [
    "Ratio",
    "OddAP",
    "APPair",
    "LayoutError",
    "is_perfect_square",
    "sum_of_ap",
    "offset_for",
    "offset_of_square",
    "ap_between_squares",
    "concat",
    "pair_from_roots",
    "kappa_of",
    "pair_invariants_from_kappa",
    "kappa_within_pair_bound",
    "pair_strictly_before",
    "pairs_overlap",
    "pair_chain_le",
    "classify_layout",
]


class LayoutError(ValueError):
    """Raised when three pairs fit none of the recognized layout cases."""


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class OddAP:
    """Arithmetic progression of odd integers ``offset+1, offset+3, ...``.

    ``offset`` must be even and nonnegative; ``length`` may be zero (an empty
    progression with sum 0), which keeps concatenation total on boundaries.
    """

    offset: int
    length: int

    def __post_init__(self) -> None:
        if self.offset < 0 or self.offset % 2:
            raise ValueError(f"offset must be even and nonnegative, got {self.offset}")
        if self.length < 0:
            raise ValueError(f"length must be nonnegative, got {self.length}")

    def terms(self) -> range:
        return range(self.offset + 1, self.offset + 2 * self.length, 2)

    @property
    def end_offset(self) -> int:
        """Offset just past the last term; a consecutive successor starts here."""
        return self.offset + 2 * self.length


def sum_of_ap(ap: OddAP) -> int:
    """Sum of the progression: ``length * (length + offset)``, exactly."""
    return ap.length * (ap.length + ap.offset)


def offset_for(total: int, length: int) -> int | None:
    """Invert the sum formula: the even offset with ``sum == total``, or None.

    None is the normal negative result when no valid progression of the given
    length sums to ``total`` (non-divisible, odd or negative offset).
    """
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    if total % length:
        return None
    off = total // length - length
    if off < 0 or off % 2:
        return None
    return off


def offset_of_square(x: int) -> int:
    """Offset of the gap progression sitting just above ``x**2``: always 2x."""
    if x < 0:
        raise ValueError(f"root must be nonnegative, got {x}")
    return 2 * x


def ap_between_squares(a: int, c: int) -> OddAP:
    """The odd progression whose terms fill the gap from ``a**2`` to ``c**2``."""
    if a < 0 or c <= a:
        raise ValueError(f"roots must satisfy 0 <= a < c, got a={a}, c={c}")
    return OddAP(2 * a, c - a)


def concat(pa: OddAP, pb: OddAP) -> OddAP:
    """Join two consecutive progressions; the sum is additive under this."""
    if pb.offset != pa.end_offset:
        raise ValueError(
            f"not consecutive: second offset {pb.offset} != {pa.end_offset}"
        )
    return OddAP(pa.offset, pa.length + pb.length)


@dataclass(frozen=True)
class APPair:
    """Two consecutive odd progressions with equal positive sums.

    Encodes three squares in arithmetic progression: with start offsets
    ``offset1 = 2a`` and ``offset2 = 2b`` and final contained offset
    ``offset3 = 2(c-1)``, the squares are ``a**2 < b**2 < c**2`` and the
    common difference is the pair sum.
    """

    first: OddAP
    second: OddAP

    def __post_init__(self) -> None:
        if self.second.offset != self.first.end_offset:
            raise ValueError("pair progressions must be consecutive")
        s1 = sum_of_ap(self.first)
        s2 = sum_of_ap(self.second)
        if s1 != s2:
            raise ValueError(f"pair progressions must have equal sums, got {s1} and {s2}")
        if s1 <= 0:
            raise ValueError("pair sum must be positive")
        if not 0 < self.second.length < self.first.length:
            raise ValueError(
                "pair lengths must satisfy 0 < second < first, got "
                f"{self.first.length} and {self.second.length}"
            )

    @property
    def sum(self) -> int:
        return sum_of_ap(self.first)

    @property
    def n1(self) -> int:
        return self.first.length

    @property
    def n2(self) -> int:
        return self.second.length

    @property
    def offset1(self) -> int:
        return self.first.offset

    @property
    def offset2(self) -> int:
        return self.second.offset

    @property
    def offset3(self) -> int:
        """Offset of the second progression's last term (its final square gap)."""
        return self.second.offset + 2 * (self.second.length - 1)

    @property
    def roots(self) -> tuple[int, int, int]:
        return (self.offset1 // 2, self.offset2 // 2, self.offset3 // 2 + 1)


def pair_from_roots(a: int, b: int, c: int) -> APPair:
    """Build the pair for a square triple ``a**2, b**2, c**2`` in progression."""
    if not 0 <= a < b < c:
        raise ValueError(f"roots must satisfy 0 <= a < b < c, got ({a}, {b}, {c})")
    if b * b - a * a != c * c - b * b:
        raise ValueError(
            f"({a}, {b}, {c}) does not give three squares in arithmetic progression: "
            f"{b * b - a * a} != {c * c - b * b}"
        )
    return APPair(ap_between_squares(a, b), ap_between_squares(b, c))


def kappa_of(pair: APPair) -> Ratio:
    """Length ratio n1/n2 of the pair, reduced; always > 1."""
    return Fraction(pair.n1, pair.n2)


def pair_invariants_from_kappa(n2: int, kappa: Ratio) -> tuple[int, int, int]:
    """Recover (sum, offset1, offset2) of a pair from its second length and kappa.

    All three closed forms must evaluate to integers; a negative first offset
    (kappa past the admissible bound) is rejected separately so callers can
    tell the failure modes apart.
    """
    if n2 < 1:
        raise ValueError(f"second length must be positive, got {n2}")
    kappa = Fraction(kappa)
    if kappa <= 1:
        raise ValueError(f"kappa must be > 1, got {kappa}")
    ratio = (kappa + 1) / (kappa - 1)
    total = n2 * n2 * kappa * ratio
    off1 = n2 * (ratio - kappa)
    off2 = n2 * (kappa * ratio - 1)
    for name, value in (("sum", total), ("offset1", off1), ("offset2", off2)):
        if value.denominator != 1:
            raise ValueError(f"non-integral {name}: {value} (n2={n2}, kappa={kappa})")
    if off1 < 0:
        raise ValueError(f"negative offset: offset1 = {off1} (kappa={kappa} too large)")
    return int(total), int(off1), int(off2)


def kappa_within_pair_bound(kappa: Ratio) -> bool:
    """Exact test for kappa <= 1 + sqrt(2), i.e. kappa**2 - 2*kappa - 1 <= 0.

    Equivalent to the recovered first offset being nonnegative; every pair
    built from actual square triples satisfies it.
    """
    return kappa * kappa - 2 * kappa - 1 <= 0


# Relative placement of pairs on the offset line.  ``p`` sits strictly before
# ``q`` when its final offset precedes q's start; they overlap when neither
# does; the weak chain order only constrains the start against the other end.

def pair_strictly_before(p: APPair, q: APPair) -> bool:
    return p.offset3 < q.offset1


def pairs_overlap(p: APPair, q: APPair) -> bool:
    return p.offset1 <= q.offset3 and q.offset1 <= p.offset3


def pair_chain_le(p: APPair, q: APPair) -> bool:
    return p.offset1 <= q.offset3


def classify_layout(p1: APPair, p2: APPair, p3: APPair) -> str:
    """Trichotomy of three-pair layouts, checked in order.

    (a) strictly ascending and disjoint; (b) mutually overlapping with each
    start offset at or past the previous pair's second offset; (c) reversed
    weak chain with each start offset strictly before the previous pair's
    second offset.  Raises LayoutError when nothing matches.
    """
    if pair_strictly_before(p1, p2) and pair_strictly_before(p2, p3):
        return "a"
    if (
        pairs_overlap(p1, p2)
        and pairs_overlap(p2, p3)
        and p2.offset1 >= p1.offset2
        and p3.offset1 >= p2.offset2
    ):
        return "b"
    if (
        pair_chain_le(p3, p2)
        and pair_chain_le(p2, p1)
        and p2.offset1 < p1.offset2
        and p3.offset1 < p2.offset2
    ):
        return "c"
    raise LayoutError("unclassifiable configuration")
