"""Enumeration of square triples, equal-sum groups and the full hunt.

``find_square_ap_triples`` answers the fixed-sum query by factoring
``d = (b-a)*(b+a)`` into same-parity divisor pairs and testing the upper
square; the exhaustive scans live in :mod:`apmagic.kernels` and serve as the
independent brute-force route.

A 3x3 magic square of squares requires three distinct equal-sum triples whose
nine squares interleave into the chain with one single gap value d2 between
consecutive runs.  ``interleave_check`` tries all six orderings of a triple
multiset; an ordering whose two chain gaps differ can satisfy exactly one of
the two d2 relations (a *near miss* -- the assembled grid is then uniform on
every line except the main diagonal), while equal gaps yield a grid that is
re-verified from scratch before acceptance.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import isqrt
from typing import Iterator

from . import kernels
from .ap_core import pair_from_roots
from .square_map import generate_from_chain, verify

__all__ = [
    "Triple",
    "SearchRecord",
    "CandidateTriple",
    "HuntResult",
    "triple_sum",
    "find_square_ap_triples",
    "scan_common_differences",
    "interleave_check",
    "hunt_candidates",
    "hunt",
]

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class SearchRecord:
    """All root triples sharing one common difference d1, sorted by a."""

    d1: int
    pairs: tuple[Triple, ...]

    def to_dict(self) -> dict:
        return {"d1": self.d1, "count": len(self.pairs), "pairs": [list(t) for t in self.pairs]}


@dataclass(frozen=True)
class CandidateTriple:
    """Outcome of interleaving one multiset of three equal-sum triples.

    ``d2`` and ``chain_order`` are set only for an accepted (fully magic,
    all-square, distinct) assembly.  ``near_misses`` counts the orderings
    whose two chain gaps differ.
    """

    t1: Triple
    t2: Triple
    t3: Triple
    d1: int
    d2: int | None
    chain_order: tuple[int, int, int] | None
    status: str
    near_misses: int

    def to_dict(self) -> dict:
        return {
            "t1": list(self.t1),
            "t2": list(self.t2),
            "t3": list(self.t3),
            "d1": self.d1,
            "d2": self.d2,
            "chain_order": list(self.chain_order) if self.chain_order else None,
            "status": self.status,
            "near_misses": self.near_misses,
        }


def triple_sum(t: Triple) -> int:
    """Common difference of the square triple; validates the triple."""
    a, b, c = t
    pair_from_roots(a, b, c)  # raises on invalid roots
    return b * b - a * a


def find_square_ap_triples(d: int) -> list[Triple]:
    """All 0 <= a < b < c with b**2 - a**2 = c**2 - b**2 = d, sorted by a.

    Divisor route: each factorization d = e*f with e <= f of equal parity
    gives (a, b) = ((f-e)/2, (f+e)/2); the triple completes when b**2 + d is
    a perfect square.  Exact for arbitrarily large d (cost O(sqrt(d))).
    """
    if d < 1:
        raise ValueError(f"sum must be positive, got {d}")
    out = []
    e = 1
    while e * e <= d:
        if d % e == 0:
            f = d // e
            if (f - e) % 2 == 0:
                a = (f - e) // 2
                b = (f + e) // 2
                cc = b * b + d
                c = isqrt(cc)
                if c * c == cc:
                    out.append((a, b, c))
        e += 1
    out.sort()
    return out


def scan_common_differences(
    max_root: int, min_reps: int = 1, jobs: int | None = None
) -> Iterator[SearchRecord]:
    """Stream every d with at least min_reps triples of root c <= max_root.

    Records come out ordered by d with triples sorted by a; the output is
    byte-for-byte independent of the worker count.
    """
    if max_root < 1:
        raise ValueError(f"max_root must be positive, got {max_root}")
    if min_reps < 1:
        raise ValueError(f"min_reps must be positive, got {min_reps}")
    jobs = kernels.default_jobs() if jobs is None else jobs
    arr = kernels.scan_triples(max_root, jobs=jobs)
    rows = arr.tolist()
    i = 0
    while i < len(rows):
        j = i
        d = rows[i][0]
        while j < len(rows) and rows[j][0] == d:
            j += 1
        if j - i >= min_reps:
            yield SearchRecord(d, tuple((r[1], r[2], r[3]) for r in rows[i:j]))
        i = j


def interleave_check(t1: Triple, t2: Triple, t3: Triple) -> CandidateTriple:
    """Try all six chain orderings of three equal-sum triples.

    For an ordering (P, Q, R) the chain gaps are Q.a**2 - P.c**2 and
    R.a**2 - Q.c**2; both must equal one d2.  On a gap match the nine squares
    are assembled into the chain grid and re-verified: acceptance requires
    classification magic (hence distinct) with all-square entries.
    """
    triples = (tuple(t1), tuple(t2), tuple(t3))
    sums = [triple_sum(t) for t in triples]
    if len(set(sums)) != 1:
        raise ValueError(f"sums differ: {sums}")
    d1 = sums[0]
    near_misses = 0
    accepted: tuple[int, Triple, tuple[int, int, int]] | None = None
    rejected = False
    for perm in permutations(range(3)):
        p, q, r = (triples[k] for k in perm)
        gap_x = q[0] * q[0] - p[2] * p[2]
        gap_y = r[0] * r[0] - q[2] * q[2]
        if gap_x != gap_y:
            near_misses += 1
            continue
        grid = generate_from_chain(p[0] * p[0], d1, gap_x)
        report = verify(grid)
        if report.classification == "magic" and report.all_square:
            if accepted is None:
                accepted = (gap_x, p, perm)
        else:
            rejected = True
    if accepted is not None:
        d2, _, perm = accepted
        return CandidateTriple(*triples, d1, d2, perm, "accepted", near_misses)
    status = "rejected: not distinct" if rejected else "no valid D2"
    return CandidateTriple(*triples, d1, None, None, status, near_misses)


def hunt_candidates(max_root: int, jobs: int | None = None) -> Iterator[CandidateTriple]:
    """Interleave-check every 3-subset of every >=3-triple equal-sum group."""
    for record in scan_common_differences(max_root, min_reps=3, jobs=jobs):
        for subset in combinations(record.pairs, 3):
            yield interleave_check(*subset)


@dataclass
class HuntResult:
    max_root: int
    triples: int
    groups: int
    subsets: int
    near_misses: int
    accepted: list[CandidateTriple]

    def to_dict(self) -> dict:
        return {
            "max_root": self.max_root,
            "triples": self.triples,
            "groups": self.groups,
            "subsets": self.subsets,
            "near_misses": self.near_misses,
            "accepted": [c.to_dict() for c in self.accepted],
        }


def hunt(max_root: int, jobs: int | None = None) -> HuntResult:
    """Full magic-square-of-squares hunt up to root c <= max_root.

    Every accepted candidate has survived independent re-verification; the
    expected accepted list is empty, so near-miss statistics are the
    observable output.
    """
    total_triples = 0
    groups = 0
    subsets = 0
    near = 0
    accepted: list[CandidateTriple] = []
    for record in scan_common_differences(max_root, min_reps=1, jobs=jobs):
        total_triples += len(record.pairs)
        if len(record.pairs) < 3:
            continue
        groups += 1
        for subset in combinations(record.pairs, 3):
            subsets += 1
            cand = interleave_check(*subset)
            near += cand.near_misses
            if cand.status == "accepted":
                accepted.append(cand)
    return HuntResult(max_root, total_triples, groups, subsets, near, accepted)
