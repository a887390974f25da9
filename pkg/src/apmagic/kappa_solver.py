"""Alpha/kappa machinery: the quadratic in kappa and its divisor solutions.

For a pair with length ratio ``kappa > 1``, define
``alpha = kappa*(kappa+1)/(kappa-1)``.  Writing ``alpha = alpha_n/alpha_d``
in lowest terms, kappa solves ``alpha_d*k**2 + (alpha_d-alpha_n)*k + alpha_n = 0``,
so it is rational exactly when ``(alpha_n - 3*alpha_d)**2 - 8*alpha_d**2`` is
a perfect square.  That difference of squares is an odd-AP sum, which turns
rationality into the divisor problem

    N * (N + Q) = 8 * alpha_d**2,   Q even and >= 0,

and each divisor solution produces the two root families

    kappa_plus  = (4*alpha_d + N) / N
    kappa_minus = (2*alpha_d + N) / (2*alpha_d)

with ``alpha_n = 4*alpha_d**2/N + 3*alpha_d + N/2``.

All arithmetic is exact; perfect-square testing uses integer square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .ap_core import Ratio, kappa_within_pair_bound

__all__ = [
    "AlphaFraction",
    "DivisorSolution",
    "RecoveredN",
    "alpha_of",
    "kappa_roots_quadratic",
    "divisor_solutions",
    "alpha_n_from",
    "kappa_plus",
    "kappa_minus",
    "recover_n_values",
    "kappa_within_pair_bound",
]


@dataclass(frozen=True)
class AlphaFraction:
    """alpha as a positive fraction, reduced on construction.

    Construction accepts unreduced input (the divisor machinery can produce
    alpha_n sharing a factor with alpha_d) and normalizes it.
    """

    alpha_n: int
    alpha_d: int

    def __post_init__(self) -> None:
        if self.alpha_n < 1 or self.alpha_d < 1:
            raise ValueError(
                f"alpha components must be positive, got {self.alpha_n}/{self.alpha_d}"
            )
        g = gcd(self.alpha_n, self.alpha_d)
        if g > 1:
            object.__setattr__(self, "alpha_n", self.alpha_n // g)
            object.__setattr__(self, "alpha_d", self.alpha_d // g)

    @classmethod
    def from_ratio(cls, value: Ratio) -> "AlphaFraction":
        return cls(value.numerator, value.denominator)

    @property
    def value(self) -> Ratio:
        return Fraction(self.alpha_n, self.alpha_d)


@dataclass(frozen=True)
class DivisorSolution:
    """One solution of ``N*(N+Q) = 8*alpha_d**2`` with even offset Q."""

    n_val: int
    q_val: int

    def __post_init__(self) -> None:
        if self.n_val < 1:
            raise ValueError(f"N must be positive, got {self.n_val}")
        if self.q_val < 0 or self.q_val % 2:
            raise ValueError(f"Q must be even and nonnegative, got {self.q_val}")

    @property
    def q_prime(self) -> int:
        """Offset just past the solution progression: Q + 2N."""
        return self.q_val + 2 * self.n_val


def alpha_of(kappa: Ratio) -> Ratio:
    """Exact kappa*(kappa+1)/(kappa-1), reduced; requires kappa > 1."""
    kappa = Fraction(kappa)
    if kappa <= 1:
        raise ValueError(f"kappa must be > 1, got {kappa}")
    return kappa * (kappa + 1) / (kappa - 1)


def kappa_roots_quadratic(alpha: AlphaFraction) -> tuple[Ratio, ...]:
    """All rational kappa > 1 with alpha_of(kappa) == alpha, ascending.

    Empty when the discriminant ``(alpha_n - 3*alpha_d)**2 - 8*alpha_d**2``
    is negative or not a perfect square.
    """
    an, ad = alpha.alpha_n, alpha.alpha_d
    disc = (an - 3 * ad) ** 2 - 8 * ad * ad
    if disc < 0:
        return ()
    s = isqrt(disc)
    if s * s != disc:
        return ()
    roots = {Fraction(an - ad + s, 2 * ad), Fraction(an - ad - s, 2 * ad)}
    return tuple(sorted(r for r in roots if r > 1))


def divisor_solutions(alpha_d: int) -> list[DivisorSolution]:
    """Every factorization 8*alpha_d**2 = N*M with N <= M and N, M same parity.

    Same parity makes Q = M - N an even, nonnegative offset; since the product
    is divisible by 8, both factors are then even.  Sorted ascending by N.
    """
    if alpha_d < 1:
        raise ValueError(f"alpha_d must be positive, got {alpha_d}")
    target = 8 * alpha_d * alpha_d
    out = []
    n = 1
    while n * n <= target:
        if target % n == 0:
            m = target // n
            if (m - n) % 2 == 0:
                out.append(DivisorSolution(n, m - n))
        n += 1
    return out


def alpha_n_from(nsol: DivisorSolution, alpha_d: int) -> int:
    """alpha_n for a divisor solution: ``4*alpha_d**2/N + 3*alpha_d + N/2``.

    Integral for every solution produced by :func:`divisor_solutions` (both
    terms reduce to halves of the even factor pair); hand-built solutions with
    odd N or N not dividing 4*alpha_d**2 are rejected.  The result is NOT
    reduced against alpha_d -- AlphaFraction construction does that.
    """
    n = nsol.n_val
    if n % 2:
        raise ValueError(f"non-integral alpha_n: N = {n} is odd")
    if (4 * alpha_d * alpha_d) % n:
        raise ValueError(f"non-integral alpha_n: {n} does not divide {4 * alpha_d * alpha_d}")
    return 4 * alpha_d * alpha_d // n + 3 * alpha_d + n // 2


def kappa_plus(nsol: DivisorSolution, alpha_d: int) -> Ratio:
    """Root family (4*alpha_d + N) / N for this divisor solution."""
    _require_consistent(nsol, alpha_d)
    return Fraction(4 * alpha_d + nsol.n_val, nsol.n_val)


def kappa_minus(nsol: DivisorSolution, alpha_d: int) -> Ratio:
    """Root family (2*alpha_d + N) / (2*alpha_d) for this divisor solution."""
    _require_consistent(nsol, alpha_d)
    return Fraction(2 * alpha_d + nsol.n_val, 2 * alpha_d)


def _require_consistent(nsol: DivisorSolution, alpha_d: int) -> None:
    try:
        alpha_n_from(nsol, alpha_d)
    except ValueError as exc:
        raise ValueError(f"inconsistent root: {exc}") from exc


@dataclass(frozen=True)
class RecoveredN:
    """An N value recovered from kappa, tagged with the root family inverted."""

    value: int
    form: str  # "minus" for N = 2*alpha_d*(kappa-1), "plus" for N = 4*alpha_d/(kappa-1)


def recover_n_values(kappa: Ratio, alpha_d: int) -> tuple[RecoveredN, ...]:
    """Invert both root families; keep whichever N is a positive integer.

    The minus-family inversion is listed first (preferred) when both land on
    integers; duplicates collapse.
    """
    kappa = Fraction(kappa)
    if kappa <= 1:
        raise ValueError(f"kappa must be > 1, got {kappa}")
    shifted = kappa - 1
    candidates = [
        (2 * alpha_d * shifted, "minus"),
        (Fraction(4 * alpha_d) / shifted, "plus"),
    ]
    out: list[RecoveredN] = []
    for value, form in candidates:
        if value.denominator == 1 and value > 0:
            n = int(value)
            if all(r.value != n for r in out):
                out.append(RecoveredN(n, form))
    return tuple(out)
