"""Exact integer and rational helpers: binomials, slice and ball sizes.

Every comparison that would involve a square root is carried out in squared
integer form so that verdicts never depend on floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError

__all__ = [
    "binom",
    "ball_size",
    "slice_size",
    "RatioStep",
    "check_ratio_monotone",
    "SliceBound",
    "check_slice_lower_bound",
    "central_binomial_check",
    "Surd",
]


def binom(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise PreconditionError(f"binom needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        return 0
    return math.comb(n, k)


slice_size = binom


@lru_cache(maxsize=None)
def _ball_row(n: int) -> tuple[int, ...]:
    acc = 0
    out = []
    for k in range(n + 1):
        acc += math.comb(n, k)
        out.append(acc)
    return tuple(out)


def ball_size(n: int, r: int) -> int:
    """|B_n(r)|: number of subsets of [n] with at most r elements."""
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if r < 0:
        return 0
    return _ball_row(n)[min(r, n)]


@dataclass(frozen=True)
class RatioStep:
    r: int
    left: Fraction  # |S_n(r)| / |B_n(r)|
    right: Fraction  # |S_n(r+1)| / |B_n(r+1)|

    @property
    def holds(self) -> bool:
        return self.left >= self.right


@dataclass(frozen=True)
class RatioReport:
    n: int
    steps: tuple[RatioStep, ...]

    @property
    def holds(self) -> bool:
        return all(step.holds for step in self.steps)


def check_ratio_monotone(n: int) -> RatioReport:
    """Compare |S_n(r)|/|B_n(r)| with the next layer for every 0 <= r < n."""
    if n < 1:
        raise PreconditionError(f"n must be at least 1, got {n}")
    steps = []
    for r in range(n):
        left = Fraction(binom(n, r), ball_size(n, r))
        right = Fraction(binom(n, r + 1), ball_size(n, r + 1))
        steps.append(RatioStep(r, left, right))
    return RatioReport(n, tuple(steps))


@dataclass(frozen=True)
class SliceBound:
    n: int
    r: int
    lhs: int  # n * |S_n(r)|^2
    rhs: int  # |B_n(r)|^2

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def check_slice_lower_bound(n: int, r: int) -> SliceBound:
    """|S_n(r)| >= |B_n(r)| / sqrt(n), checked as n*|S|^2 >= |B|^2."""
    if n < 3 or r < 0 or 2 * r > n:
        raise PreconditionError(f"needs n >= 3 and 0 <= r <= n/2, got n={n}, r={r}")
    s = binom(n, r)
    b = ball_size(n, r)
    return SliceBound(n, r, n * s * s, b * b)


def central_binomial_check(m: int) -> bool:
    # C(2m, m) >= 2^(2m) / (2 sqrt m), squared: C(2m,m)^2 * 4m >= 4^(2m)
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    c = binom(2 * m, m)
    return c * c * 4 * m >= 4 ** (2 * m)


@dataclass(frozen=True)
class Surd:
    """The real number coeff * sqrt(radicand), with both parts rational.

    Comparisons against rationals (and other surds) are exact; they reduce to
    sign analysis followed by a squared comparison.
    """

    coeff: Fraction
    radicand: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        object.__setattr__(self, "radicand", Fraction(self.radicand))
        if self.radicand < 0:
            raise PreconditionError("radicand must be nonnegative")

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0 or self.radicand == 0

    def sign(self) -> int:
        if self.is_zero:
            return 0
        return 1 if self.coeff > 0 else -1

    def square(self) -> Fraction:
        """Square of the absolute value."""
        return self.coeff * self.coeff * self.radicand

    def compare(self, other) -> int:
        """Return -1, 0 or 1 as self <, ==, > other (other rational or Surd)."""
        if not isinstance(other, Surd):
            other = Surd(Fraction(other), 1)
        a, b = self.sign(), other.sign()
        if a != b:
            return 1 if a > b else -1
        if a == 0:
            return 0
        sa, sb = self.square(), other.square()
        if sa == sb:
            return 0
        bigger_magnitude = 1 if sa > sb else -1
        return bigger_magnitude if a > 0 else -bigger_magnitude

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def to_decimal(self, digits: int = 30) -> str:
        import mpmath

        with mpmath.workdps(digits + 10):
            value = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            value *= mpmath.sqrt(mpmath.mpf(self.radicand.numerator) / self.radicand.denominator)
            return mpmath.nstr(value, digits)
