"""Polynomial identities behind the two auxiliary inequalities of the
local-expansion proof.

Each check expands a rational expression in r and s, clears denominators,
writes the result in powers of d = s - r and compares it term by term with a
reference list of coefficient polynomials in r. Positivity for r >= 2,
s >= r is certified by substituting r = u + 2 and checking that every
coefficient of the resulting (u, d) polynomial is non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .polynomial import IntPolynomial

__all__ = [
    "IdentityReport",
    "verify_ineq17",
    "verify_ineq18",
    "expression17",
    "expression18",
    "REFERENCE17",
    "REFERENCE18",
]

r = IntPolynomial.var("r")
s = IntPolynomial.var("s")
d = IntPolynomial.var("d")
u = IntPolynomial.var("u")


class _Ratio:
    """A quotient of two integer polynomials, kept unreduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = IntPolynomial._coerce(num)
        self.den = IntPolynomial._coerce(den)

    @staticmethod
    def of(x) -> "_Ratio":
        return x if isinstance(x, _Ratio) else _Ratio(x)

    def __add__(self, other):
        other = _Ratio.of(other)
        if self.den == other.den:
            return _Ratio(self.num + other.num, self.den)
        return _Ratio(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return _Ratio(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_Ratio.of(other))

    def __rsub__(self, other):
        return _Ratio.of(other) - self

    def __mul__(self, other):
        other = _Ratio.of(other)
        return _Ratio(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _Ratio.of(other)
        return _Ratio(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int):
        return _Ratio(self.num**k, self.den**k)

    def cleared(self, multiplier) -> IntPolynomial:
        """multiplier * self as a polynomial; raises if that is not exact."""
        return (self.num * multiplier).divide_exact(self.den)


def expression17() -> IntPolynomial:
    """r^2 (r+1)^2 s (s+1)^2 [((s/(r+1) - r/(s+1))(1/r + 1/s) + r/s)^2 - (1/r + 1/s)]."""
    one = _Ratio(1)
    t = _Ratio(s, r + 1) - _Ratio(r, s + 1)
    c_sq = one / r + one / s
    expr = (t * c_sq + _Ratio(r, s)) ** 2 - c_sq
    return expr.cleared(r**2 * (r + 1) ** 2 * s * (s + 1) ** 2)


def expression18() -> IntPolynomial:
    """4(r+1)^2(s+1)^2(r+s)(r+s-1) times

    (r^2 t + t + r)(t + r) r s/(r+s) + (s t - r^2) r (s-1)/(r+s-1) - s^2/4
    with t = s/(r+1) - r/(s+1).
    """
    t = _Ratio(s * (s + 1) - r * (r + 1), (r + 1) * (s + 1))
    first = (r**2 * t + t + r) * (t + r) * _Ratio(r * s, r + s)
    second = (s * t - r**2) * _Ratio(r * (s - 1), r + s - 1)
    expr = first + second - _Ratio(s**2, 4)
    return expr.cleared(4 * (r + 1) ** 2 * (s + 1) ** 2 * (r + s) * (r + s - 1))


# Coefficient polynomials in r, by descending power of d = s - r.
REFERENCE17 = (
    IntPolynomial.const(1),
    7 * r + 2,
    r**3 + 17 * r**2 + 9 * r + 1,
    r * (4 * r**3 + 17 * r**2 + 10 * r + 1),
    r * (r + 1) ** 2 * (r**3 + 3 * r**2 - 3 * r - 1),
    (r - 2) * r**2 * (r + 1) ** 4,
)

REFERENCE18 = (
    4 * r**3 + 3 * r**2 + 6 * r - 1,
    4 * r**5 + 32 * r**4 + 32 * r**3 + 51 * r**2 - 2 * r - 1,
    24 * r**6 + 100 * r**5 + 122 * r**4 + 160 * r**3 + 3 * r**2 - 14 * r + 1,
    52 * r**7 + 152 * r**6 + 208 * r**5 + 232 * r**4 - 12 * r**3 - 59 * r**2 - 2 * r + 1,
    r * (48 * r**7 + 112 * r**6 + 163 * r**5 + 156 * r**4 - 48 * r**3 - 96 * r**2 - 11 * r + 4),
    r**2 * (r + 1) ** 2 * (16 * r**5 + 32 * r**3 - 23 * r**2 - 14 * r + 5),
    2 * r**3 * (r + 1) ** 4,
)


@dataclass
class IdentityReport:
    name: str
    matched: bool
    mismatches: list = field(default_factory=list)  # (power of d, expected, actual)
    residual: IntPolynomial = field(default_factory=IntPolynomial)
    certified: bool = False
    negative_terms: list = field(default_factory=list)  # (u exponent, d exponent, coeff)
    coefficients: list = field(default_factory=list)  # strings, descending powers of d

    @property
    def holds(self) -> bool:
        return self.matched and self.certified and self.residual.is_zero()

    def table(self) -> list[dict]:
        """Coefficient table ordered by descending power of (s - r)."""
        top = len(self.coefficients) - 1
        return [
            {"power": top - i, "coefficient": text}
            for i, text in enumerate(self.coefficients)
        ]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "matched": self.matched,
            "certified": self.certified,
            "holds": self.holds,
            "residual": str(self.residual),
            "mismatches": [
                {"power": k, "expected": str(e), "actual": str(a)} for k, e, a in self.mismatches
            ],
            "negative_terms": [list(t) for t in self.negative_terms],
            "coefficients": self.table(),
        }


def _shift_certificate(poly_rd: IntPolynomial) -> list:
    """Negative coefficients of poly(r = u + 2, d) as (u power, d power, coeff)."""
    shifted = poly_rd.substitute(r=u + 2)
    bad = []
    for mono, coeff in shifted.terms.items():
        if coeff < 0:
            powers = dict(zip(shifted.vars, mono))
            bad.append((powers.get("u", 0), powers.get("d", 0), coeff))
    return sorted(bad)


def _verify(name: str, expr: IntPolynomial, reference) -> IdentityReport:
    in_d = expr.substitute(s=r + d)
    top = len(reference) - 1
    actual = [in_d.coefficient("d", top - i) for i in range(top + 1)]
    mismatches = [
        (top - i, want, got) for i, (want, got) in enumerate(zip(reference, actual)) if want != got
    ]
    expected = sum((ref * d ** (top - i) for i, ref in enumerate(reference)), IntPolynomial())
    residual = in_d - expected
    if in_d.degree("d") > top:
        mismatches.append((in_d.degree("d"), IntPolynomial(), in_d.coefficient("d", in_d.degree("d"))))
    negative = _shift_certificate(in_d)
    return IdentityReport(
        name=name,
        matched=not mismatches,
        mismatches=mismatches,
        residual=residual,
        certified=not negative,
        negative_terms=negative,
        coefficients=[str(c) for c in actual],
    )


def verify_ineq17() -> IdentityReport:
    """Expansion behind the first auxiliary inequality (a quintic in s - r)."""
    return _verify("ineq17", expression17(), REFERENCE17)


def verify_ineq18() -> IdentityReport:
    """Expansion behind the second auxiliary inequality (a sextic in s - r)."""
    return _verify("ineq18", expression18(), REFERENCE18)
