"""Exact integer polynomials in named variables.

Just enough algebra for checking polynomial identities: ring operations,
substitution, exact division and coefficient extraction. Terms are stored
as ``{exponent tuple: coefficient}`` aligned with a sorted tuple of variable
names, so two equal polynomials always have equal canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

__all__ = ["IntPolynomial", "PolynomialDivisionError"]


class PolynomialDivisionError(ArithmeticError):
    """Raised when a division that was expected to be exact leaves a remainder."""


Scalar = int
PolyLike = Union["IntPolynomial", int]


class IntPolynomial:
    __slots__ = ("vars", "terms")

    def __init__(self, vars_=(), terms: Mapping[tuple, int] | None = None):
        names = tuple(sorted(set(vars_)))
        if len(names) != len(tuple(vars_)) or names != tuple(vars_):
            raise ValueError("variables must be given sorted and distinct")
        clean = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != len(names):
                raise ValueError(f"monomial {mono} does not match variables {names}")
            if not isinstance(coeff, int):
                raise TypeError(f"coefficients must be int, got {type(coeff).__name__}")
            if coeff:
                clean[tuple(mono)] = clean.get(tuple(mono), 0) + coeff
        self.vars = names
        self.terms = {m: c for m, c in clean.items() if c}

    # -- construction ------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "IntPolynomial":
        return cls((name,), {(1,): 1})

    @classmethod
    def const(cls, value: int) -> "IntPolynomial":
        return cls((), {(): value})

    @staticmethod
    def _coerce(other: PolyLike) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial.const(other)
        raise TypeError(f"cannot combine IntPolynomial with {type(other).__name__}")

    def _lift(self, names: tuple) -> dict:
        """Terms re-indexed against a superset of this polynomial's variables."""
        if names == self.vars:
            return self.terms
        pos = [names.index(v) for v in self.vars]
        out = {}
        for mono, coeff in self.terms.items():
            e = [0] * len(names)
            for p, k in zip(pos, mono):
                e[p] = k
            out[tuple(e)] = coeff
        return out

    def _align(self, other: "IntPolynomial"):
        names = tuple(sorted(set(self.vars) | set(other.vars)))
        return names, self._lift(names), other._lift(names)

    def trimmed(self) -> "IntPolynomial":
        """Drop variables that no longer appear in any term."""
        used = [i for i in range(len(self.vars)) if any(m[i] for m in self.terms)]
        if len(used) == len(self.vars):
            return self
        names = tuple(self.vars[i] for i in used)
        return IntPolynomial(names, {tuple(m[i] for i in used): c for m, c in self.terms.items()})

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: PolyLike) -> "IntPolynomial":
        if not isinstance(other, (IntPolynomial, int)):
            return NotImplemented
        other = self._coerce(other)
        names, a, b = self._align(other)
        out = dict(a)
        for m, c in b.items():
            out[m] = out.get(m, 0) + c
        return IntPolynomial(names, out).trimmed()

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: PolyLike) -> "IntPolynomial":
        if not isinstance(other, (IntPolynomial, int)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other: PolyLike) -> "IntPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other: PolyLike) -> "IntPolynomial":
        if not isinstance(other, (IntPolynomial, int)):
            return NotImplemented
        other = self._coerce(other)
        names, a, b = self._align(other)
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return IntPolynomial(names, out).trimmed()

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = IntPolynomial.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.const(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.trimmed(), other.trimmed()
        return a.vars == b.vars and a.terms == b.terms

    def __hash__(self) -> int:
        t = self.trimmed()
        return hash((t.vars, frozenset(t.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure -------------------------------------------------------------

    def degree(self, name: str | None = None) -> int:
        """Total degree, or the degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if name is None:
            return max(sum(m) for m in self.terms)
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(m[i] for m in self.terms)

    def coefficient(self, name: str, power: int) -> "IntPolynomial":
        """Coefficient of name**power, as a polynomial in the other variables."""
        if name not in self.vars:
            return self if power == 0 else IntPolynomial()
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1 :]
        out = {m[:i] + m[i + 1 :]: c for m, c in self.terms.items() if m[i] == power}
        return IntPolynomial(rest, out).trimmed()

    def coefficients(self, name: str) -> list["IntPolynomial"]:
        """Coefficients in descending powers of ``name``."""
        return [self.coefficient(name, k) for k in range(self.degree(name), -1, -1)]

    def leading_term(self) -> tuple[tuple, int]:
        """Lex-leading monomial and its coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms)
        return mono, self.terms[mono]

    # -- evaluation and substitution ---------------------------------------------

    def substitute(self, **subs: PolyLike) -> "IntPolynomial":
        """Replace variables by polynomials (or integers)."""
        keep = [i for i, v in enumerate(self.vars) if v not in subs]
        kept_names = tuple(self.vars[i] for i in keep)
        repl = [(i, self._coerce(subs[v])) for i, v in enumerate(self.vars) if v in subs]
        powers: dict = {}

        def power(i, poly, k):
            key = (i, k)
            if key not in powers:
                powers[key] = poly**k
            return powers[key]

        total = IntPolynomial()
        for mono, coeff in self.terms.items():
            term = IntPolynomial(kept_names, {tuple(mono[i] for i in keep): coeff})
            for i, poly in repl:
                if mono[i]:
                    term = term * power(i, poly, mono[i])
            total = total + term
        return total

    def evaluate(self, **values) -> Union[int, Fraction]:
        """Evaluate at integer or rational values; every variable must be bound."""
        missing = set(self.vars) - set(values)
        if missing:
            raise ValueError(f"unbound variables: {sorted(missing)}")
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for name, k in zip(self.vars, mono):
                term *= values[name] ** k
            total += term
        return total

    # -- division ------------------------------------------------------------------

    def divide_exact(self, other: PolyLike) -> "IntPolynomial":
        """Quotient q with self == q * other, or PolynomialDivisionError."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        names = tuple(sorted(set(self.vars) | set(other.vars)))
        rem = IntPolynomial(names, self._lift(names))
        div = IntPolynomial(names, other._lift(names))
        lead_m, lead_c = div.leading_term()
        quot: dict = {}
        while rem.terms:
            m, c = rem.leading_term()
            shift = tuple(x - y for x, y in zip(m, lead_m))
            if min(shift, default=0) < 0 or c % lead_c:
                raise PolynomialDivisionError(f"{other} does not divide {self}")
            q = c // lead_c
            quot[shift] = quot.get(shift, 0) + q
            rem = rem - IntPolynomial(names, {shift: q}) * div
            rem = IntPolynomial(names, rem._lift(names)) if rem.vars != names else rem
        return IntPolynomial(names, quot).trimmed()

    # -- display ----------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            coeff = self.terms[mono]
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, mono) if k]
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if coeff < 0 else "+", text))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"IntPolynomial({str(self)!r})"
