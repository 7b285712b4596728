"""The two lower estimates L1, L2 (and the weakened L2^-) as quadratics in x,
their roots, and the interlacing criterion for monic quadratics.

Numerics run in mpmath at ``PREC_BITS`` bits. Strict inequalities whose
margin falls below ``MARGIN`` are reported as inconclusive rather than
passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
from mpmath import mpf

from ..errors import PreconditionError

PREC_BITS = 128
MARGIN = mpf("1e-9")

__all__ = [
    "PREC_BITS",
    "MARGIN",
    "ExpansionParams",
    "MonicQuadratic",
    "eval_L",
    "interlace_check",
    "InterlaceResult",
    "claim_roots",
    "ClaimRoots",
    "claim_alpha",
    "verify_aux_chain",
    "sweep_claims",
    "sweep_eq8",
]


def _mp(q) -> mpf:
    if isinstance(q, Fraction):
        return mpf(q.numerator) / q.denominator
    return mpf(q)


@dataclass(frozen=True)
class ExpansionParams:
    r: int
    s: int
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.r < 1 or self.s < 1:
            raise PreconditionError(f"needs r, s >= 1, got r={self.r}, s={self.s}")
        if not 0 <= self.alpha <= 1:
            raise PreconditionError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def n(self) -> int:
        return self.r + self.s

    # squared constants are exact rationals
    @property
    def c_sq(self) -> Fraction:
        return Fraction(self.n, self.r * self.s)

    @property
    def c0_sq(self) -> Fraction:
        if self.s < 2:
            raise PreconditionError("c0 needs s >= 2")
        return Fraction(self.n - 1, self.r * (self.s - 1))

    @property
    def c1_sq(self) -> Fraction:
        if self.r < 2:
            raise PreconditionError("c1 needs r >= 2")
        return Fraction(self.n - 1, (self.r - 1) * self.s)

    @property
    def t(self) -> Fraction:
        return Fraction(self.s, self.r + 1) - Fraction(self.r, self.s + 1)

    @property
    def xstar(self) -> Fraction:
        return Fraction(self.n, self.s) * (1 - self.alpha)

    @cached_property
    def c(self) -> mpf:
        with mpmath.workprec(PREC_BITS):
            return mpmath.sqrt(_mp(self.c_sq))

    @cached_property
    def c0(self) -> mpf:
        with mpmath.workprec(PREC_BITS):
            return mpmath.sqrt(_mp(self.c0_sq))

    @cached_property
    def c1(self) -> mpf:
        with mpmath.workprec(PREC_BITS):
            return mpmath.sqrt(_mp(self.c1_sq))

    @cached_property
    def Q(self) -> mpf:
        with mpmath.workprec(PREC_BITS):
            a = _mp(self.alpha)
            return self.n * self.c * a * (1 - a)

    def alpha0(self, x) -> mpf:
        return _mp(self.alpha) - mpf(self.r) / self.n * _mp(x)

    def alpha1(self, x) -> mpf:
        return _mp(self.alpha) + mpf(self.s) / self.n * _mp(x)


def eval_L(params: ExpansionParams, which: str, x) -> mpf:
    """Evaluate L1, L2 or L2minus at x."""
    if params.r < 2 or params.s < 2:
        raise PreconditionError("the L-functions need r >= 2 and s >= 2")
    with mpmath.workprec(PREC_BITS):
        x = _mp(x)
        r, s = params.r, params.s
        t = _mp(params.t)
        a0 = params.alpha0(x)
        a1 = params.alpha1(x)
        if which == "L1":
            return t * x + s * params.c0 * a0 * (1 - a0) + r * params.c1 * a1 * (1 - a1)
        if which == "L2":
            return (t + r) * x + r * params.c1 * a1 * (1 - a1)
        if which in ("L2minus", "L2-"):
            return (t + r) * x + r * params.c * a1 * (1 - a1)
    raise PreconditionError(f"unknown L-function {which!r}")


@dataclass(frozen=True)
class MonicQuadratic:
    """x^2 + B x + C."""

    B: mpf
    C: mpf

    def __call__(self, x) -> mpf:
        with mpmath.workprec(PREC_BITS):
            x = _mp(x)
            return x * x + self.B * x + self.C

    @property
    def discriminant(self) -> mpf:
        with mpmath.workprec(PREC_BITS):
            return self.B * self.B - 4 * self.C

    def roots(self) -> tuple[mpf, mpf]:
        with mpmath.workprec(PREC_BITS):
            d = self.discriminant
            if d <= 0:
                raise PreconditionError("quadratic has no two distinct real roots")
            sq = mpmath.sqrt(d)
            # cancellation-free pair
            q = -(self.B + mpmath.sign(self.B) * sq) / 2 if self.B else sq / 2
            if self.B:
                pair = (q, self.C / q)
            else:
                pair = (-q, q)
            return (min(pair), max(pair))


@dataclass(frozen=True)
class InterlaceResult:
    x1: tuple[mpf, mpf]
    x2: tuple[mpf, mpf]
    criterion: mpf  # (C1-C2)^2 + (B1-B2)(B1 C2 - B2 C1)
    root_order_hypotheses: bool
    crossing: mpf
    p1_at_crossing: mpf
    conclusion: bool  # x2^- < x1^+, read off the roots

    @property
    def hypotheses(self) -> bool:
        return self.root_order_hypotheses and self.criterion < 0

    @property
    def consistent(self) -> bool:
        """The criterion never claims interlacing that the roots contradict."""
        return self.conclusion or not self.hypotheses


def interlace_check(p1: MonicQuadratic, p2: MonicQuadratic) -> InterlaceResult:
    with mpmath.workprec(PREC_BITS):
        if p1.B == p2.B:
            raise PreconditionError("equal linear coefficients: the crossing point is undefined")
        x1 = p1.roots()
        x2 = p2.roots()
        dB, dC = p1.B - p2.B, p1.C - p2.C
        criterion = dC * dC + dB * (p1.B * p2.C - p2.B * p1.C)
        x0 = -dC / dB
        return InterlaceResult(
            x1=x1,
            x2=x2,
            criterion=criterion,
            root_order_hypotheses=bool(x1[0] < x2[0] and x1[1] < x2[1]),
            crossing=x0,
            p1_at_crossing=p1(x0),
            conclusion=bool(x2[0] < x1[1]),
        )


def _quadratic_through(f) -> tuple[mpf, mpf, mpf]:
    """Coefficients (a, b, c) of a quadratic from its values at -1, 0, 1."""
    fm, f0, fp = f(-1), f(0), f(1)
    return (fp + fm) / 2 - f0, (fp - fm) / 2, f0


def _real_roots(a, b, c) -> tuple[mpf, mpf]:
    d = b * b - 4 * a * c
    if d <= 0:
        raise PreconditionError("no two distinct real roots")
    sq = mpmath.sqrt(d)
    pair = ((-b - sq) / (2 * a), (-b + sq) / (2 * a))
    return (min(pair), max(pair))


@dataclass
class ClaimRoots:
    params: ExpansionParams
    status: str  # "ok" or "vacuous"
    Q: mpf
    xstar: mpf
    L1_at_xstar: mpf
    L2_at_0: mpf
    x1: tuple | None = None
    x2: tuple | None = None
    checks: dict = field(default_factory=dict)
    margin: mpf | None = None
    normalized_agree: bool | None = None
    interlace: InterlaceResult | None = None
    paper_form_criterion: mpf | None = None

    @property
    def inconclusive(self) -> bool:
        return self.margin is not None and self.margin < MARGIN

    @property
    def holds(self) -> bool:
        """All claimed orderings hold (vacuous instances count as holding)."""
        if self.status == "vacuous":
            return True
        return all(self.checks.values()) and not self.inconclusive

    def to_dict(self) -> dict:
        fmt = lambda v: None if v is None else float(v)  # noqa: E731
        out = {
            "r": self.params.r,
            "s": self.params.s,
            "alpha": str(self.params.alpha),
            "status": self.status,
            "Q": fmt(self.Q),
            "xstar": fmt(self.xstar),
            "L1_at_xstar": fmt(self.L1_at_xstar),
            "L2_at_0": fmt(self.L2_at_0),
        }
        if self.status == "ok":
            out.update(
                {
                    "x1_minus": fmt(self.x1[0]),
                    "x1_plus": fmt(self.x1[1]),
                    "x2_minus": fmt(self.x2[0]),
                    "x2_plus": fmt(self.x2[1]),
                    "checks": dict(self.checks),
                    "margin": fmt(self.margin),
                    "inconclusive": self.inconclusive,
                    "normalized_agree": self.normalized_agree,
                    "criterion": fmt(self.interlace.criterion),
                    "criterion_hypotheses": self.interlace.hypotheses,
                }
            )
        return out


def normalized_quadratics(params: ExpansionParams) -> tuple[MonicQuadratic, MonicQuadratic]:
    """The monic rescalings P1 of L1 - L2 and P2 of L2^- - Q, in x^2 + Bx + C form."""
    with mpmath.workprec(PREC_BITS):
        r, s, n = params.r, params.s, params.n
        a = _mp(params.alpha)
        c, c0, t = params.c, params.c0, _mp(params.t)
        B1 = mpf(n) / r * (1 - 2 * a) + mpf(n * n) / (r * s * c0)
        C1 = mpf(n * n) / (r * r) * a * (1 - a)
        B2 = mpf(n) / s * (1 - 2 * a) + n * n * (t + r) / (r * s * s * c)
        C2 = mpf(n * n) / (r * s) * a * (1 - a)
        # P1 = x^2 + B1 x - C1 and P2 = x^2 - B2 x + C2
        return MonicQuadratic(B1, -C1), MonicQuadratic(-B2, C2)


def claim_roots(params: ExpansionParams) -> ClaimRoots:
    """Locate the roots of L1 = L2 and L2^- = Q and check that they interlace."""
    with mpmath.workprec(PREC_BITS):
        Q = params.Q
        xs = _mp(params.xstar)
        l1_star = eval_L(params, "L1", xs)
        l2_zero = eval_L(params, "L2", 0)
        result = ClaimRoots(params, "vacuous", Q, xs, l1_star, l2_zero)
        pre_margin = min(Q - l1_star, Q - l2_zero)
        if pre_margin <= 0:
            return result
        result.status = "ok"

        q1 = _quadratic_through(lambda x: eval_L(params, "L1", x) - eval_L(params, "L2", x))
        q2 = _quadratic_through(lambda x: eval_L(params, "L2minus", x) - Q)
        x1 = _real_roots(*q1)
        x2 = _real_roots(*q2)
        result.x1, result.x2 = x1, x2

        gaps = {
            "x1_minus_lt_0": -x1[0],
            "0_lt_x1_plus": x1[1],
            "x1_plus_lt_xstar": xs - x1[1],
            "0_lt_x2_minus": x2[0],
            "x2_minus_lt_xstar": xs - x2[0],
            "xstar_lt_x2_plus": x2[1] - xs,
            "x2_minus_lt_x1_plus": x1[1] - x2[0],
        }
        result.checks = {k: bool(v > 0) for k, v in gaps.items()}
        result.margin = min(min(gaps.values()), pre_margin)

        p1, p2 = normalized_quadratics(params)
        y1, y2 = p1.roots(), p2.roots()
        scale = max(abs(v) for v in (*x1, *x2, mpf(1)))
        result.normalized_agree = all(
            abs(u - v) <= mpf("1e-9") * scale for u, v in zip((*x1, *x2), (*y1, *y2))
        )
        result.interlace = interlace_check(p1, p2)
        # the same criterion written with the P1/P2 coefficients as printed
        B1, C1 = p1.B, -p1.C
        B2, C2 = -p2.B, p2.C
        result.paper_form_criterion = (C1 + C2) ** 2 - (B1 + B2) * (B2 * C1 - B1 * C2)
        return result


def claim_alpha(params: ExpansionParams) -> dict:
    """If L1(x*) < Q then alpha < (t + r) / (s c)."""
    with mpmath.workprec(PREC_BITS):
        antecedent = eval_L(params, "L1", params.xstar) < params.Q
        limit = (_mp(params.t) + params.r) / (params.s * params.c)
        consequent = _mp(params.alpha) < limit
        return {
            "antecedent": bool(antecedent),
            "consequent": bool(consequent),
            "limit": float(limit),
            "holds": bool(consequent or not antecedent),
        }


def verify_aux_chain(r: int, s: int) -> dict:
    """The inequality chain used to establish the two auxiliary inequalities at (r, s)."""
    if r < 2 or s < r:
        raise PreconditionError(f"needs 2 <= r <= s, got r={r}, s={s}")
    p = ExpansionParams(r, s, Fraction(1, 2))
    n, t = p.n, p.t
    c_sq, c0_sq, c1_sq = p.c_sq, p.c0_sq, p.c1_sq
    out = {
        "c_lt_c0": c_sq < c0_sq,
        "c0_le_c1": c0_sq <= c1_sq,
        "t_nonneg": t >= 0,
    }
    # rs(c + 1) <= (t + r) n, squared after isolating c
    rhs = (t + r) * n - r * s
    out["rs_c_plus_1_le"] = rhs >= 0 and (r * s) ** 2 * c_sq <= rhs * rhs
    out["reduction18_positive"] = (
        (r * r * t + t + r) * (t + r) / c_sq + (s * t - r * r) / c0_sq - Fraction(s * s, 4) > 0
    )
    with mpmath.workprec(PREC_BITS):
        c, c0, tm = p.c, p.c0, _mp(t)
        lhs17 = (r * c0 - tm) / (n * c0 - s * c)
        rhs17 = (tm + r) / (s * c)
        g1 = rhs17 - lhs17
        g2 = (tm + r) * n * c0 - r * s * c * (c0 + 1)
        a = mpf(s) / (2 * r) + (tm + r) / (r * c) - 1 / c0
        b = (mpf(s) / r) * (1 + (tm + r) / (s * c) + 1 / c0) * ((tm + r) / (r * c) - 1 / c0)
        g3 = b - a * a
        out["ineq17"] = bool(g1 > MARGIN)
        out["ineq17_cleared"] = bool(g2 > MARGIN)
        out["ineq18"] = bool(g3 > MARGIN)
        out["margins"] = {"ineq17": float(g1), "ineq17_cleared": float(g2), "ineq18": float(g3)}
    out["holds"] = all(v for k, v in out.items() if k != "margins")
    return out


def sweep_claims(r_max: int = 50, alphas=None) -> dict:
    """Run the root claims over 2 <= r <= s <= r_max and the given alpha grid."""
    if alphas is None:
        alphas = [Fraction(j, 20) for j in range(1, 20)]
    stats = {
        "instances": 0,
        "preconditions_met": 0,
        "interlace_ok": 0,
        "failures": 0,
        "inconclusive": 0,
        "criterion_agrees": 0,
        "normalized_agree": 0,
        "claim_alpha_fail": 0,
        "min_margin": None,
    }
    failures = []
    for r in range(2, r_max + 1):
        for s in range(r, r_max + 1):
            for a in alphas:
                p = ExpansionParams(r, s, a)
                stats["instances"] += 1
                if not claim_alpha(p)["holds"]:
                    stats["claim_alpha_fail"] += 1
                res = claim_roots(p)
                if res.status != "ok":
                    continue
                stats["preconditions_met"] += 1
                if res.inconclusive:
                    stats["inconclusive"] += 1
                if res.holds:
                    stats["interlace_ok"] += 1
                else:
                    stats["failures"] += 1
                    failures.append((r, s, str(a)))
                if res.interlace.hypotheses == res.checks["x2_minus_lt_x1_plus"]:
                    stats["criterion_agrees"] += 1
                if res.normalized_agree:
                    stats["normalized_agree"] += 1
                m = float(res.margin)
                if stats["min_margin"] is None or m < stats["min_margin"]:
                    stats["min_margin"] = m
    stats["failure_list"] = failures[:20]
    return stats


def sweep_eq8(limit: int = 500) -> dict:
    """Check c < c0 <= c1 in exact squared form for all 2 <= r <= s <= limit."""
    checked = bad = 0
    for r in range(2, limit + 1):
        for s in range(r, limit + 1):
            n = r + s
            checked += 1
            # n/(rs) < (n-1)/(r(s-1)) <= (n-1)/((r-1)s), cross-multiplied
            ok = n * (s - 1) < (n - 1) * s and r * (s - 1) >= (r - 1) * s
            if not ok:
                bad += 1
    return {"checked": checked, "violations": bad}
