from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hamiso.analysis import (
    ExpansionParams,
    IntPolynomial,
    MonicQuadratic,
    claim_alpha,
    claim_roots,
    eval_L,
    interlace_check,
    sweep_claims,
    sweep_eq8,
    verify_aux_chain,
    verify_ineq17,
    verify_ineq18,
)
from hamiso.analysis.appendix import REFERENCE17, REFERENCE18, expression17, expression18
from hamiso.analysis.polynomial import PolynomialDivisionError
from hamiso.errors import PreconditionError

FIG = ExpansionParams(2, 4, Fraction(2, 5))


class TestParams:
    def test_exact_constants(self):
        assert FIG.c_sq == Fraction(6, 8)
        assert FIG.c0_sq == Fraction(5, 6)
        assert FIG.c1_sq == Fraction(5, 4)
        assert FIG.t == Fraction(4, 3) - Fraction(2, 5)
        assert FIG.xstar == Fraction(9, 10)

    def test_q(self):
        assert float(FIG.Q) == pytest.approx(1.2471, abs=1e-3)

    def test_alpha_split_at_xstar(self):
        assert float(FIG.alpha1(FIG.xstar)) == pytest.approx(1.0)


class TestLFunctions:
    def test_l1_at_zero(self):
        want = (4 * mpmath.sqrt(mpmath.mpf(5) / 6) + 2 * mpmath.sqrt(mpmath.mpf(5) / 4)) * 0.24
        assert float(eval_L(FIG, "L1", 0)) == pytest.approx(float(want))
        assert float(eval_L(FIG, "L1", 0)) == pytest.approx(1.4130, abs=1e-4)
        assert eval_L(FIG, "L1", 0) > FIG.Q

    def test_l2minus_at_xstar(self):
        assert float(eval_L(FIG, "L2minus", FIG.xstar)) == pytest.approx(2.64)

    def test_unknown(self):
        with pytest.raises(PreconditionError):
            eval_L(FIG, "L3", 0)

    def test_degenerate_rejected(self):
        with pytest.raises(PreconditionError):
            eval_L(ExpansionParams(1, 4, Fraction(1, 2)), "L1", 0)
        with pytest.raises(PreconditionError):
            ExpansionParams(0, 4, Fraction(1, 2))


class TestInterlace:
    def test_figure_quadratics(self):
        p1 = MonicQuadratic(mpmath.mpf("5.5295"), mpmath.mpf("-2.16"))
        p2 = MonicQuadratic(mpmath.mpf("-4.1105"), mpmath.mpf("1.08"))
        res = interlace_check(p1, p2)
        assert float(res.x2[0]) == pytest.approx(0.2821, abs=1e-3)
        assert float(res.x1[1]) == pytest.approx(0.3664, abs=1e-3)
        assert res.conclusion and res.consistent

    def test_shifted_pair(self):
        res = interlace_check(MonicQuadratic(mpmath.mpf(0), mpmath.mpf(-1)),
                              MonicQuadratic(mpmath.mpf(-2), mpmath.mpf(0)))
        assert [float(v) for v in res.x1] == [-1, 1]
        assert [float(v) for v in res.x2] == [0, 2]
        assert float(res.criterion) == -3
        assert res.hypotheses and res.conclusion

    def test_equal_b(self):
        with pytest.raises(PreconditionError):
            interlace_check(MonicQuadratic(mpmath.mpf(1), mpmath.mpf(-1)),
                            MonicQuadratic(mpmath.mpf(1), mpmath.mpf(-2)))

    @settings(max_examples=300)
    @given(
        st.floats(-10, 10), st.floats(0.01, 10), st.floats(-10, 10), st.floats(0.01, 10)
    )
    def test_criterion_implies_interlacing(self, u1, w1, u2, w2):
        # roots u1 +- w1 and u2 +- w2
        p1 = MonicQuadratic(mpmath.mpf(-2 * u1), mpmath.mpf(u1 * u1 - w1 * w1))
        p2 = MonicQuadratic(mpmath.mpf(-2 * u2), mpmath.mpf(u2 * u2 - w2 * w2))
        if p1.B == p2.B:
            return
        res = interlace_check(p1, p2)
        assert res.consistent


class TestClaimRoots:
    def test_figure_instance(self):
        res = claim_roots(FIG)
        assert res.status == "ok" and res.holds and not res.inconclusive
        assert float(res.x2[0]) == pytest.approx(0.2821, abs=1e-3)
        assert float(res.x1[1]) == pytest.approx(0.3664, abs=1e-3)
        assert res.normalized_agree
        assert res.interlace.hypotheses and res.interlace.conclusion
        assert float(res.paper_form_criterion) == pytest.approx(float(res.interlace.criterion))

    def test_vacuous_instance(self):
        res = claim_roots(ExpansionParams(2, 4, Fraction(19, 20)))
        assert res.status == "vacuous" and res.holds
        assert res.L1_at_xstar >= res.Q or res.L2_at_0 >= res.Q

    def test_claim_alpha(self):
        res = claim_alpha(FIG)
        assert res["holds"]
        assert float(res["limit"]) == pytest.approx(0.8468, abs=1e-4)

    def test_small_sweep(self):
        stats = sweep_claims(12)
        assert stats["failures"] == 0 and stats["inconclusive"] == 0
        assert stats["criterion_agrees"] == stats["preconditions_met"] > 0
        assert stats["normalized_agree"] == stats["preconditions_met"]
        assert stats["claim_alpha_fail"] == 0


class TestAuxChain:
    @pytest.mark.parametrize("r,s", [(2, 4), (2, 2), (3, 7), (10, 10)])
    def test_instances(self, r, s):
        assert verify_aux_chain(r, s)["holds"]

    def test_sweep(self):
        for r in range(2, 41):
            for s in range(r, 41):
                assert verify_aux_chain(r, s)["holds"], (r, s)

    def test_eq8(self):
        res = sweep_eq8(120)
        assert res["violations"] == 0 and res["checked"] == 119 * 120 // 2


# -- polynomials -------------------------------------------------------------

r_, s_, d_ = (IntPolynomial.var(v) for v in "rsd")
R, S, D = sympy.symbols("r s d")


def to_sympy(p: IntPolynomial):
    syms = [sympy.Symbol(v) for v in p.vars]
    total = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Integer(c)
        for sym, k in zip(syms, mono):
            term *= sym**k
        total += term
    return sympy.expand(total)


class TestIntPolynomial:
    def test_arithmetic(self):
        p = (r_ + 1) ** 3
        assert p.terms == {(3,): 1, (2,): 3, (1,): 3, (0,): 1}
        assert (p - p).is_zero()
        assert (r_ * s_ - s_ * r_) == 0
        assert str(r_**2 - 2 * r_ * s_ + 3) == "r^2 - 2*r*s + 3"

    def test_substitute_and_coefficients(self):
        p = (s_ - r_) ** 2
        q = p.substitute(s=r_ + d_)
        assert q == d_**2
        assert (r_ * s_).coefficient("s", 1) == r_
        assert [str(c) for c in (r_ * d_**2 + d_ + 5).coefficients("d")] == ["r", "1", "5"]

    def test_exact_division(self):
        a = (r_ + s_) * (r_ - 2 * s_ + 1)
        assert a.divide_exact(r_ + s_) == r_ - 2 * s_ + 1
        with pytest.raises(PolynomialDivisionError):
            (r_**2 + 1).divide_exact(r_ + 1)

    def test_evaluate(self):
        assert (r_**2 * s_ - 3).evaluate(r=2, s=Fraction(1, 2)) == -1

    def test_int_coefficients_only(self):
        with pytest.raises(TypeError):
            IntPolynomial(("r",), {(1,): 0.5})

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), max_size=6),
        st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-5, 5)), max_size=6),
    )
    def test_ring_ops_match_sympy(self, ta, tb):
        def build(terms):
            p = IntPolynomial()
            for i, j, c in terms:
                p = p + c * r_**i * s_**j
            return p

        a, b = build(ta), build(tb)
        sa, sb = to_sympy(a), to_sympy(b)
        assert sympy.expand(to_sympy(a * b) - sa * sb) == 0
        assert sympy.expand(to_sympy(a - b) - (sa - sb)) == 0
        if not b.is_zero():
            assert (a * b).divide_exact(b) == a


class TestAppendix:
    def test_ineq17(self):
        rep = verify_ineq17()
        assert rep.matched and rep.certified and rep.holds and rep.residual.is_zero()
        assert REFERENCE17[2].evaluate(r=2) == 95
        assert REFERENCE17[5].evaluate(r=2) == 0
        assert rep.table()[0] == {"power": 5, "coefficient": "1"}

    def test_ineq18(self):
        rep = verify_ineq18()
        assert rep.matched and rep.certified and rep.holds
        assert REFERENCE18[0].evaluate(r=2) == 55
        assert REFERENCE18[6] == 2 * r_**3 * (r_ + 1) ** 4
        assert [row["power"] for row in rep.table()] == list(range(6, -1, -1))

    def test_expressions_match_sympy(self):
        t = S / (R + 1) - R / (S + 1)
        c2 = 1 / R + 1 / S
        e17 = sympy.cancel(((t * c2 + R / S) ** 2 - c2) * R**2 * (R + 1) ** 2 * S * (S + 1) ** 2)
        assert sympy.expand(e17 - to_sympy(expression17())) == 0
        first = (R**2 * t + t + R) * (t + R) * R * S / (R + S)
        second = (S * t - R**2) * R * (S - 1) / (R + S - 1)
        e18 = sympy.cancel(
            4 * (R + 1) ** 2 * (S + 1) ** 2 * (R + S) * (R + S - 1) * (first + second - S**2 / 4)
        )
        assert sympy.expand(e18 - to_sympy(expression18())) == 0

    def test_spot_value(self):
        r, s = 2, 3
        t = Fraction(s, r + 1) - Fraction(r, s + 1)
        inner = (
            (r * r * t + t + r) * (t + r) * Fraction(r * s, r + s)
            + (s * t - r * r) * Fraction(r * (s - 1), r + s - 1)
            - Fraction(s * s, 4)
        )
        scaled = 4 * (r + 1) ** 2 * (s + 1) ** 2 * (r + s) * (r + s - 1) * inner
        assert scaled > 0
        assert expression18().evaluate(r=r, s=s) == scaled

    def test_mismatch_is_reported(self):
        from hamiso.analysis.appendix import _verify

        wrong = list(REFERENCE17)
        wrong[1] = 7 * r_ + 3
        rep = _verify("broken", expression17(), wrong)
        assert not rep.matched and rep.mismatches[0][0] == 4 and not rep.holds
