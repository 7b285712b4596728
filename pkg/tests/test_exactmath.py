import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hamiso.errors import PreconditionError
from hamiso.exactmath import (
    Surd,
    ball_size,
    binom,
    central_binomial_check,
    check_ratio_monotone,
    check_slice_lower_bound,
    slice_size,
)


def test_binom_small_values():
    assert binom(4, 2) == 6
    assert binom(5, 0) == 1
    assert binom(5, 6) == 0
    with pytest.raises(PreconditionError):
        binom(5, -1)


def test_ball_and_slice_sizes():
    assert ball_size(4, 1) == 5
    assert ball_size(8, 4) == 163
    assert ball_size(6, 3) == 42
    assert ball_size(3, 7) == 8
    assert slice_size(6, 3) == 20


@given(st.integers(0, 300), st.integers(0, 303))
def test_binom_matches_math_comb(n, k):
    assert binom(n, k) == math.comb(n, k)


@given(st.integers(1, 200), st.integers(0, 200))
def test_ball_size_is_prefix_sum(n, r):
    assert ball_size(n, r) == sum(math.comb(n, i) for i in range(min(r, n) + 1))


def test_ratio_monotone_examples():
    rep = check_ratio_monotone(4)
    step = rep.steps[1]
    assert (step.left, step.right) == (Fraction(4, 5), Fraction(6, 11))
    assert rep.holds
    assert check_ratio_monotone(2).holds and len(check_ratio_monotone(2).steps) == 2
    one = check_ratio_monotone(1)
    assert one.steps[0].left == 1 and one.steps[0].right == Fraction(1, 2)


def test_slice_lower_bound_examples():
    assert check_slice_lower_bound(4, 2).lhs == 144
    assert check_slice_lower_bound(4, 2).rhs == 121
    assert check_slice_lower_bound(3, 1).lhs == 27 and check_slice_lower_bound(3, 1).rhs == 16
    assert check_slice_lower_bound(3, 0).holds


@pytest.mark.parametrize("n,r", [(2, 1), (5, 3), (4, -1)])
def test_slice_lower_bound_rejects_outside_range(n, r):
    with pytest.raises(PreconditionError):
        check_slice_lower_bound(n, r)


def test_lemma6_both_claims_to_64():
    for n in range(1, 65):
        assert check_ratio_monotone(n).holds
        if n >= 3:
            assert all(check_slice_lower_bound(n, r).holds for r in range(n // 2 + 1))


def test_central_binomial():
    assert all(central_binomial_check(m) for m in range(1, 65))


class TestSurd:
    def test_comparisons_are_exact(self):
        root2 = Surd(Fraction(1), Fraction(2))
        assert root2 > Fraction(141421356, 10**8)
        assert root2 < Fraction(141421357, 10**8)
        assert Surd(2, 3).compare(Surd(1, 12)) == 0
        assert Surd(-1, 2) < 0

    def test_zero_and_sign(self):
        assert Surd(0, 5).is_zero
        assert Surd(3, 0).is_zero
        assert Surd(-2, 3).sign() == -1

    def test_decimal_rendering(self):
        assert Surd(1, 2).to_decimal(10).startswith("1.41421356")

    @given(
        st.fractions(min_value=-50, max_value=50),
        st.fractions(min_value=0, max_value=50),
        st.fractions(min_value=-50, max_value=50),
    )
    def test_compare_agrees_with_float_when_separated(self, a, b, q):
        s = Surd(a, b)
        f = float(a) * math.sqrt(float(b))
        if abs(f - float(q)) > 1e-9:
            assert (s > q) == (f > float(q))
