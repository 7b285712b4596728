import random
from fractions import Fraction

import pytest

from hamiso.boundary import ball_boundary, cube_boundary, lower_shadow, padded_boundary_bounds, upper_shadow
from hamiso.constructions import (
    ball_halfspace,
    complement_family,
    costar,
    cplus,
    halfspace_value,
    pigeonhole_element,
    sized_ball_halfspace,
    sized_slice_halfspace,
    slice_halfspace,
    split_by_element,
    split_densities,
    star,
)
from hamiso.errors import PreconditionError
from hamiso.exactmath import ball_size, binom
from hamiso.families import ExplicitFamily, cell_of, expand_profile, slice_members


class TestStars:
    def test_sizes(self):
        assert star(4, 2, 1).size == 3
        assert costar(4, 2, 1).size == 3
        assert star(7, 3, 5).size == binom(6, 2)

    def test_partition(self):
        for n in range(2, 8):
            for r in range(1, n):
                for e in (1, n):
                    a, b = star(n, r, e), costar(n, r, e)
                    assert a.members | b.members == ExplicitFamily.slice(n, r).members
                    assert not a.members & b.members

    def test_shadow_equalities(self):
        for n in range(2, 17):
            for r in range(1, n):
                s = n - r
                a0, a1 = costar(n, r), star(n, r)
                assert lower_shadow(a0).size * s == r * a0.size
                assert upper_shadow(a1).size * r == s * a1.size

    def test_bad_layer(self):
        with pytest.raises(PreconditionError):
            star(4, 0)


def _halfspace_oracle(n, R, k, m):
    out = set()
    for x in range(1 << n):
        size = x.bit_count()
        inter = (x & ((1 << m) - 1)).bit_count()
        if size <= R and Fraction(inter) <= Fraction(size, 2) + k:
            out.add(x)
    return out


class TestHalfspaces:
    def test_ball_halfspace_example(self):
        p = ball_halfspace(4, 2, 0)
        assert p.cells == {(0, 0), (0, 1), (1, 1), (0, 2)}
        assert p.size == 8

    def test_extreme_k(self):
        for R in range(0, 7):
            assert ball_halfspace(6, R, R // 2 + 1).size == ball_size(6, R)
            assert ball_halfspace(6, R, -(R // 2) - 1).size == 0

    def test_match_definition(self):
        for n in range(1, 9):
            m = n // 2
            for R in range(n + 1):
                for k in range(-R - 1, R + 2):
                    got = expand_profile(ball_halfspace(n, R, k)).members
                    assert got == _halfspace_oracle(n, R, k, m)

    def test_slice_halfspace_examples(self):
        p = slice_halfspace(4, 2, 0, m=2)
        assert p.cells == {(0, 2), (1, 1)} and p.size == 5
        assert slice_halfspace(4, 2, -1, m=2).cells == {(0, 2)}
        assert slice_halfspace(6, 3, 2).size == binom(6, 3)

    def test_slice_halfspace_matches_definition(self):
        for n in range(2, 10):
            for r in range(1, n):
                for k in range(-r, r + 1):
                    got = expand_profile(slice_halfspace(n, r, k)).members
                    want = {x for x in _halfspace_oracle(n, r, k, n // 2) if x.bit_count() == r}
                    assert got == want

    def test_cplus_examples(self):
        n, r, k = 6, 2, 1
        c = expand_profile(slice_halfspace(n, r, k - 1), layer=r)
        cp = expand_profile(cplus(n, r, k), layer=r + 1)
        assert lower_shadow(cp).members <= c.members
        matching = expand_profile(slice_halfspace(n, r, k), layer=r)
        assert cp.size * (r + 1) <= (n - r) * matching.size
        assert cplus(n, r, -10).size == 0

    def test_halfspace_value(self):
        assert halfspace_value((2, 1)) == 1
        assert halfspace_value((0, 3)) == -1


class TestSized:
    def test_edges(self):
        assert sized_ball_halfspace(6, 3, 0).size == 0
        assert sized_ball_halfspace(6, 3, 42).size == 42
        with pytest.raises(PreconditionError):
            sized_ball_halfspace(6, 3, 43)

    def test_every_target_is_sandwiched(self):
        n, R = 6, 3
        for target in range(1, ball_size(n, R) + 1):
            f = sized_ball_halfspace(n, R, target)
            k = f.meta["k"]
            assert f.size == target
            lo, hi = ball_halfspace(n, R, k - 1), ball_halfspace(n, R, k)
            assert lo.size < target <= hi.size
            assert lo.cells <= f.base.cells <= hi.cells

    def test_half_ball_boundary_upper_bound(self):
        f = sized_ball_halfspace(6, 3, 21)
        b = padded_boundary_bounds(f, 3)
        explicit = ball_boundary(expand_profile(f), 3).size
        assert f.size == 21 and b.lower <= explicit <= b.upper

    def test_boundary_lives_on_two_levels(self):
        for n in range(2, 9):
            for R in range(1, n + 1):
                total = ball_size(n, R)
                for target in range(1, total, max(1, total // 9)):
                    f = sized_ball_halfspace(n, R, target)
                    k = f.meta["k"]
                    bd = ball_boundary(expand_profile(f), R)
                    values = {halfspace_value(cell_of(x, n // 2)) for x in bd.members}
                    assert values <= {k, k + 1}

    def test_sized_slice(self):
        for target in range(binom(6, 3) + 1):
            f = sized_slice_halfspace(6, 3, target)
            assert f.size == target
            assert expand_profile(f, layer=3).size == target


class TestSplits:
    def test_full_slice(self):
        a0, a1 = split_by_element(ExplicitFamily.slice(4, 2), 4)
        assert (a0.size, a1.size) == (3, 3)

    def test_star_split(self):
        a0, a1 = split_by_element(star(4, 2, 4), 4)
        assert a0.size == 0
        assert a1.members == ExplicitFamily.slice(3, 1).members

    def test_convexity_and_pigeonhole_exhaustive(self):
        n, r = 4, 2
        s = n - r
        members = slice_members(n, r)
        for mask in range(1, 1 << len(members)):
            f = ExplicitFamily(n, frozenset(x for j, x in enumerate(members) if mask >> j & 1), r)
            e = pigeonhole_element(f)
            alpha, a0, a1 = split_densities(f, e)
            assert alpha == Fraction(s, n) * a0 + Fraction(r, n) * a1
            assert a0 <= alpha <= a1


class TestPigeonhole:
    def test_examples(self):
        assert pigeonhole_element(ExplicitFamily.from_sets(4, [[1, 2], [1, 3], [1, 4]], 2)) == 1
        assert pigeonhole_element(ExplicitFamily.from_sets(4, [[1, 2]], 2)) == 1
        assert pigeonhole_element(ExplicitFamily.slice(4, 2)) == 1
        assert pigeonhole_element(ExplicitFamily.from_sets(4, [[3, 4]], 2)) == 3

    def test_empty(self):
        with pytest.raises(PreconditionError):
            pigeonhole_element(ExplicitFamily(4, frozenset(), 2))


class TestComplement:
    def test_examples(self):
        f = ExplicitFamily.from_sets(3, [[1]], 1)
        g = complement_family(f)
        assert g.as_sets() == [[2, 3]]
        assert cube_boundary(f).size == cube_boundary(g).size == 3
        assert complement_family(ExplicitFamily.slice(4, 2)).members == ExplicitFamily.slice(4, 2).members

    def test_boundary_size_preserved(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randint(2, 8)
            r = rng.randint(1, n - 1)
            pool = slice_members(n, r)
            f = ExplicitFamily(n, frozenset(x for x in pool if rng.random() < 0.4), r)
            g = complement_family(f)
            assert g.size == f.size
            assert cube_boundary(g).size == cube_boundary(f).size
