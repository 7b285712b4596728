import json
import math
import random

import pytest

from hamiso.boundary import cube_boundary, lower_shadow, upper_shadow
from hamiso.bounds import local_expansion_check
from hamiso.errors import BudgetExceeded, PreconditionError, SliceTooLarge
from hamiso.families import ExplicitFamily, family_from_dict, slice_members
from hamiso.search import (
    exhaustive_min_boundary,
    exhaustive_verify_local_expansion,
    exhaustive_verify_nm,
    family_from_index,
    local_search_minimizer,
    sampled_verify,
    slice_shadow_classes,
)


def _naive_classes(n, r):
    members = slice_members(n, r)
    out = {}
    for mask in range(1 << len(members)):
        f = ExplicitFamily(n, frozenset(x for j, x in enumerate(members) if mask >> j & 1), r)
        lo = lower_shadow(f).size if r >= 1 else 0
        up = upper_shadow(f).size if r <= n - 1 else 0
        key = (f.size, lo, up)
        count, first = out.get(key, (0, mask))
        out[key] = (count + 1, min(first, mask))
    return out


@pytest.mark.parametrize("n,r", [(3, 1), (4, 2), (5, 2), (4, 1), (2, 1)])
def test_shadow_classes_match_naive(n, r):
    assert slice_shadow_classes(n, r) == _naive_classes(n, r)


def test_shadow_classes_independent_of_workers():
    one = slice_shadow_classes(6, 3, workers=1)
    many = slice_shadow_classes(6, 3, workers=3)
    assert one == many
    assert sum(c for c, _ in one.values()) == 1 << 20


def test_slice_too_large():
    with pytest.raises(SliceTooLarge):
        exhaustive_verify_nm(99, 50)
    with pytest.raises(SliceTooLarge):
        slice_shadow_classes(7, 3)


@pytest.mark.parametrize("n,r,count", [(3, 1, 8), (4, 2, 64), (5, 2, 1024)])
def test_local_expansion_exhaustive_small(n, r, count):
    rep = exhaustive_verify_local_expansion(n, r)
    assert rep.examined == count == rep.counters["expected"]
    assert rep.violations == 0
    witness = family_from_dict(rep.witness)
    assert witness.size == family_from_index(n, r, 0).size or witness.size >= 0


def test_local_expansion_witness_is_consistent():
    rep = exhaustive_verify_local_expansion(5, 2)
    f = family_from_dict(rep.extra["witness_nontrivial"]).with_layer(2)
    bd = cube_boundary(f).size
    assert bd == rep.extra["witness_nontrivial_boundary"]
    assert local_expansion_check(5, 2, f.size, bd).slack() == pytest.approx(
        rep.extra["min_slack_nontrivial"]
    )


@pytest.mark.slow
def test_local_expansion_exhaustive_63():
    rep = exhaustive_verify_local_expansion(6, 3)
    assert rep.examined == 1 << 20 and rep.violations == 0


@pytest.mark.parametrize("n,r", [(4, 2), (5, 2), (2, 1), (6, 3)])
def test_nm_exhaustive(n, r):
    rep = exhaustive_verify_nm(n, r)
    assert rep.violations == 0
    assert rep.examined == 1 << math.comb(n, r)
    # equality is reached (by the full slice), so the minimum ratio is exactly 1
    assert rep.min_statistic["lower_ratio"] >= 1 and rep.min_statistic["upper_ratio"] >= 1


class TestMinBoundary:
    def test_harper_example(self):
        rep = exhaustive_min_boundary(4, 5)
        assert rep.min_statistic == 6
        assert rep.examined == math.comb(16, 5)
        w = family_from_dict(rep.witness)
        assert cube_boundary(w).size == 6

    def test_trivial(self):
        assert exhaustive_min_boundary(3, 1).min_statistic == 3
        assert exhaustive_min_boundary(4, 16).min_statistic == 0

    def test_in_ball(self):
        rep = exhaustive_min_boundary(4, 1, R=2)
        assert rep.min_statistic == 2  # a 2-set has only its two 1-subsets inside B_4(2)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exhaustive_min_boundary(5, 10, budget=1000)

    def test_n_cap(self):
        with pytest.raises(PreconditionError):
            exhaustive_min_boundary(6, 3)


class TestSampling:
    def test_empty(self):
        rep = sampled_verify("random-profile", "thm1", 0)
        assert rep.examined == 0 and rep.violations == 0

    def test_reproducible(self):
        a = sampled_verify("random-profile", "thm1", 40, seed=3, n=60, R=30)
        b = sampled_verify("random-profile", "thm1", 40, seed=3, n=60, R=30)
        da, db = a.to_dict(), b.to_dict()
        da.pop("wall_time"), db.pop("wall_time")
        assert da == db

    def test_random_explicit_small(self):
        rep = sampled_verify("random-explicit", "lemma7", 20, seed=1, n=12, R=6)
        assert rep.examined == 20 and rep.violations == 0

    def test_explicit_cap(self):
        with pytest.raises(PreconditionError):
            sampled_verify("random-explicit", "thm1", 1, n=40, R=20)

    def test_unknown_names(self):
        with pytest.raises(PreconditionError):
            sampled_verify("nope", "thm1", 1)
        with pytest.raises(PreconditionError):
            sampled_verify("random-profile", "nope", 1)

    def test_lemma7_profiles(self):
        rep = sampled_verify("random-profile", "lemma7", 50, seed=5)
        assert rep.violations == 0 and rep.counters["checked"] > 0

    def test_record_rows(self):
        rep = sampled_verify("construction", "thm1", 5, n=40, R=20, record=True)
        rows = rep.extra["rows"]
        assert len(rows) == rep.counters["checked"]
        assert all(r["boundary_lower"] <= r["boundary_upper"] for r in rows)
        json.dumps(rep.to_dict())


class TestLocalSearch:
    def test_reaches_harper_value(self):
        best = min(local_search_minimizer(4, 4, 5, seed=s, steps=400).min_statistic for s in range(4))
        assert best == 6

    def test_never_below_exhaustive(self):
        truth = exhaustive_min_boundary(4, 5).min_statistic
        for seed in (0, 1):
            rep = local_search_minimizer(4, None, 5, seed=seed, steps=200)
            assert rep.min_statistic >= truth

    def test_zero_steps_returns_initial(self):
        rep = local_search_minimizer(5, 3, 7, seed=9, steps=0)
        w = family_from_dict(rep.witness)
        assert rep.min_statistic == rep.max_statistic
        from hamiso.boundary import ball_boundary

        assert ball_boundary(w, 3).size == rep.min_statistic

    def test_bookkeeping_matches_recount(self):
        from hamiso.boundary import ball_boundary

        rng = random.Random(0)
        for _ in range(10):
            n = rng.randint(3, 8)
            R = rng.randint(1, n)
            size = rng.randint(1, 2 ** n // 4)
            size = min(size, sum(math.comb(n, i) for i in range(R + 1)))
            rep = local_search_minimizer(n, R, size, seed=rng.randint(0, 99), steps=100)
            assert ball_boundary(family_from_dict(rep.witness), R).size == rep.min_statistic

    def test_deterministic(self):
        a = local_search_minimizer(6, 3, 12, seed=4, steps=300)
        b = local_search_minimizer(6, 3, 12, seed=4, steps=300)
        assert a.witness == b.witness and a.min_statistic == b.min_statistic
