"""Brute-force verification, exhaustive minimization and randomized probes.

Exhaustive slice runs enumerate all 2^C(n,r) subfamilies of S_n(r). Family
number ``i`` contains the j-th member of the slice (colex order) iff bit j
of ``i`` is set. Shadow sizes are computed with numpy bit tricks, families
are grouped by (size, lower shadow, upper shadow), and each group is then
judged once with exact arithmetic.
"""

from __future__ import annotations

import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from . import boundary as bd
from .bounds import lemma7_check, local_expansion_check, nm_bounds, thm1_bound_check
from .constructions import ball_halfspace, sized_ball_halfspace
from .errors import BudgetExceeded, PreconditionError, SliceTooLarge
from .exactmath import ball_size, binom
from .serialize import jsonable
from .families import (
    ExplicitFamily,
    ProfileFamily,
    all_cells,
    ball_members,
    family_to_dict,
    slice_members,
)

__all__ = [
    "SearchReport",
    "slice_shadow_classes",
    "exhaustive_verify_local_expansion",
    "exhaustive_verify_nm",
    "exhaustive_min_boundary",
    "sampled_verify",
    "local_search_minimizer",
    "family_from_index",
    "halfspace_boundary_ratios",
    "MAX_SLICE",
    "DEFAULT_BUDGET",
]

MAX_SLICE = 20
DEFAULT_BUDGET = 10**9
_CHUNK_BITS = 16


@dataclass
class SearchReport:
    kind: str
    params: dict
    examined: int = 0
    violations: int = 0
    min_statistic: Any = None
    max_statistic: Any = None
    witness: dict | None = None
    counters: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        """JSON-ready dict; rationals become "p/q" strings."""
        return jsonable({
            "kind": self.kind,
            "params": self.params,
            "examined": self.examined,
            "violations": self.violations,
            "min_statistic": self.min_statistic,
            "max_statistic": self.max_statistic,
            "witness": self.witness,
            "counters": self.counters,
            "extra": self.extra,
            "wall_time": self.wall_time,
        })


# -- exhaustive slice enumeration --------------------------------------------


def _mask_words(indices: list[int], words: int) -> np.ndarray:
    out = np.zeros(words, dtype=np.uint64)
    for j in indices:
        out[j // 64] |= np.uint64(1) << np.uint64(j % 64)
    return out


def _slice_tables(n: int, r: int):
    members = slice_members(n, r)
    below = {x: i for i, x in enumerate(slice_members(n, r - 1))} if r >= 1 else {}
    above = {x: i for i, x in enumerate(slice_members(n, r + 1))} if r < n else {}
    wl = max(1, -(-len(below) // 64))
    wu = max(1, -(-len(above) // 64))
    lower = np.zeros((len(members), wl), dtype=np.uint64)
    upper = np.zeros((len(members), wu), dtype=np.uint64)
    for j, x in enumerate(members):
        lower[j] = _mask_words([below[x ^ (1 << i)] for i in range(n) if x >> i & 1], wl)
        upper[j] = _mask_words([above[x | (1 << i)] for i in range(n) if not x >> i & 1], wu)
    return members, lower, upper


def _doubling(masks: np.ndarray, k: int) -> np.ndarray:
    arr = np.zeros((1, masks.shape[1]), dtype=np.uint64)
    for j in range(k):
        arr = np.concatenate([arr, arr | masks[j]])
    return arr


def _chunk_classes(args) -> dict:
    """Group the families of one prefix chunk by (size, lower, upper)."""
    lower, upper, low_bits, prefix = args
    k = lower.shape[0]
    base_l = np.zeros(lower.shape[1], dtype=np.uint64)
    base_u = np.zeros(upper.shape[1], dtype=np.uint64)
    for j in range(low_bits, k):
        if prefix >> (j - low_bits) & 1:
            base_l |= lower[j]
            base_u |= upper[j]
    lo = np.bitwise_count(_doubling(lower, low_bits) | base_l).sum(axis=1, dtype=np.int64)
    up = np.bitwise_count(_doubling(upper, low_bits) | base_u).sum(axis=1, dtype=np.int64)
    size = np.bitwise_count(np.arange(1 << low_bits, dtype=np.uint64)).astype(np.int64)
    size += prefix.bit_count()
    lu = int(lo.max()) + 1
    uu = int(up.max()) + 1
    key = (size * lu + lo) * uu + up
    uniq, first, counts = np.unique(key, return_index=True, return_counts=True)
    out = {}
    offset = prefix << low_bits
    for kv, fi, ct in zip(uniq.tolist(), first.tolist(), counts.tolist()):
        s, rest = divmod(kv, lu * uu)
        l_, u_ = divmod(rest, uu)
        out[(s, l_, u_)] = (ct, offset + fi)
    return out


def slice_shadow_classes(n: int, r: int, workers: int = 1) -> dict:
    """Map (|A|, |lower shadow|, |upper shadow|) -> (count, first family index).

    Covers every subfamily A of S_n(r); the merge is independent of ``workers``.
    """
    if not 0 <= r <= n:
        raise PreconditionError(f"needs 0 <= r <= n, got n={n}, r={r}")
    k = binom(n, r)
    if k > MAX_SLICE:
        raise SliceTooLarge(f"C({n},{r}) = {k} exceeds {MAX_SLICE}; 2^{k} families is too many")
    _, lower, upper = _slice_tables(n, r)
    low_bits = min(k, _CHUNK_BITS)
    jobs = [(lower, upper, low_bits, p) for p in range(1 << (k - low_bits))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_chunk_classes, jobs))
    else:
        parts = [_chunk_classes(job) for job in jobs]
    merged: dict = {}
    for part in parts:
        for key, (ct, fi) in part.items():
            if key in merged:
                c0, f0 = merged[key]
                merged[key] = (c0 + ct, min(f0, fi))
            else:
                merged[key] = (ct, fi)
    return merged


def family_from_index(n: int, r: int, index: int) -> ExplicitFamily:
    members = slice_members(n, r)
    chosen = frozenset(x for j, x in enumerate(members) if index >> j & 1)
    return ExplicitFamily(n, chosen, r)


def exhaustive_verify_local_expansion(n: int, r: int, workers: int = 1) -> SearchReport:
    """Check the local expansion inequality on every subfamily of S_n(r)."""
    start = time.perf_counter()
    classes = slice_shadow_classes(n, r, workers)
    total = binom(n, r)
    violations = 0
    best = best_nt = None
    by_size: dict = {}
    for (size, lo, up), (count, first) in sorted(classes.items()):
        verdict = local_expansion_check(n, r, size, lo + up)
        if not verdict.holds:
            violations += count
        slack = verdict.slack()
        row = by_size.setdefault(
            size, {"size": size, "families": 0, "min_boundary": lo + up, "min_slack": slack}
        )
        row["families"] += count
        row["min_boundary"] = min(row["min_boundary"], lo + up)
        row["min_slack"] = min(row["min_slack"], slack)
        if best is None or slack < best[0]:
            best = (slack, first, verdict)
        if 0 < size < total and (best_nt is None or slack < best_nt[0]):
            best_nt = (slack, first, verdict)
    report = SearchReport(
        kind="local-expansion",
        params={"n": n, "r": r, "workers": workers},
        examined=sum(c for c, _ in classes.values()),
        violations=violations,
        min_statistic=best[0],
        witness=family_to_dict(family_from_index(n, r, best[1])),
        counters={"classes": len(classes), "expected": 1 << total},
        extra={"by_size": [by_size[k] for k in sorted(by_size)]},
    )
    if best_nt is not None:
        report.extra["min_slack_nontrivial"] = best_nt[0]
        report.extra["witness_nontrivial"] = family_to_dict(family_from_index(n, r, best_nt[1]))
        report.extra["witness_nontrivial_boundary"] = best_nt[2].boundary
    report.wall_time = time.perf_counter() - start
    return report


def exhaustive_verify_nm(n: int, r: int, workers: int = 1) -> SearchReport:
    """Check both normalized-matching shadow bounds on every subfamily of S_n(r)."""
    start = time.perf_counter()
    if not 1 <= r <= n - 1:
        raise PreconditionError(f"needs 1 <= r <= n - 1, got n={n}, r={r}")
    classes = slice_shadow_classes(n, r, workers)
    lower_bad = upper_bad = 0
    min_lower = min_upper = None
    witness = None
    by_size: dict = {}
    for (size, lo, up), (count, first) in sorted(classes.items()):
        lb, ub = nm_bounds(n, r, size)
        row = by_size.setdefault(
            size,
            {"size": size, "families": 0, "min_lower": lo, "min_upper": up,
             "lower_bound": lb, "upper_bound": ub},
        )
        row["families"] += count
        row["min_lower"] = min(row["min_lower"], lo)
        row["min_upper"] = min(row["min_upper"], up)
        if lo < lb:
            lower_bad += count
        if up < ub:
            upper_bad += count
        if witness is None and (lo < lb or up < ub):
            witness = first
        if size:
            ratio_l = Fraction(lo, size) / Fraction(r, n - r + 1)
            ratio_u = Fraction(up, size) / Fraction(n - r, r + 1)
            min_lower = ratio_l if min_lower is None else min(min_lower, ratio_l)
            min_upper = ratio_u if min_upper is None else min(min_upper, ratio_u)
    report = SearchReport(
        kind="nm",
        params={"n": n, "r": r, "workers": workers},
        examined=sum(c for c, _ in classes.values()),
        violations=lower_bad + upper_bad,
        min_statistic={"lower_ratio": min_lower, "upper_ratio": min_upper},
        witness=None if witness is None else family_to_dict(family_from_index(n, r, witness)),
        counters={
            "classes": len(classes),
            "expected": 1 << binom(n, r),
            "lower_violations": lower_bad,
            "upper_violations": upper_bad,
        },
        extra={"by_size": [by_size[k] for k in sorted(by_size)]},
    )
    report.wall_time = time.perf_counter() - start
    return report


# -- exhaustive minimum boundary ---------------------------------------------


def exhaustive_min_boundary(
    n: int, size: int, R: int | None = None, budget: int = DEFAULT_BUDGET
) -> SearchReport:
    """Minimum vertex boundary over all ``size``-subsets of Q_n (or of B_n(R))."""
    start = time.perf_counter()
    if n > 5:
        raise PreconditionError(f"exhaustive minimization supports n <= 5, got {n}")
    radius = n if R is None else R
    verts = ball_members(n, radius)
    V = len(verts)
    if not 0 <= size <= V:
        raise PreconditionError(f"size {size} outside 0..{V}")
    candidates = math.comb(V, size)
    if candidates > budget:
        raise BudgetExceeded(f"C({V},{size}) = {candidates} candidate sets exceed budget {budget}")
    pos = {x: i for i, x in enumerate(verts)}
    nbr = []
    for x in verts:
        mask = 0
        for i in range(n):
            y = x ^ (1 << i)
            if y in pos:
                mask |= 1 << pos[y]
        nbr.append(mask)

    best = [None, 0]
    examined = [0]

    def visit(start_i: int, depth: int, union: int, chosen: int) -> None:
        if depth == size:
            examined[0] += 1
            value = (union & ~chosen).bit_count()
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, chosen
            return
        for i in range(start_i, V - (size - depth) + 1):
            visit(i + 1, depth + 1, union | nbr[i], chosen | (1 << i))

    visit(0, 0, 0, 0)
    witness = ExplicitFamily(n, frozenset(verts[i] for i in range(V) if best[1] >> i & 1))
    report = SearchReport(
        kind="min-boundary",
        params={"n": n, "size": size, "R": R, "budget": budget},
        examined=examined[0],
        min_statistic=best[0],
        witness=family_to_dict(witness),
        counters={"expected": candidates},
    )
    report.wall_time = time.perf_counter() - start
    return report


# -- sampling ----------------------------------------------------------------

GENERATORS = ("random-profile", "random-explicit", "construction")
BOUNDS = ("thm1", "lemma7")


def _random_profile(rng: random.Random, n: int, R: int) -> ProfileFamily:
    m = n // 2
    cells = [c for c in all_cells(n, m) if sum(c) <= R]
    if rng.random() < 0.5:
        p = rng.uniform(0.05, 0.95)
        on = [c for c in cells if rng.random() < p]
    else:
        # per-layer thresholds on |X & Y| - floor(|X|/2), a ragged half-space
        centre = rng.randint(-R // 4, R // 4)
        spread = rng.randint(0, 3)
        ks = [centre + rng.randint(-spread, spread) for _ in range(R + 1)]
        on = [(a, b) for a, b in cells if a - (a + b) // 2 <= ks[a + b]]
    return ProfileFamily(n, m, frozenset(on))


def _random_explicit(rng: random.Random, n: int, R: int) -> ExplicitFamily:
    verts = ball_members(n, R)
    p = rng.uniform(0.05, 0.95)
    return ExplicitFamily(n, frozenset(x for x in verts if rng.random() < p))


def _construction_sweep(n: int, R: int, samples: int):
    total = ball_size(n, R)
    for k in range(-(R // 2) - 1, R // 2 + 2):
        yield ball_halfspace(n, R, k)
    for j in range(1, samples + 1):
        yield sized_ball_halfspace(n, R, j * total // (samples + 1))


def _boundary_interval(f, R: int) -> tuple[int, int]:
    if isinstance(f, ExplicitFamily):
        v = bd.ball_boundary(f, R).size
        return v, v
    b = bd.padded_boundary_bounds(f, R)
    return b.lower, b.upper


def sampled_verify(
    generator: str,
    bound: str,
    samples: int,
    seed: int = 0,
    *,
    n: int = 100,
    R: int = 50,
    rho=Fraction(1, 4),
    assume_n0: int | None = None,
    record: bool = False,
) -> SearchReport:
    """Sample families and test a ball isoperimetric bound against each.

    A sample is a violation only when even the upper bound on its boundary
    falls short; when only the lower bound does, it counts as inconclusive.
    Samples outside the bound's hypotheses are skipped and counted. With
    ``record`` every checked sample is also listed in ``extra["rows"]``.
    """
    start = time.perf_counter()
    if generator not in GENERATORS:
        raise PreconditionError(f"generator must be one of {GENERATORS}")
    if bound not in BOUNDS:
        raise PreconditionError(f"bound must be one of {BOUNDS}")
    if generator == "random-explicit" and n > 20:
        raise PreconditionError("explicit sampling is capped at n <= 20")
    rho = Fraction(rho)
    rng = random.Random(seed)
    report = SearchReport(
        kind="sample",
        params={
            "generator": generator,
            "bound": bound,
            "samples": samples,
            "seed": seed,
            "n": n,
            "R": R,
            "rho": rho,
            "assume_n0": assume_n0,
        },
    )
    counters = {"skipped": 0, "inconclusive": 0, "checked": 0}
    if samples <= 0:
        report.counters = counters
        return report

    if generator == "construction":
        sweep = list(_construction_sweep(n, R, samples))
        source: Callable = iter(sweep).__next__
        count = len(sweep)
    elif generator == "random-profile":
        source, count = (lambda: _random_profile(rng, n, R)), samples
    else:
        source, count = (lambda: _random_explicit(rng, n, R)), samples

    min_ratio = None
    witness = None
    rows: list = []
    for _ in range(count):
        f = source()
        report.examined += 1
        size = f.size
        lo, hi = _boundary_interval(f, R)
        if bound == "thm1":
            v_lo = thm1_bound_check(n, R, rho, size, lo, strict=False, assume_n0=assume_n0)
            if not v_lo.preconditions_met:
                counters["skipped"] += 1
                continue
            v_hi = thm1_bound_check(n, R, rho, size, hi, strict=False)
            ok_lo, ok_hi = v_lo.holds, v_hi.holds
            target = v_lo.bound
        else:
            if size == 0:
                counters["skipped"] += 1
                continue
            check = lemma7_check(n, R, size, lo)
            if not check["hypotheses_met"]:
                counters["skipped"] += 1
                continue
            ok_lo = check["holds"]
            ok_hi = lemma7_check(n, R, size, hi)["holds"]
            target = check["bound"]
        counters["checked"] += 1
        if record:
            rows.append(
                {"size": size, "boundary_lower": lo, "boundary_upper": hi,
                 "bound": float(target), "holds": ok_hi}
            )
        if not ok_hi:
            report.violations += 1
            witness = witness or family_to_dict(f)
        elif not ok_lo:
            counters["inconclusive"] += 1
        if not target.is_zero:
            ratio = lo / float(target)
            if min_ratio is None or ratio < min_ratio:
                min_ratio = ratio
    report.min_statistic = min_ratio
    report.witness = witness
    if record:
        report.extra["rows"] = rows
    report.counters = counters
    report.wall_time = time.perf_counter() - start
    return report


def halfspace_boundary_ratios(ns=(40, 80, 160, 320), alpha=Fraction(1, 2)) -> list[dict]:
    """|boundary(M)| sqrt(n) / min(|M|, |B| - |M|) for the sized half-space M in B_n(n/2).

    M has size floor(alpha |B_n(n/2)|). The ratio uses the upper bound on
    the boundary, so it over-estimates the true value.
    """
    rows = []
    for n in ns:
        R = n // 2
        total = ball_size(n, R)
        target = (Fraction(alpha) * total).numerator // (Fraction(alpha) * total).denominator
        f = sized_ball_halfspace(n, R, target)
        b = bd.padded_boundary_bounds(f, R)
        small = min(f.size, total - f.size)
        scale = math.sqrt(n) / small
        rows.append(
            {
                "n": n,
                "R": R,
                "size": f.size,
                "k": f.meta["k"],
                "boundary_lower": b.lower,
                "boundary_upper": b.upper,
                "ratio_upper": b.upper * scale,
                "ratio_lower": b.lower * scale,
            }
        )
    return rows


# -- local search ------------------------------------------------------------


def local_search_minimizer(
    n: int, R: int | None, size: int, seed: int = 0, steps: int = 1000
) -> SearchReport:
    """Size-preserving swap descent on the boundary inside B_n(R).

    Swaps that do not increase the boundary are accepted, so the walk can
    cross plateaus; the best family seen is returned.
    """
    start = time.perf_counter()
    if n > 20:
        raise PreconditionError("local search works on explicit families, n <= 20")
    radius = n if R is None else R
    verts = ball_members(n, radius)
    if not 0 <= size <= len(verts):
        raise PreconditionError(f"size {size} outside 0..{len(verts)}")
    rng = random.Random(seed)
    in_ball = [False] * (1 << n)
    for x in verts:
        in_ball[x] = True
    nbrs = {x: [x ^ (1 << i) for i in range(n) if in_ball[x ^ (1 << i)]] for x in verts}

    members = rng.sample(verts, size)
    outside = [x for x in verts if x not in set(members)]
    where_in = {x: i for i, x in enumerate(members)}
    where_out = {x: i for i, x in enumerate(outside)}
    in_a = [False] * (1 << n)
    cnt = [0] * (1 << n)
    for x in members:
        in_a[x] = True
        for y in nbrs[x]:
            cnt[y] += 1
    state = {"bd": sum(1 for x in verts if not in_a[x] and cnt[x] > 0)}

    def remove(v):
        in_a[v] = False
        if cnt[v] > 0:
            state["bd"] += 1
        for y in nbrs[v]:
            cnt[y] -= 1
            if not in_a[y] and cnt[y] == 0:
                state["bd"] -= 1

    def add(v):
        if cnt[v] > 0:
            state["bd"] -= 1
        in_a[v] = True
        for y in nbrs[v]:
            if not in_a[y] and cnt[y] == 0:
                state["bd"] += 1
            cnt[y] += 1

    def swap_lists(u, w):
        i, j = where_in.pop(u), where_out.pop(w)
        members[i], outside[j] = w, u
        where_in[w], where_out[u] = i, j

    initial = state["bd"]
    best, best_members = initial, list(members)
    accepted = 0
    for _ in range(steps if members and outside else 0):
        u = members[rng.randrange(len(members))]
        w = outside[rng.randrange(len(outside))]
        before = state["bd"]
        remove(u)
        add(w)
        if state["bd"] > before:
            remove(w)
            add(u)
            continue
        accepted += 1
        swap_lists(u, w)
        if state["bd"] < best:
            best, best_members = state["bd"], list(members)
    report = SearchReport(
        kind="local-search",
        params={"n": n, "R": R, "size": size, "seed": seed, "steps": steps},
        examined=steps,
        min_statistic=best,
        max_statistic=initial,
        witness=family_to_dict(ExplicitFamily(n, frozenset(best_members))),
        counters={"accepted": accepted},
    )
    report.wall_time = time.perf_counter() - start
    return report
