"""Explicit families: stars, half-space constructions, splits and complements."""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .exactmath import ball_size, binom
from .families import (
    ExplicitFamily,
    PaddedProfileFamily,
    ProfileFamily,
    all_cells,
    cell_size,
    drop_bit,
    slice_members,
)

__all__ = [
    "star",
    "costar",
    "ball_halfspace",
    "sized_ball_halfspace",
    "slice_halfspace",
    "sized_slice_halfspace",
    "cplus",
    "split_by_element",
    "pigeonhole_element",
    "complement_family",
    "halfspace_value",
]


def _check_slice(n: int, r: int) -> None:
    if not 1 <= r <= n - 1:
        raise PreconditionError(f"needs 1 <= r <= n - 1, got n={n}, r={r}")


def star(n: int, r: int, element: int = 1) -> ExplicitFamily:
    _check_slice(n, r)
    bit = 1 << (element - 1)
    return ExplicitFamily(n, frozenset(x for x in slice_members(n, r) if x & bit), r)


def costar(n: int, r: int, element: int = 1) -> ExplicitFamily:
    _check_slice(n, r)
    bit = 1 << (element - 1)
    return ExplicitFamily(n, frozenset(x for x in slice_members(n, r) if not x & bit), r)


def _in_halfspace(a: int, b: int, k: int) -> bool:
    # a <= (a+b)/2 + k, evaluated over the rationals
    return 2 * a <= a + b + 2 * k


def halfspace_value(x_cell: tuple[int, int]) -> int:
    """|X & Y| - floor(|X|/2) for a set in the given cell."""
    a, b = x_cell
    return a - (a + b) // 2


def ball_halfspace(n: int, R: int, k: int, m: int | None = None) -> ProfileFamily:
    """{X in B_n(R) : |X & Y| <= |X|/2 + k} with Y = {1, ..., m}."""
    if not 0 <= R <= n:
        raise PreconditionError(f"needs 0 <= R <= n, got R={R}")
    m = n // 2 if m is None else m
    cells = [c for c in all_cells(n, m) if sum(c) <= R and _in_halfspace(*c, k)]
    return ProfileFamily(n, m, frozenset(cells))


def slice_halfspace(n: int, r: int, k: int, m: int | None = None) -> ProfileFamily:
    _check_slice(n, r)
    m = n // 2 if m is None else m
    cells = [(a, r - a) for a in range(r + 1) if 0 <= a <= m and 0 <= r - a <= n - m]
    return ProfileFamily(n, m, frozenset(c for c in cells if _in_halfspace(*c, k)))


def cplus(n: int, r: int, k: int, m: int | None = None) -> ProfileFamily:
    """{X in S_n(r+1) : |X & Y| <= r/2 + k - 1}."""
    if not 0 <= r <= n - 1:
        raise PreconditionError(f"needs r + 1 <= n, got r={r}, n={n}")
    m = n // 2 if m is None else m
    cells = [
        (a, r + 1 - a)
        for a in range(r + 2)
        if 0 <= a <= m and 0 <= r + 1 - a <= n - m and 2 * a <= r + 2 * k - 2
    ]
    return ProfileFamily(n, m, frozenset(cells))


def _fill(family_at, k_range, target: int) -> PaddedProfileFamily:
    """Find k with |C(k-1)| < target <= |C(k)| and pad C(k-1) up to target.

    Cells of C(k) - C(k-1) are added whole in (a+b, a) order; the first one
    that does not fit becomes the cut cell.
    """
    lo, hi = k_range
    for k in range(lo, hi + 1):
        upper = family_at(k)
        if upper.size < target:
            continue
        lower = family_at(k - 1)
        cells = set(lower.cells)
        size = lower.size
        cut, taken = None, 0
        for cell in sorted(upper.cells - lower.cells, key=lambda c: (c[0] + c[1], c[0])):
            room = target - size
            if room == 0:
                break
            full = cell_size(upper.n, upper.m, *cell)
            if full <= room:
                cells.add(cell)
                size += full
            else:
                cut, taken = cell, room
                size += room
                break
        base = ProfileFamily(upper.n, upper.m, frozenset(cells))
        return PaddedProfileFamily(base, cut, taken, meta={"k": k})
    raise PreconditionError(f"target {target} exceeds the largest family")


def sized_ball_halfspace(n: int, R: int, target: int, m: int | None = None) -> PaddedProfileFamily:
    """A family of exactly ``target`` sets sandwiched between C(k-1) and C(k)."""
    total = ball_size(n, R)
    if not 0 <= target <= total:
        raise PreconditionError(f"target {target} outside 0..{total}")
    if target == 0:
        empty = ProfileFamily(n, n // 2 if m is None else m, frozenset())
        return PaddedProfileFamily(empty, meta={"k": -(R // 2) - 1})
    return _fill(lambda k: ball_halfspace(n, R, k, m), (-(R // 2) - 1, R // 2 + 1), target)


def sized_slice_halfspace(n: int, r: int, target: int, m: int | None = None) -> PaddedProfileFamily:
    _check_slice(n, r)
    total = binom(n, r)
    if not 0 <= target <= total:
        raise PreconditionError(f"target {target} outside 0..{total}")
    if target == 0:
        empty = ProfileFamily(n, n // 2 if m is None else m, frozenset())
        return PaddedProfileFamily(empty, meta={"k": -(r // 2) - 1})
    return _fill(lambda k: slice_halfspace(n, r, k, m), (-(r // 2) - 1, r // 2 + 1), target)


def split_by_element(f: ExplicitFamily, element: int | None = None):
    """Split f (a family in S_n(r)) into A0 in S_{n-1}(r) and A1 in S_{n-1}(r-1).

    Returns ``(A0, A1)``; the element defaults to n.
    """
    r = f.infer_layer().layer
    n = f.n
    _check_slice(n, r)
    e = n if element is None else element
    bit = 1 << (e - 1)
    a0 = frozenset(drop_bit(x, e) for x in f.members if not x & bit)
    a1 = frozenset(drop_bit(x, e) for x in f.members if x & bit)
    return ExplicitFamily(n - 1, a0, r), ExplicitFamily(n - 1, a1, r - 1)


def split_densities(f: ExplicitFamily, element: int | None = None):
    """(alpha, alpha0, alpha1) for the split of f at ``element``."""
    a0, a1 = split_by_element(f, element)
    n, r = f.n, f.infer_layer().layer
    return (
        Fraction(f.size, binom(n, r)),
        Fraction(a0.size, binom(n - 1, r)),
        Fraction(a1.size, binom(n - 1, r - 1)),
    )


def pigeonhole_element(f: ExplicitFamily) -> int:
    """Smallest element lying in at least (r/n)|f| members."""
    if not f.members:
        raise PreconditionError("pigeonhole_element needs a nonempty family")
    r = f.infer_layer().layer
    counts = [0] * f.n
    for x in f.members:
        for i in range(f.n):
            if x >> i & 1:
                counts[i] += 1
    for i, count in enumerate(counts):
        if count * f.n >= r * f.size:
            return i + 1
    raise AssertionError("pigeonhole principle violated")


def complement_family(f: ExplicitFamily) -> ExplicitFamily:
    r = f.infer_layer().layer
    full = (1 << f.n) - 1
    return ExplicitFamily(f.n, frozenset(full ^ x for x in f.members), f.n - r)
