"""Shadows and vertex boundaries, for explicit and profile families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PreconditionError
from .families import (
    ExplicitFamily,
    PaddedProfileFamily,
    ProfileFamily,
    all_cells,
    cell_size,
    drop_bit,
    insert_bit,
)

__all__ = [
    "lower_shadow",
    "upper_shadow",
    "cube_boundary",
    "ball_boundary",
    "boundary_layer_profile",
    "superset_relations_check",
    "profile_cube_boundary",
    "profile_ball_boundary",
    "padded_boundary_bounds",
    "BoundaryBounds",
    "SupersetReport",
]


@lru_cache(maxsize=32)
def _index(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


@lru_cache(maxsize=32)
def _weights(n: int) -> np.ndarray:
    return np.bitwise_count(_index(n)).astype(np.int64)


def _neighbors_of(ind: np.ndarray, n: int) -> np.ndarray:
    """Indicator of vertices with at least one neighbor in ``ind``."""
    idx = _index(n)
    out = np.zeros_like(ind)
    for i in range(n):
        out |= ind[idx ^ (1 << i)]
    return out


def _require_layer(f: ExplicitFamily) -> int:
    if f.layer is None:
        raise PreconditionError("shadow operations need a layer-tagged family")
    return f.layer


def lower_shadow(f: ExplicitFamily) -> ExplicitFamily:
    r = _require_layer(f)
    if r < 1:
        raise PreconditionError("lower shadow needs r >= 1")
    nbr = _neighbors_of(f.indicator(), f.n) & (_weights(f.n) == r - 1)
    return ExplicitFamily.from_indicator(f.n, nbr, r - 1)


def upper_shadow(f: ExplicitFamily) -> ExplicitFamily:
    r = _require_layer(f)
    if r > f.n - 1:
        raise PreconditionError("upper shadow needs r <= n - 1")
    nbr = _neighbors_of(f.indicator(), f.n) & (_weights(f.n) == r + 1)
    return ExplicitFamily.from_indicator(f.n, nbr, r + 1)


def _cube_boundary_indicator(f: ExplicitFamily) -> np.ndarray:
    ind = f.indicator()
    return _neighbors_of(ind, f.n) & ~ind


def cube_boundary(f: ExplicitFamily) -> ExplicitFamily:
    return ExplicitFamily.from_indicator(f.n, _cube_boundary_indicator(f))


def _check_in_ball(f: ExplicitFamily, R: int) -> None:
    if f.max_size() > R:
        raise PreconditionError(f"family has a member with more than R={R} elements")


def ball_boundary(f: ExplicitFamily, R: int) -> ExplicitFamily:
    _check_in_ball(f, R)
    bd = _cube_boundary_indicator(f) & (_weights(f.n) <= R)
    return ExplicitFamily.from_indicator(f.n, bd)


def boundary_layer_profile(f: ExplicitFamily, R: int) -> list[int]:
    """b_r = |boundary of f in Q_n, restricted to layer r| for 0 <= r <= R."""
    _check_in_ball(f, R)
    bd = _cube_boundary_indicator(f)
    counts = np.bincount(_weights(f.n)[bd], minlength=f.n + 1)
    return [int(counts[r]) if r <= f.n else 0 for r in range(R + 1)]


@dataclass(frozen=True)
class SupersetReport:
    element: int
    inclusions: dict
    boundary: int
    boundary_a0: int
    boundary_a1: int
    upper_shadow_a0: int
    size_a1: int

    @property
    def slack_11a(self) -> int:
        return self.boundary - self.boundary_a0 - self.boundary_a1

    @property
    def slack_11b(self) -> int:
        return self.boundary - self.boundary_a1 - self.upper_shadow_a0 - self.size_a1

    @property
    def holds(self) -> bool:
        return all(self.inclusions.values()) and self.slack_11a >= 0 and self.slack_11b >= 0


def superset_relations_check(A: ExplicitFamily, element: int | None = None) -> SupersetReport:
    """Check the four inclusions relating the boundary of A to that of its two halves.

    A0 (members avoiding ``element``) and A1 (members containing it, with the
    element removed) live in the cube on the remaining n - 1 elements.
    """
    r = _require_layer(A)
    n = A.n
    e = n if element is None else element
    if not 1 <= e <= n:
        raise PreconditionError(f"element {e} outside [1, {n}]")
    if not 1 <= r <= n - 1:
        raise PreconditionError(f"needs 1 <= r <= n - 1, got r={r}")
    bit = 1 << (e - 1)
    a0 = ExplicitFamily(n - 1, frozenset(drop_bit(x, e) for x in A.members if not x & bit), r)
    a1 = ExplicitFamily(n - 1, frozenset(drop_bit(x, e) for x in A.members if x & bit), r - 1)

    bd = cube_boundary(A).members
    lower = {x for x in bd if x.bit_count() == r - 1}
    upper = {x for x in bd if x.bit_count() == r + 1}
    bd_a0 = cube_boundary(a0).members
    bd_a1 = cube_boundary(a1).members
    up_a0 = upper_shadow(a0).members if r <= n - 2 else frozenset()

    lift0 = lambda xs: {insert_bit(x, e, 0) for x in xs}  # noqa: E731
    lift1 = lambda xs: {insert_bit(x, e, 1) for x in xs}  # noqa: E731
    without_e = {x for x in bd if not x & bit}
    with_e = {x for x in bd if x & bit}
    inclusions = {
        "boundary_A0_in_boundary_without_e": lift0(bd_a0) <= without_e,
        "boundary_A1_plus_e_in_boundary_with_e": lift1(bd_a1) <= with_e,
        "upper_shadow_A0_in_upper_shadow_without_e": lift0(up_a0)
        <= {x for x in upper if not x & bit},
        "A1_in_lower_shadow_without_e": lift0(a1.members) <= {x for x in lower if not x & bit},
    }
    return SupersetReport(
        element=e,
        inclusions=inclusions,
        boundary=len(bd),
        boundary_a0=len(bd_a0),
        boundary_a1=len(bd_a1),
        upper_shadow_a0=len(up_a0),
        size_a1=a1.size,
    )


# -- profile families --------------------------------------------------------


def _adjacent(cell: tuple[int, int]):
    a, b = cell
    return ((a + 1, b), (a - 1, b), (a, b + 1), (a, b - 1))


def profile_cube_boundary(p: ProfileFamily) -> ProfileFamily:
    """Boundary of a profile family, as a profile family.

    Every member of a cell has a neighbor in each feasible adjacent cell, so
    an off cell is either entirely in the boundary or entirely outside it.
    """
    on = p.cells
    out = set()
    for cell in all_cells(p.n, p.m):
        if cell in on:
            continue
        if any(c in on for c in _adjacent(cell)):
            out.add(cell)
    return ProfileFamily(p.n, p.m, frozenset(out))


def _check_profile_in_ball(cells, R: int) -> None:
    for a, b in cells:
        if a + b > R:
            raise PreconditionError(f"cell {(a, b)} lies outside the ball of radius {R}")


def profile_ball_boundary(p: ProfileFamily, R: int) -> ProfileFamily:
    _check_profile_in_ball(p.cells, R)
    cube = profile_cube_boundary(p)
    return ProfileFamily(p.n, p.m, frozenset(c for c in cube.cells if c[0] + c[1] <= R))


def _degree(n: int, m: int, src: tuple[int, int], dst: tuple[int, int]) -> int:
    """Neighbors in cell ``dst`` of any one member of the adjacent cell ``src``."""
    (a, b), (a2, b2) = src, dst
    if a2 == a + 1:
        return m - a
    if a2 == a - 1:
        return a
    if b2 == b + 1:
        return n - m - b
    return b


@dataclass(frozen=True)
class BoundaryBounds:
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def padded_boundary_bounds(f, R: int | None = None) -> BoundaryBounds:
    """Lower and upper bounds on the boundary size of a (padded) profile family.

    Without R the ambient graph is Q_n; with R it is the ball B_n(R).
    Only cells whose status depends on which members of the cut cell were
    taken are uncertain; the lower bound for those uses double counting
    across the biregular cell-to-cell adjacency.
    """
    if isinstance(f, ProfileFamily):
        f = PaddedProfileFamily(f)
    n, m = f.n, f.m
    on = f.base.cells
    cut, taken = f.cut_cell, f.taken
    cells_to_check = set(on)
    if cut is not None:
        cells_to_check.add(cut)
    if R is not None:
        _check_profile_in_ball(cells_to_check, R)

    lower = upper = 0
    for cell in all_cells(n, m):
        if cell in on or (R is not None and sum(cell) > R):
            continue
        size = cell_size(n, m, *cell)
        touches_base = any(c in on for c in _adjacent(cell))
        if cell == cut:
            if touches_base:
                lower += size - taken
                upper += size - taken
            continue
        if touches_base:
            lower += size
            upper += size
        elif cut is not None and taken and cut in _adjacent(cell):
            upper += size
            d_out = _degree(n, m, cut, cell)
            d_in = _degree(n, m, cell, cut)
            lower += min(size, -(-taken * d_out // d_in))
    return BoundaryBounds(lower, upper)
