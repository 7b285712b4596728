"""Set-family representations.

A vertex of Q_n is an int bit vector: element e of [n] = {1, ..., n} lives
at bit e - 1. Three representations are provided:

* ``ExplicitFamily`` lists members, usable for n <= 24.
* ``ProfileFamily`` is a union of whole cells (a, b) = (|X & Y|, |X - Y|)
  for the prefix Y = {1, ..., m}; exact at any n.
* ``PaddedProfileFamily`` is a profile family plus an unspecified subset of
  known size taken from one extra cell.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import AmbientTooLarge, NotProfileSymmetric, PreconditionError
from .exactmath import binom

EXPLICIT_MAX_N = 24

__all__ = [
    "EXPLICIT_MAX_N",
    "ExplicitFamily",
    "ProfileFamily",
    "PaddedProfileFamily",
    "popcount",
    "to_elements",
    "from_elements",
    "slice_members",
    "ball_members",
    "family_size",
    "expand_profile",
    "profile_of",
    "cell_of",
    "family_to_dict",
    "family_from_dict",
    "dumps",
    "loads",
    "drop_bit",
    "insert_bit",
    "cell_members",
    "cell_size",
    "all_cells",
]


def popcount(x: int) -> int:
    return x.bit_count()


def to_elements(x: int) -> list[int]:
    """Bit vector -> sorted list of 1-based elements."""
    out = []
    e = 1
    while x:
        if x & 1:
            out.append(e)
        x >>= 1
        e += 1
    return out


def from_elements(elements: Iterable[int]) -> int:
    x = 0
    for e in elements:
        if e < 1:
            raise PreconditionError(f"elements are 1-based, got {e}")
        x |= 1 << (e - 1)
    return x


def _check_explicit_n(n: int) -> None:
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if n > EXPLICIT_MAX_N:
        raise AmbientTooLarge(f"explicit families are capped at n <= {EXPLICIT_MAX_N}, got {n}")


def slice_members(n: int, r: int) -> list[int]:
    """All r-subsets of [n] in colex order."""
    _check_explicit_n(n)
    if r < 0 or r > n:
        return []
    out = []
    for combo in itertools.combinations(range(n), r):
        x = 0
        for i in combo:
            x |= 1 << i
        out.append(x)
    out.sort()  # integer order of bit vectors is colex order
    return out


def ball_members(n: int, R: int) -> list[int]:
    out = []
    for r in range(0, min(R, n) + 1):
        out.extend(slice_members(n, r))
    return out


@dataclass(frozen=True)
class ExplicitFamily:
    n: int
    members: frozenset[int]
    layer: int | None = None

    def __post_init__(self):
        _check_explicit_n(self.n)
        members = frozenset(int(x) for x in self.members)
        object.__setattr__(self, "members", members)
        limit = 1 << self.n
        for x in members:
            if x < 0 or x >= limit:
                raise PreconditionError(f"member {x:#x} is not a subset of [{self.n}]")
        if self.layer is not None:
            if not 0 <= self.layer <= self.n:
                raise PreconditionError(f"layer {self.layer} outside 0..{self.n}")
            for x in members:
                if x.bit_count() != self.layer:
                    raise PreconditionError(
                        f"member {to_elements(x)} does not have {self.layer} elements"
                    )

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], layer: int | None = None):
        return cls(n, frozenset(from_elements(s) for s in sets), layer)

    @classmethod
    def slice(cls, n: int, r: int) -> "ExplicitFamily":
        return cls(n, frozenset(slice_members(n, r)), r)

    @classmethod
    def ball(cls, n: int, R: int) -> "ExplicitFamily":
        return cls(n, frozenset(ball_members(n, R)))

    @classmethod
    def from_indicator(cls, n: int, indicator: np.ndarray, layer: int | None = None):
        return cls(n, frozenset(int(i) for i in np.flatnonzero(indicator)), layer)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def as_sets(self) -> list[list[int]]:
        return [to_elements(x) for x in sorted(self.members)]

    def indicator(self) -> np.ndarray:
        ind = np.zeros(1 << self.n, dtype=bool)
        if self.members:
            ind[np.fromiter(self.members, dtype=np.int64, count=len(self.members))] = True
        return ind

    def max_size(self) -> int:
        return max((x.bit_count() for x in self.members), default=-1)

    def with_layer(self, layer: int | None) -> "ExplicitFamily":
        return ExplicitFamily(self.n, self.members, layer)

    def infer_layer(self) -> "ExplicitFamily":
        """Tag the family with its common layer; an empty family needs a tag already."""
        if self.layer is not None:
            return self
        sizes = {x.bit_count() for x in self.members}
        if len(sizes) != 1:
            raise PreconditionError("family is not contained in a single layer")
        return self.with_layer(sizes.pop())


def _feasible(n: int, m: int, a: int, b: int) -> bool:
    return 0 <= a <= m and 0 <= b <= n - m


def cell_size(n: int, m: int, a: int, b: int) -> int:
    if not _feasible(n, m, a, b):
        return 0
    return binom(m, a) * binom(n - m, b)


@dataclass(frozen=True)
class ProfileFamily:
    n: int
    m: int
    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.m <= self.n:
            raise PreconditionError(f"need 0 <= m <= n, got n={self.n}, m={self.m}")
        cells = frozenset((int(a), int(b)) for a, b in self.cells)
        for a, b in cells:
            if not _feasible(self.n, self.m, a, b):
                raise PreconditionError(f"cell {(a, b)} infeasible for n={self.n}, m={self.m}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def build(cls, n: int, cells: Iterable[tuple[int, int]], m: int | None = None):
        return cls(n, n // 2 if m is None else m, frozenset(cells))

    @classmethod
    def ball(cls, n: int, R: int, m: int | None = None) -> "ProfileFamily":
        m = n // 2 if m is None else m
        return cls(n, m, frozenset(c for c in all_cells(n, m) if sum(c) <= R))

    @property
    def size(self) -> int:
        return sum(cell_size(self.n, self.m, a, b) for a, b in self.cells)

    def cell_size(self, a: int, b: int) -> int:
        return cell_size(self.n, self.m, a, b)

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells, key=lambda c: (c[0] + c[1], c[0]))

    def layer_sizes(self, R: int | None = None) -> list[int]:
        top = self.n if R is None else R
        out = [0] * (top + 1)
        for a, b in self.cells:
            if a + b <= top:
                out[a + b] += self.cell_size(a, b)
        return out


def all_cells(n: int, m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(m + 1) for b in range(n - m + 1)]


@dataclass(frozen=True)
class PaddedProfileFamily:
    """``base`` plus ``taken`` unspecified members of the cell ``cut_cell``."""

    base: ProfileFamily
    cut_cell: tuple[int, int] | None = None
    taken: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.cut_cell is None:
            if self.taken:
                raise PreconditionError("taken must be 0 without a cut cell")
            return
        cut = (int(self.cut_cell[0]), int(self.cut_cell[1]))
        object.__setattr__(self, "cut_cell", cut)
        if cut in self.base.cells:
            raise PreconditionError(f"cut cell {cut} already belongs to the base")
        full = self.base.cell_size(*cut)
        if full == 0:
            raise PreconditionError(f"cut cell {cut} is infeasible")
        if not 0 <= self.taken <= full:
            raise PreconditionError(f"taken={self.taken} outside 0..{full}")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def size(self) -> int:
        return self.base.size + self.taken


def family_size(f) -> int:
    return f.size


def cell_of(x: int, m: int) -> tuple[int, int]:
    low = (1 << m) - 1
    return ((x & low).bit_count(), (x & ~low).bit_count())


def _cell_members(n: int, m: int, a: int, b: int) -> list[int]:
    out = []
    for ya in itertools.combinations(range(m), a):
        head = 0
        for i in ya:
            head |= 1 << i
        for yb in itertools.combinations(range(m, n), b):
            x = head
            for i in yb:
                x |= 1 << i
            out.append(x)
    out.sort()
    return out


def cell_members(n: int, m: int, a: int, b: int) -> list[int]:
    """Members of cell (a, b) in colex order."""
    _check_explicit_n(n)
    if not _feasible(n, m, a, b):
        return []
    return _cell_members(n, m, a, b)


def expand_profile(p, layer: int | None = None) -> ExplicitFamily:
    """Materialize a profile family (or padded family) as an explicit family.

    For a padded family the taken members are the first ``taken`` members of
    the cut cell in colex order.
    """
    if isinstance(p, PaddedProfileFamily):
        base = expand_profile(p.base)
        extra = set()
        if p.cut_cell is not None:
            extra = set(cell_members(p.n, p.m, *p.cut_cell)[: p.taken])
        return ExplicitFamily(p.n, base.members | extra, layer)
    _check_explicit_n(p.n)
    members = set()
    for a, b in p.cells:
        members.update(_cell_members(p.n, p.m, a, b))
    if layer is None:
        layers = {a + b for a, b in p.cells}
        if len(layers) == 1:
            layer = layers.pop()
    return ExplicitFamily(p.n, frozenset(members), layer)


def profile_of(f: ExplicitFamily, m: int | None = None) -> ProfileFamily:
    n = f.n
    m = n // 2 if m is None else m
    if not 0 <= m <= n:
        raise PreconditionError(f"need 0 <= m <= n, got m={m}")
    counts: dict[tuple[int, int], int] = {}
    for x in f.members:
        cell = cell_of(x, m)
        counts[cell] = counts.get(cell, 0) + 1
    for cell, count in counts.items():
        full = cell_size(n, m, *cell)
        if count != full:
            raise NotProfileSymmetric(
                f"cell {cell} holds {count} of its {full} members"
            )
    return ProfileFamily(n, m, frozenset(counts))


# -- serialization -----------------------------------------------------------


def family_to_dict(f) -> dict:
    if isinstance(f, ExplicitFamily):
        return {
            "n": f.n,
            "repr": "explicit",
            "layer": f.layer,
            "size": f.size,
            "members": f.as_sets(),
        }
    if isinstance(f, ProfileFamily):
        return {
            "n": f.n,
            "repr": "profile",
            "m": f.m,
            "size": f.size,
            "cells": [list(c) for c in f.sorted_cells()],
        }
    if isinstance(f, PaddedProfileFamily):
        return {
            "n": f.n,
            "repr": "padded",
            "m": f.m,
            "size": f.size,
            "cells": [list(c) for c in f.base.sorted_cells()],
            "cut_cell": None if f.cut_cell is None else list(f.cut_cell),
            "taken": f.taken,
        }
    raise TypeError(f"not a family: {type(f).__name__}")


def family_from_dict(d: dict):
    kind = d.get("repr")
    n = d["n"]
    if kind == "explicit":
        return ExplicitFamily.from_sets(n, d["members"], d.get("layer"))
    if kind == "profile":
        return ProfileFamily(n, d["m"], frozenset(tuple(c) for c in d["cells"]))
    if kind == "padded":
        base = ProfileFamily(n, d["m"], frozenset(tuple(c) for c in d["cells"]))
        cut = d.get("cut_cell")
        return PaddedProfileFamily(base, None if cut is None else tuple(cut), d.get("taken", 0))
    raise PreconditionError(f"unknown family repr {kind!r}")


def dumps(f) -> str:
    return json.dumps(family_to_dict(f), sort_keys=True)


def loads(text: str):
    return family_from_dict(json.loads(text))


def drop_bit(x: int, e: int) -> int:
    """Remove element e from the ground set, renumbering e+1.. down by one."""
    i = e - 1
    low = x & ((1 << i) - 1)
    return low | ((x >> (i + 1)) << i)


def insert_bit(x: int, e: int, value: int = 0) -> int:
    """Inverse of ``drop_bit``: reinsert element e, present iff ``value``."""
    i = e - 1
    low = x & ((1 << i) - 1)
    return low | (value << i) | ((x >> i) << (i + 1))
