"""Naive set-based oracles shared by the test modules.

These deliberately use frozensets of Python ints and nothing from the
package beyond plain data, so they can be compared against the numpy paths.
"""

import itertools

import pytest


def subsets(n, r=None):
    ground = range(1, n + 1)
    sizes = range(n + 1) if r is None else [r]
    for k in sizes:
        for combo in itertools.combinations(ground, k):
            yield frozenset(combo)


def naive_boundary(family, n, R=None):
    fam = set(family)
    out = set()
    for x in fam:
        for e in range(1, n + 1):
            y = x ^ {e}
            if y not in fam and (R is None or len(y) <= R):
                out.add(frozenset(y))
    return out


def naive_lower_shadow(family):
    return {x - {e} for x in family for e in x}


def naive_upper_shadow(family, n):
    return {x | {e} for x in family for e in range(1, n + 1) if e not in x}


def to_sets(members):
    """Bit-vector members -> set of frozensets of 1-based elements."""
    out = set()
    for x in members:
        out.add(frozenset(i + 1 for i in range(x.bit_length()) if x >> i & 1))
    return out


def to_bits(sets):
    return {sum(1 << (e - 1) for e in s) for s in sets}


@pytest.fixture
def oracle():
    class O:
        pass

    o = O()
    o.subsets = subsets
    o.boundary = naive_boundary
    o.lower = naive_lower_shadow
    o.upper = naive_upper_shadow
    o.to_sets = to_sets
    o.to_bits = to_bits
    return o


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
