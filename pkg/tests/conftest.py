import itertools

import numpy as np
import pytest

from vcsp_sparsify.model import WeightedDigraph

# Truth tables written out as boolean formulas, independent of the bit encoding.
FORMULAS = {
    "0": lambda x, y: False,
    "nOr": lambda x, y: not (x or y),
    "01": lambda x, y: (not x) and y,
    "0x": lambda x, y: not x,
    "Dicut": lambda x, y: x and not y,
    "x0": lambda x, y: not y,
    "Cut": lambda x, y: x != y,
    "nAnd": lambda x, y: not (x and y),
    "And": lambda x, y: x and y,
    "unCut": lambda x, y: x == y,
    "x1": lambda x, y: y,
    "n10": lambda x, y: not (x and not y),
    "1x": lambda x, y: x,
    "n01": lambda x, y: not ((not x) and y),
    "Or": lambda x, y: x or y,
    "1": lambda x, y: True,
}


def brute_value(edges, name, s):
    """P_G(S) by looping over edges with the formula table."""
    f = FORMULAS[name]
    return sum(w for u, v, w in edges if f(u in s, v in s))


def brute_cut(edges, t):
    return sum(w for u, v, w in edges if (u in t) != (v in t))


def subsets(n):
    for r in range(n + 1):
        yield from (frozenset(c) for c in itertools.combinations(range(n), r))


@pytest.fixture
def unit_triangle():
    return WeightedDigraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, detail = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
