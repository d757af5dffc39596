"""Bipartite double cover of a digraph and the set maps that turn predicate
values on a graph into cut values on its cover.

Vertex ``i`` of the base graph has a positive copy at index ``i`` and a
negative copy at index ``i + base_n``.  Edge ``(i, j)`` becomes
``(i, j + base_n)``.

Set maps are written with four building blocks over a base subset S:
``"S"`` (positive copies of S), ``"~S"`` (positive copies of the
complement), ``"-S"`` and ``"-~S"`` (negative copies of each).
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .model import VertexSet, WeightedDigraph
from .predicates import (
    AND, CUT, DICUT, N01, N10, NAND, NOR, ONE, OR, P01, P0X, P1X, UNCUT, X0, X1, ZERO,
    Predicate,
)

# P_H(S) = Cut_cover(f(S))
# unCut uses S ∪ -~S; the alternative S ∪ ~S equals the map for "1" and
# fails the identity (checked exhaustively in the tests).
SINGLE_SET_MAPS: dict[Predicate, tuple[str, ...]] = {
    CUT: ("S", "-S"),
    UNCUT: ("S", "-~S"),
    P0X: ("~S",),
    X0: ("-~S",),
    X1: ("-S",),
    P1X: ("S",),
    ONE: ("S", "~S"),
    ZERO: (),
}

# P_H(S) = (Cut(f1) + Cut(f2) + Cut(f3)) / 2
TRIPLE_SET_MAPS: dict[Predicate, tuple[tuple[str, ...], ...]] = {
    OR: (("S",), ("-S",), ("S", "-S")),
    NAND: (("~S",), ("-~S",), ("~S", "-~S")),
    N10: (("~S",), ("-S",), ("~S", "-S")),
    N01: (("S",), ("-~S",), ("S", "-~S")),
}

# And_H(S) = P_cover(f(S))
AND_FAMILY_MAPS: dict[Predicate, tuple[str, ...]] = {
    AND: ("S", "-S"),
    NOR: ("~S", "-~S"),
    DICUT: ("S", "-~S"),
    P01: ("~S", "-S"),
}

_PARTS = {"S": (False, False), "~S": (False, True), "-S": (True, False), "-~S": (True, True)}


@dataclass(frozen=True)
class DoubleCoverGraph:
    base_n: int
    graph: WeightedDigraph

    def __post_init__(self):
        g = self.graph
        if g.n != 2 * self.base_n:
            raise ValueError(f"cover must have {2 * self.base_n} vertices, got {g.n}")
        if g.m and (g.src.max() >= self.base_n or g.dst.min() < self.base_n):
            raise ValueError("every cover edge must run from a positive copy to a negative copy")


def gamma(g: WeightedDigraph) -> DoubleCoverGraph:
    cover = WeightedDigraph(2 * g.n, g.src, g.dst + g.n, g.weight)
    return DoubleCoverGraph(g.n, cover)


def pull_back(cover: DoubleCoverGraph) -> WeightedDigraph:
    g = cover.graph
    if g.m and (g.src.max() >= cover.base_n or g.dst.min() < cover.base_n):
        raise ValueError("every cover edge must run from a positive copy to a negative copy")
    return WeightedDigraph(cover.base_n, g.src, g.dst - cover.base_n, g.weight)


def vertex_label(k: int, base_n: int) -> str:
    """``v<i>`` / ``v-<i>`` with 1-based i."""
    return f"v{k + 1}" if k < base_n else f"v-{k - base_n + 1}"


def apply_set_map(parts: Iterable[str], s: Iterable[int], base_n: int) -> VertexSet:
    s = set(s)
    out: set[int] = set()
    for part in parts:
        negative, complement = _PARTS[part]
        members = (i for i in range(base_n) if (i in s) != complement)
        out.update(i + base_n if negative else i for i in members)
    return frozenset(out)


def apply_set_map_batch(parts: Iterable[str], X) -> np.ndarray:
    """Row-wise version of :func:`apply_set_map` for a boolean (rows, base_n) matrix."""
    X = np.asarray(X, dtype=bool)
    pos = np.zeros_like(X)
    neg = np.zeros_like(X)
    for part in parts:
        negative, complement = _PARTS[part]
        block = ~X if complement else X
        if negative:
            neg |= block
        else:
            pos |= block
    return np.concatenate([pos, neg], axis=1)


def _lookup(table, p: Predicate, what: str):
    try:
        return table[p]
    except KeyError:
        raise ValueError(f"{what} map is not defined for predicate {p.name}") from None


def map_set_single(p: Predicate, s: Iterable[int], base_n: int) -> VertexSet:
    return apply_set_map(_lookup(SINGLE_SET_MAPS, p, "single-set"), s, base_n)


def map_set_triple(p: Predicate, s: Iterable[int], base_n: int) -> tuple[VertexSet, VertexSet, VertexSet]:
    s = set(s)
    return tuple(apply_set_map(parts, s, base_n) for parts in _lookup(TRIPLE_SET_MAPS, p, "triple-set"))


def map_set_and_family(p: Predicate, s: Iterable[int], base_n: int) -> VertexSet:
    return apply_set_map(_lookup(AND_FAMILY_MAPS, p, "And-family"), s, base_n)
