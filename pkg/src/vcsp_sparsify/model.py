"""VCSP instances, weighted digraphs and their valuations.

Vertex subsets are plain ``frozenset``s of vertex indices in the scalar API.
The batch evaluators take a boolean matrix with one row per subset (or
assignment) and one column per vertex, which is what the exhaustive oracles
feed them.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .predicates import Predicate

VertexSet = frozenset
Assignment = tuple


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Directed multigraph on vertices ``0..n-1`` with strictly positive weights.

    Edge ``k`` runs from ``src[k]`` to ``dst[k]``.  Parallel edges and
    self-loops are allowed; edge order is significant and kept by every
    transformation in this package.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        src = np.array(self.src, dtype=np.int64).reshape(-1)
        dst = np.array(self.dst, dtype=np.int64).reshape(-1)
        weight = np.array(self.weight, dtype=np.float64).reshape(-1)
        if not (len(src) == len(dst) == len(weight)):
            raise ValueError("src, dst and weight must have equal length")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(src) and (src.min() < 0 or dst.min() < 0 or src.max() >= self.n or dst.max() >= self.n):
            raise ValueError(f"edge endpoint out of range [0, {self.n})")
        if not np.all(np.isfinite(weight)) or np.any(weight <= 0):
            raise ValueError("edge weights must be finite and strictly positive")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "src", _readonly(src))
        object.__setattr__(self, "dst", _readonly(dst))
        object.__setattr__(self, "weight", _readonly(weight))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "WeightedDigraph":
        edges = list(edges)
        if not edges:
            return cls(n, [], [], [])
        src, dst, w = zip(*edges)
        return cls(n, src, dst, w)

    @property
    def m(self) -> int:
        return len(self.weight)

    @property
    def edges(self) -> list[tuple[int, int, float]]:
        return [(int(u), int(v), float(w)) for u, v, w in zip(self.src, self.dst, self.weight)]

    def total_weight(self) -> float:
        return float(self.weight.sum())

    def subgraph(self, index, weight=None) -> "WeightedDigraph":
        """Keep edges ``index`` (in the given order), optionally re-weighted."""
        index = np.asarray(index, dtype=np.int64)
        w = self.weight[index] if weight is None else weight
        return WeightedDigraph(self.n, self.src[index], self.dst[index], w)

    def without_edge(self, k: int) -> "WeightedDigraph":
        keep = np.delete(np.arange(self.m), k)
        return self.subgraph(keep)

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weight, other.weight)
        )

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, m={self.m})"


class Constraint(NamedTuple):
    u: int
    v: int
    predicate: Predicate
    weight: float


ConstraintLike = Union[Constraint, Sequence]


def _as_constraint(c: ConstraintLike) -> Constraint:
    u, v, p, w = c
    if isinstance(p, str):
        p = Predicate.from_name(p)
    elif not isinstance(p, Predicate):
        raise TypeError(f"expected a Predicate or predicate name, got {p!r}")
    return Constraint(int(u), int(v), p, float(w))


@dataclass(frozen=True)
class VcspInstance:
    """Variables ``0..n-1`` and weighted two-variable constraints.

    Zero-weight constraints are dropped on construction; parallel constraints
    are kept as separate entries.
    """

    n: int
    constraints: tuple[Constraint, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be nonnegative")
        kept = []
        for i, c in enumerate(self.constraints):
            c = _as_constraint(c)
            if not (0 <= c.u < self.n and 0 <= c.v < self.n):
                raise ValueError(f"constraint {i}: variable index out of range [0, {self.n})")
            if not math.isfinite(c.weight) or c.weight < 0:
                raise ValueError(f"constraint {i}: weight must be finite and nonnegative, got {c.weight}")
            if c.weight > 0:
                kept.append(c)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "constraints", tuple(kept))

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def predicates(self) -> set[Predicate]:
        return {c.predicate for c in self.constraints}

    def total_weight(self) -> float:
        return float(sum(c.weight for c in self.constraints))


def build_instance(n: int, constraints: Iterable[ConstraintLike]) -> VcspInstance:
    return VcspInstance(n, tuple(constraints))


def set_from_assignment(a: Sequence[int]) -> VertexSet:
    """S_A: the variables set to 1."""
    return frozenset(i for i, x in enumerate(a) if x)


def assignment_from_set(s: Iterable[int], n: int) -> Assignment:
    s = set(s)
    return tuple(1 if i in s else 0 for i in range(n))


def value(inst: VcspInstance, a: Sequence[int]) -> float:
    if len(a) != inst.n:
        raise ValueError(f"assignment has length {len(a)}, instance has {inst.n} variables")
    return float(sum(c.weight * c.predicate(a[c.u], a[c.v]) for c in inst.constraints))


def _as_rows(X, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=bool)
    if X.ndim == 1:
        X = X[None, :]
    if X.shape[1] != n:
        raise ValueError(f"expected {n} columns, got {X.shape[1]}")
    return X


def _table_sum(tables, u, v, w, X) -> np.ndarray:
    # tables may be a scalar or one table per constraint
    idx = 2 * X[:, u].astype(np.int64) + X[:, v]
    sat = (np.asarray(tables, dtype=np.int64) >> idx) & 1
    return sat @ w


def value_batch(inst: VcspInstance, X) -> np.ndarray:
    """Values of many assignments at once; ``X`` has one row per assignment."""
    X = _as_rows(X, inst.n)
    if not inst.constraints:
        return np.zeros(len(X))
    u = np.array([c.u for c in inst.constraints])
    v = np.array([c.v for c in inst.constraints])
    t = np.array([c.predicate.table for c in inst.constraints])
    w = np.array([c.weight for c in inst.constraints])
    return _table_sum(t, u, v, w, X)


def to_digraph(inst: VcspInstance, p: Predicate | None = None) -> WeightedDigraph:
    """The digraph of a single-predicate instance: one edge per constraint."""
    preds = inst.predicates
    if p is None:
        if len(preds) != 1:
            raise ValueError("predicate must be given unless the instance uses exactly one")
        (p,) = preds
    elif preds - {p}:
        others = ", ".join(sorted(q.name for q in preds - {p}))
        raise ValueError(f"instance contains constraints with predicates other than {p.name}: {others}")
    return WeightedDigraph.from_edges(inst.n, [(c.u, c.v, c.weight) for c in inst.constraints])


def from_digraph(g: WeightedDigraph, p: Predicate) -> VcspInstance:
    return VcspInstance(g.n, tuple(Constraint(u, v, p, w) for u, v, w in g.edges))


def predicate_value(g: WeightedDigraph, p: Predicate, s: Iterable[int]) -> float:
    s = set(s)
    return float(sum(w * p(u in s, v in s) for u, v, w in g.edges))


def predicate_value_batch(g: WeightedDigraph, p: Predicate, X) -> np.ndarray:
    X = _as_rows(X, g.n)
    if g.m == 0:
        return np.zeros(len(X))
    return _table_sum(p.table, g.src, g.dst, g.weight, X)


def partition_by_predicate(inst: VcspInstance) -> dict[Predicate, VcspInstance]:
    groups: dict[Predicate, list[Constraint]] = {}
    for c in inst.constraints:
        groups.setdefault(c.predicate, []).append(c)
    return {p: VcspInstance(inst.n, tuple(groups[p])) for p in sorted(groups)}


def assignment_rows(n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows ``start..stop-1`` of the full 2^n enumeration; bit i of the row index is variable i."""
    stop = 1 << n if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)


def iter_assignment_chunks(n: int, chunk: int = 1 << 15) -> Iterator[tuple[int, np.ndarray]]:
    total = 1 << n
    for start in range(0, total, chunk):
        yield start, assignment_rows(n, start, min(total, start + chunk))


def assignment_from_index(index: int, n: int) -> Assignment:
    return tuple((index >> i) & 1 for i in range(n))
