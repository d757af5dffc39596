"""Hypergraph cuts, k-SAT encoding and hyperedge sampling.

A k-SAT formula on n variables becomes a hypergraph on 2n + 1 vertices:
literal ``x_i`` is vertex ``i``, literal ``not x_i`` is vertex ``n + i`` and
vertex ``2n`` stands for "false".  Every clause is the hyperedge made of the
false vertex and its literals.  With S = {false literals} + {false vertex},
a clause is satisfied exactly when its hyperedge is cut by S.
"""
from __future__ import annotations

import math
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import minimum_spanning_tree

from .applications import _check_literal, _check_weight
from .model import _as_rows
from .sparsifier import SamplerConfig, sample_by_probability


class Hyperedge(NamedTuple):
    vertices: tuple[int, ...]
    weight: float


@dataclass(frozen=True)
class Hypergraph:
    n: int
    hyperedges: tuple[Hyperedge, ...] = ()

    def __post_init__(self):
        edges = []
        for i, (vs, w) in enumerate(self.hyperedges):
            vs = tuple(int(v) for v in vs)
            if not vs:
                raise ValueError(f"hyperedge {i} is empty")
            if len(set(vs)) != len(vs):
                raise ValueError(f"hyperedge {i} repeats a vertex")
            if any(not 0 <= v < self.n for v in vs):
                raise ValueError(f"hyperedge {i} has a vertex outside [0, {self.n})")
            w = float(w)
            if not math.isfinite(w) or w <= 0:
                raise ValueError(f"hyperedge {i} must have a finite positive weight")
            edges.append(Hyperedge(vs, w))
        object.__setattr__(self, "hyperedges", tuple(edges))

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    def total_weight(self) -> float:
        return float(sum(e.weight for e in self.hyperedges))

    def incidence(self) -> sp.csr_matrix:
        """Vertex-by-hyperedge 0/1 matrix."""
        rows = [v for e in self.hyperedges for v in e.vertices]
        cols = [k for k, e in enumerate(self.hyperedges) for _ in e.vertices]
        return sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.n, self.m))

    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.hyperedges])


def hypergraph_cut_value(h: Hypergraph, s) -> float:
    s = set(s)
    total = 0.0
    for vs, w in h.hyperedges:
        inside = sum(v in s for v in vs)
        if 0 < inside < len(vs):
            total += w
    return total


def hypergraph_cut_batch(h: Hypergraph, X) -> np.ndarray:
    X = _as_rows(X, h.n)
    if h.m == 0:
        return np.zeros(len(X))
    counts = np.asarray(h.incidence().T @ X.T.astype(np.float64)).T
    sizes = np.array([len(e.vertices) for e in h.hyperedges])
    cut = (counts > 0) & (counts < sizes)
    return cut @ h.weights()


# -- sampling -------------------------------------------------------------


def clique_expansion(h: Hypergraph) -> sp.csr_matrix:
    """Symmetric weights: a hyperedge of size r adds w/r to every pair it contains."""
    rows, cols, vals = [], [], []
    for vs, w in h.hyperedges:
        r = len(vs)
        for i in range(r):
            for j in range(i + 1, r):
                rows += [vs[i], vs[j]]
                cols += [vs[j], vs[i]]
                vals += [w / r, w / r]
    return sp.csr_matrix((vals, (rows, cols)), shape=(h.n, h.n))


def _max_spanning_forest(W: sp.csr_matrix) -> list[list[tuple[int, float]]]:
    W = sp.triu(W, k=1).tocoo()
    adj: list[list[tuple[int, float]]] = [[] for _ in range(W.shape[0])]
    if W.nnz == 0:
        return adj
    # flip the order so that a minimum spanning forest of C - w is a maximum one of w
    c = 2.0 * W.data.max()
    flipped = sp.csr_matrix((c - W.data, (W.row, W.col)), shape=W.shape)
    T = minimum_spanning_tree(flipped).tocoo()
    for i, j, t in zip(T.row, T.col, T.data):
        w = c - t
        adj[i].append((int(j), w))
        adj[j].append((int(i), w))
    return adj


def _bottlenecks_from(root: int, adj) -> dict[int, float]:
    """Largest minimum edge weight on a path from ``root`` to each reachable vertex."""
    best = {root: math.inf}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, w in adj[u]:
            if v not in best:
                best[v] = min(best[u], w)
                queue.append(v)
    return best


def connectivity_lower_bounds(h: Hypergraph) -> np.ndarray:
    """For each hyperedge, a lower bound on the min cut of the clique expansion separating its vertices.

    Any cut separating u and v crosses the maximum-spanning-forest path
    between them, so the smallest weight on that path bounds the cut from
    below.  Bottlenecks form an ultrametric, so checking pairs that share the
    first vertex of the hyperedge suffices.  Singletons get +inf.
    """
    adj = _max_spanning_forest(clique_expansion(h))
    cache: dict[int, dict[int, float]] = {}
    kappa = np.full(h.m, math.inf)
    for k, (vs, _) in enumerate(h.hyperedges):
        if len(vs) < 2:
            continue
        root = vs[0]
        if root not in cache:
            cache[root] = _bottlenecks_from(root, adj)
        kappa[k] = min(cache[root][v] for v in vs[1:])
    return kappa


def hyperedge_probabilities(h: Hypergraph, cfg: SamplerConfig) -> np.ndarray:
    if h.m == 0:
        return np.zeros(0)
    kappa = connectivity_lower_bounds(h)
    r = np.array([len(e.vertices) for e in h.hyperedges], dtype=np.float64)
    w = h.weights()
    # singletons are never cut, so they get probability 0
    raw = cfg.oversample_c * (r + math.log(h.n + 1)) * w / (kappa * cfg.eps**2)
    return np.minimum(1.0, raw)


def sample_hyperedges(h: Hypergraph, cfg: SamplerConfig) -> tuple[np.ndarray, np.ndarray]:
    return sample_by_probability(hyperedge_probabilities(h, cfg), h.weights(), cfg.seed)


def hypergraph_sparsifier(h: Hypergraph, cfg: SamplerConfig) -> Hypergraph:
    kept, w = sample_hyperedges(h, cfg)
    return Hypergraph(h.n, tuple(Hyperedge(h.hyperedges[k].vertices, wk) for k, wk in zip(kept, w)))


# -- k-SAT ----------------------------------------------------------------


class Clause(NamedTuple):
    literals: tuple[int, ...]
    weight: float


@dataclass(frozen=True)
class KSatFormula:
    """Weighted CNF over variables 1..n (DIMACS literals).

    Repeated literals inside a clause are merged.  Tautological clauses and
    their weight move into ``offset``, which every assignment collects.
    """

    n: int
    clauses: tuple[Clause, ...] = ()
    offset: float = 0.0

    def __post_init__(self):
        kept = []
        offset = _check_weight(self.offset, "offset")
        for i, (lits, w) in enumerate(self.clauses):
            where = f"clause {i}"
            lits = tuple(dict.fromkeys(_check_literal(l, self.n, where) for l in lits))
            w = _check_weight(w, where)
            if w == 0:
                continue
            if any(-l in lits for l in lits):
                offset += w
            else:
                kept.append(Clause(lits, w))
        object.__setattr__(self, "clauses", tuple(kept))
        object.__setattr__(self, "offset", offset)

    @property
    def k(self) -> int:
        return max((len(c.literals) for c in self.clauses), default=0)

    def total_weight(self) -> float:
        return self.offset + float(sum(c.weight for c in self.clauses))


def ksat_value(f: KSatFormula, a: Sequence[int]) -> float:
    def true(l):
        return bool(a[abs(l) - 1]) == (l > 0)
    return f.offset + float(sum(c.weight for c in f.clauses if any(true(l) for l in c.literals)))


def ksat_value_batch(f: KSatFormula, X) -> np.ndarray:
    X = _as_rows(X, f.n)
    out = np.full(len(X), f.offset)
    for lits, w in f.clauses:
        sat = np.zeros(len(X), dtype=bool)
        for l in lits:
            sat |= X[:, abs(l) - 1] if l > 0 else ~X[:, abs(l) - 1]
        out += w * sat
    return out


def literal_vertex(lit: int, n: int) -> int:
    return abs(lit) - 1 if lit > 0 else n + abs(lit) - 1


def encode_ksat(f: KSatFormula) -> Hypergraph:
    false_vertex = 2 * f.n
    return Hypergraph(2 * f.n + 1, tuple(
        Hyperedge((false_vertex,) + tuple(literal_vertex(l, f.n) for l in c.literals), c.weight)
        for c in f.clauses
    ))


def false_literal_set(a: Sequence[int]) -> frozenset:
    """The vertex set made of every false literal plus the false vertex."""
    n = len(a)
    return frozenset([i if not a[i] else n + i for i in range(n)] + [2 * n])


def false_literal_rows(X) -> np.ndarray:
    X = np.asarray(X, dtype=bool)
    return np.concatenate([~X, X, np.ones((len(X), 1), dtype=bool)], axis=1)


def sparsify_ksat(f: KSatFormula, cfg: SamplerConfig) -> KSatFormula:
    """Keep the clauses whose hyperedges survive hypergraph sampling, re-weighted."""
    kept, w = sample_hyperedges(encode_ksat(f), cfg)
    clauses = tuple(Clause(f.clauses[k].literals, wk) for k, wk in zip(kept, w))
    return KSatFormula(f.n, clauses, f.offset)
