"""Seeded random instances for tests, demos and benchmarks."""
from __future__ import annotations

import itertools

import numpy as np

from .applications import Equation, TwoLinSystem, TwoSatClause, TwoSatFormula
from .hypergraph import Clause, Hyperedge, Hypergraph, KSatFormula
from .model import Constraint, VcspInstance, WeightedDigraph
from .predicates import ALL_PREDICATES, Predicate


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _weights(rng, m, wmin, wmax):
    return rng.uniform(wmin, wmax, size=m)


def random_digraph(n, m, seed=None, wmin=0.1, wmax=10.0, self_loops=False) -> WeightedDigraph:
    """m directed edges with independent uniform endpoints; parallel edges allowed."""
    rng = _rng(seed)
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    if not self_loops and n > 1:
        clash = src == dst
        while clash.any():
            dst[clash] = rng.integers(0, n, size=int(clash.sum()))
            clash = src == dst
    return WeightedDigraph(n, src, dst, _weights(rng, m, wmin, wmax))


def random_strongly_asymmetric(n, m, seed=None, wmin=0.1, wmax=10.0) -> WeightedDigraph:
    """m edges on distinct unordered pairs, each given a random orientation."""
    rng = _rng(seed)
    pairs = list(itertools.combinations(range(n), 2))
    if m > len(pairs):
        raise ValueError(f"at most {len(pairs)} edges fit on {n} vertices")
    chosen = rng.choice(len(pairs), size=m, replace=False)
    edges = []
    for k, w in zip(chosen, _weights(rng, m, wmin, wmax)):
        u, v = pairs[k]
        if rng.random() < 0.5:
            u, v = v, u
        edges.append((u, v, w))
    return WeightedDigraph.from_edges(n, edges)


def random_instance(n, m, predicates=ALL_PREDICATES, seed=None, wmin=0.1, wmax=10.0) -> VcspInstance:
    rng = _rng(seed)
    g = random_digraph(n, m, rng, wmin, wmax)
    preds: list[Predicate] = list(predicates)
    picks = rng.integers(0, len(preds), size=m)
    return VcspInstance(n, tuple(Constraint(u, v, preds[k], w) for (u, v, w), k in zip(g.edges, picks)))


def random_2sat(n, m, seed=None, wmin=0.1, wmax=10.0) -> TwoSatFormula:
    rng = _rng(seed)
    clauses = []
    for w in _weights(rng, m, wmin, wmax):
        a, b = rng.choice(n, size=2, replace=False) + 1
        s = rng.choice([-1, 1], size=2)
        clauses.append(TwoSatClause(int(s[0] * a), int(s[1] * b), w))
    return TwoSatFormula(n, tuple(clauses))


def random_2lin(n, m, seed=None, wmin=0.1, wmax=10.0) -> TwoLinSystem:
    rng = _rng(seed)
    eqs = []
    for w in _weights(rng, m, wmin, wmax):
        u, v = rng.choice(n, size=2, replace=False)
        eqs.append(Equation(int(u), int(v), int(rng.integers(0, 2)), w))
    return TwoLinSystem(n, tuple(eqs))


def random_ksat(n, m, k=3, seed=None, wmin=0.1, wmax=10.0) -> KSatFormula:
    """k distinct variables per clause, random signs (so no tautologies)."""
    rng = _rng(seed)
    clauses = []
    for w in _weights(rng, m, wmin, wmax):
        vs = rng.choice(n, size=k, replace=False) + 1
        signs = rng.choice([-1, 1], size=k)
        clauses.append(Clause(tuple(int(s * v) for s, v in zip(signs, vs)), w))
    return KSatFormula(n, tuple(clauses))


def random_hypergraph(n, m, r=3, seed=None, wmin=0.1, wmax=10.0) -> Hypergraph:
    rng = _rng(seed)
    return Hypergraph(n, tuple(
        Hyperedge(tuple(int(v) for v in rng.choice(n, size=r, replace=False)), w)
        for w in _weights(rng, m, wmin, wmax)
    ))
