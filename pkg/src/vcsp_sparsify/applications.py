"""2SAT and 2LIN encoders, k-Cut values and the Sum-mod-k witness.

Literals follow the DIMACS convention: variable ``i`` (0-based) appears as
``i + 1`` and its negation as ``-(i + 1)``.  2LIN equations use 0-based
variable indices directly.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import Constraint, VcspInstance, WeightedDigraph, _as_rows
from .predicates import CUT, N01, N10, NAND, OR, UNCUT


class TwoSatClause(NamedTuple):
    lit1: int
    lit2: int
    weight: float


class Equation(NamedTuple):
    u: int
    v: int
    rhs: int
    weight: float


def _check_weight(w: float, where: str) -> float:
    w = float(w)
    if not math.isfinite(w) or w < 0:
        raise ValueError(f"{where}: weight must be finite and nonnegative, got {w}")
    return w


def _check_literal(lit: int, n: int, where: str) -> int:
    lit = int(lit)
    if lit == 0 or abs(lit) > n:
        raise ValueError(f"{where}: literal {lit} does not name a variable in 1..{n}")
    return lit


@dataclass(frozen=True)
class TwoSatFormula:
    """Weighted 2-CNF; a unit clause is stored as (l, l). Zero weights are dropped."""

    n: int
    clauses: tuple[TwoSatClause, ...] = ()

    def __post_init__(self):
        kept = []
        for i, (l1, l2, w) in enumerate(self.clauses):
            where = f"clause {i}"
            c = TwoSatClause(_check_literal(l1, self.n, where), _check_literal(l2, self.n, where),
                             _check_weight(w, where))
            if c.weight > 0:
                kept.append(c)
        object.__setattr__(self, "clauses", tuple(kept))

    def total_weight(self) -> float:
        return float(sum(c.weight for c in self.clauses))


@dataclass(frozen=True)
class TwoLinSystem:
    """Weighted equations x_u + x_v = rhs (mod 2). Zero weights are dropped."""

    n: int
    equations: tuple[Equation, ...] = ()

    def __post_init__(self):
        kept = []
        for i, (u, v, rhs, w) in enumerate(self.equations):
            where = f"equation {i}"
            if not (0 <= int(u) < self.n and 0 <= int(v) < self.n):
                raise ValueError(f"{where}: variable index out of range [0, {self.n})")
            if int(rhs) not in (0, 1):
                raise ValueError(f"{where}: right-hand side must be 0 or 1, got {rhs}")
            e = Equation(int(u), int(v), int(rhs), _check_weight(w, where))
            if e.weight > 0:
                kept.append(e)
        object.__setattr__(self, "equations", tuple(kept))

    def total_weight(self) -> float:
        return float(sum(e.weight for e in self.equations))


def _literal_true(lit: int, a: Sequence[int]) -> bool:
    x = a[abs(lit) - 1]
    return bool(x) if lit > 0 else not x


def twosat_value(f: TwoSatFormula, a: Sequence[int]) -> float:
    return float(sum(c.weight for c in f.clauses if _literal_true(c.lit1, a) or _literal_true(c.lit2, a)))


def _literal_batch(lit: int, X: np.ndarray) -> np.ndarray:
    col = X[:, abs(lit) - 1]
    return col if lit > 0 else ~col


def twosat_value_batch(f: TwoSatFormula, X) -> np.ndarray:
    X = _as_rows(X, f.n)
    out = np.zeros(len(X))
    for c in f.clauses:
        out += c.weight * (_literal_batch(c.lit1, X) | _literal_batch(c.lit2, X))
    return out


# sign pattern (lit1 positive, lit2 positive) -> predicate on (var1, var2)
_TWOSAT_PREDICATES = {(True, True): OR, (False, False): NAND, (False, True): N10, (True, False): N01}
_TWOSAT_SIGNS = {p: signs for signs, p in _TWOSAT_PREDICATES.items()}


def encode_2sat(f: TwoSatFormula) -> VcspInstance:
    return VcspInstance(f.n, tuple(
        Constraint(abs(c.lit1) - 1, abs(c.lit2) - 1, _TWOSAT_PREDICATES[c.lit1 > 0, c.lit2 > 0], c.weight)
        for c in f.clauses
    ))


def decode_2sat(inst: VcspInstance) -> TwoSatFormula:
    clauses = []
    for c in inst.constraints:
        if c.predicate not in _TWOSAT_SIGNS:
            raise ValueError(f"predicate {c.predicate.name} is not a 2SAT clause")
        s1, s2 = _TWOSAT_SIGNS[c.predicate]
        clauses.append(TwoSatClause((c.u + 1) * (1 if s1 else -1), (c.v + 1) * (1 if s2 else -1), c.weight))
    return TwoSatFormula(inst.n, tuple(clauses))


def twolin_value(sys: TwoLinSystem, a: Sequence[int]) -> float:
    return float(sum(e.weight for e in sys.equations if (a[e.u] + a[e.v]) % 2 == e.rhs))


def twolin_value_batch(sys: TwoLinSystem, X) -> np.ndarray:
    X = _as_rows(X, sys.n)
    out = np.zeros(len(X))
    for e in sys.equations:
        out += e.weight * ((X[:, e.u] ^ X[:, e.v]) == bool(e.rhs))
    return out


def encode_2lin(sys: TwoLinSystem) -> VcspInstance:
    return VcspInstance(sys.n, tuple(
        Constraint(e.u, e.v, CUT if e.rhs else UNCUT, e.weight) for e in sys.equations
    ))


def decode_2lin(inst: VcspInstance) -> TwoLinSystem:
    eqs = []
    for c in inst.constraints:
        if c.predicate not in (CUT, UNCUT):
            raise ValueError(f"predicate {c.predicate.name} is not a 2LIN equation")
        eqs.append(Equation(c.u, c.v, int(c.predicate == CUT), c.weight))
    return TwoLinSystem(inst.n, tuple(eqs))


def _labels_from_parts(parts: Iterable[Iterable[int]], n: int) -> np.ndarray:
    labels = np.full(n, -1)
    for b, block in enumerate(parts):
        for v in block:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range [0, {n})")
            if labels[v] != -1:
                raise ValueError(f"vertex {v} appears in more than one block")
            labels[v] = b
    if np.any(labels < 0):
        raise ValueError(f"blocks do not cover vertices {np.flatnonzero(labels < 0).tolist()}")
    return labels


def k_cut_value(g: WeightedDigraph, parts: Iterable[Iterable[int]]) -> float:
    """Weight of edges whose endpoints lie in different blocks of ``parts``."""
    labels = _labels_from_parts(parts, g.n)
    return float(g.weight @ (labels[g.src] != labels[g.dst]))


def k_cut_value_labels(g: WeightedDigraph, labels: Sequence[int]) -> float:
    labels = np.asarray(labels)
    return float(g.weight @ (labels[g.src] != labels[g.dst]))


def sum_mod_k_witness(k: int, a: int) -> tuple[int, int, int]:
    """First (x, y, z) in lexicographic order with x+y = a but z+x, z+y, 2z != a (mod k)."""
    if k < 3:
        raise ValueError(f"no witness is available for alphabet size {k} < 3")
    if not 0 <= a < k:
        raise ValueError(f"residue {a} not in [0, {k})")
    for x, y, z in itertools.product(range(k), repeat=3):
        if (x + y) % k == a and (z + x) % k != a and (z + y) % k != a and (2 * z) % k != a:
            return x, y, z
    raise AssertionError(f"no witness for k={k}, a={a}")


def sum_mod_value(g: WeightedDigraph, k: int, a: int, assignment: Sequence[int]) -> float:
    """Weight of edges (u, v) with x_u + x_v = a (mod k)."""
    x = np.asarray(assignment, dtype=np.int64)
    return float(g.weight @ (((x[g.src] + x[g.dst]) % k) == a))


def demonstrate_sum_nonsparsifiable(g: WeightedDigraph, dropped_edge: int, k: int, a: int) -> tuple[int, ...]:
    """Assignment on which ``g`` has Sum_a value w(e) while ``g`` minus edge e has 0.

    The gap is exact when ``g`` has no other edge between the endpoints of e.
    """
    if g.m and np.any(g.weight <= 0):
        raise ValueError("weights must be strictly positive")
    u, v = int(g.src[dropped_edge]), int(g.dst[dropped_edge])
    if u == v:
        raise ValueError("cannot separate the endpoints of a self-loop")
    x, y, z = sum_mod_k_witness(k, a)
    assignment = [z] * g.n
    assignment[u], assignment[v] = x, y
    return tuple(assignment)
