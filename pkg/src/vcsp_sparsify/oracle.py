"""Brute-force ground truth.

Everything here enumerates all 2^n subsets (or assignments) and compares
values exactly, up to floating-point summation noise of 1e-9 times the total
weight involved.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from .double_cover import (
    AND_FAMILY_MAPS, SINGLE_SET_MAPS, TRIPLE_SET_MAPS, apply_set_map_batch, gamma,
)
from .model import (
    WeightedDigraph, assignment_from_index, iter_assignment_chunks, predicate_value_batch,
)
from .predicates import ALL_PREDICATES, AND, CUT, OR, UNCUT, Predicate
from .sparsifier import QuadraticFormKind, quadratic_form_batch

MAX_ENUMERATION_N = 24
REL_TOL = 1e-9

# evaluator(obj, rows) -> one value per boolean row
BatchEvaluator = Callable[[object, np.ndarray], np.ndarray]


class EnumerationTooLarge(ValueError):
    pass


@dataclass
class VerificationResult:
    max_rel_error: float
    witness: tuple[int, ...] | None = None
    zero_mismatch: bool = False
    checked: int = 0

    def passes(self, eps: float) -> bool:
        return not self.zero_mismatch and self.max_rel_error <= eps

    def to_dict(self) -> dict:
        return {
            "max_rel_error": self.max_rel_error,
            "witness": None if self.witness is None else list(self.witness),
            "zero_mismatch": self.zero_mismatch,
            "checked": self.checked,
        }


def _check_n(n: int, limit: int = MAX_ENUMERATION_N):
    if n > limit:
        raise EnumerationTooLarge(
            f"exhaustive check over 2^{n} assignments refused (limit n <= {limit}); "
            "use sampled verification for larger instances"
        )


def _scale(original, sparsified, a, b) -> float:
    totals = [x.total_weight() for x in (original, sparsified) if hasattr(x, "total_weight")]
    if len(totals) == 2:
        return max(1.0, *totals)
    return max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))


def exhaustive_max_error(original, sparsified, evaluator: BatchEvaluator, n: int) -> VerificationResult:
    """Largest |sparsified - original| / original over all 2^n assignments.

    An assignment where the original value is zero but the sparsified value is
    not sets ``zero_mismatch`` and is reported as the witness; such an
    assignment is never covered by a (1 +- eps) guarantee.  Time grows as
    2^n times the instance size, roughly a minute for n = 24 and a few
    thousand constraints.
    """
    _check_n(n)
    best_err, best_idx = 0.0, None
    mismatch_idx = None
    atol = None
    for start, X in iter_assignment_chunks(n):
        a = np.asarray(evaluator(sparsified, X), dtype=np.float64)
        b = np.asarray(evaluator(original, X), dtype=np.float64)
        if atol is None:
            atol = REL_TOL * _scale(original, sparsified, a, b)
        diff = np.abs(a - b)
        diff[diff <= atol] = 0.0
        zero = np.abs(b) <= atol
        if mismatch_idx is None and np.any(zero & (diff > 0)):
            mismatch_idx = start + int(np.flatnonzero(zero & (diff > 0))[0])
        with np.errstate(divide="ignore", invalid="ignore"):
            rel = np.where(zero, 0.0, diff / np.where(zero, 1.0, np.abs(b)))
        k = int(np.argmax(rel))
        if rel[k] > best_err:
            best_err, best_idx = float(rel[k]), start + k
    if mismatch_idx is not None:
        # witness points at the mismatch; max_rel_error still covers the nonzero rows
        return VerificationResult(best_err, assignment_from_index(mismatch_idx, n), True, 1 << n)
    witness = None if best_idx is None else assignment_from_index(best_idx, n)
    return VerificationResult(best_err, witness, False, 1 << n)


def predicate_evaluator(p: Predicate) -> BatchEvaluator:
    return lambda g, X: predicate_value_batch(g, p, X)


def _total(g: WeightedDigraph) -> float:
    return max(1.0, g.total_weight())


@dataclass
class IdentityReport:
    """Violations per predicate name; each violation is (subset, lhs, rhs)."""

    kind: dict[str, str] = field(default_factory=dict)
    violations: dict[str, list[tuple[frozenset, float, float]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())


def _subset(row: np.ndarray) -> frozenset:
    return frozenset(int(i) for i in np.flatnonzero(row))


def check_reduction_identities(
    g: WeightedDigraph,
    single_maps=None,
    triple_maps=None,
    and_maps=None,
    max_n: int = 10,
) -> IdentityReport:
    """Verify every set-map identity on ``g`` over all subsets.

    The map tables can be overridden, which is how the tests plant faults.
    """
    _check_n(g.n, max_n)
    single_maps = SINGLE_SET_MAPS if single_maps is None else single_maps
    triple_maps = TRIPLE_SET_MAPS if triple_maps is None else triple_maps
    and_maps = AND_FAMILY_MAPS if and_maps is None else and_maps
    cover = gamma(g).graph
    atol = REL_TOL * _total(g)
    report = IdentityReport()
    for start, X in iter_assignment_chunks(g.n):
        for p in ALL_PREDICATES:
            if p in single_maps:
                lhs = predicate_value_batch(g, p, X)
                rhs = predicate_value_batch(cover, CUT, apply_set_map_batch(single_maps[p], X))
                kind = "single"
            elif p in triple_maps:
                lhs = predicate_value_batch(g, p, X)
                rhs = 0.5 * sum(
                    predicate_value_batch(cover, CUT, apply_set_map_batch(parts, X)) for parts in triple_maps[p]
                )
                kind = "triple"
            elif p in and_maps:
                lhs = predicate_value_batch(g, AND, X)
                rhs = predicate_value_batch(cover, p, apply_set_map_batch(and_maps[p], X))
                kind = "and-family"
            else:
                continue
            report.kind[p.name] = kind
            bad = report.violations.setdefault(p.name, [])
            for i in np.flatnonzero(np.abs(lhs - rhs) > atol):
                bad.append((_subset(X[i]), float(lhs[i]), float(rhs[i])))
    return report


def weighted_degrees(g: WeightedDigraph) -> np.ndarray:
    """Undirected weighted degree; a self-loop counts twice."""
    return np.bincount(g.src, g.weight, g.n) + np.bincount(g.dst, g.weight, g.n)


def check_or2cut(g: WeightedDigraph, max_n: int = 12) -> bool:
    """Cut(S) == 2 Or(S) - sum of degrees over S, for every S."""
    _check_n(g.n, max_n)
    deg = weighted_degrees(g)
    atol = REL_TOL * _total(g)
    for _, X in iter_assignment_chunks(g.n):
        cut = predicate_value_batch(g, CUT, X)
        rhs = 2 * predicate_value_batch(g, OR, X) - X @ deg
        if np.any(np.abs(cut - rhs) > atol):
            return False
    return True


def check_uncut_quadratic(g: WeightedDigraph, max_n: int = 12) -> bool:
    """phi_S^T U phi_S == 4 unCut(S) for every S, with phi_S the +-1 sign vector."""
    _check_n(g.n, max_n)
    atol = REL_TOL * _total(g)
    for _, X in iter_assignment_chunks(g.n):
        phi = np.where(X, 1.0, -1.0)
        lhs = quadratic_form_batch(g, QuadraticFormKind.NEGATED_LAPLACIAN, phi)
        if np.any(np.abs(lhs - 4 * predicate_value_batch(g, UNCUT, X)) > 4 * atol):
            return False
    return True


def is_strongly_asymmetric(g: WeightedDigraph) -> bool:
    pairs = set(zip(g.src.tolist(), g.dst.tolist()))
    return all((v, u) not in pairs for u, v in pairs)


@dataclass(frozen=True)
class AndViolation:
    subset: frozenset
    original_value: float
    candidate_value: float


def and_completeness_check(g: WeightedDigraph, candidate: WeightedDigraph) -> AndViolation | None:
    """Find a pair {u, v} on which ``candidate`` cannot approximate And on ``g``.

    Returns None exactly when the candidate has the same edge set as ``g``.
    """
    if g.m and np.any(g.weight <= 0):
        raise ValueError("weights must be strictly positive")
    if not is_strongly_asymmetric(g):
        raise ValueError("graph is not strongly asymmetric")
    if candidate.n != g.n:
        raise ValueError("candidate must live on the same vertex set")
    mine = list(dict.fromkeys(zip(g.src.tolist(), g.dst.tolist())))
    theirs = list(dict.fromkeys(zip(candidate.src.tolist(), candidate.dst.tolist())))
    theirs_set, mine_set = set(theirs), set(mine)
    missing = [e for e in mine if e not in theirs_set] + [e for e in theirs if e not in mine_set]
    if not missing:
        return None
    u, v = missing[0]
    s = frozenset((u, v))
    row = np.zeros((1, g.n), dtype=bool)
    row[0, list(s)] = True
    return AndViolation(
        s,
        float(predicate_value_batch(g, AND, row)[0]),
        float(predicate_value_batch(candidate, AND, row)[0]),
    )
