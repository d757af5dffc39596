"""Leverage-score sampling of weighted graphs.

Two quadratic forms are supported, both with edge direction ignored:

* the Laplacian, ``sum w * (x_i - x_j)**2``
* the negated (signless) Laplacian, ``sum w * (x_i + x_j)**2``

Each edge is kept independently with probability
``min(1, c * leverage * ln(n + 1) / eps**2)`` and, if kept, re-weighted by
``1 / probability``.  The output is an edge subset of the input in input
order, with directions preserved.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg

from .model import WeightedDigraph

log = logging.getLogger(__name__)

DENSE_LIMIT = 2048
_MASK64 = (1 << 64) - 1


class QuadraticFormKind(enum.Enum):
    LAPLACIAN = "Laplacian"
    NEGATED_LAPLACIAN = "NegatedLaplacian"


class LeverageMode(enum.Enum):
    EXACT = "LeverageExact"
    APPROX = "LeverageApprox"


@dataclass(frozen=True)
class SamplerConfig:
    eps: float
    seed: int = 0
    oversample_c: float = 8.0
    mode: LeverageMode = LeverageMode.EXACT

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if not self.oversample_c > 0:
            raise ValueError(f"oversample_c must be positive, got {self.oversample_c}")


def sign_vector(s, n: int) -> np.ndarray:
    """+1 on members of ``s``, -1 elsewhere."""
    phi = -np.ones(n)
    phi[list(s)] = 1.0
    return phi


def indicator_vector(s, n: int) -> np.ndarray:
    x = np.zeros(n)
    x[list(s)] = 1.0
    return x


def _sign(kind: QuadraticFormKind) -> float:
    return -1.0 if kind is QuadraticFormKind.LAPLACIAN else 1.0


def quadratic_form(g: WeightedDigraph, kind: QuadraticFormKind, x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, graph has {g.n} vertices")
    d = x[g.src] + _sign(kind) * x[g.dst]
    return float(g.weight @ (d * d))


def quadratic_form_batch(g: WeightedDigraph, kind: QuadraticFormKind, X) -> np.ndarray:
    """Quadratic form of every row of ``X``."""
    X = np.asarray(X, dtype=np.float64)
    d = X[:, g.src] + _sign(kind) * X[:, g.dst]
    return (d * d) @ g.weight


def incidence(g: WeightedDigraph, kind: QuadraticFormKind) -> sp.csr_matrix:
    """Rows are the b_e vectors; a self-loop gives 0 (Laplacian) or 2 e_i."""
    m = g.m
    rows = np.concatenate([np.arange(m), np.arange(m)])
    cols = np.concatenate([g.src, g.dst])
    vals = np.concatenate([np.ones(m), np.full(m, _sign(kind))])
    # duplicate entries are summed, which handles self-loops
    return sp.csr_matrix((vals, (rows, cols)), shape=(m, g.n))


def form_matrix(g: WeightedDigraph, kind: QuadraticFormKind) -> sp.csr_matrix:
    B = incidence(g, kind)
    return (B.T @ sp.diags(g.weight) @ B).tocsr()


def _effective_resistances_dense(B: sp.csr_matrix, M: np.ndarray) -> np.ndarray:
    lam, V = np.linalg.eigh(M)
    tol = 1e-10 * max(float(np.abs(lam).max(initial=0.0)), 1e-300)
    keep = lam > tol
    # rows of Y are b_e^T V diag(lam^-1/2) restricted to the range of M
    Y = B @ (V[:, keep] / np.sqrt(lam[keep]))
    return np.einsum("ij,ij->i", Y, Y)


def _effective_resistances_cg(g: WeightedDigraph, kind: QuadraticFormKind, M: sp.csr_matrix) -> np.ndarray:
    # b_e^T M^+ b_e does not depend on edge direction; parallel edges share one solve
    pairs = np.stack([np.minimum(g.src, g.dst), np.maximum(g.src, g.dst)], axis=1)
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    r = np.zeros(len(uniq))
    for k, (i, j) in enumerate(uniq):
        b = np.zeros(g.n)
        b[i] += 1.0
        b[j] += _sign(kind)
        if not b.any():
            continue
        # x0 = 0 keeps the iterates in range(M), so the limit is M^+ b
        x, info = cg(M, b, rtol=1e-8, atol=0.0, maxiter=10 * g.n)
        if info != 0:
            log.warning("conjugate gradient did not converge for edge (%d, %d)", i, j)
        r[k] = b @ x
    return r[inverse.reshape(-1)]


def leverage_scores(
    g: WeightedDigraph,
    kind: QuadraticFormKind = QuadraticFormKind.LAPLACIAN,
    mode: LeverageMode = LeverageMode.EXACT,
) -> np.ndarray:
    """Per-edge leverage ``w_e * b_e^T M^+ b_e``, clipped to [0, 1]."""
    if g.m == 0:
        return np.zeros(0)
    B = incidence(g, kind)
    M = form_matrix(g, kind)
    if mode is LeverageMode.EXACT and g.n > DENSE_LIMIT:
        log.info("n=%d exceeds the dense limit, switching to conjugate gradient", g.n)
        mode = LeverageMode.APPROX
    if mode is LeverageMode.EXACT:
        r = _effective_resistances_dense(B, M.toarray())
    else:
        r = _effective_resistances_cg(g, kind, M)
    return np.clip(g.weight * r, 0.0, 1.0)


def keep_probabilities(scores: np.ndarray, n: int, cfg: SamplerConfig) -> np.ndarray:
    return np.minimum(1.0, cfg.oversample_c * scores * math.log(n + 1) / cfg.eps**2)


def make_rng(seed: int) -> np.random.Generator:
    # Philox is counter based: draw k of the stream belongs to edge k
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def sample_by_probability(p: np.ndarray, weight: np.ndarray, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Independent importance sampling; returns kept indices and their new weights."""
    u = make_rng(seed).random(len(p))
    kept = np.flatnonzero(u < p)
    return kept, weight[kept] / p[kept]


def sample_edges(g: WeightedDigraph, kind: QuadraticFormKind, cfg: SamplerConfig) -> tuple[np.ndarray, np.ndarray]:
    p = keep_probabilities(leverage_scores(g, kind, cfg.mode), g.n, cfg)
    return sample_by_probability(p, g.weight, cfg.seed)


def sample_sparsifier(g: WeightedDigraph, kind: QuadraticFormKind, cfg: SamplerConfig) -> WeightedDigraph:
    kept, w = sample_edges(g, kind, cfg)
    return g.subgraph(kept, w)


def size_bound(n: int, eps: float, c: float = 8.0) -> float:
    """c * n * ln(n + 1) / eps^2; at least the expected output size when the scores sum to at most n."""
    return c * n * math.log(n + 1) / eps**2
