"""Sparsify whole VCSP instances.

Constraints are grouped by predicate.  Each group is handled by its class:

* trivial predicates get an exact, aggregated replacement of at most n edges;
* predicates with a single satisfying input are passed through untouched,
  since no proper subgraph works for them in general;
* all other predicates go through the double cover: sample a cut sparsifier
  of the cover and pull it back.  The resulting subgraph does not depend on
  the predicate.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .double_cover import DoubleCoverGraph, gamma, pull_back
from .model import VcspInstance, WeightedDigraph, from_digraph, partition_by_predicate, to_digraph
from .oracle import VerificationResult
from .predicates import ONE, SOURCE_ONLY, TARGET_ONLY, ZERO, Predicate, SparsifiabilityClass, classify
from .sparsifier import QuadraticFormKind, SamplerConfig, sample_edges


def trivial_sparsifier(g: WeightedDigraph, p: Predicate) -> WeightedDigraph:
    """Exact replacement for predicates that ignore at least one argument.

    Edges are merged by the endpoint the predicate looks at; the merged edge
    keeps the endpoints of the first edge in its group.
    """
    if classify(p) is not SparsifiabilityClass.TRIVIAL:
        raise ValueError(f"{p.name} is not a trivial predicate")
    if p == ZERO or g.m == 0:
        return g.subgraph([])
    if p == ONE:
        return g.subgraph([0], [g.total_weight()])
    key = g.src if p in SOURCE_ONLY else g.dst
    uniq, first, inverse = np.unique(key, return_index=True, return_inverse=True)
    totals = np.bincount(inverse.reshape(-1), weights=g.weight, minlength=len(uniq))
    order = np.argsort(first, kind="stable")
    return g.subgraph(first[order], totals[order])


def cover_sparsifier(g: WeightedDigraph, cfg: SamplerConfig) -> WeightedDigraph:
    """Cut-sparsify the double cover of ``g`` and pull the result back."""
    cover = gamma(g)
    kept, w = sample_edges(cover.graph, QuadraticFormKind.LAPLACIAN, cfg)
    return pull_back(DoubleCoverGraph(cover.base_n, cover.graph.subgraph(kept, w)))


def sparsify_predicate_graph(
    g: WeightedDigraph, p: Predicate, cfg: SamplerConfig
) -> tuple[WeightedDigraph, SparsifiabilityClass]:
    cls = classify(p)
    if cls is SparsifiabilityClass.TRIVIAL:
        return trivial_sparsifier(g, p), cls
    if cls is SparsifiabilityClass.NON_SPARSIFIABLE:
        return g, cls
    return cover_sparsifier(g, cfg), cls


def derive_seed(seed: int, table: int) -> int:
    """Independent, reproducible 64-bit seed for one predicate class."""
    ss = np.random.SeedSequence(entropy=int(seed) & ((1 << 64) - 1), spawn_key=(int(table),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass
class PredicateEntry:
    name: str
    cls: SparsifiabilityClass
    in_count: int
    out_count: int

    def to_dict(self) -> dict:
        return {"name": self.name, "class": self.cls.value, "in_count": self.in_count, "out_count": self.out_count}


@dataclass
class SparsifyReport:
    eps: float
    seed: int
    entries: list[PredicateEntry] = field(default_factory=list)
    verified: VerificationResult | None = None

    @property
    def total_in(self) -> int:
        return sum(e.in_count for e in self.entries)

    @property
    def total_out(self) -> int:
        return sum(e.out_count for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "eps": self.eps,
            "seed": self.seed,
            "predicates": [e.to_dict() for e in self.entries],
            "total_in": self.total_in,
            "total_out": self.total_out,
            "verified": None if self.verified is None else self.verified.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def sparsify_instance(inst: VcspInstance, cfg: SamplerConfig) -> tuple[VcspInstance, SparsifyReport]:
    report = SparsifyReport(cfg.eps, cfg.seed)
    constraints = []
    for p, sub in partition_by_predicate(inst).items():
        class_cfg = SamplerConfig(cfg.eps, derive_seed(cfg.seed, p.table), cfg.oversample_c, cfg.mode)
        out, cls = sparsify_predicate_graph(to_digraph(sub, p), p, class_cfg)
        if cls is SparsifiabilityClass.NON_SPARSIFIABLE:
            kept = list(sub.constraints)
        else:
            kept = list(from_digraph(out, p).constraints)
        constraints.extend(kept)
        report.entries.append(PredicateEntry(p.name, cls, len(sub), len(kept)))
    return VcspInstance(inst.n, tuple(constraints)), report
