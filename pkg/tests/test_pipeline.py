import numpy as np
import pytest

from vcsp_sparsify.generators import random_digraph, random_instance
from vcsp_sparsify.model import VcspInstance, WeightedDigraph, build_instance
from vcsp_sparsify.oracle import exhaustive_max_error, predicate_evaluator
from vcsp_sparsify.model import value_batch
from vcsp_sparsify.pipeline import (
    cover_sparsifier, derive_seed, sparsify_instance, sparsify_predicate_graph, trivial_sparsifier,
)
from vcsp_sparsify.predicates import (
    AND, CUT, ONE, OR, P0X, P1X, TRIVIAL, X0, X1, ZERO, Predicate, SparsifiabilityClass,
)
from vcsp_sparsify.sparsifier import SamplerConfig


def test_trivial_1x_example():
    g = WeightedDigraph.from_edges(3, [(0, 1, 2), (0, 2, 3), (1, 2, 5)])
    assert trivial_sparsifier(g, P1X).edges == [(0, 1, 5.0), (1, 2, 5.0)]


def test_trivial_one_and_zero():
    g = random_digraph(5, 20, 0)
    one = trivial_sparsifier(g, ONE)
    assert one.m == 1 and one.weight[0] == pytest.approx(g.total_weight())
    assert trivial_sparsifier(g, ZERO).m == 0


def test_trivial_rejects_other_predicates():
    with pytest.raises(ValueError):
        trivial_sparsifier(random_digraph(3, 3, 0), CUT)


@pytest.mark.parametrize("p", sorted(TRIVIAL), ids=lambda p: p.name)
def test_trivial_is_exact(p):
    g = random_digraph(8, 50, 5, self_loops=True)
    h = trivial_sparsifier(g, p)
    res = exhaustive_max_error(g, h, predicate_evaluator(p), g.n)
    assert res.max_rel_error == 0.0 and not res.zero_mismatch
    assert h.m <= (1 if p == ONE else 0 if p == ZERO else g.n)


def test_non_sparsifiable_returned_unchanged():
    g = random_digraph(5, 12, 0)
    h, cls = sparsify_predicate_graph(g, AND, SamplerConfig(0.5))
    assert cls is SparsifiabilityClass.NON_SPARSIFIABLE
    assert h == g


def test_cover_sparsifier_handles_single_variable_predicates():
    g = random_digraph(10, 3000, 2)
    h = cover_sparsifier(g, SamplerConfig(0.5, seed=9))
    assert h.m < g.m
    for p in (OR, CUT, X0, X1, P0X, P1X):
        assert exhaustive_max_error(g, h, predicate_evaluator(p), g.n).max_rel_error <= 0.5


def test_derive_seed():
    assert derive_seed(1, 6) == derive_seed(1, 6)
    assert len({derive_seed(1, t) for t in range(16)}) == 16
    assert derive_seed(1, 6) != derive_seed(2, 6)


def test_sparsify_instance_report():
    inst = random_instance(8, 120, seed=3)
    out, report = sparsify_instance(inst, SamplerConfig(0.25, seed=7))
    assert report.total_in == len(inst)
    assert report.total_out == len(out)
    names = [e.name for e in report.entries]
    assert names == sorted(names, key=lambda name: Predicate.from_name(name).table)
    for e in report.entries:
        if e.cls is SparsifiabilityClass.NON_SPARSIFIABLE:
            assert e.out_count == e.in_count
    res = exhaustive_max_error(inst, out, value_batch, inst.n)
    assert res.passes(0.25)


def test_sparsify_instance_is_deterministic():
    inst = random_instance(8, 2000, predicates=[CUT, OR], seed=4)
    cfg = SamplerConfig(0.5, seed=11)
    a, ra = sparsify_instance(inst, cfg)
    b, rb = sparsify_instance(inst, cfg)
    assert a.constraints == b.constraints
    assert ra.to_json() == rb.to_json()


def test_report_json_keys():
    _, report = sparsify_instance(build_instance(3, [(0, 1, CUT, 1.0)]), SamplerConfig(0.5))
    d = report.to_dict()
    assert set(d) == {"eps", "seed", "predicates", "total_in", "total_out", "verified"}
    assert d["predicates"][0] == {"name": "Cut", "class": "SparsifiableNontrivial", "in_count": 1, "out_count": 1}


def test_empty_instance():
    out, report = sparsify_instance(VcspInstance(4), SamplerConfig(0.5))
    assert len(out) == 0 and report.entries == []
