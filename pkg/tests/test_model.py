import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vcsp_sparsify.model import (
    VcspInstance, WeightedDigraph, assignment_from_index, assignment_rows, build_instance,
    from_digraph, partition_by_predicate, predicate_value, predicate_value_batch,
    set_from_assignment, to_digraph, value, value_batch,
)
from vcsp_sparsify.predicates import ALL_PREDICATES, AND, CUT, OR, Predicate

from conftest import FORMULAS, brute_value, subsets


def test_build_instance_examples():
    assert len(build_instance(2, [(0, 1, CUT, 1.0)])) == 1
    assert len(build_instance(2, [(0, 1, OR, 0.0)])) == 0
    with pytest.raises(ValueError, match="out of range"):
        build_instance(1, [(0, 2, CUT, 1.0)])
    with pytest.raises(ValueError, match="nonnegative"):
        build_instance(2, [(0, 1, CUT, -1.0)])


def test_predicate_names_accepted():
    inst = build_instance(2, [(0, 1, "unCut", 2.0)])
    assert inst.constraints[0].predicate == Predicate.from_name("unCut")


def test_value_examples():
    inst = build_instance(2, [(0, 1, AND, 5)])
    assert value(inst, (1, 1)) == 5
    assert value(inst, (1, 0)) == 0
    inst = build_instance(3, [(0, 1, CUT, 1), (1, 2, "unCut", 2)])
    # Cut(0, 1) = 1 contributes 1, unCut(1, 1) = 1 contributes 2
    assert value(inst, (0, 1, 1)) == 3


def test_to_digraph_examples():
    g = to_digraph(build_instance(2, [(0, 1, CUT, 2)]))
    assert g.edges == [(0, 1, 2.0)]
    g = to_digraph(build_instance(2, [(0, 1, OR, 1), (0, 1, OR, 3)]))
    assert g.edges == [(0, 1, 1.0), (0, 1, 3.0)]
    with pytest.raises(ValueError):
        to_digraph(build_instance(2, [(0, 1, OR, 1), (0, 1, CUT, 3)]), OR)


def test_predicate_value_examples():
    g = WeightedDigraph.from_edges(3, [(0, 1, 1), (1, 2, 2), (2, 0, 4)])
    # edges 0->1 and 2->0 cross {0}
    assert predicate_value(g, CUT, {0}) == 5
    assert predicate_value(g, OR, set()) == 0
    assert predicate_value(WeightedDigraph.from_edges(2, [(0, 1, 5)]), AND, {0, 1}) == 5


def test_partition_examples():
    parts = partition_by_predicate(build_instance(3, [(0, 1, CUT, 1), (1, 2, OR, 2)]))
    assert {p.name: len(i) for p, i in parts.items()} == {"Cut": 1, "Or": 1}
    assert len(partition_by_predicate(build_instance(3, [(0, 1, CUT, 1)]))) == 1
    assert partition_by_predicate(VcspInstance(3)) == {}


def test_digraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        WeightedDigraph.from_edges(2, [(0, 1, 0.0)])
    with pytest.raises(ValueError):
        WeightedDigraph.from_edges(2, [(0, 2, 1.0)])


def test_digraph_is_immutable():
    g = WeightedDigraph.from_edges(2, [(0, 1, 1.0)])
    with pytest.raises(ValueError):
        g.weight[0] = 3.0


def test_assignment_rows_order():
    rows = assignment_rows(3)
    assert rows.shape == (8, 3)
    for i, r in enumerate(rows):
        assert tuple(int(b) for b in r) == assignment_from_index(i, 3)


def test_batch_matches_scalar(rng):
    from vcsp_sparsify.generators import random_instance
    inst = random_instance(6, 30, seed=rng)
    X = assignment_rows(6)
    batch = value_batch(inst, X)
    for i, row in enumerate(X):
        assert batch[i] == pytest.approx(value(inst, tuple(int(b) for b in row)))


edge_lists = st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1),
                       st.floats(0.1, 10, allow_nan=False)), max_size=12),
))


@settings(max_examples=60, deadline=None)
@given(edge_lists, st.sampled_from(ALL_PREDICATES))
def test_vcsp_graph_bijection(data, p):
    n, edges = data
    inst = VcspInstance(n, tuple((u, v, p, w) for u, v, w in edges))
    g = to_digraph(inst, p)
    X = assignment_rows(n)
    for row, batch_val in zip(X, predicate_value_batch(g, p, X)):
        a = tuple(int(b) for b in row)
        s = set_from_assignment(a)
        assert value(inst, a) == pytest.approx(predicate_value(g, p, s), abs=1e-9)
        assert batch_val == pytest.approx(brute_value(edges, p.name, s), abs=1e-9)
    assert from_digraph(g, p) == inst


@settings(max_examples=40, deadline=None)
@given(edge_lists, st.lists(st.sampled_from(ALL_PREDICATES), min_size=12, max_size=12))
def test_partition_preserves_everything(data, preds):
    n, edges = data
    inst = VcspInstance(n, tuple((u, v, p, w) for (u, v, w), p in zip(edges, preds)))
    parts = partition_by_predicate(inst)
    assert sum(len(i) for i in parts.values()) == len(inst)
    assert sum(i.total_weight() for i in parts.values()) == pytest.approx(inst.total_weight())
    for p, sub in parts.items():
        assert sub.predicates == {p}
    X = assignment_rows(n)
    total = sum(value_batch(sub, X) for sub in parts.values()) if parts else np.zeros(len(X))
    np.testing.assert_allclose(total, value_batch(inst, X), atol=1e-9)


def test_predicate_value_additive(rng):
    from vcsp_sparsify.generators import random_digraph
    g1, g2 = random_digraph(5, 8, rng), random_digraph(5, 7, rng)
    union = WeightedDigraph.from_edges(5, g1.edges + g2.edges)
    for p in ALL_PREDICATES:
        for s in subsets(5):
            assert predicate_value(union, p, s) == pytest.approx(
                predicate_value(g1, p, s) + predicate_value(g2, p, s))
