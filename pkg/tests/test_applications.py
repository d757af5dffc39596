import itertools

import numpy as np
import pytest

from vcsp_sparsify.applications import (
    Equation, TwoLinSystem, TwoSatClause, TwoSatFormula, decode_2lin, decode_2sat,
    demonstrate_sum_nonsparsifiable, encode_2lin, encode_2sat, k_cut_value, k_cut_value_labels,
    sum_mod_k_witness, sum_mod_value, twolin_value, twolin_value_batch, twosat_value,
    twosat_value_batch,
)
from vcsp_sparsify.generators import random_2lin, random_2sat, random_digraph, random_strongly_asymmetric
from vcsp_sparsify.model import WeightedDigraph, assignment_rows, value, value_batch
from vcsp_sparsify.predicates import CUT


def test_encode_2sat_examples():
    inst = encode_2sat(TwoSatFormula(2, (TwoSatClause(1, -2, 1.0),)))
    assert [(c.u, c.v, c.predicate.name, c.weight) for c in inst.constraints] == [(0, 1, "n01", 1.0)]
    inst = encode_2sat(TwoSatFormula(2, (TwoSatClause(-1, -2, 2.0), TwoSatClause(-1, 2, 1.0), TwoSatClause(1, 2, 1.0))))
    assert [c.predicate.name for c in inst.constraints] == ["nAnd", "n10", "Or"]


def test_encode_2lin_examples():
    inst = encode_2lin(TwoLinSystem(2, (Equation(0, 1, 1, 1.0), Equation(0, 1, 0, 2.0))))
    assert [(c.predicate.name, c.weight) for c in inst.constraints] == [("Cut", 1.0), ("unCut", 2.0)]


@pytest.mark.parametrize("seed", range(5))
def test_2sat_encoding_preserves_values(seed):
    f = random_2sat(7, 30, seed)
    inst = encode_2sat(f)
    X = assignment_rows(7)
    np.testing.assert_allclose(value_batch(inst, X), twosat_value_batch(f, X), atol=1e-9)
    assert decode_2sat(inst) == f


def test_2sat_scalar_reference():
    f = random_2sat(5, 15, 1)
    for a in itertools.product((0, 1), repeat=5):
        ref = sum(c.weight for c in f.clauses
                  if any((a[abs(l) - 1] == 1) == (l > 0) for l in (c.lit1, c.lit2)))
        assert twosat_value(f, a) == pytest.approx(ref)


@pytest.mark.parametrize("seed", range(5))
def test_2lin_encoding_preserves_values(seed):
    s = random_2lin(7, 30, seed)
    inst = encode_2lin(s)
    X = assignment_rows(7)
    np.testing.assert_allclose(value_batch(inst, X), twolin_value_batch(s, X), atol=1e-9)
    for a in itertools.islice(itertools.product((0, 1), repeat=7), 0, 128, 9):
        ref = sum(e.weight for e in s.equations if (a[e.u] ^ a[e.v]) == e.rhs)
        assert twolin_value(s, a) == pytest.approx(ref)
        assert value(inst, a) == pytest.approx(ref)
    assert decode_2lin(inst) == s


def test_unit_clause():
    f = TwoSatFormula(1, (TwoSatClause(-1, -1, 2.0),))
    assert twosat_value(f, (0,)) == 2 and twosat_value(f, (1,)) == 0
    assert encode_2sat(f).constraints[0].predicate.name == "nAnd"


def test_bad_literals():
    with pytest.raises(ValueError):
        TwoSatFormula(2, (TwoSatClause(0, 1, 1.0),))
    with pytest.raises(ValueError):
        TwoSatFormula(2, (TwoSatClause(3, 1, 1.0),))
    with pytest.raises(ValueError):
        TwoLinSystem(2, (Equation(0, 1, 2, 1.0),))


def test_k_cut_example():
    g = WeightedDigraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
    assert k_cut_value(g, [{0}, {1, 2}, {3}]) == 2
    with pytest.raises(ValueError):
        k_cut_value(g, [{0, 1}, {1, 2, 3}])
    with pytest.raises(ValueError):
        k_cut_value(g, [{0}, {1, 2}])


def test_k_cut_is_half_sum_of_cuts():
    g = random_digraph(6, 20, 2, self_loops=True)
    for labels in itertools.product(range(3), repeat=6):
        parts = [{v for v in range(6) if labels[v] == b} for b in range(3)]
        half = 0.5 * sum(
            sum(w for u, v, w in g.edges if (u in s) != (v in s)) for s in parts
        )
        assert k_cut_value(g, parts) == pytest.approx(half)
        assert k_cut_value_labels(g, labels) == pytest.approx(half)


def test_sum_witness_example():
    assert sum_mod_k_witness(3, 0) == (0, 0, 1)


@pytest.mark.parametrize("k", [3, 4, 5, 7])
def test_sum_witness_properties(k):
    for a in range(k):
        x, y, z = sum_mod_k_witness(k, a)
        assert (x + y) % k == a
        assert (z + x) % k != a and (z + y) % k != a and (2 * z) % k != a


def test_sum_witness_small_alphabet():
    with pytest.raises(ValueError):
        sum_mod_k_witness(2, 0)


@pytest.mark.parametrize("k, a", [(3, 0), (3, 2), (4, 1), (5, 3)])
def test_sum_nonsparsifiable(k, a):
    g = random_strongly_asymmetric(6, 9, k * 10 + a)
    for e in range(g.m):
        A = demonstrate_sum_nonsparsifiable(g, e, k, a)
        assert sum_mod_value(g, k, a, A) == pytest.approx(g.weight[e])
        assert sum_mod_value(g.without_edge(e), k, a, A) == 0


def test_sum_demo_rejects_self_loop():
    g = WeightedDigraph.from_edges(2, [(0, 0, 1.0)])
    with pytest.raises(ValueError):
        demonstrate_sum_nonsparsifiable(g, 0, 3, 0)


def test_2lin_uses_cut_for_odd_rhs():
    inst = encode_2lin(TwoLinSystem(3, (Equation(0, 2, 1, 1.5),)))
    assert inst.constraints[0].predicate == CUT
