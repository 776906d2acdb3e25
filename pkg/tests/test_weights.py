import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, numpy_energy
from graph_energy.errors import DomainError, WeightError
from graph_energy.graph import (
    EdgeSubset,
    Graph,
    complete,
    complete_bipartite,
    cycle,
    dandelion,
    enumerate_graphs,
    graph_from_index,
    is_biclique_union,
    path,
    petersen,
)
from graph_energy.indices import randic, randic_subgraph
from graph_energy.weights import (
    EdgeWeights,
    bound_value,
    dandelion_weights,
    degree_weights,
    odd_path_weights,
    optimize_weights,
    project_rows,
    subgraph_weights,
)


def test_degree_weights_examples():
    w = degree_weights(complete(2))
    assert w.weight(0, 1) == w.weight(1, 0) == 1.0
    for n in range(3, 9):
        c = cycle(n)
        w = degree_weights(c)
        assert np.all(w.forward == 0.5) and np.all(w.backward == 0.5)
        assert bound_value(c, w) == pytest.approx(n, abs=1e-12)
    assert bound_value(path(4), degree_weights(path(4))) == pytest.approx(1 + 2 * math.sqrt(2), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=8))
def test_degree_weights_give_twice_randic(g):
    w = degree_weights(g)
    assert bound_value(g, w) == pytest.approx(2 * randic(g), abs=1e-12)
    sums = w.row_sums()
    assert np.allclose(sums[g.degrees > 0], 1.0, atol=1e-12)


def test_zero_weights():
    g = path(5)
    assert bound_value(g, EdgeWeights(g, np.zeros(4), np.zeros(4))) == 0.0


def test_validation_lists_offenders():
    g = path(3)
    w = EdgeWeights(g, [0.7, 0.6], [1.0, 1.0])
    with pytest.raises(WeightError, match="vertex 1"):
        bound_value(g, w)
    w = EdgeWeights(g, [-0.1, 0.5], [1.0, 1.0])
    with pytest.raises(WeightError, match="0->1"):
        bound_value(g, w)
    with pytest.raises(WeightError):
        EdgeWeights(g, [0.5], [0.5])
    with pytest.raises(WeightError, match="different graph"):
        bound_value(path(4), degree_weights(g))


def test_subgraph_weights_examples():
    g = path(4)
    h = EdgeSubset.from_edges(g, [(0, 1), (2, 3)])
    assert bound_value(g, subgraph_weights(g, h)) == pytest.approx(4.0, abs=1e-12)
    assert bound_value(g, subgraph_weights(g, EdgeSubset(g, 0))) == 0.0
    full = subgraph_weights(g, EdgeSubset.full(g))
    assert np.array_equal(full.forward, degree_weights(g).forward)
    assert np.array_equal(full.backward, degree_weights(g).backward)


@settings(max_examples=50, deadline=None)
@given(graphs(min_n=2, max_n=7), st.integers(0, 2 ** 21 - 1))
def test_subgraph_weights_match_subgraph_randic(g, raw):
    h = EdgeSubset(g, raw % (1 << g.m))
    w = subgraph_weights(g, h)
    assert not w.violations()
    assert bound_value(g, w) == pytest.approx(2 * randic_subgraph(g, h), abs=1e-12)


def test_odd_path_weights_p9_fractions():
    w = odd_path_weights(9)
    right = [Fraction(8, 8), Fraction(2, 10), Fraction(6, 8), Fraction(4, 10),
             Fraction(4, 8), Fraction(6, 10), Fraction(2, 8), Fraction(8, 10)]
    left = [Fraction(8, 10), Fraction(2, 8), Fraction(6, 10), Fraction(4, 8),
            Fraction(4, 10), Fraction(6, 8), Fraction(2, 10), Fraction(8, 8)]
    assert np.allclose(w.forward, [float(x) for x in right], atol=1e-15)
    assert np.allclose(w.backward, [float(x) for x in left], atol=1e-15)
    assert bound_value(path(9), w) == pytest.approx(math.sqrt(80), abs=1e-12)


def test_odd_path_small():
    assert bound_value(path(3), odd_path_weights(3)) == pytest.approx(math.sqrt(8), abs=1e-12)
    assert numpy_energy(path(3)) == pytest.approx(math.sqrt(8), abs=1e-12)
    assert bound_value(path(5), odd_path_weights(5)) == pytest.approx(math.sqrt(24), abs=1e-12)
    with pytest.raises(DomainError):
        odd_path_weights(6)
    with pytest.raises(DomainError):
        odd_path_weights(1)


@pytest.mark.parametrize("n", range(3, 32, 2))
def test_odd_path_structure(n):
    w = odd_path_weights(n)
    assert np.allclose(w.row_sums(), 1.0, atol=1e-12)
    assert w.weight(0, 1) == 1.0 and w.weight(n - 1, n - 2) == 1.0
    # mirror symmetry about the centre vertex (1-based i <-> n+1-i)
    for i in range(1, n):
        assert w.weight(i - 1, i) == pytest.approx(w.weight(n - i, n - i - 1), abs=1e-15)


def test_dandelion_weights_examples():
    assert bound_value(dandelion(2), dandelion_weights(2)) == pytest.approx(2 * math.sqrt(10), abs=1e-12)
    assert bound_value(dandelion(1), dandelion_weights(1)) == pytest.approx(2 * math.sqrt(3), abs=1e-12)
    b3 = bound_value(dandelion(3), dandelion_weights(3))
    assert b3 == pytest.approx(2 * math.sqrt(21), abs=1e-12)
    assert b3 > 2 * (math.sqrt(3) + 6) / math.sqrt(3)
    assert b3 > 2 * (2 * math.sqrt(2) + math.sqrt(3))


@pytest.mark.parametrize("n", range(1, 10))
def test_dandelion_weights_saturated(n):
    w = dandelion_weights(n)
    assert w.saturated().all()
    assert not w.violations()


def test_json_round_trip():
    g = dandelion(2)
    w = dandelion_weights(2)
    back = EdgeWeights.from_json(g, w.to_json())
    assert np.array_equal(back.forward, w.forward)
    assert np.array_equal(back.backward, w.backward)
    assert set(w.to_dict()) == {f"{u}->{v}" for u, v in g.edges} | {f"{v}->{u}" for u, v in g.edges}
    with pytest.raises(WeightError):
        EdgeWeights.from_dict(g, {"0->9": 0.5})
    with pytest.raises(WeightError):
        EdgeWeights.from_dict(g, {"zero->one": 0.5})


def _simplex_oracle(y):
    """Projection onto {x >= 0, sum x = 1} by bisection on the shift."""
    lo, hi = y.min() - 1.0, y.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.maximum(y - mid, 0).sum() > 1:
            lo = mid
        else:
            hi = mid
    return np.maximum(y - 0.5 * (lo + hi), 0)


@settings(max_examples=100)
@given(st.lists(st.tuples(st.integers(0, 4), st.floats(-3, 3)), min_size=1, max_size=20))
def test_project_rows_matches_oracle(items):
    owner = np.array([o for o, _ in items])
    values = np.array([v for _, v in items])
    out = project_rows(values, owner, 5)
    for o in set(owner.tolist()):
        sel = owner == o
        assert np.allclose(out[sel], _simplex_oracle(values[sel]), atol=1e-9)
        assert out[sel].sum() == pytest.approx(1.0, abs=1e-12)


def test_optimizer_examples():
    res = optimize_weights(path(3))
    assert res.converged
    assert res.bound == pytest.approx(math.sqrt(8), abs=1e-9)
    for g in [cycle(5), cycle(8), complete(5), petersen()]:
        res = optimize_weights(g)
        assert res.bound == pytest.approx(g.n, abs=1e-6)
    res = optimize_weights(path(9))
    assert res.bound >= math.sqrt(80) - 1e-6
    assert res.bound <= numpy_energy(path(9))


def test_optimizer_trace_monotone():
    res = optimize_weights(path(9))
    assert all(b >= a for a, b in zip(res.trace, res.trace[1:]))
    assert res.trace[0] == pytest.approx(2 * randic(path(9)))
    assert res.trace[-1] == res.bound


def test_optimizer_warm_start():
    res = optimize_weights(dandelion(3), max_iters=1, start=dandelion_weights(3))
    assert res.bound >= 2 * math.sqrt(21) - 1e-12


def test_optimizer_flags_nonconvergence():
    res = optimize_weights(path(4), max_iters=2)
    assert not res.converged
    assert res.iterations == 2
    assert res.bound >= 2 * randic(path(4))


def test_optimizer_domain():
    with pytest.raises(DomainError):
        optimize_weights(Graph(3))
    with pytest.raises(DomainError):
        optimize_weights(path(3), tol=0)


@settings(max_examples=40, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_optimizer_respects_bounds(g):
    if g.m == 0:
        return
    res = optimize_weights(g, max_iters=500)
    assert not res.weights.violations()
    assert res.bound == pytest.approx(bound_value(g, res.weights), abs=1e-9)
    assert res.bound >= 2 * randic(g) - 1e-12
    assert res.bound <= numpy_energy(g) + 1e-9
    assert res.bound <= g.n + 1e-9


def _equality_matches_structure(g):
    if g.m == 0:
        return True
    tight = abs(optimize_weights(g).bound - numpy_energy(g)) <= 1e-6
    return tight == is_biclique_union(g)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_optimizer_equality_scan(n):
    bad = [g.edges for g in enumerate_graphs(n) if not _equality_matches_structure(g)]
    assert bad == []


def test_optimizer_equality_scan_n6_sample():
    rnd = random.Random(6)
    sample = [graph_from_index(6, rnd.randrange(1 << 15)) for _ in range(150)]
    sample += [complete_bipartite(2, 4), complete_bipartite(3, 3), complete_bipartite(1, 5)]
    assert all(_equality_matches_structure(g) for g in sample)
