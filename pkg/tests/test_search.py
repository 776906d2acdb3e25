import math

import pytest
from hypothesis import given, settings

from conftest import graphs, numpy_energy
from graph_energy.errors import DomainError
from graph_energy.graph import (
    EdgeSubset,
    complete,
    complete_bipartite,
    cycle,
    dandelion,
    disjoint_union,
    enumerate_graphs,
    from_graph6,
    path,
    petersen,
)
from graph_energy.indices import matching_number, randic, randic_subgraph
from graph_energy.search import (
    classify_graph,
    classify_maximizers,
    counterexamples,
    greedy_subgraph,
    max_randic_subgraph,
    unlabeled_connected_graphs,
    write_classification_csv,
)


def brute_max(g):
    """Plain loop over every mask; returns (value, smallest mask within 1e-12)."""
    values = [randic_subgraph(g, EdgeSubset(g, mk)) for mk in range(1 << g.m)]
    top = max(values)
    return top, min(mk for mk, v in enumerate(values) if v >= top - 1e-12)


def test_p4():
    subset, value = max_randic_subgraph(path(4))
    assert subset.edges == [(0, 1), (2, 3)]
    assert value == 2.0


def test_complete_bipartite_keeps_everything():
    g = complete_bipartite(2, 3)
    subset, value = max_randic_subgraph(g)
    assert value == pytest.approx(math.sqrt(6), abs=1e-12)
    assert brute_max(g)[0] == pytest.approx(math.sqrt(6), abs=1e-12)


def test_dandelion_two():
    g = dandelion(2)
    top, mask = brute_max(g)
    subset, value = max_randic_subgraph(g)
    assert value == pytest.approx(math.sqrt(2) + math.sqrt(3), abs=1e-12)
    assert top == pytest.approx(value, abs=1e-12)
    assert subset.mask == mask


@pytest.mark.parametrize("n", range(1, 6))
def test_exhaustive_matches_brute_force(n):
    for g in enumerate_graphs(n):
        top, mask = brute_max(g)
        subset, value = max_randic_subgraph(g)
        assert value == pytest.approx(top, abs=1e-12)
        assert subset.mask == mask


def test_block_split_matches_single_block(monkeypatch):
    import graph_energy.search as search

    g = dandelion(4)
    single = max_randic_subgraph(g)
    monkeypatch.setattr(search, "BLOCK_BITS", 5)
    split = max_randic_subgraph(g)
    assert split.subset.mask == single.subset.mask
    assert split.value == pytest.approx(single.value, abs=1e-12)


def test_parallel_blocks(monkeypatch):
    import graph_energy.search as search

    g = dandelion(3)
    monkeypatch.setattr(search, "BLOCK_BITS", 6)
    assert max_randic_subgraph(g, workers=2) == max_randic_subgraph(g, workers=1)


def test_edge_cap():
    with pytest.raises(DomainError, match="greedy"):
        max_randic_subgraph(complete(8), edge_cap=24)


def test_greedy_examples():
    assert greedy_subgraph(path(4)).value == 2.0
    assert greedy_subgraph(cycle(6)).value == pytest.approx(3.0)
    d3 = dandelion(3)
    greedy = greedy_subgraph(d3).value
    exact = max_randic_subgraph(d3).value
    assert greedy >= 2 * math.sqrt(2) + math.sqrt(3) - 1e-12
    assert greedy <= exact + 1e-12


def test_greedy_restarts_are_seeded():
    g = petersen()
    a = greedy_subgraph(g, restarts=3, seed=11)
    b = greedy_subgraph(g, restarts=3, seed=11)
    assert a == b
    assert a.value == pytest.approx(5.0)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_search_invariants(g):
    if g.m > 16:
        return
    exact = max_randic_subgraph(g).value
    assert exact >= randic(g) - 1e-12
    assert exact >= matching_number(g) - 1e-12
    assert exact <= g.n / 2 + 1e-12
    assert greedy_subgraph(g).value <= exact + 1e-12
    assert numpy_energy(g) >= 2 * exact - 1e-9


def test_regular_union_and_hamiltonian_cycle():
    g = disjoint_union(cycle(3), cycle(5), complete(4), path(2))
    assert max_randic_subgraph(g).value >= g.n / 2 - 1e-12
    for n in range(3, 9):
        c = cycle(n)
        assert max_randic_subgraph(c).value >= n / 2 - 1e-12
        assert numpy_energy(c) >= n - 1e-9


def test_perfect_matching_reaches_ceiling():
    for g in [path(6), cycle(6), complete(6), petersen()]:
        if g.m <= 24:
            assert max_randic_subgraph(g).value == pytest.approx(g.n / 2, abs=1e-12)


@pytest.mark.parametrize("n_max", [4, 5])
def test_classification_small(n_max):
    rows = classify_maximizers(n_max)
    assert counterexamples(rows) == []
    assert len(rows) == sum(1 for n in range(1, n_max + 1) for _ in enumerate_graphs(n, True))


def test_classify_graph_fields():
    row = classify_graph(path(4))
    assert row.graph6 == "Ch"
    assert row.mask_hex == "5"
    assert row.value == 2.0
    assert row.regular_or_bipartite


def test_classification_domain():
    with pytest.raises(DomainError):
        classify_maximizers(8)


def test_unlabeled_atlas_counts():
    # connected graphs up to isomorphism: 1, 1, 2, 6, 21
    counts = [0] * 6
    for g in unlabeled_connected_graphs(5):
        counts[g.n] += 1
    assert counts[1:] == [1, 1, 2, 6, 21]


def test_classification_csv(tmp_path):
    rows = classify_maximizers(3)
    out = tmp_path / "table.csv"
    write_classification_csv(rows, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "graph6,best_mask_hex,R_value,all_components_regular_or_bipartite"
    assert len(lines) == len(rows) + 1
    g6, mask, value, flag = lines[2].split(",")
    assert from_graph6(g6).n == 2 and mask == "1" and value == "1" and flag == "1"
