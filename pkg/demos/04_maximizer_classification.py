"""
Which subgraphs maximize the Randić index?
==========================================

Exhaustive search over edge subsets, in Gray-code order, finds a
maximizing spanning subgraph H*.  Here we check that every component
of H* is regular or bipartite, over all small connected graphs.
"""
import time

import graph_energy as ge
from graph_energy.search import counterexamples, unlabeled_connected_graphs, classify_graph

t0 = time.perf_counter()
rows = ge.classify_maximizers(5)
print(len(rows), "labeled connected graphs on <= 5 vertices in", round(time.perf_counter() - t0, 2), "s")
print("counterexamples:", counterexamples(rows))

# one row per graph: graph6, winning mask, R(H*), flag
for row in rows[:6]:
    print(row.graph6, row.mask_hex, round(row.value, 6), row.regular_or_bipartite)

# up to isomorphism the n = 6 case is small
six = [classify_graph(g) for g in unlabeled_connected_graphs(6) if g.n == 6]
print(len(six), "connected graphs on 6 vertices up to isomorphism,",
      sum(not r.regular_or_bipartite for r in six), "counterexamples")

# past the edge cap, fall back to the greedy local search
from graph_energy.graph import petersen

p = petersen()
print("Petersen greedy R(H):", ge.greedy_subgraph(p, restarts=4, seed=1).value)
