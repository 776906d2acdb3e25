"""
Lower bounds from the Randić index and from matchings
=====================================================

Twice the Randić index never exceeds the energy, and neither does
twice the matching number.  A subgraph can give a better Randić
bound than the whole graph.
"""
import math

import graph_energy as ge

for name, g in [("P4", ge.path(4)), ("C6", ge.cycle(6)), ("K4", ge.family("complete", 4)),
                ("D3", ge.dandelion(3))]:
    e = ge.graph_energy(g)
    r = ge.randic(g)
    mu = ge.matching_number(g)
    best = ge.max_randic_subgraph(g)
    print(f"{name:3s} E={e:.6f}  2R={2 * r:.6f}  2mu={2 * mu}  2R(H*)={2 * best.value:.6f}"
          f"  H*={best.subset.edges}")

# equality 2R = E holds exactly for unions of complete bipartite graphs
u = ge.graph.disjoint_union(ge.star(4), ge.cycle(4))
print("star + C4 gap", ge.equality_gap(u))
print("triangle gap ", ge.equality_gap(ge.family("complete", 3)), "(7/9 =", 7 / 9, ")")

# the full bound report, as the CLI prints it
print(ge.report(ge.path(4)).format_text())

# on P4 the best subgraph is a perfect matching
print("P4: 2R(H*) = 4 while 2R(G) = 1 + 2 sqrt 2 =", 1 + 2 * math.sqrt(2))
