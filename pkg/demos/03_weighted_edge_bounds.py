"""
Weighted edge bounds
====================

Each vertex spreads weight at most one over its incident edges.
The bound 2 * sum sqrt(p_i^j p_j^i) stays below the energy.  Degree
weights recover 2R, and hand-built schemes do better on odd paths
and dandelions.  The optimizer searches for good weights directly.
"""
import math

import graph_energy as ge

# odd paths: the alternating scheme reaches sqrt(n^2 - 1)
for n in (3, 5, 9, 15):
    g = ge.path(n)
    b = ge.bound_value(g, ge.odd_path_weights(n))
    print(f"P{n:<2d} bound {b:.10f}  sqrt(n^2-1) {math.sqrt(n * n - 1):.10f}"
          f"  E {ge.graph_energy(g):.10f}")

w = ge.odd_path_weights(9)
print("P9 weights leaving each vertex rightwards:", [round(x, 3) for x in w.forward])

# dandelions: 2 sqrt(2n^2 + n) beats 2R and the best subgraph bound
for n in (2, 3, 6):
    g = ge.dandelion(n)
    b = ge.bound_value(g, ge.dandelion_weights(n))
    print(f"D{n} weights {b:.6f}  2R {2 * ge.randic(g):.6f}  E {ge.graph_energy(g):.6f}")

# projected gradient ascent from degree weights
res = ge.optimize_weights(ge.path(9))
print("optimized P9:", res.bound, "after", res.iterations, "steps, converged", res.converged)
print("first and last trace values:", res.trace[0], res.trace[-1])

# weights round-trip through JSON keyed by directed edge "i->j"
text = ge.dandelion_weights(1).to_json()
print(text)
