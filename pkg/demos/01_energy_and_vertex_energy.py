"""
Energy and vertex energy of small graphs
========================================

Eigenvalues come from the package's own batched Jacobi solver.
Vertex energies split the total energy across the vertices.
"""
import math

import numpy as np

import graph_energy as ge

# the path on four vertices, written out as an edge list
g = ge.parse_edge_list("4\n0 1\n1 2\n2 3\n")
s = ge.eigendecompose(g)
print("P4 eigenvalues", np.round(s.eigenvalues, 6))
print("P4 energy     ", ge.energy(s), "=", 2 * math.sqrt(5))

# vertex energies sum to the energy
ve = ge.vertex_energies(s)
print("vertex energies", np.round(ve, 6), "sum", ve.sum())

# every edge carries a product of endpoint energies of at least one
ep = ge.edge_energy_products(g)
print("smallest edge product", ep.min_product, "on edge", ep.argmin)

# K_{a,b}: energy is 2 sqrt(ab), and each edge product is exactly one
k = ge.complete_bipartite(2, 5)
print("K2,5 energy", ge.graph_energy(k), "vs", 2 * math.sqrt(10))
print("K2,5 edge products", np.round(ge.edge_energy_products(k).products, 12))

# graph6 strings are the exchange format for everything else
print("graph6 of P4:", ge.to_graph6(g), "->", ge.from_graph6("Ch").edges)

# batched spectra over every labeled graph on five vertices
from graph_energy.graph import adjacency_batch
from graph_energy.spectral import batch_energies

energies = batch_energies(adjacency_batch(5))
print(len(energies), "graphs on 5 vertices, max energy", energies.max())
