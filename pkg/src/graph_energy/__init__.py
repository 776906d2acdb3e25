"""Graph energy, vertex energies, Randić indices and weighted edge bounds."""
from .errors import ConvergenceError, DomainError, GraphFormatError, WeightError
from .graph import (
    EdgeSubset,
    Graph,
    classify_components,
    complete_bipartite,
    cycle,
    dandelion,
    enumerate_graphs,
    family,
    from_graph6,
    parse_edge_list,
    path,
    star,
    to_graph6,
)
from .indices import closed_form, matching_number, maximum_matching, randic, randic_subgraph
from .report import BoundReport, ReportOptions, report, sweep
from .search import classify_maximizers, greedy_subgraph, max_randic_subgraph
from .spectral import (
    Spectrum,
    edge_energy_products,
    eigendecompose,
    energy,
    equality_gap,
    graph_energy,
    vertex_energies,
)
from .weights import (
    EdgeWeights,
    bound_value,
    dandelion_weights,
    degree_weights,
    odd_path_weights,
    optimize_weights,
    subgraph_weights,
)

__version__ = "0.1.0"
