"""Maximum-Randić spanning subgraphs: exhaustive and local search.

The exhaustive engine walks all ``2^m`` edge subsets. The low ``k`` edge bits
are visited in reflected Gray-code order, so consecutive subsets differ by
one edge and subgraph degrees are maintained by a running sum of signed
incidence rows. The high ``m - k`` bits form a prefix that is fixed per
block; blocks are independent and may be spread over worker processes.
"""
from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .graph import EdgeSubset, Graph, classify_components, enumerate_graphs, to_graph6
from .indices import maximum_matching, randic_subgraph

DEFAULT_EDGE_CAP = 24
BLOCK_BITS = 16
TIE_TOL = 1e-12
WORKERS_ENV = "GRAPH_ENERGY_WORKERS"


class SubgraphResult(NamedTuple):
    subset: EdgeSubset
    value: float


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=None)
def _gray_table(k: int):
    """Gray masks, per-step flipped bit and its sign, and the bit matrix."""
    t = np.arange(1 << k, dtype=np.int64)
    gray = t ^ (t >> 1)
    flip = np.zeros(len(t), dtype=np.int64)
    if k:
        low = t[1:] & -t[1:]
        flip[1:] = np.log2(low).astype(np.int64)
    sign = np.where((gray >> flip) & 1, 1, -1)
    sign[0] = 0
    bits = ((gray[:, None] >> np.arange(k)) & 1).astype(np.float64)
    return gray, flip, sign, bits


def _best_in_block(n, edges, k, prefix):
    """Best (value, mask) over all subsets whose high bits equal ``prefix``."""
    m = len(edges)
    gray, flip, sign, bits = _gray_table(k)
    u = np.array([e[0] for e in edges], dtype=np.int64)
    v = np.array([e[1] for e in edges], dtype=np.int64)

    base = np.zeros(n, dtype=np.int64)
    high = [e for e in range(k, m) if prefix >> (e - k) & 1]
    for e in high:
        base[u[e]] += 1
        base[v[e]] += 1

    # incremental degrees along the Gray walk
    steps = np.zeros((1 << k, n), dtype=np.int64)
    if k:
        rows = np.arange(1, 1 << k)
        steps[rows, u[flip[1:]]] = sign[1:]
        steps[rows, v[flip[1:]]] = sign[1:]
    deg = np.cumsum(steps, axis=0) + base

    with np.errstate(divide="ignore"):
        inv = np.where(deg > 0, 1.0 / np.sqrt(np.maximum(deg, 1)), 0.0)
    value = np.zeros(1 << k)
    for e in range(k):
        value += bits[:, e] * inv[:, u[e]] * inv[:, v[e]]
    for e in high:
        value += inv[:, u[e]] * inv[:, v[e]]

    top = value.max()
    tied = value >= top - TIE_TOL
    masks = (np.int64(prefix) << k) | gray
    best_mask = int(masks[tied].min())
    return float(top), best_mask


def _merge(best, cand):
    if best is None or cand[0] > best[0] + TIE_TOL:
        return cand
    if cand[0] >= best[0] - TIE_TOL:
        return (max(best[0], cand[0]), min(best[1], cand[1]))
    return best


def _block_task(args):
    return _best_in_block(*args)


def max_randic_subgraph(g: Graph, edge_cap: int = DEFAULT_EDGE_CAP,
                        workers: int | None = None) -> SubgraphResult:
    """Exhaustive maximum of R(H) over all spanning subgraphs H of ``g``.

    Among subsets whose value is within ``TIE_TOL`` of the maximum, the one
    with the smallest integer mask is returned.

    Raises
    ------
    DomainError
        If ``g`` has more than ``edge_cap`` edges; use :func:`greedy_subgraph`.
    """
    if g.m > edge_cap:
        raise DomainError(
            f"graph has {g.m} edges, above the exhaustive cap of {edge_cap}; "
            "use greedy_subgraph for a heuristic answer"
        )
    if g.m == 0:
        return SubgraphResult(EdgeSubset(g, 0), 0.0)
    k = min(g.m, BLOCK_BITS)
    tasks = [(g.n, g.edges, k, prefix) for prefix in range(1 << (g.m - k))]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_task, tasks))
    else:
        results = [_block_task(t) for t in tasks]
    best = None
    for r in results:
        best = _merge(best, r)
    subset = EdgeSubset(g, best[1])
    return SubgraphResult(subset, randic_subgraph(g, subset))


def _local_search(g: Graph, mask: int) -> tuple[int, float]:
    value = randic_subgraph(g, EdgeSubset(g, mask))
    while True:
        best_flip, best_val = None, value
        for e in range(g.m):
            cand = randic_subgraph(g, EdgeSubset(g, mask ^ (1 << e)))
            if cand > best_val + TIE_TOL:
                best_flip, best_val = e, cand
        if best_flip is None:
            return mask, value
        mask ^= 1 << best_flip
        value = best_val


def greedy_subgraph(g: Graph, restarts: int = 0, seed: int | None = None) -> SubgraphResult:
    """Local search from the full graph and a maximum matching.

    Each seed is improved by single-edge flips until no flip raises R(H).
    ``restarts`` adds that many random seeds drawn with ``seed``.
    """
    full = (1 << g.m) - 1
    matching = EdgeSubset.from_edges(g, maximum_matching(g)).mask
    seeds = [full, matching]
    if restarts:
        rng = np.random.default_rng(seed)
        seeds += [int(rng.integers(0, 1 << g.m)) if g.m < 63 else
                  sum(int(b) << i for i, b in enumerate(rng.integers(0, 2, g.m)))
                  for _ in range(restarts)]
    best = None
    for s in seeds:
        mask, value = _local_search(g, s)
        best = _merge(best, (value, mask))
    subset = EdgeSubset(g, best[1])
    return SubgraphResult(subset, randic_subgraph(g, subset))


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class MaximizerRow:
    graph6: str
    n: int
    mask: int
    value: float
    components: tuple
    regular_or_bipartite: bool

    @property
    def mask_hex(self) -> str:
        return f"{self.mask:x}"


def classify_graph(g: Graph, edge_cap: int = DEFAULT_EDGE_CAP) -> MaximizerRow:
    subset, value = max_randic_subgraph(g, edge_cap=edge_cap, workers=1)
    comps = tuple(classify_components(g, subset))
    ok = all(c.is_regular or c.is_bipartite for c in comps)
    return MaximizerRow(to_graph6(g), g.n, subset.mask, value, comps, ok)


def classify_maximizers(n_max: int, graphs=None) -> list[MaximizerRow]:
    """Maximizer structure for every connected graph on 1..n_max vertices.

    ``graphs`` overrides the labeled enumeration with any iterable of graphs
    (for instance one representative per isomorphism class).
    """
    if graphs is None:
        if not 1 <= n_max <= 7:
            raise DomainError(f"classify_maximizers supports n_max <= 7, got {n_max}")
        graphs = (g for n in range(1, n_max + 1) for g in enumerate_graphs(n, connected_only=True))
    return [classify_graph(g) for g in graphs]


def unlabeled_connected_graphs(n_max: int):
    """One representative per isomorphism class of connected graphs, n <= 7."""
    from networkx.generators.atlas import graph_atlas_g
    import networkx as nx

    if n_max > 7:
        raise DomainError("the graph atlas covers n <= 7 only")
    for h in graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= n_max and nx.is_connected(h):
            yield Graph.from_edges(n, h.edges())


def counterexamples(rows: list[MaximizerRow]) -> list[MaximizerRow]:
    return [r for r in rows if not r.regular_or_bipartite]


def write_classification_csv(rows: list[MaximizerRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["graph6", "best_mask_hex", "R_value", "all_components_regular_or_bipartite"])
        for r in rows:
            w.writerow([r.graph6, r.mask_hex, f"{r.value:.12g}", int(r.regular_or_bipartite)])
