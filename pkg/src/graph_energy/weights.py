"""Oriented edge weights p_i^j and the weighted lower bound on energy.

A weight scheme assigns to each edge ``(u, v)`` (``u < v``) two numbers:
``forward[k] = p_u^v`` and ``backward[k] = p_v^u``. The bound it certifies is
``2 * sum_k sqrt(forward[k] * backward[k])``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, WeightError
from .graph import EdgeSubset, Graph, dandelion, path

ROW_SUM_SLACK = 1e-12
GRADIENT_FLOOR = 1e-12


@dataclass(frozen=True)
class EdgeWeights:
    graph: Graph
    forward: np.ndarray
    backward: np.ndarray

    def __post_init__(self):
        fwd = np.array(self.forward, dtype=float).reshape(-1)
        bwd = np.array(self.backward, dtype=float).reshape(-1)
        if len(fwd) != self.graph.m or len(bwd) != self.graph.m:
            raise WeightError(f"expected {self.graph.m} weights per orientation, "
                              f"got {len(fwd)} and {len(bwd)}")
        fwd.setflags(write=False)
        bwd.setflags(write=False)
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "backward", bwd)

    @classmethod
    def from_function(cls, g: Graph, p) -> "EdgeWeights":
        """Build from a callable ``p(i, j)`` giving the weight vertex i puts on j."""
        return cls(g, [p(u, v) for u, v in g.edges], [p(v, u) for u, v in g.edges])

    def weight(self, i: int, j: int) -> float:
        if i < j:
            return float(self.forward[self.graph.edge_index[(i, j)]])
        return float(self.backward[self.graph.edge_index[(j, i)]])

    def row_sums(self) -> np.ndarray:
        sums = np.zeros(self.graph.n)
        u = np.array([e[0] for e in self.graph.edges], dtype=int)
        v = np.array([e[1] for e in self.graph.edges], dtype=int)
        np.add.at(sums, u, self.forward)
        np.add.at(sums, v, self.backward)
        return sums

    def violations(self) -> list[str]:
        problems = []
        for k, (u, v) in enumerate(self.graph.edges):
            for (i, j), p in (((u, v), self.forward[k]), ((v, u), self.backward[k])):
                if not (0.0 <= p <= 1.0) or not math.isfinite(p):
                    problems.append(f"weight {i}->{j} = {p!r} outside [0, 1]")
        for i, s in enumerate(self.row_sums()):
            if s > 1.0 + ROW_SUM_SLACK:
                problems.append(f"vertex {i}: weights sum to {s!r} > 1")
        return problems

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise WeightError("; ".join(problems))

    def saturated(self, tol: float = 1e-9) -> np.ndarray:
        """Per-vertex flag: row sum equals 1 (the stochastic case)."""
        return np.abs(self.row_sums() - 1.0) <= tol

    def to_dict(self) -> dict[str, float]:
        out = {}
        for k, (u, v) in enumerate(self.graph.edges):
            out[f"{u}->{v}"] = float(self.forward[k])
            out[f"{v}->{u}"] = float(self.backward[k])
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, g: Graph, data: dict[str, float]) -> "EdgeWeights":
        fwd, bwd = np.zeros(g.m), np.zeros(g.m)
        for key, value in data.items():
            try:
                i, j = (int(t) for t in key.split("->"))
            except ValueError:
                raise WeightError(f"bad oriented-edge key {key!r}") from None
            e = (min(i, j), max(i, j))
            if e not in g.edge_index:
                raise WeightError(f"{key!r} is not an edge of the graph")
            (fwd if i < j else bwd)[g.edge_index[e]] = float(value)
        return cls(g, fwd, bwd)

    @classmethod
    def from_json(cls, g: Graph, text: str) -> "EdgeWeights":
        return cls.from_dict(g, json.loads(text))


def bound_value(g: Graph, w: EdgeWeights) -> float:
    """2 * sum over edges of sqrt(p_i^j p_j^i); validates ``w`` first."""
    if w.graph != g:
        raise WeightError("weights belong to a different graph")
    w.validate()
    return 2.0 * math.fsum(np.sqrt(w.forward * w.backward))


def degree_weights(g: Graph) -> EdgeWeights:
    deg = g.degrees
    return EdgeWeights.from_function(g, lambda i, j: 1.0 / deg[i])


def subgraph_weights(g: Graph, h: EdgeSubset) -> EdgeWeights:
    """p_i^j = 1/deg_H(i) on edges of H and 0 elsewhere."""
    deg = h.degrees()
    kept = h.mask
    fwd = [1.0 / deg[u] if kept >> k & 1 else 0.0 for k, (u, v) in enumerate(g.edges)]
    bwd = [1.0 / deg[v] if kept >> k & 1 else 0.0 for k, (u, v) in enumerate(g.edges)]
    return EdgeWeights(g, fwd, bwd)


def odd_path_weights(n: int) -> EdgeWeights:
    """Hand-built weights on P_n (n odd) certifying sqrt(n^2 - 1).

    With 1-based vertices, vertex i gives its right neighbour
    (n-i)/(n-1) when i is odd and i/(n+1) when i is even; its left
    neighbour gets (i-1)/(n-1) or (n+1-i)/(n+1) respectively.
    """
    if n < 3 or n % 2 == 0:
        raise DomainError(f"odd_path_weights needs odd n >= 3, got {n}")

    def right(i):
        return (n - i) / (n - 1) if i % 2 else i / (n + 1)

    def left(i):
        return (i - 1) / (n - 1) if i % 2 else (n + 1 - i) / (n + 1)

    # edge k joins 1-based vertices k+1 and k+2
    fwd = [right(k + 1) for k in range(n - 1)]
    bwd = [left(k + 2) for k in range(n - 1)]
    return EdgeWeights(path(n), fwd, bwd)


def dandelion_weights(n: int) -> EdgeWeights:
    """Weights on D_n certifying 2 sqrt(2n^2 + n).

    The hub spreads 1/n over the spokes, a spoke puts 1/(2n+1) on the hub
    and n/(2n+1) on each leaf, and each leaf puts 1 on its spoke.
    """
    g = dandelion(n)

    def p(i, j):
        if i == 0:
            return 1.0 / n
        if i <= n:
            return 1.0 / (2 * n + 1) if j == 0 else n / (2 * n + 1)
        return 1.0

    return EdgeWeights.from_function(g, p)


# ----------------------------------------------------------------- optimizer

def project_rows(values: np.ndarray, owner: np.ndarray, n_groups: int) -> np.ndarray:
    """Euclidean projection of each owner-group onto the unit simplex.

    Sorting-based projection applied to all groups at once; every group is
    mapped to ``{x >= 0, sum x = 1}``.
    """
    if len(values) == 0:
        return values.copy()
    order = np.lexsort((-values, owner))
    ys, own = values[order], owner[order]
    starts = np.flatnonzero(np.r_[True, own[1:] != own[:-1]])
    sizes = np.diff(np.r_[starts, len(ys)])
    group_of = np.repeat(np.arange(len(starts)), sizes)
    cs = np.cumsum(ys)
    offset = np.r_[0.0, cs][starts]
    cs_in = cs - offset[group_of]
    rank = np.arange(len(ys)) - starts[group_of] + 1
    ok = ys - (cs_in - 1.0) / rank > 0
    rho = np.add.reduceat(ok.astype(int), starts)
    theta = (cs_in[starts + rho - 1] - 1.0) / rho
    theta_by_owner = np.zeros(n_groups)
    theta_by_owner[own[starts]] = theta
    return np.maximum(values - theta_by_owner[owner], 0.0)


@dataclass
class OptimizeResult:
    weights: EdgeWeights
    bound: float
    converged: bool
    iterations: int
    trace: list[float] = field(default_factory=list)


def _objective(x, m):
    return math.fsum(np.sqrt(x[:m] * x[m:]))


def optimize_weights(g: Graph, tol: float = 1e-8, max_iters: int = 10_000,
                     start: EdgeWeights | None = None) -> OptimizeResult:
    """Maximize sum over edges of sqrt(p_i^j p_j^i) over admissible weights.

    Projected gradient ascent: each iteration takes a gradient step, projects
    every vertex's weights back onto the simplex, and halves the step (from
    1.0) until the objective does not decrease. Stops when successive bound
    values differ by less than ``tol``.

    The run starts from the degree weights, or from ``start`` when that
    certifies a larger bound. The returned ``trace`` holds the bound after
    each accepted iterate and is nondecreasing.
    """
    if g.m == 0:
        raise DomainError("optimize_weights needs a graph with at least one edge")
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol}")
    m = g.m
    owner = np.array([u for u, _ in g.edges] + [v for _, v in g.edges], dtype=int)

    x = np.r_[degree_weights(g).forward, degree_weights(g).backward]
    if start is not None:
        start.validate()
        xs = np.r_[start.forward, start.backward]
        if _objective(xs, m) > _objective(x, m):
            x = xs
    f = _objective(x, m)
    trace = [2.0 * f]
    converged = False
    it = 0
    while it < max_iters:
        it += 1
        fwd = np.maximum(x[:m], GRADIENT_FLOOR)
        bwd = np.maximum(x[m:], GRADIENT_FLOOR)
        grad = 0.5 * np.r_[np.sqrt(bwd / fwd), np.sqrt(fwd / bwd)]
        step = 1.0
        while step > 1e-20:
            cand = project_rows(x + step * grad, owner, g.n)
            f_cand = _objective(cand, m)
            if f_cand >= f:
                break
            step *= 0.5
        else:
            converged = True
            break
        improvement = f_cand - f
        x, f = cand, f_cand
        trace.append(2.0 * f)
        if 2.0 * improvement < tol:
            converged = True
            break

    w = EdgeWeights(g, np.clip(x[:m], 0.0, 1.0), np.clip(x[m:], 0.0, 1.0))
    return OptimizeResult(w, 2.0 * f, converged, it, trace)
