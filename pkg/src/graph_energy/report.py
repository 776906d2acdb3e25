"""Per-graph bound reports and enumeration sweeps."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .graph import (
    Graph,
    adjacency_batch,
    classify_components,
    connected_batch,
    count_graphs,
    graph_from_index,
    spanning_tree,
    to_graph6,
)
from .indices import matching_number, randic, randic_subgraph
from .search import DEFAULT_EDGE_CAP, default_workers, greedy_subgraph, max_randic_subgraph
from .spectral import batch_vertex_energies, eigendecompose, energy, vertex_energies
from .weights import optimize_weights

VERIFY_TOL = 1e-9
EQUALITY_TOL = 1e-6
SIG_DIGITS = 12

BOUND_NAMES = ("randic", "matching", "sqrt_tree", "subgraph_randic", "optimized")
ENGINES = ("spectral", "randic", "matching", "tree", "subgraph", "optimized")


def fmt(x) -> str:
    return "nan" if x is None else f"{x:.{SIG_DIGITS}g}"


def round_floats(x):
    if isinstance(x, float):
        return float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {k: round_floats(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [round_floats(v) for v in x]
    return x


@dataclass
class ReportOptions:
    edge_cap: int = DEFAULT_EDGE_CAP
    tol: float = 1e-8
    max_iters: int = 10_000
    seed: int | None = None
    restarts: int = 0
    engines: tuple[str, ...] = ENGINES


@dataclass
class BoundReport:
    graph6: str
    n: int
    m: int
    energy: float
    vertex_energies: list[float]
    min_edge_product: float | None
    bounds: dict[str, float | None]
    engine_meta: dict = field(default_factory=dict)

    @property
    def slacks(self) -> dict[str, float | None]:
        return {k: (None if b is None else self.energy - b) for k, b in self.bounds.items()}

    @property
    def verdicts(self) -> dict[str, bool]:
        out = {k: b <= self.energy + VERIFY_TOL
               for k, b in self.bounds.items() if b is not None}
        if self.min_edge_product is not None:
            out["edge_product"] = self.min_edge_product >= 1.0 - VERIFY_TOL
        return out

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict:
        return round_floats({
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "energy": self.energy,
            "vertex_energies": self.vertex_energies,
            "min_edge_product": self.min_edge_product,
            "bounds": self.bounds,
            "verdicts": self.verdicts,
            "slacks": self.slacks,
            "engine_meta": self.engine_meta,
        })

    def format_text(self) -> str:
        lines = [
            f"graph6           {self.graph6}",
            f"n, m             {self.n}, {self.m}",
            f"energy           {fmt(self.energy)}",
            f"min E(i)E(j)     {fmt(self.min_edge_product)}",
        ]
        verdicts = self.verdicts
        for k, b in self.bounds.items():
            if b is None:
                continue
            mark = "ok" if verdicts[k] else "VIOLATED"
            lines.append(f"{k:<16} {fmt(b):<16} slack {fmt(self.energy - b):<16} {mark}")
        for k, v in sorted(self.engine_meta.items()):
            lines.append(f"meta.{k:<11} {v}")
        return "\n".join(lines)


def report(g: Graph, options: ReportOptions | None = None) -> BoundReport:
    """Energy, vertex energies and every lower bound for one graph."""
    opt = options or ReportOptions()
    spec = eigendecompose(g)
    ve = vertex_energies(spec) if g.n else np.zeros(0)
    min_prod = min((ve[u] * ve[v] for u, v in g.edges), default=None)
    bounds: dict[str, float | None] = {}
    meta: dict = {}
    eng = set(opt.engines)

    if "randic" in eng:
        bounds["randic"] = 2.0 * randic(g)
    if "matching" in eng:
        bounds["matching"] = 2.0 * matching_number(g)
    if "tree" in eng:
        if g.is_connected():
            bounds["sqrt_tree"] = 2.0 * math.sqrt(max(g.n - 1, 0))
            meta["tree_randic_bound"] = 2.0 * randic_subgraph(g, spanning_tree(g))
        else:
            bounds["sqrt_tree"] = None
    if "subgraph" in eng:
        if g.m <= opt.edge_cap:
            subset, value = max_randic_subgraph(g, edge_cap=opt.edge_cap)
            meta["subgraph_engine"] = "exhaustive"
        else:
            subset, value = greedy_subgraph(g, restarts=opt.restarts, seed=opt.seed)
            meta["subgraph_engine"] = "greedy"
        bounds["subgraph_randic"] = 2.0 * value
        meta["subgraph_mask_hex"] = f"{subset.mask:x}"
    if "optimized" in eng:
        if g.m:
            res = optimize_weights(g, tol=opt.tol, max_iters=opt.max_iters)
            bounds["optimized"] = res.bound
            meta["optimizer_converged"] = res.converged
            meta["optimizer_iterations"] = res.iterations
        else:
            bounds["optimized"] = 0.0
            meta["optimizer_converged"] = True
            meta["optimizer_iterations"] = 0
    return BoundReport(
        graph6=to_graph6(g),
        n=g.n,
        m=g.m,
        energy=energy(spec),
        vertex_energies=[float(x) for x in ve],
        min_edge_product=None if min_prod is None else float(min_prod),
        bounds=bounds,
        engine_meta=meta,
    )


# --------------------------------------------------------------------- sweep

@dataclass
class Violation:
    index: int
    graph6: str
    check: str
    detail: str


@dataclass
class SweepSummary:
    n: int
    connected_only: bool
    engines: tuple[str, ...]
    graphs: int = 0
    min_slack: dict[str, float] = field(default_factory=dict)
    min_edge_product: float = math.inf
    equality_cases: int = 0
    violations: list[Violation] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def format_text(self) -> str:
        lines = [
            f"n={self.n} connected_only={self.connected_only} graphs={self.graphs}",
            f"min edge product   {fmt(self.min_edge_product if self.graphs else None)}",
            f"equality cases     {self.equality_cases}",
        ]
        for k in sorted(self.min_slack):
            lines.append(f"min slack {k:<16} {fmt(self.min_slack[k])}")
        lines.append(f"violations         {len(self.violations)}")
        for v in self.violations[:20]:
            lines.append(f"  #{v.index} {v.graph6} {v.check}: {v.detail}")
        return "\n".join(lines)


ROW_FIELDS = ["index", "graph6", "n", "m", "energy", "min_edge_product", *BOUND_NAMES,
              "biclique_union"]


def _sweep_range(n, start, stop, connected_only, engines, options):
    adj = adjacency_batch(n, start, stop)
    keep = connected_batch(adj) if connected_only else np.ones(len(adj), dtype=bool)
    idx = np.flatnonzero(keep)
    rows, violations = [], []
    if len(idx) == 0:
        return rows, violations
    energies, ves = batch_vertex_energies(adj[idx])
    for pos, local in enumerate(idx):
        index = start + int(local)
        g = graph_from_index(n, index)
        e = float(energies[pos])
        ve = ves[pos]
        g6 = to_graph6(g)
        row = {"index": index, "graph6": g6, "n": n, "m": g.m, "energy": e}
        prods = [ve[u] * ve[v] for u, v in g.edges]
        row["min_edge_product"] = float(min(prods)) if prods else None
        if prods and row["min_edge_product"] < 1.0 - VERIFY_TOL:
            violations.append(Violation(index, g6, "edge_product",
                                        f"min E(i)E(j) = {fmt(row['min_edge_product'])}"))
        if "randic" in engines:
            row["randic"] = 2.0 * randic(g)
        if "matching" in engines:
            row["matching"] = 2.0 * matching_number(g)
        if "tree" in engines and g.is_connected():
            row["sqrt_tree"] = 2.0 * math.sqrt(n - 1)
        if "subgraph" in engines:
            row["subgraph_randic"] = 2.0 * max_randic_subgraph(
                g, edge_cap=options.edge_cap, workers=1).value
        if "optimized" in engines:
            row["optimized"] = (optimize_weights(g, tol=options.tol, max_iters=options.max_iters).bound
                                if g.m else 0.0)
        biclique = all(c.is_complete_bipartite for c in classify_components(g))
        row["biclique_union"] = biclique
        tight = False
        for name in BOUND_NAMES:
            b = row.get(name)
            if b is None:
                continue
            if b > e + VERIFY_TOL:
                violations.append(Violation(index, g6, name,
                                            f"bound {fmt(b)} exceeds energy {fmt(e)}"))
            if name != "sqrt_tree" and abs(e - b) <= EQUALITY_TOL:
                tight = True
        if tight and not biclique:
            violations.append(Violation(index, g6, "equality",
                                        "a bound meets the energy but g is not a union of bicliques"))
        if "randic" in engines and biclique and abs(e - row["randic"]) > EQUALITY_TOL:
            violations.append(Violation(index, g6, "equality",
                                        "union of bicliques but E(G) != 2R(G)"))
        row["tight"] = tight
        rows.append(row)
    return rows, violations


def _sweep_task(args):
    return _sweep_range(*args)


def sweep(n: int, connected_only: bool = False, engines=ENGINES,
          options: ReportOptions | None = None, workers: int | None = None,
          chunk: int = 1 << 14, keep_rows: bool = False) -> SweepSummary:
    """Check every inequality on all labeled graphs with ``n`` vertices.

    Violations are collected, never raised. With ``keep_rows`` the per-graph
    rows are retained (in enumeration order) for CSV output.
    """
    engines = tuple(engines)
    unknown = set(engines) - set(ENGINES)
    if unknown:
        raise DomainError(f"unknown engines {sorted(unknown)}; choose from {ENGINES}")
    cap = 7 if "subgraph" in engines else 8
    if not 1 <= n <= cap:
        raise DomainError(f"sweep with engines {engines} supports 1 <= n <= {cap}, got {n}")
    options = options or ReportOptions()
    total = count_graphs(n)
    tasks = [(n, s, min(s + chunk, total), connected_only, engines, options)
             for s in range(0, total, chunk)]
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_task, tasks))
    else:
        parts = [_sweep_task(t) for t in tasks]

    summary = SweepSummary(n, connected_only, engines)
    for rows, violations in parts:
        summary.violations.extend(violations)
        for row in rows:
            summary.graphs += 1
            if row["min_edge_product"] is not None:
                summary.min_edge_product = min(summary.min_edge_product, row["min_edge_product"])
            summary.equality_cases += row["tight"]
            for name in BOUND_NAMES:
                if row.get(name) is not None:
                    slack = row["energy"] - row[name]
                    summary.min_slack[name] = min(summary.min_slack.get(name, math.inf), slack)
            if keep_rows:
                summary.rows.append(row)
    return summary


def write_rows_csv(rows: list[dict], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(ROW_FIELDS)
        for r in rows:
            out = []
            for k in ROW_FIELDS:
                v = r.get(k)
                if isinstance(v, bool):
                    out.append(int(v))
                elif isinstance(v, float):
                    out.append(fmt(v))
                else:
                    out.append("" if v is None else v)
            w.writerow(out)


def write_violations_csv(violations: list[Violation], path) -> bool:
    """Write the violations file; nothing is written when the list is empty."""
    if not violations:
        return False
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "graph6", "check", "detail"])
        for v in violations:
            w.writerow([v.index, v.graph6, v.check, v.detail])
    return True
