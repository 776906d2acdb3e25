"""Command-line interface: ``graph-energy <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ConvergenceError, DomainError, GraphFormatError, WeightError
from .graph import family, format_edge_list, from_graph6, parse_edge_list, to_graph6
from .report import (
    ENGINES,
    ReportOptions,
    round_floats,
    fmt,
    report,
    sweep,
    write_rows_csv,
    write_violations_csv,
)
from .search import (
    classify_maximizers,
    counterexamples,
    greedy_subgraph,
    max_randic_subgraph,
    unlabeled_connected_graphs,
    write_classification_csv,
)
from .spectral import eigendecompose, energy, vertex_energies
from .weights import optimize_weights


def _read_graphs(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    if args.format == "edges":
        return [parse_edge_list(text)]
    return [from_graph6(line) for line in text.splitlines() if line.strip()]


def _emit(args, payloads, texts):
    if args.json:
        for p in payloads:
            print(json.dumps(round_floats(p), sort_keys=True))
    else:
        print("\n\n".join(texts))


def _options(args):
    return ReportOptions(edge_cap=args.edge_cap, tol=args.tol, max_iters=args.max_iters,
                         seed=args.seed, restarts=args.restarts)


def cmd_energy(args):
    payloads, texts = [], []
    for g in _read_graphs(args):
        s = eigendecompose(g)
        ve = [float(x) for x in vertex_energies(s)] if g.n else []
        e = energy(s)
        payloads.append({"graph6": to_graph6(g), "n": g.n, "m": g.m, "energy": e,
                         "vertex_energies": ve})
        texts.append(f"{to_graph6(g)}  energy {fmt(e)}\n"
                     + "  ".join(f"E({i})={fmt(x)}" for i, x in enumerate(ve)))
    _emit(args, payloads, texts)
    return 0


def cmd_report(args):
    reports = [report(g, _options(args)) for g in _read_graphs(args)]
    _emit(args, [r.to_dict() for r in reports], [r.format_text() for r in reports])
    return 0 if all(r.passed for r in reports) else 1


def cmd_optimize(args):
    payloads, texts = [], []
    for g in _read_graphs(args):
        if g.m == 0:
            raise DomainError(f"{to_graph6(g)} has no edges to weight")
        res = optimize_weights(g, tol=args.tol, max_iters=args.max_iters)
        payloads.append({"graph6": to_graph6(g), "bound": res.bound, "converged": res.converged,
                         "iterations": res.iterations, "weights": res.weights.to_dict()})
        texts.append(f"{to_graph6(g)}  bound {fmt(res.bound)}  converged {res.converged}  "
                     f"iterations {res.iterations}\n"
                     + " ".join(f"{k}:{fmt(v)}" for k, v in res.weights.to_dict().items()))
    _emit(args, payloads, texts)
    return 0


def cmd_search(args):
    payloads, texts = [], []
    for g in _read_graphs(args):
        if args.greedy or g.m > args.edge_cap:
            subset, value = greedy_subgraph(g, restarts=args.restarts, seed=args.seed)
            engine = "greedy"
        else:
            subset, value = max_randic_subgraph(g, edge_cap=args.edge_cap, workers=args.workers)
            engine = "exhaustive"
        payloads.append({"graph6": to_graph6(g), "engine": engine, "mask_hex": f"{subset.mask:x}",
                         "edges": subset.edges, "randic": value, "bound": 2 * value})
        texts.append(f"{to_graph6(g)}  {engine}  R(H)={fmt(value)}  2R(H)={fmt(2 * value)}\n"
                     f"H edges: {' '.join(f'{u}-{v}' for u, v in subset.edges)}")
    _emit(args, payloads, texts)
    return 0


def cmd_family(args):
    g = family(args.kind, *args.params)
    if args.format == "edges":
        sys.stdout.write(format_edge_list(g))
    else:
        print(to_graph6(g))
    return 0


def cmd_sweep(args):
    engines = tuple(args.engines.split(",")) if args.engines else ENGINES
    summary = sweep(args.n, connected_only=args.connected, engines=engines,
                    options=_options(args), workers=args.workers, keep_rows=bool(args.csv))
    if args.csv:
        write_rows_csv(summary.rows, args.csv)
    if args.violations:
        write_violations_csv(summary.violations, args.violations)
    if args.json:
        print(json.dumps(round_floats({
            "n": summary.n, "connected_only": summary.connected_only, "graphs": summary.graphs,
            "engines": list(summary.engines), "min_slack": summary.min_slack,
            "min_edge_product": summary.min_edge_product if summary.graphs else None,
            "equality_cases": summary.equality_cases,
            "violations": [v.__dict__ for v in summary.violations],
        }), sort_keys=True))
    else:
        print(summary.format_text())
    return 0 if summary.ok else 1


def cmd_classify(args):
    graphs = unlabeled_connected_graphs(args.n_max) if args.unlabeled else None
    rows = classify_maximizers(args.n_max, graphs=graphs)
    if args.csv:
        write_classification_csv(rows, args.csv)
    bad = counterexamples(rows)
    print(f"graphs {len(rows)}  counterexamples {len(bad)}")
    for r in bad:
        print(f"counterexample {r.graph6} mask {r.mask_hex}")
    return 0 if not bad else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input file (default: stdin)")
    common.add_argument("--format", choices=("graph6", "edges"), default="graph6")
    common.add_argument("--json", action="store_true", help="emit JSON lines")
    common.add_argument("--csv", help="CSV output path (sweep, classify)")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--max-iters", type=int, default=10_000)
    common.add_argument("--edge-cap", type=int, default=24)
    common.add_argument("--connected", action="store_true")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--restarts", type=int, default=0, help="random greedy restarts")
    common.add_argument("--workers", type=int, default=None)

    parser = argparse.ArgumentParser(prog="graph-energy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("energy", parents=[common], help="energy and vertex energies").set_defaults(
        func=cmd_energy)
    sub.add_parser("report", parents=[common], help="all bounds for each graph").set_defaults(
        func=cmd_report)
    sub.add_parser("optimize", parents=[common], help="optimize edge weights").set_defaults(
        func=cmd_optimize)
    p = sub.add_parser("search", parents=[common], help="maximum-Randic subgraph")
    p.add_argument("--greedy", action="store_true", help="force the local-search engine")
    p.set_defaults(func=cmd_search)
    p = sub.add_parser("family", parents=[common], help="print a family member")
    p.add_argument("kind")
    p.add_argument("params", type=int, nargs="+")
    p.set_defaults(func=cmd_family)
    p = sub.add_parser("sweep", parents=[common], help="verify all graphs on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("--engines", help=f"comma list from {','.join(ENGINES)}")
    p.add_argument("--violations", help="CSV path for violations (only written if any)")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("classify", parents=[common], help="structure of maximizing subgraphs")
    p.add_argument("n_max", type=int)
    p.add_argument("--unlabeled", action="store_true",
                   help="one graph per isomorphism class (graph atlas) instead of all labelings")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, DomainError, WeightError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
