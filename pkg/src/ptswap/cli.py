"""Command-line interface and JSON serialization.

Instance documents look like::

    {"graph": {"type": "cycle", "n": 6}, "tokens": [5, 0, 1, 2, 3, 4], "colors": [...]}

``tokens[v]`` is the token on vertex ``v``; a permutation of ``1..n`` is read
as 1-based. ``colors[t]`` is the color of token ``t``. Graph types are
``line`` and ``cycle`` (``n``), ``star`` (``branch_lengths``), ``grid``
(``h``, ``n``) and ``general`` (``edges``, optional ``n``). General edge
lists that coincide with a known topology are tagged as that topology.

Exit status is 0 on success, 1 on invalid or infeasible input and 2 when
the oracle refuses an instance as too large.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .bench import FAMILIES, generate, rows_to_csv, rows_to_json, stretch_experiment
from .core import (CapacityError, Configuration, Cycle, Edge, Graph, Grid, Instance, Line, PTSError, Schedule,
                   SolveReport, Star, canonical_edges, cycle_graph, d_max_lower_bound, general_graph, grid_graph,
                   line_graph, make_matching, star_graph, verify)
from .solve import ALGORITHMS, solve


class SchemaError(PTSError, ValueError):
    pass


def _int(doc: Any, where: str, least: int = 0) -> int:
    if isinstance(doc, bool) or not isinstance(doc, int) or doc < least:
        raise SchemaError(f"{where}: expected an integer >= {least}, got {doc!r}")
    return doc


def _list(doc: Any, where: str) -> list:
    if not isinstance(doc, list):
        raise SchemaError(f"{where}: expected an array, got {type(doc).__name__}")
    return doc


def detect_topology(n: int, edges: frozenset[Edge]) -> Line | Cycle | Star | Grid | None:
    """The known topology whose canonical edge set is exactly ``edges``, if any."""
    candidates: list = [Line(n)]
    if n >= 3:
        candidates.append(Cycle(n))
    starts = sorted(v for u, v in edges if u == 0)
    if starts and starts[0] == 1 and n > 1:
        candidates.append(Star(tuple(b - a for a, b in zip(starts, starts[1:] + [n]))))
    candidates.extend(Grid(h, n // h) for h in range(2, n) if n % h == 0 and n // h >= 2)
    for top in candidates:
        if canonical_edges(top) == edges:
            return top
    return None


def parse_graph(doc: Any) -> Graph:
    if not isinstance(doc, dict):
        raise SchemaError("graph: expected an object")
    kind = doc.get("type")
    if kind == "line":
        return line_graph(_int(doc.get("n"), "graph.n", 1))
    if kind == "cycle":
        return cycle_graph(_int(doc.get("n"), "graph.n", 3))
    if kind == "star":
        lengths = _list(doc.get("branch_lengths"), "graph.branch_lengths")
        return star_graph([_int(b, f"graph.branch_lengths[{i}]", 1) for i, b in enumerate(lengths)])
    if kind == "grid":
        return grid_graph(_int(doc.get("h"), "graph.h", 1), _int(doc.get("n"), "graph.n", 1))
    if kind == "general":
        edges = []
        for i, pair in enumerate(_list(doc.get("edges"), "graph.edges")):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"graph.edges[{i}]: expected a pair [u, v]")
            edges.append((_int(pair[0], f"graph.edges[{i}][0]"), _int(pair[1], f"graph.edges[{i}][1]")))
        n = doc.get("n")
        n = _int(n, "graph.n", 1) if n is not None else 1 + max((max(e) for e in edges), default=0)
        graph = general_graph(n, edges)
        top = detect_topology(n, graph.edges)
        return graph if top is None else Graph(n, graph.edges, top)
    raise SchemaError(f"graph.type: expected line, cycle, star, grid or general, got {kind!r}")


def parse_instance(doc: Any) -> Instance:
    """Validated instance from a JSON document; errors name the offending field."""
    if not isinstance(doc, dict):
        raise SchemaError("instance: expected an object")
    graph = parse_graph(doc.get("graph"))
    raw = _list(doc.get("tokens"), "tokens")
    tokens = [_int(t, f"tokens[{v}]") for v, t in enumerate(raw)]
    if len(tokens) != graph.n:
        raise SchemaError(f"tokens: {len(tokens)} entries for a graph with {graph.n} vertices")
    if sorted(tokens) == list(range(1, graph.n + 1)):
        tokens = [t - 1 for t in tokens]
    try:
        config = Configuration(tuple(tokens))
    except PTSError as exc:
        raise type(exc)(f"tokens: {exc}") from None
    colors = doc.get("colors")
    if colors is not None:
        colors = tuple(_int(c, f"colors[{t}]") for t, c in enumerate(_list(colors, "colors")))
    try:
        return Instance(graph, config, colors)
    except PTSError as exc:
        raise type(exc)(f"colors: {exc}") from None


def emit_graph(graph: Graph) -> dict:
    top = graph.topology
    if isinstance(top, (Line, Cycle)):
        return {"type": "line" if isinstance(top, Line) else "cycle", "n": top.n}
    if isinstance(top, Star):
        return {"type": "star", "branch_lengths": list(top.branches)}
    if isinstance(top, Grid):
        return {"type": "grid", "h": top.h, "n": top.n}
    return {"type": "general", "n": graph.n, "edges": [list(e) for e in graph.sorted_edges()]}


def emit_instance(instance: Instance) -> dict:
    doc = {"graph": emit_graph(instance.graph), "tokens": list(instance.initial.tokens)}
    if instance.colors is not None:
        doc["colors"] = list(instance.colors)
    return doc


def emit_schedule(schedule: Schedule) -> list:
    return [[list(e) for e in sorted(m)] for m in schedule]


def parse_schedule(doc: Any) -> Schedule:
    steps = []
    for k, step in enumerate(_list(doc, "schedule")):
        pairs = []
        for i, pair in enumerate(_list(step, f"schedule[{k}]")):
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"schedule[{k}][{i}]: expected a pair [u, v]")
            pairs.append((_int(pair[0], f"schedule[{k}][{i}][0]"), _int(pair[1], f"schedule[{k}][{i}][1]")))
        steps.append(make_matching(pairs))
    return steps


def emit_report(report: SolveReport, instance: Instance) -> dict:
    ratio = report.ratio_to_dmax
    return {
        "algorithm": report.algorithm_name,
        "length": report.length,
        "d_max": report.d_max,
        "ratio_to_dmax": None if ratio is None else str(ratio),
        "extra_lower_bounds": dict(sorted(report.extra_lower_bounds.items())),
        "phases": report.phases,
        "valid": verify(instance, report.schedule).valid,
        "schedule": emit_schedule(report.schedule),
    }


# ------------------------------------------------------------------ commands


def _load(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def _emit(doc: Any) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def cmd_solve(args) -> int:
    instance = parse_instance(_load(args.instance))
    _emit(emit_report(solve(instance, args.algorithm), instance))
    return 0


def cmd_verify(args) -> int:
    instance = parse_instance(_load(args.instance))
    schedule = parse_schedule(_load(args.schedule))
    report = verify(instance, schedule)
    _emit({"valid": report.valid, "length": len(schedule), "violations": report.violations,
           "final": list(report.final.tokens)})
    return 0 if report.valid else 1


def cmd_oracle(args) -> int:
    from .oracle import exact_opt

    instance = parse_instance(_load(args.instance))
    k, witness = exact_opt(instance, args.max_vertices, args.max_states)
    _emit({"opt": k, "witness": emit_schedule(witness)})
    return 0


def cmd_lowerbound(args) -> int:
    from .colored import bottleneck_d_star
    from .cycle import winding_lower_bound

    instance = parse_instance(_load(args.instance))
    doc: dict[str, Any] = {"d_max": d_max_lower_bound(instance)}
    if instance.colored:
        doc["d_star"] = bottleneck_d_star(instance)[0]
    elif isinstance(instance.graph.topology, Cycle):
        doc["winding"] = winding_lower_bound(instance)
    _emit(doc)
    return 0


def cmd_generate(args) -> int:
    graph = parse_graph(json.loads(args.graph)) if args.graph else None
    _emit(emit_instance(generate(args.family, n=args.n, h=args.h, seed=args.seed, graph=graph,
                                 colors=args.colors)))
    return 0


def cmd_stretch(args) -> int:
    rows = stretch_experiment(args.family, args.sizes, args.algorithm, not args.no_oracle, args.seeds, args.h)
    sys.stdout.write(rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptswap", description="Parallel token swapping solvers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="route an instance and print a solve report")
    p.add_argument("instance", nargs="?", default="-", help="instance JSON file, '-' for stdin")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule", help="JSON array of steps, each an array of [u, v] pairs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    p.add_argument("instance", nargs="?", default="-")
    p.add_argument("--max-vertices", type=int)
    p.add_argument("--max-states", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lowerbound", help="distance lower bounds")
    p.add_argument("instance", nargs="?", default="-")
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("generate", help="emit an instance of a named family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colors", type=int, help="random labeling with this many colors")
    p.add_argument("--graph", help="graph JSON object for the 'random' family")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stretch", help="tabulate solver length, OPT and d_max over a family")
    p.add_argument("family", choices=FAMILIES[:4])
    p.add_argument("--sizes", type=int, nargs="+", required=True)
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--h", type=int)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--no-oracle", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_stretch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        _emit({"error": {"kind": "capacity", "type": type(exc).__name__, "message": str(exc)}})
        return 2
    except (PTSError, ValueError) as exc:
        _emit({"error": {"kind": "invalid", "type": type(exc).__name__, "message": str(exc)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
