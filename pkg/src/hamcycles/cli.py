"""Command-line entry point: ``hamcycles <command> ...``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .cycles import CycleError, DisconnectedGraph, horton_mcb
from .decision import (
    DEFAULT_ORACLE_BUDGET,
    EXHAUSTIVE_ORACLE_MAX_N,
    BudgetExceeded,
    decide,
    oracle_hamiltonian,
    verify_certificate,
)
from .graph import Graph, GraphError, encode_graph6, format_edge_list, read_graph
from .grinberg import SolutionConfig, build_pool, enumerate_solutions
from .harness import Gnp, NTooLarge, UnknownName, load_corpus_spec, named_graph, render_report, run_corpus

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_graph(spec: str) -> Graph:
    """``name:<catalog entry>`` or a path to an edge-list / graph6 file."""
    if spec.startswith("name:"):
        return named_graph(spec[5:])
    return read_graph(spec)


def _config(args, **defaults) -> SolutionConfig:
    pool = args.pool or defaults.get("pool", "mcb")
    return SolutionConfig.parse(pool, max_solutions=args.max_solutions or defaults.get("max_solutions", 10_000))


def _emit(args, record: dict, text: str) -> None:
    if args.format == "structured":
        out = json.dumps(record, indent=1, sort_keys=True) + "\n"
    else:
        out = text
    if args.report:
        Path(args.report).write_text(out)
    else:
        sys.stdout.write(out)


# commands ------------------------------------------------------------------------


def cmd_mcb(args) -> int:
    g = load_graph(args.graph)
    basis = horton_mcb(g)
    record = {
        "n": g.n,
        "m": g.m,
        "dimension": len(basis),
        "weight": basis.weight,
        "cycles": [list(c.walk) for c in basis],
    }
    lines = [f"# dimension {len(basis)} weight {basis.weight}"] + [str(c) for c in basis]
    _emit(args, record, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    cfg = _config(args)
    pool = build_pool(g, cfg)
    sols = enumerate_solutions(pool, g.n, cfg)
    record = {
        "pool_id": cfg.pool_id,
        "pool": [list(c.walk) for c in pool],
        "target": g.n - 2,
        "truncated": sols.truncated,
        "solutions": [s.to_record(pool, g.n) for s in sols],
    }
    lines = [f"# pool {cfg.pool_id}: {len(pool)} cycles, target {g.n - 2}, {len(sols)} solutions"]
    if sols.truncated:
        lines.append(f"# truncated at --max-solutions {cfg.max_solutions}")
    for i, c in enumerate(pool):
        lines.append(f"cycle {i} order {c.order}: {c}")
    for s in sols:
        lines.append("solution " + " ".join(map(str, s.solution)) + " | cosolution " + " ".join(map(str, s.cosolution)))
    _emit(args, record, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decide(args) -> int:
    g = load_graph(args.graph)
    verdict, trace = decide(g, _config(args))
    if verdict.certificate is not None and not verify_certificate(g, verdict.certificate):
        print("internal error: certificate failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    record = {"verdict": verdict.to_record(), "trace": trace.to_records()}
    lines = [f"verdict: {verdict.outcome.value}" + (f" ({verdict.reason.value})" if verdict.reason else "")]
    if verdict.certificate:
        lines.append("certificate: " + " ".join(map(str, verdict.certificate.walk)))
    lines += [json.dumps(e, sort_keys=True) for e in trace.to_records()]
    _emit(args, record, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    budget = args.oracle_budget
    if budget is None and g.n > EXHAUSTIVE_ORACLE_MAX_N:
        budget = DEFAULT_ORACLE_BUDGET
    try:
        cert = oracle_hamiltonian(g, budget)
        answer = "hamiltonian" if cert else "non_hamiltonian"
    except BudgetExceeded:
        cert, answer = None, "budget_exceeded"
    record = {"oracle": answer, "certificate": list(cert.walk) if cert else None, "budget": budget}
    text = answer + (": " + " ".join(map(str, cert.walk)) if cert else "") + "\n"
    _emit(args, record, text)
    return EXIT_OK


def cmd_named(args) -> int:
    g = named_graph(args.name)
    record = {"name": args.name, "n": g.n, "m": g.m, "graph6": encode_graph6(g), "edges": [list(p) for p in g.pairs()]}
    _emit(args, record, format_edge_list(g))
    return EXIT_OK


def cmd_corpus(args) -> int:
    spec = load_corpus_spec(args.spec)
    if args.pool or args.max_solutions:
        spec = dataclasses.replace(
            spec, config=_config(args, pool=spec.config.pool_id, max_solutions=spec.config.max_solutions)
        )
    if args.oracle_budget is not None:
        spec = dataclasses.replace(spec, oracle_budget=args.oracle_budget)
    if args.seed is not None:
        if not isinstance(spec.source, Gnp):
            raise UsageError("--seed only applies to gnp corpora")
        spec = dataclasses.replace(spec, source=dataclasses.replace(spec.source, seed=args.seed))
    report = run_corpus(spec, workers=args.workers)
    body = render_report(report, args.format)
    if args.report:
        Path(args.report).write_text(body)
    else:
        sys.stdout.write(body)
    if report.unsound:
        print(f"internal error: {report.unsound} unsound certificate rows", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


# parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pool", help="mcb, fundamental, all or all:<L> (default mcb)")
    common.add_argument("--max-solutions", type=int, metavar="K", help="cap on Grinberg solutions")
    common.add_argument("--oracle-budget", type=int, metavar="NODES", help="search-node budget for the oracle")
    common.add_argument("--seed", type=int, help="override the seed of a gnp corpus")
    common.add_argument("--report", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--format", choices=["structured", "text"], default="text")

    parser = _Parser(prog="hamcycles", description="Cycle-basis Hamiltonicity tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    graph_help = "edge-list path, graph6 path, or name:<catalog entry>"
    p = sub.add_parser("mcb", parents=[common], help="minimum cycle basis and its weight")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_mcb)
    p = sub.add_parser("solve", parents=[common], help="Grinberg solutions over a cycle pool")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("decide", parents=[common], help="verdict and trace")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_decide)
    p = sub.add_parser("oracle", parents=[common], help="exact Hamilton cycle search")
    p.add_argument("graph", help=graph_help)
    p.set_defaults(func=cmd_oracle)
    p = sub.add_parser("named", parents=[common], help="print a catalog graph")
    p.add_argument("name")
    p.set_defaults(func=cmd_named)
    p = sub.add_parser("corpus", parents=[common], help="run decide against the oracle over a corpus")
    p.add_argument("spec", help="JSON corpus spec file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hamcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        GraphError,
        CycleError,
        DisconnectedGraph,
        UnknownName,
        NTooLarge,
        OSError,
        ValueError,
        KeyError,
        json.JSONDecodeError,
    ) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"hamcycles: input error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"hamcycles: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
