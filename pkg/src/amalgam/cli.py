"""Command-line interface.

Subcommands: eval, compose, iso, dot, check-equivalence, check-reduction,
check-properties.  Requested artifacts (graph documents, DOT, campaign
reports) go to stdout; everything diagnostic goes to stderr.  Exit codes:
0 success, 1 undefined application or non-isomorphic pair, 2 usage or data
errors, 3 campaign failures.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import ApplyMode, Undefined, evaluate
from .campaigns import (
    check_algebraic_properties,
    check_apply_reduction,
    check_composition_equivalence,
)
from .compose import parallel_compose, parallel_compose_classic
from .graphs import EnumerationBounds, GraphError, MsGraph, isomorphic
from .serialize import export_dot, parse_graph, parse_lexicon, parse_term, serialize_graph


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit_graph(g: MsGraph, fmt: str) -> None:
    text = export_dot(g) if fmt == "dot" else serialize_graph(g)
    sys.stdout.write(text)


def _bounds_from(args: argparse.Namespace, *, sgraphs_only: bool) -> EnumerationBounds:
    labels = tuple(s for s in args.labels.split(",") if s)
    return EnumerationBounds(
        max_vertices=args.max_vertices,
        source_labels=labels,
        max_edges=args.max_edges,
        sgraphs_only=sgraphs_only,
    )


def _emit_report(report) -> int:
    sys.stdout.write(json.dumps(report.to_document(), indent=2) + "\n")
    summary = (
        f"{report.campaign}: {report.cases_run} cases, "
        f"{len(report.failures)} failures, {len(report.findings)} findings"
    )
    print(summary, file=sys.stderr)
    return 0 if report.passed else 3


def _cmd_eval(args: argparse.Namespace) -> int:
    lexicon = parse_lexicon(_read(args.lexicon))
    term = parse_term(args.term)
    mode = ApplyMode(args.mode, strict_root=args.strict_root)
    result = evaluate(term, lexicon, mode)
    if isinstance(result, Undefined):
        print(result.message(), file=sys.stderr)
        return 1
    _emit_graph(result.graph, args.format)
    return 0


def _cmd_compose(args: argparse.Namespace) -> int:
    left = parse_graph(_read(args.left))
    right = parse_graph(_read(args.right))
    combine = parallel_compose_classic if args.classic else parallel_compose
    _emit_graph(combine(left, right), args.format)
    return 0


def _cmd_iso(args: argparse.Namespace) -> int:
    left = parse_graph(_read(args.left))
    right = parse_graph(_read(args.right))
    if isomorphic(left, right):
        print("isomorphic")
        return 0
    print("not isomorphic")
    return 1


def _cmd_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(export_dot(parse_graph(_read(args.graph))))
    return 0


def _cmd_check_equivalence(args: argparse.Namespace) -> int:
    return _emit_report(check_composition_equivalence(_bounds_from(args, sgraphs_only=True)))


def _cmd_check_reduction(args: argparse.Namespace) -> int:
    return _emit_report(check_apply_reduction(trials=args.trials, seed=args.seed))


def _cmd_check_properties(args: argparse.Namespace) -> int:
    report = check_algebraic_properties(
        _bounds_from(args, sgraphs_only=True), trials=args.trials, seed=args.seed
    )
    return _emit_report(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amalgam",
        description="Compose, apply, compare, and render source-labeled graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "dot"), default="json")

    bounds = argparse.ArgumentParser(add_help=False)
    bounds.add_argument("--max-vertices", type=int, default=3)
    bounds.add_argument("--max-edges", type=int, default=2)
    bounds.add_argument("--labels", default="a,b,rt", help="comma-separated source labels")

    sample = argparse.ArgumentParser(add_help=False)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--trials", type=int, default=None)

    p = sub.add_parser("eval", parents=[fmt], help="evaluate a term against a lexicon")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--mode", choices=("original", "relaxed"), default="relaxed")
    p.add_argument("--strict-root", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("compose", parents=[fmt], help="compose two graph files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--classic", action="store_true", help="use the glue-based composition")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("iso", help="test two graph files for isomorphism")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("dot", help="render a graph file as DOT")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_dot)

    p = sub.add_parser(
        "check-equivalence",
        parents=[bounds, sample],
        help="exhaustive merge-vs-glue composition sweep",
    )
    p.set_defaults(func=_cmd_check_equivalence)

    p = sub.add_parser(
        "check-reduction",
        parents=[sample],
        help="randomized original-vs-relaxed apply agreement",
    )
    p.set_defaults(func=_cmd_check_reduction)

    p = sub.add_parser(
        "check-properties",
        parents=[bounds, sample],
        help="commutativity, identity, and sampled associativity",
    )
    p.set_defaults(func=_cmd_check_properties)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", None) is None:
        defaults = {"check-reduction": 10_000, "check-properties": 1_000}
        if args.command in defaults:
            args.trials = defaults[args.command]
    try:
        return args.func(args)
    except (GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
