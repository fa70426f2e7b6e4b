"""Command-line front end.

Subcommands mirror the pipeline stages::

    dualize    constraints -> penalty-form objective, with the slack report
    graph      derived interaction hypergraph (after subset absorption)
    color      proper edge coloring plus bound annotations
    schedule   layered circuit for p iterations
    analyze    full pipeline artifact incl. the depth report
    verify     exhaustive oracles: penalty argmin preservation and
               schedule/objective phase equivalence

Exit codes: 0 success, 1 invalid input, 2 infeasible constraint, 3 gate
width violation, 4 exact-search budget exceeded (heuristic results are still
emitted, flagged as such).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import __version__
from . import io as io_mod
from .dualize import dualize, verify_penalty
from .errors import (
    BudgetExceededError,
    GateWidthError,
    InfeasibleConstraintError,
    InvalidInputError,
    QaoaDepthError,
)
from .phasesim import check_equivalence
from .pipeline import DEFAULT_EXACT_EDGE_LIMIT, run_pipeline
from .coloring import DEFAULT_EXACT_BUDGET
from .poly import EXACT_ENUMERATION_LIMIT
from .problems import Problem, make_knapsack, make_maxcut, make_maxindset, make_vertex_cover

_GRAPH_FAMILIES = {
    "maxcut": make_maxcut,
    "maxindset": make_maxindset,
    "vertex_cover": make_vertex_cover,
}


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact number: {text!r}")


def _fraction_list(text: str) -> list[Fraction]:
    return [_parse_fraction(part) for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qaoadepth",
        description="Penalty-form compilation and circuit-depth analysis "
        "for constrained binary optimization.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        src = p.add_argument_group("problem input")
        src.add_argument("--problem", metavar="FILE", help="problem JSON file")
        src.add_argument(
            "--family",
            choices=sorted(_GRAPH_FAMILIES) + ["knapsack"],
            help="generate the problem from a family instead of a JSON file",
        )
        src.add_argument("--graph", metavar="FILE", help="DIMACS edge file for graph families")
        src.add_argument("--values", type=_fraction_list, help="knapsack item values, comma separated")
        src.add_argument("--weights", type=_fraction_list, help="knapsack item weights, comma separated")
        src.add_argument("--capacity", type=_parse_fraction, help="knapsack capacity")
        src.add_argument("--preprocess", action="store_true", help="tighten the knapsack slack range")
        p.add_argument("--lambda", dest="penalty_weight", type=_parse_fraction, metavar="VALUE",
                       help="penalty weight applied to every constraint")
        p.add_argument("--gate-width", type=int, default=2, metavar="L",
                       help="max qubits per gate (default 2)")
        p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_EDGE_LIMIT, metavar="N",
                       help="edge-count cutoff for the exact coloring (default %(default)s)")
        p.add_argument("--budget", type=int, default=DEFAULT_EXACT_BUDGET, metavar="NODES",
                       help="node budget for exact searches (default %(default)s)")
        p.add_argument("--method", default="auto",
                       choices=["auto", "exact", "misra-gries", "greedy", "merge-exact"],
                       help="coloring method (default auto)")
        p.add_argument("--iterations", type=int, default=1, metavar="P",
                       help="schedule repetition count p (default 1)")
        p.add_argument("--format", default="json", choices=["json", "dot", "text"],
                       help="output format (default json)")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--seed", type=int, metavar="S",
                       help="seed for randomized test generators (pipeline itself is deterministic)")

    for name, help_text in (
        ("dualize", "emit the penalty-form objective and slack report"),
        ("graph", "emit the derived interaction hypergraph"),
        ("color", "emit a proper edge coloring"),
        ("schedule", "emit the layered circuit schedule"),
        ("analyze", "run the full pipeline and emit the depth artifact"),
        ("verify", "run the exhaustive correctness oracles"),
    ):
        command = sub.add_parser(name, help=help_text)
        add_common(command)
        if name == "verify":
            command.add_argument(
                "--var-limit", type=int, default=EXACT_ENUMERATION_LIMIT, metavar="N",
                help="max total variables for exhaustive verification (default %(default)s)",
            )

    return parser


def _load_problem(args) -> Problem:
    sources = [args.problem is not None, args.family is not None]
    if sum(sources) != 1:
        raise InvalidInputError("exactly one of --problem or --family is required")
    if args.problem is not None:
        return io_mod.read_problem(args.problem)
    if args.family == "knapsack":
        if args.values is None or args.weights is None or args.capacity is None:
            raise InvalidInputError("knapsack needs --values, --weights and --capacity")
        return make_knapsack(
            args.values, args.weights, args.capacity,
            lam=args.penalty_weight, preprocess=args.preprocess,
        )
    if args.graph is None:
        raise InvalidInputError(f"family {args.family!r} needs --graph FILE")
    graph = io_mod.read_dimacs_graph(args.graph)
    maker = _GRAPH_FAMILIES[args.family]
    if args.family == "maxcut":
        return maker(graph)
    return maker(graph, lam=args.penalty_weight)


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _want_ansi(args) -> bool:
    return (
        args.format == "text"
        and args.out is None
        and sys.stdout.isatty()
        and not os.environ.get("NO_COLOR")
    )


def _config_snapshot(args) -> dict:
    keys = (
        "command", "problem", "family", "graph", "gate_width", "exact_limit",
        "budget", "method", "iterations", "format", "seed",
    )
    snapshot = {key: getattr(args, key, None) for key in keys}
    if args.penalty_weight is not None:
        snapshot["lambda"] = io_mod.rational_to_json(args.penalty_weight)
    return snapshot


def _reject_dot(args) -> None:
    if args.format == "dot":
        raise InvalidInputError(
            f"--format dot applies to 'graph' and 'color' only, not {args.command!r}"
        )


def _depth_summary(result) -> list[str]:
    report = result.report
    lines = [
        f"hypergraph: {len(result.hypergraph.edges)} gates over "
        f"{len(result.hypergraph.vertices)} qubits, max degree {result.hypergraph.max_degree()}",
        f"coloring: {result.coloring.num_colors} classes ({result.coloring.method}), "
        f"lower bound {result.coloring.lower_bound}",
        f"depth per iteration: {report.structural_depth} "
        f"({report.coloring_depth} cost + {report.singleton_overhead} singleton + 1 mixer)",
        f"total depth (p={result.schedule.iterations}): "
        f"{result.schedule.iterations * report.structural_depth}",
    ]
    if report.family_bound is not None:
        fb = report.family_bound
        value = "-" if fb.value is None else fb.value
        lines.append(f"family figure [{fb.family}]: {fb.formula} = {value}")
        if fb.matches_structural is False:
            lines.append("  (differs from the structural depth; see notes)")
    for note in report.notes:
        lines.append(f"note: {note}")
    for note in result.notes:
        lines.append(f"note: {note}")
    return lines


def _run(args) -> int:
    if args.seed is not None:
        random.seed(args.seed)
    problem = _load_problem(args)

    if args.command == "dualize":
        _reject_dot(args)
        pubo = dualize(problem) if args.penalty_weight is None else dualize(
            _override_weights(problem, args.penalty_weight)
        )
        if args.format == "json":
            _emit(io_mod.dumps({
                "config": _config_snapshot(args),
                "problem": io_mod.problem_to_json(problem),
                "pubo": io_mod.pubo_to_json(pubo),
                "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
            }), args)
        else:
            lines = [f"penalty objective: {pubo.objective}"]
            for record in pubo.dualizations:
                if record.dropped:
                    lines.append(f"constraint {record.index}: dropped ({record.reason})")
                else:
                    lines.append(
                        f"constraint {record.index}: slack range {record.slack_range}, "
                        f"{record.bit_count} slack bits {list(record.slack_vars)}, "
                        f"weight {record.weight}"
                    )
                for note in record.notes:
                    lines.append(f"  note: {note}")
                if record.expansion_diff is not None and record.expansion_diff.has_differences:
                    lines.append("  reference expansion differs; see the JSON report")
            _emit("\n".join(lines) + "\n", args)
        return 0

    if args.command == "verify":
        _reject_dot(args)
        result = run_pipeline(
            problem,
            gate_width=args.gate_width,
            exact_edge_limit=args.exact_limit,
            p=args.iterations,
            method=args.method,
            budget=args.budget,
            lambda_override=args.penalty_weight,
        )
        penalty_check = verify_penalty(result.pubo, result.problem, var_limit=args.var_limit)
        phase_check = check_equivalence(result.schedule, result.pubo, var_limit=args.var_limit)
        payload = {
            "config": _config_snapshot(args),
            "penalty_oracle": {
                "passed": penalty_check.passed,
                "detail": penalty_check.detail,
                "optima": [list(bits) for bits in penalty_check.constrained_argmin],
                "variable_order": list(penalty_check.variable_order),
            },
            "phase_oracle": {
                "passed": phase_check.equivalent,
                "mismatch": phase_check.mismatch_assignment,
            },
            "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
        }
        if args.format == "json":
            _emit(io_mod.dumps(payload), args)
        else:
            _emit(
                "penalty oracle: {}\nphase oracle: {}\n".format(
                    "pass" if penalty_check.passed else f"FAIL ({penalty_check.detail})",
                    "pass" if phase_check.equivalent else "FAIL",
                ),
                args,
            )
        return 0 if result.budget_exceeded is False else 4

    result = run_pipeline(
        problem,
        gate_width=args.gate_width,
        exact_edge_limit=args.exact_limit,
        p=args.iterations,
        method=args.method,
        budget=args.budget,
        lambda_override=args.penalty_weight,
    )

    if args.command == "graph":
        if args.format == "dot":
            _emit(io_mod.hypergraph_to_dot(result.hypergraph), args)
        elif args.format == "json":
            _emit(io_mod.dumps({
                "config": _config_snapshot(args),
                "hypergraph": io_mod.hypergraph_to_json(result.hypergraph),
                "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
            }), args)
        else:
            h = result.hypergraph
            lines = [f"{len(h.vertices)} vertices, {len(h.edges)} hyperedges, "
                     f"{len(h.singletons)} singleton terms"]
            for edge in h.edges:
                lines.append("  {" + ",".join(edge.support) + "}")
            _emit("\n".join(lines) + "\n", args)
    elif args.command == "color":
        if args.format == "dot":
            _emit(io_mod.hypergraph_to_dot(result.hypergraph, result.coloring), args)
        elif args.format == "json":
            _emit(io_mod.dumps({
                "config": _config_snapshot(args),
                "hypergraph": io_mod.hypergraph_to_json(result.hypergraph),
                "coloring": io_mod.coloring_to_json(result.coloring),
                "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
            }), args)
        else:
            lines = [f"{result.coloring.num_colors} color classes ({result.coloring.method})"]
            for c, cls in enumerate(result.coloring.classes):
                supports = ["{" + ",".join(result.hypergraph.edges[i].support) + "}" for i in cls]
                lines.append(f"  c{c}: " + " ".join(supports))
            _emit("\n".join(lines) + "\n", args)
    elif args.command == "schedule":
        _reject_dot(args)
        if args.format == "json":
            _emit(io_mod.dumps({
                "config": _config_snapshot(args),
                "schedule": io_mod.schedule_to_json(result.schedule),
                "depth": io_mod.depth_report_to_json(result.report),
                "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
            }), args)
        else:
            _emit(io_mod.render_schedule_text(result.schedule, color=_want_ansi(args)), args)
    elif args.command == "analyze":
        _reject_dot(args)
        if args.format == "json":
            artifact = {
                "tool": {"name": io_mod.TOOL_NAME, "version": __version__},
                "config": _config_snapshot(args),
                "problem": io_mod.problem_to_json(result.problem),
                "pubo": io_mod.pubo_to_json(result.pubo),
                "hypergraph": io_mod.hypergraph_to_json(result.hypergraph),
                "coloring": io_mod.coloring_to_json(result.coloring),
                "depth": io_mod.depth_report_to_json(result.report),
                "schedule": io_mod.schedule_to_json(result.schedule),
                "flags": {
                    "budget_exceeded": result.budget_exceeded,
                    "coloring_exact": result.coloring.method == "exact",
                    "notes": list(result.notes),
                },
            }
            _emit(io_mod.dumps(artifact), args)
        else:
            lines = _depth_summary(result)
            lines.append("")
            lines.append(io_mod.render_schedule_text(result.schedule, color=_want_ansi(args)))
            _emit("\n".join(lines), args)

    return 4 if result.budget_exceeded else 0


def _override_weights(problem: Problem, weight: Fraction) -> Problem:
    from dataclasses import replace

    return replace(
        problem,
        constraints=tuple(replace(c, weight=weight) for c in problem.constraints),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleConstraintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GateWidthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except QaoaDepthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
