"""End-to-end orchestration: problem -> penalty form -> gates -> layers -> report."""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import coloring as coloring_mod
from . import hypergraph as hypergraph_mod
from .coloring import DEFAULT_EXACT_BUDGET, EdgeColoring
from .dualize import Pubo, dualize
from .errors import BudgetExceededError, InvalidInputError
from .hypergraph import DerivedHypergraph
from .problems import Problem
from .schedule import CircuitSchedule, DepthReport, analyze_family, schedule

#: Above this many hyperedges the exact coloring search is not attempted.
DEFAULT_EXACT_EDGE_LIMIT = 20


@dataclass
class PipelineResult:
    problem: Problem
    pubo: Pubo
    hypergraph: DerivedHypergraph
    coloring: EdgeColoring
    schedule: CircuitSchedule
    report: DepthReport
    budget_exceeded: bool = False
    notes: tuple[str, ...] = ()


def _heuristic_coloring(h: DerivedHypergraph) -> EdgeColoring:
    if h.uniform_size() == 2:
        return coloring_mod.color_misra_gries(h)
    return coloring_mod.color_greedy(h, order="degree_desc")


def run_pipeline(
    problem: Problem,
    gate_width: int = 2,
    exact_edge_limit: int = DEFAULT_EXACT_EDGE_LIMIT,
    p: int = 1,
    method: str = "auto",
    budget: int = DEFAULT_EXACT_BUDGET,
    lambda_override=None,
) -> PipelineResult:
    """Run dualization, gate absorption, coloring, and scheduling.

    ``method`` selects the coloring: "auto" tries the exact search when the
    hypergraph has at most ``exact_edge_limit`` edges and falls back to a
    heuristic (flagged, not fatal) if the node budget runs out; the explicit
    methods raise instead of falling back.
    """
    if lambda_override is not None:
        problem = replace(
            problem,
            constraints=tuple(
                replace(con, weight=lambda_override) for con in problem.constraints
            ),
        )

    pubo = dualize(problem)
    h = hypergraph_mod.absorb_subsets(hypergraph_mod.build(pubo), gate_width)
    hypergraph_mod.check_gate_width(h, gate_width)

    notes: list[str] = []
    budget_exceeded = False
    if method == "auto":
        if len(h.edges) <= exact_edge_limit:
            try:
                coloring = coloring_mod.color_exact(h, budget=budget)
            except BudgetExceededError:
                budget_exceeded = True
                coloring = _heuristic_coloring(h)
                notes.append(
                    f"exact coloring exceeded the {budget}-node budget; "
                    f"heuristic {coloring.method} coloring reported instead"
                )
        else:
            coloring = _heuristic_coloring(h)
            notes.append(
                f"{len(h.edges)} hyperedges exceed the exact-coloring cutoff "
                f"{exact_edge_limit}; heuristic {coloring.method} coloring used"
            )
    elif method == "exact":
        coloring = coloring_mod.color_exact(h, budget=budget)
    elif method == "misra-gries":
        coloring = coloring_mod.color_misra_gries(h)
    elif method == "greedy":
        coloring = coloring_mod.color_greedy(h, order="degree_desc")
    elif method == "merge-exact":
        merged = hypergraph_mod.merge_exact(h, gate_width, budget=budget)
        h = merged.hypergraph
        coloring = merged.coloring
    else:
        raise InvalidInputError(f"unknown coloring method {method!r}")

    sched = schedule(h, coloring, p=p)
    report = analyze_family(problem, pubo, h, coloring, sched)

    return PipelineResult(
        problem=problem,
        pubo=pubo,
        hypergraph=h,
        coloring=coloring,
        schedule=sched,
        report=report,
        budget_exceeded=budget_exceeded,
        notes=tuple(notes),
    )
