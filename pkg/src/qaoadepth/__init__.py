"""Penalty-form PUBO compilation and QAOA circuit-depth analysis.

Pipeline: a constrained binary problem is dualized into an unconstrained
penalty objective with power-of-two slack bits, the objective's monomials
become the hyperedges of an interaction hypergraph, a proper edge coloring
groups commuting gates into parallel layers, and the resulting schedule
yields per-iteration depth figures alongside the closed-form values known
for the classic problem families.
"""

from .coloring import (
    BoundRef,
    EdgeColoring,
    bounds,
    color_exact,
    color_greedy,
    color_misra_gries,
)
from .dualize import (
    ConstraintDualization,
    ExpansionDiff,
    PenaltyVerification,
    Pubo,
    dualize,
    expansion_diff,
    pubo_from_polynomial,
    verify_penalty,
)
from .errors import (
    BudgetExceededError,
    GateWidthError,
    InfeasibleConstraintError,
    InvalidInputError,
    MissingAssignmentError,
    QaoaDepthError,
)
from .hypergraph import (
    DerivedHypergraph,
    Hyperedge,
    MergeResult,
    absorb_subsets,
    build,
    check_gate_width,
    merge_exact,
)
from .phasesim import EquivalenceReport, PhaseTable, check_equivalence, simulate_cost_phases
from .pipeline import PipelineResult, run_pipeline
from .poly import Polynomial, assignments
from .problems import (
    Constraint,
    InstanceGraph,
    Problem,
    Var,
    make_knapsack,
    make_maxcut,
    make_maxindset,
    make_sat,
    make_tsp,
    make_vertex_cover,
)
from .schedule import (
    CircuitLayer,
    CircuitSchedule,
    DepthReport,
    FamilyBound,
    Gate,
    analyze_family,
    schedule,
    total_depth,
)

__version__ = "0.1.0"

__all__ = [
    "BoundRef",
    "BudgetExceededError",
    "CircuitLayer",
    "CircuitSchedule",
    "Constraint",
    "ConstraintDualization",
    "DepthReport",
    "DerivedHypergraph",
    "EdgeColoring",
    "EquivalenceReport",
    "ExpansionDiff",
    "FamilyBound",
    "Gate",
    "GateWidthError",
    "Hyperedge",
    "InfeasibleConstraintError",
    "InstanceGraph",
    "InvalidInputError",
    "MergeResult",
    "MissingAssignmentError",
    "PenaltyVerification",
    "PhaseTable",
    "PipelineResult",
    "Polynomial",
    "Problem",
    "Pubo",
    "QaoaDepthError",
    "Var",
    "absorb_subsets",
    "analyze_family",
    "assignments",
    "bounds",
    "build",
    "check_equivalence",
    "check_gate_width",
    "color_exact",
    "color_greedy",
    "color_misra_gries",
    "dualize",
    "expansion_diff",
    "make_knapsack",
    "make_maxcut",
    "make_maxindset",
    "make_sat",
    "make_tsp",
    "make_vertex_cover",
    "merge_exact",
    "pubo_from_polynomial",
    "run_pipeline",
    "schedule",
    "simulate_cost_phases",
    "total_depth",
    "verify_penalty",
]
