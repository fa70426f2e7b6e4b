"""Constraint dualization: turn a constrained problem into a penalty-form PUBO.

Each constraint ``p(x) <= b`` is replaced by the squared penalty

    weight * (p(x) + sum_j 2**(j-1) * s_j - b)**2

where the fresh binary slack bits s_j can represent every integer in
[0, 2**k - 1], sized so that the slack can absorb the whole range between b
and the minimum of p over the cube.  Feasible assignments then admit a slack
setting with penalty exactly 0, while any integral violation costs at least
the penalty weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasibleConstraintError, InvalidInputError
from .poly import EXACT_ENUMERATION_LIMIT, Polynomial, Support
from .problems import MINIMIZE, Problem, Var


def _bits(z: int, width: int) -> tuple[int, ...]:
    return tuple((z >> i) & 1 for i in range(width))


@dataclass(frozen=True)
class ExpansionDiff:
    """Differences between a computed penalty expansion and a reference one."""

    missing_in_reference: tuple[tuple[Support, Fraction], ...]
    unexpected_in_reference: tuple[tuple[Support, Fraction], ...]
    coefficient_mismatches: tuple[tuple[Support, Fraction, Fraction], ...]

    @property
    def has_differences(self) -> bool:
        return bool(
            self.missing_in_reference
            or self.unexpected_in_reference
            or self.coefficient_mismatches
        )


def expansion_diff(computed: Polynomial, reference: Polynomial) -> ExpansionDiff:
    """Term-by-term comparison of two expansions (supports, then coefficients)."""
    computed_terms = dict(computed.terms())
    reference_terms = dict(reference.terms())
    missing = tuple(
        (s, c) for s, c in computed_terms.items() if s not in reference_terms
    )
    unexpected = tuple(
        (s, c) for s, c in reference_terms.items() if s not in computed_terms
    )
    mismatched = tuple(
        (s, computed_terms[s], reference_terms[s])
        for s in computed_terms
        if s in reference_terms and computed_terms[s] != reference_terms[s]
    )
    return ExpansionDiff(missing, unexpected, mismatched)


@dataclass(frozen=True)
class ConstraintDualization:
    """Per-constraint record of how (or why not) it was dualized."""

    index: int
    label: str
    dropped: bool = False
    reason: str = ""
    cube_min: Fraction | None = None
    cube_min_exact: bool = True
    slack_range: Fraction = Fraction(0)
    bit_count: int = 0
    slack_vars: tuple[str, ...] = ()
    weight: Fraction | None = None
    square: Polynomial | None = None
    penalty: Polynomial | None = None
    notes: tuple[str, ...] = ()
    expansion_diff: ExpansionDiff | None = None


@dataclass
class Pubo:
    """Unconstrained penalty-form objective over original plus slack variables."""

    objective: Polynomial
    variables: dict[str, Var]
    dualizations: tuple[ConstraintDualization, ...]
    original_sense: str

    @property
    def constant_offset(self) -> Fraction:
        return self.objective.constant_term

    def slack_names(self) -> tuple[str, ...]:
        return tuple(name for name, var in self.variables.items() if var.is_slack)

    def original_names(self) -> tuple[str, ...]:
        return tuple(name for name, var in self.variables.items() if not var.is_slack)


def _fresh_slack_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def _slack_bits(slack_range: Fraction) -> tuple[int, list[str]]:
    """Number of slack bits covering [0, slack_range], with any notes."""
    notes = []
    if slack_range < 0:
        raise ValueError("slack range must be nonnegative")
    if slack_range.denominator != 1:
        notes.append(
            f"non-integral slack range {slack_range} rounded up to "
            f"{math.ceil(slack_range)}; boundary-feasible points may keep a "
            "small positive penalty"
        )
    span = math.ceil(slack_range)
    return span.bit_length(), notes


def dualize(problem: Problem, exact_limit: int = EXACT_ENUMERATION_LIMIT) -> Pubo:
    """Fold every constraint into the objective as a squared slack penalty.

    Redundant constraints (upper bound of lhs already within rhs) are dropped
    and flagged instead of wasting slack qubits.  Raises
    :class:`InfeasibleConstraintError` when a constraint provably has no
    satisfying assignment.
    """
    normalized = problem.normalized()
    objective = normalized.objective
    variables: dict[str, Var] = dict(normalized.variables)
    default_weight: Fraction | None = None
    records: list[ConstraintDualization] = []

    for index, con in enumerate(normalized.constraints, start=1):
        notes: list[str] = []
        cube_min, min_exact = con.lhs.minimum_over_cube(exact_limit)
        if not min_exact:
            notes.append("interval bound used for the cube minimum (support too large)")
        if cube_min > con.rhs:
            raise InfeasibleConstraintError(index, cube_min, con.rhs)

        cube_max, _ = con.lhs.maximum_over_cube(exact_limit)
        if cube_max <= con.rhs and con.lower is None:
            records.append(
                ConstraintDualization(
                    index=index,
                    label=con.label,
                    dropped=True,
                    reason="redundant: lhs never exceeds rhs",
                    cube_min=cube_min,
                    cube_min_exact=min_exact,
                )
            )
            continue

        slack_range = con.rhs - cube_min
        if con.lower is not None:
            declared = con.rhs - con.lower
            if declared < slack_range:
                notes.append(
                    f"slack range capped at {declared} by the two-sided bound "
                    f"(cube range is {slack_range})"
                )
                slack_range = declared
        if con.slack_bound is not None and con.slack_bound < slack_range:
            notes.append(
                f"slack range capped at {con.slack_bound} by the declared slack bound"
            )
            slack_range = con.slack_bound

        bit_count, range_notes = _slack_bits(slack_range)
        notes.extend(range_notes)

        slack_names: list[str] = []
        slack_poly = Polynomial.zero()
        taken = set(variables)
        for j in range(1, bit_count + 1):
            name = _fresh_slack_name(f"s{index}_{j}", taken)
            taken.add(name)
            slack_names.append(name)
            variables[name] = Var(name, slack_of=(index, j))
            slack_poly = slack_poly + Polynomial({(name,): Fraction(2) ** (j - 1)})

        weight = con.weight
        if weight is None:
            if default_weight is None:
                default_weight = problem.default_penalty_weight()
            weight = default_weight

        square = (con.lhs + slack_poly - Polynomial.constant(con.rhs)).square()
        penalty = square * weight
        objective = objective + penalty

        diff = None
        if con.reference_expansion is not None:
            diff = expansion_diff(square, con.reference_expansion)

        records.append(
            ConstraintDualization(
                index=index,
                label=con.label,
                cube_min=cube_min,
                cube_min_exact=min_exact,
                slack_range=slack_range,
                bit_count=bit_count,
                slack_vars=tuple(slack_names),
                weight=weight,
                square=square,
                penalty=penalty,
                notes=tuple(notes),
                expansion_diff=diff,
            )
        )

    return Pubo(
        objective=objective,
        variables=variables,
        dualizations=tuple(records),
        original_sense=problem.sense,
    )


@dataclass(frozen=True)
class PenaltyVerification:
    """Outcome of the exhaustive argmin-preservation check."""

    passed: bool
    constrained_argmin: tuple[tuple[int, ...], ...]
    pubo_argmin: tuple[tuple[int, ...], ...]
    variable_order: tuple[str, ...]
    counterexample: tuple[int, ...] | None = None
    detail: str = ""


def verify_penalty(
    pubo: Pubo, problem: Problem, var_limit: int = EXACT_ENUMERATION_LIMIT
) -> PenaltyVerification:
    """Exhaustively confirm the penalty form preserves the constrained argmin.

    Enumerates every assignment of all PUBO variables, projects out the slack
    bits by minimization, and compares the resulting argmin set with the
    argmin set of the original constrained problem.  Deliberately ignorant of
    how dualization works so it can serve as an independent oracle.
    """
    order = list(pubo.variables)
    if len(order) > var_limit:
        raise InvalidInputError(
            f"verification needs {len(order)} variables but the limit is {var_limit}"
        )
    normalized = problem.normalized()
    original = [name for name in order if not pubo.variables[name].is_slack]
    slack = [name for name in order if pubo.variables[name].is_slack]
    n_orig = len(original)

    # Constrained side: feasibility and objective over original variables only.
    feasible = [True] * (1 << n_orig)
    for con in normalized.constraints:
        lhs_values = con.lhs.values_over_cube(original)
        for z, value in enumerate(lhs_values):
            if value > con.rhs or (con.lower is not None and value < con.lower):
                feasible[z] = False
    objective_values = normalized.objective.values_over_cube(original)
    best_value = None
    constrained_argmin: list[tuple[int, ...]] = []
    for z in range(1 << n_orig):
        if not feasible[z]:
            continue
        value = objective_values[z]
        if best_value is None or value < best_value:
            best_value = value
            constrained_argmin = [_bits(z, n_orig)]
        elif value == best_value:
            constrained_argmin.append(_bits(z, n_orig))

    # PUBO side: minimize over slack bits for every original assignment.
    # Original variables occupy the low bit positions, so each slack block
    # of 2**n_orig consecutive indices scans the same original assignments.
    pubo_values = pubo.objective.values_over_cube(original + slack)
    block = 1 << n_orig
    projected = pubo_values[:block]
    for start in range(block, len(pubo_values), block):
        chunk = pubo_values[start : start + block]
        projected = [min(a, b) for a, b in zip(projected, chunk)]
    pubo_best = min(projected, default=None)
    pubo_argmin = sorted(
        _bits(z, n_orig) for z, value in enumerate(projected) if value == pubo_best
    )
    constrained_argmin.sort()

    if not constrained_argmin:
        return PenaltyVerification(
            passed=False,
            constrained_argmin=(),
            pubo_argmin=tuple(pubo_argmin),
            variable_order=tuple(original),
            detail="original problem has no feasible assignment",
        )

    if pubo_argmin == constrained_argmin:
        return PenaltyVerification(
            passed=True,
            constrained_argmin=tuple(constrained_argmin),
            pubo_argmin=tuple(pubo_argmin),
            variable_order=tuple(original),
        )

    sym_diff = set(pubo_argmin).symmetric_difference(constrained_argmin)
    witness = min(sym_diff)
    side = "penalty form" if witness in set(pubo_argmin) else "constrained problem"
    return PenaltyVerification(
        passed=False,
        constrained_argmin=tuple(constrained_argmin),
        pubo_argmin=tuple(pubo_argmin),
        variable_order=tuple(original),
        counterexample=witness,
        detail=f"assignment {witness} is optimal only for the {side}",
    )


def pubo_from_polynomial(objective: Polynomial) -> Pubo:
    """Wrap a bare polynomial as an already-unconstrained PUBO."""
    variables = {name: Var(name) for name in objective.variables()}
    return Pubo(
        objective=objective,
        variables=variables,
        dualizations=(),
        original_sense=MINIMIZE,
    )
