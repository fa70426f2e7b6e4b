import itertools
import random
from fractions import Fraction

import pytest

from qaoadepth import (
    Constraint,
    InfeasibleConstraintError,
    InstanceGraph,
    InvalidInputError,
    Polynomial,
    Problem,
    Var,
    dualize,
    expansion_diff,
    make_knapsack,
    make_maxcut,
    make_maxindset,
    make_vertex_cover,
    verify_penalty,
)
from qaoadepth.poly import assignments

from bruteforce import constrained_argmin, evaluate_terms, random_graph

W6_EDGES = ((1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 6), (3, 4), (4, 5), (5, 6))

# The squared penalty of the quadratic-budget example, expanded by hand and
# confirmed below against direct evaluation over all 32 assignments.
GENERAL_SQUARE = Polynomial(
    {
        ("x1", "x2"): -5,
        ("x2", "x3"): -5,
        ("x1", "x3"): -8,
        ("x1", "x2", "x3"): 10,
        ("s1_1", "x1", "x2"): 2,
        ("s1_1", "x2", "x3"): 2,
        ("s1_1", "x1", "x3"): 4,
        ("s1_2", "x1", "x2"): 4,
        ("s1_2", "x2", "x3"): 4,
        ("s1_2", "x1", "x3"): 8,
        ("s1_1", "s1_2"): 4,
        ("s1_1",): -5,
        ("s1_2",): -8,
        (): 9,
    }
)

# The same expansion as printed in the external reference derivation, which
# uses the opposite slack sign, drops one cross term and flips one linear sign.
REFERENCE_EXPANSION = Polynomial(
    {
        ("x1", "x2"): -5,
        ("x1", "x2", "x3"): 10,
        ("x2", "x3"): -5,
        ("x1", "x3"): -8,
        ("s1_1", "x1", "x2"): -2,
        ("s1_1", "x2", "x3"): -2,
        ("s1_1", "x1", "x3"): -4,
        ("s1_2", "x1", "x2"): -4,
        ("s1_2", "x2", "x3"): -4,
        ("s1_1",): -7,
        ("s1_2",): 16,
        ("s1_1", "s1_2"): 4,
        (): 9,
    }
)


def test_maxindset_constraints_need_no_slack_bits(w6):
    pubo = dualize(make_maxindset(w6, lam=2))
    assert all(rec.slack_range == 0 and rec.bit_count == 0 for rec in pubo.dualizations)
    assert pubo.slack_names() == ()
    # min form: -sum(x) + lambda * sum over edges of x_i x_j
    expected = Polynomial.from_terms(
        [((f"x{i}",), -1) for i in range(1, 7)]
        + [((f"x{u}", f"x{v}"), 2) for u, v in W6_EDGES]
    )
    assert pubo.objective == expected


def test_general_example_slack_accounting(general_problem):
    pubo = dualize(general_problem)
    record = pubo.dualizations[0]
    assert record.slack_range == 3
    assert record.bit_count == 2
    assert record.slack_vars == ("s1_1", "s1_2")
    # slack bits carry coefficients 1 and 2: the square has -2*b*coeff linear
    # contribution plus coeff^2, i.e. 1 - 6 = -5 and 4 - 12 = -8
    assert record.square == GENERAL_SQUARE


def test_general_square_confirmed_by_direct_evaluation(general_problem):
    lhs = general_problem.constraints[0].lhs
    slack = Polynomial({("s1_1",): 1, ("s1_2",): 2})
    names = ("s1_1", "s1_2", "x1", "x2", "x3")
    for assignment in assignments(names):
        direct = (
            evaluate_terms(lhs, assignment) + evaluate_terms(slack, assignment) - 3
        ) ** 2
        assert GENERAL_SQUARE.evaluate(assignment) == direct


def test_reference_expansion_slips_are_flagged(general_problem):
    """The reference derivation (minus-sign slack convention) drops the
    8*s1_2*x1*x3 cross term and flips the sign of the 7*s1_1 term; squaring
    its own convention independently must expose exactly those two slips."""
    lhs = general_problem.constraints[0].lhs
    minus_square = (lhs - Polynomial({("s1_1",): 1, ("s1_2",): 2}) - 3).square()
    diff = expansion_diff(minus_square, REFERENCE_EXPANSION)
    assert diff.missing_in_reference == ((("s1_2", "x1", "x3"), Fraction(-8)),)
    assert diff.unexpected_in_reference == ()
    assert diff.coefficient_mismatches == (
        (("s1_1",), Fraction(7), Fraction(-7)),
    )


def test_dualizer_reports_reference_divergence(general_problem):
    con = general_problem.constraints[0]
    tagged = Problem(
        sense=general_problem.sense,
        objective=general_problem.objective,
        constraints=(
            Constraint(
                lhs=con.lhs,
                rhs=con.rhs,
                label=con.label,
                reference_expansion=REFERENCE_EXPANSION,
            ),
        ),
        variables=dict(general_problem.variables),
    )
    record = dualize(tagged).dualizations[0]
    assert record.expansion_diff is not None
    assert record.expansion_diff.has_differences
    missing = {support for support, _ in record.expansion_diff.missing_in_reference}
    assert ("s1_2", "x1", "x3") in missing


def test_vertex_cover_edge_penalty_vanishes_exactly_on_covers():
    problem = make_vertex_cover(InstanceGraph(2, ((1, 2),)), lam=5)
    pubo = dualize(problem)
    record = pubo.dualizations[0]
    assert record.slack_range == 1 and record.bit_count == 1
    penalty = record.penalty
    for assignment in assignments(("s1_1", "x1", "x2")):
        value = penalty.evaluate(assignment)
        covered = assignment["x1"] or assignment["x2"]
        if covered:
            # some slack setting reaches zero; this one is zero or positive
            assert value >= 0
        else:
            assert value >= 5
    # zero is attainable exactly on covers
    for x1, x2 in itertools.product((0, 1), repeat=2):
        best = min(
            penalty.evaluate({"x1": x1, "x2": x2, "s1_1": s}) for s in (0, 1)
        )
        assert (best == 0) == bool(x1 or x2)


def test_slack_completeness_on_random_constraints():
    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(2, 4)
        names = [f"x{i}" for i in range(1, n + 1)]
        lhs = Polynomial.from_terms(
            ((name,), rng.randint(-3, 3)) for name in names
        )
        low, _ = lhs.minimum_over_cube()
        rhs = low + rng.randint(0, 4)
        problem = Problem(
            sense="min",
            objective=Polynomial.zero(),
            constraints=(Constraint(lhs=lhs, rhs=Fraction(rhs), weight=Fraction(1)),),
            variables={name: Var(name) for name in names},
        )
        pubo = dualize(problem)
        record = pubo.dualizations[0]
        if record.dropped:
            continue
        slack_names = list(record.slack_vars)
        for bits in itertools.product((0, 1), repeat=n):
            assignment = dict(zip(names, bits))
            value = evaluate_terms(lhs, assignment)
            best = min(
                record.penalty.evaluate(
                    assignment | dict(zip(slack_names, slack_bits))
                )
                for slack_bits in itertools.product((0, 1), repeat=len(slack_names))
            )
            if value <= rhs:
                assert best == 0
            else:
                assert best >= 1  # integral violation costs at least the weight


def test_slack_coefficients_cover_every_integer_in_range():
    for feas in range(0, 9):
        bits = feas.bit_length()
        coefficients = [2**j for j in range(bits)]
        reachable = {
            sum(c * b for c, b in zip(coefficients, combo))
            for combo in itertools.product((0, 1), repeat=bits)
        }
        assert set(range(feas + 1)) <= reachable


def test_dualize_is_deterministic(general_problem):
    first = dualize(general_problem)
    second = dualize(general_problem)
    assert first.objective == second.objective
    assert first.slack_names() == second.slack_names()
    assert [r.slack_vars for r in first.dualizations] == [
        r.slack_vars for r in second.dualizations
    ]


def test_slack_variables_are_constraint_private():
    problem = make_vertex_cover(InstanceGraph(3, ((1, 2), (2, 3))), lam=2)
    pubo = dualize(problem)
    seen: set[str] = set()
    for record in pubo.dualizations:
        own = set(record.slack_vars)
        assert not (own & seen)
        seen |= own
        for support, _ in record.penalty.terms():
            slack_in_term = {v for v in support if pubo.variables[v].is_slack}
            assert slack_in_term <= own


def test_infeasible_constraint_raises():
    problem = Problem(
        sense="min",
        objective=Polynomial.zero(),
        constraints=(
            Constraint(lhs=-Polynomial.variable("x1"), rhs=Fraction(-2)),
        ),
        variables={"x1": Var("x1")},
    )
    with pytest.raises(InfeasibleConstraintError):
        dualize(problem)


def test_redundant_constraint_dropped():
    problem = Problem(
        sense="min",
        objective=Polynomial.variable("x1"),
        constraints=(Constraint(lhs=Polynomial.variable("x1"), rhs=Fraction(5)),),
        variables={"x1": Var("x1")},
    )
    pubo = dualize(problem)
    assert pubo.dualizations[0].dropped
    assert pubo.objective == Polynomial.variable("x1")
    assert pubo.slack_names() == ()


def test_non_integral_slack_range_notes_rounding():
    problem = Problem(
        sense="min",
        objective=Polynomial.zero(),
        constraints=(
            Constraint(
                lhs=Polynomial.variable("x1") + Polynomial.variable("x2"),
                rhs=Fraction(3, 2),
            ),
        ),
        variables={"x1": Var("x1"), "x2": Var("x2")},
    )
    record = dualize(problem).dualizations[0]
    assert record.slack_range == Fraction(3, 2)
    assert record.bit_count == 2  # rounded up to cover the integer range 0..2
    assert any("non-integral" in note for note in record.notes)


def test_slack_names_avoid_collisions():
    problem = Problem(
        sense="min",
        objective=Polynomial.zero(),
        constraints=(
            Constraint(
                lhs=Polynomial({("s1_1",): 1, ("x1",): 1}), rhs=Fraction(1)
            ),
        ),
        variables={"s1_1": Var("s1_1"), "x1": Var("x1")},
    )
    pubo = dualize(problem)
    assert "_s1_1" in pubo.slack_names()


def test_default_weight_applied_when_lambda_missing(general_problem):
    record = dualize(general_problem).dualizations[0]
    assert record.weight == general_problem.default_penalty_weight() == 4


# -- the exhaustive argmin oracle ----------------------------------------------


def test_verify_penalty_w6_maxindset(w6):
    problem = make_maxindset(w6, lam=2)
    report = verify_penalty(dualize(problem), problem)
    assert report.passed
    # maximum independent sets of the wheel: two nonadjacent rim vertices
    assert all(sum(bits) == 2 and bits[0] == 0 for bits in report.constrained_argmin)
    assert report.constrained_argmin == tuple(sorted(constrained_argmin(problem)))


def test_verify_penalty_knapsack_picks_items_one_and_three():
    problem = make_knapsack((1, 2, 3), (1, 2, 3), 4)
    report = verify_penalty(dualize(problem), problem)
    assert report.passed
    assert report.constrained_argmin == ((1, 0, 1),)


def test_verify_penalty_unconstrained_maxcut_is_identity(w6):
    problem = make_maxcut(w6)
    report = verify_penalty(dualize(problem), problem)
    assert report.passed
    assert report.pubo_argmin == report.constrained_argmin


def test_verify_penalty_detects_a_broken_pubo(general_problem):
    pubo = dualize(general_problem)
    broken = type(pubo)(
        objective=pubo.objective + Polynomial({("x1",): -100}),
        variables=pubo.variables,
        dualizations=pubo.dualizations,
        original_sense=pubo.original_sense,
    )
    report = verify_penalty(broken, general_problem)
    assert not report.passed
    assert report.counterexample is not None


def test_verify_penalty_respects_variable_limit(w6):
    problem = make_maxindset(w6, lam=2)
    with pytest.raises(InvalidInputError):
        verify_penalty(dualize(problem), problem, var_limit=3)


def test_verify_penalty_agrees_with_bruteforce_on_random_covers():
    rng = random.Random(37)
    for _ in range(5):
        g = random_graph(rng, rng.randint(2, 5), 0.6)
        problem = make_vertex_cover(g, lam=Fraction(g.n + 1))
        report = verify_penalty(dualize(problem), problem)
        assert report.passed
        assert report.constrained_argmin == tuple(sorted(constrained_argmin(problem)))
