import itertools
import random
from fractions import Fraction

import pytest

from qaoadepth import (
    Constraint,
    InstanceGraph,
    InvalidInputError,
    Polynomial,
    Problem,
    Var,
    dualize,
    make_knapsack,
    make_maxcut,
    make_maxindset,
    make_sat,
    make_tsp,
    make_vertex_cover,
)

from bruteforce import cut_size, independent_sets, random_graph

W6_EDGES = ((1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 6), (3, 4), (4, 5), (5, 6))


# -- instance graphs ----------------------------------------------------------


def test_instance_graph_rejects_loops_duplicates_and_range():
    with pytest.raises(InvalidInputError):
        InstanceGraph(3, ((1, 1),))
    with pytest.raises(InvalidInputError):
        InstanceGraph(3, ((1, 2), (2, 1)))
    with pytest.raises(InvalidInputError):
        InstanceGraph(3, ((1, 4),))


def test_instance_graph_normalizes_edges():
    g = InstanceGraph(3, ((3, 1), (2, 3)))
    assert g.edges == ((1, 3), (2, 3))
    assert g.max_degree() == 2


# -- maxcut -------------------------------------------------------------------


def test_maxcut_w6_objective_matches_published_sixteen_terms():
    problem = make_maxcut(InstanceGraph(6, W6_EDGES))
    expected = Polynomial.from_terms(
        [(("x%d" % u, "x%d" % v), 2) for u, v in W6_EDGES]
        + [(("x1",), -5)]
        + [((f"x{i}",), -3) for i in (2, 3, 4, 5, 6)]
    )
    assert problem.objective == expected
    assert problem.objective.num_terms() == 16
    assert problem.sense == "min"
    assert problem.constraints == ()


def test_maxcut_single_edge():
    problem = make_maxcut(InstanceGraph(2, ((1, 2),)))
    assert problem.objective == Polynomial({("x1", "x2"): 2, ("x1",): -1, ("x2",): -1})


def test_maxcut_empty_graph():
    problem = make_maxcut(InstanceGraph(4, ()))
    assert problem.objective.is_zero()
    assert len(problem.variables) == 4


def test_maxcut_objective_counts_cuts():
    rng = random.Random(23)
    for _ in range(8):
        g = random_graph(rng, rng.randint(2, 7), 0.5)
        problem = make_maxcut(g)
        names = [f"x{i}" for i in range(1, g.n + 1)]
        for bits in itertools.product((0, 1), repeat=g.n):
            value = problem.objective.evaluate(dict(zip(names, bits)))
            assert value == -cut_size(g.edges, bits)


def test_maxcut_weighted_edges():
    g = InstanceGraph(2, ((1, 2),), weights=(Fraction(3),))
    problem = make_maxcut(g)
    assert problem.objective == Polynomial({("x1", "x2"): 6, ("x1",): -3, ("x2",): -3})


# -- maxindset ----------------------------------------------------------------


def test_maxindset_single_vertex():
    problem = make_maxindset(InstanceGraph(1, ()))
    assert problem.sense == "max"
    assert problem.objective == Polynomial.variable("x1")
    assert problem.constraints == ()


def test_maxindset_triangle_has_three_pairwise_constraints():
    problem = make_maxindset(InstanceGraph(3, ((1, 2), (1, 3), (2, 3))), lam=2)
    assert len(problem.constraints) == 3
    for con in problem.constraints:
        assert con.rhs == 0
        assert con.lhs.degree() == 2
        assert con.weight == 2


def test_maxindset_rejects_nonpositive_lambda():
    with pytest.raises(InvalidInputError):
        make_maxindset(InstanceGraph(2, ((1, 2),)), lam=0)


def test_maxindset_pubo_minimum_is_max_independent_set():
    rng = random.Random(29)
    for _ in range(6):
        g = random_graph(rng, rng.randint(2, 6), 0.5)
        problem = make_maxindset(g, lam=2)
        pubo = dualize(problem)
        sets = independent_sets(g.n, g.edges)
        alpha = max(sum(bits) for bits in sets)
        names = [f"x{i}" for i in range(1, g.n + 1)]
        best = min(
            pubo.objective.evaluate(dict(zip(names, bits)))
            for bits in itertools.product((0, 1), repeat=g.n)
        )
        assert best == -alpha
        for bits in itertools.product((0, 1), repeat=g.n):
            value = pubo.objective.evaluate(dict(zip(names, bits)))
            if value == best:
                assert bits in sets and sum(bits) == alpha


# -- vertex cover -------------------------------------------------------------


def test_vertex_cover_single_edge_constraint_form():
    problem = make_vertex_cover(InstanceGraph(2, ((1, 2),)), lam=3)
    con = problem.constraints[0]
    assert con.lhs == Polynomial({(): 2, ("x1",): -1, ("x2",): -1})
    assert con.rhs == 1
    # slack range is 1: the constraint value spans 2 - 0 - 0 = 2 down to 0
    assert con.lhs.minimum_over_cube() == (Fraction(0), True)


def test_vertex_cover_path_and_wheel_constraint_counts():
    assert len(make_vertex_cover(InstanceGraph(3, ((1, 2), (2, 3)))).constraints) == 2
    assert len(make_vertex_cover(InstanceGraph(6, W6_EDGES)).constraints) == 10


# -- knapsack -----------------------------------------------------------------


def test_knapsack_capacity_constraint_plain():
    problem = make_knapsack((1, 2, 3), (1, 2, 3), 4)
    assert len(problem.constraints) == 1
    con = problem.constraints[0]
    assert con.lower is None and con.slack_bound is None
    assert con.rhs == 4


def test_knapsack_preprocess_declares_two_sided_range():
    problem = make_knapsack((1, 2, 3), (1, 2, 3), 4, preprocess=True)
    con = problem.constraints[0]
    assert con.lower == 1  # capacity - heaviest item
    assert con.slack_bound == 3
    assert problem.family_info["preprocess"] is True


def test_knapsack_redundant_capacity_dropped_with_warning():
    with pytest.warns(UserWarning, match="redundant"):
        problem = make_knapsack((1, 1), (1, 1), 10)
    assert problem.constraints == ()


def test_knapsack_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        make_knapsack((1,), (0,), 4)
    with pytest.raises(InvalidInputError):
        make_knapsack((1, 2), (1,), 4)
    with pytest.raises(InvalidInputError):
        make_knapsack((1, 2), (3, 1), 4, preprocess=True)  # weights not ascending
    with pytest.raises(InvalidInputError):
        make_knapsack((0, 1), (1, 2), 2, preprocess=True)  # nonpositive value


# -- tsp ----------------------------------------------------------------------


def _triangle() -> InstanceGraph:
    return InstanceGraph(3, ((1, 2), (1, 3), (2, 3)), weights=(1, 2, 3))


def test_tsp_triangle_degree_equalities_expand_to_pairs():
    problem = make_tsp(_triangle())
    assert len(problem.constraints) == 6  # one <= pair per vertex
    labels = [con.label for con in problem.constraints]
    for vertex in (1, 2, 3):
        assert f"degree({vertex})<=" in labels
        assert f"degree({vertex})>=" in labels
    assert problem.objective == Polynomial(
        {("e1_2",): 1, ("e1_3",): 2, ("e2_3",): 3}
    )


def test_tsp_vacuous_subtour_sets_dropped_with_warning():
    with pytest.warns(UserWarning, match="never bind"):
        problem = make_tsp(_triangle(), subtour_subsets=[(1, 2)])
    assert problem.family_info["n_subtour"] == 0


def test_tsp_rejects_bad_subtour_sets():
    with pytest.raises(InvalidInputError):
        make_tsp(_triangle(), subtour_subsets=[(1,)])
    with pytest.raises(InvalidInputError):
        make_tsp(_triangle(), subtour_subsets=[(1, 2, 3)])
    with pytest.raises(InvalidInputError):
        make_tsp(InstanceGraph(3, ((1, 2), (2, 3), (1, 3))))  # unweighted


def test_tsp_k4_subtour_constraint_kept_when_binding():
    g = InstanceGraph(
        4,
        ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
        weights=(1, 1, 1, 1, 1, 1),
    )
    problem = make_tsp(g, subtour_subsets=[(1, 2, 3)])
    assert problem.family_info["n_subtour"] == 1
    subtour = [c for c in problem.constraints if c.label.startswith("subtour")][0]
    assert subtour.rhs == 2
    assert subtour.lhs == Polynomial({("e1_2",): 1, ("e1_3",): 1, ("e2_3",): 1})


# -- sat ----------------------------------------------------------------------


def test_sat_three_literal_clause_contrapositive_form():
    problem = make_sat([(1, 2, -3)])
    con = problem.constraints[0]
    assert con.lhs == Polynomial(
        {(): 2, ("x1",): -1, ("x2",): -1, ("x3",): 1, ("z1",): -1}
    )
    assert con.rhs == 2
    assert problem.objective == Polynomial.variable("z1")


def test_sat_unit_clause():
    problem = make_sat([(1,)])
    con = problem.constraints[0]
    assert con.lhs == Polynomial({(): 1, ("x1",): -1, ("z1",): -1})
    assert con.rhs == 0


def test_sat_rejects_degenerate_clauses():
    with pytest.raises(InvalidInputError):
        make_sat([])
    with pytest.raises(InvalidInputError):
        make_sat([()])
    with pytest.raises(InvalidInputError):
        make_sat([(1, 0)])
    with pytest.raises(InvalidInputError):
        make_sat([(1, -1)])


# -- problem plumbing ---------------------------------------------------------


def test_problem_rejects_unregistered_variables():
    with pytest.raises(InvalidInputError, match="unregistered"):
        Problem(sense="min", objective=Polynomial.variable("x1"), variables={})


def test_problem_rejects_predeclared_slack_variables():
    with pytest.raises(InvalidInputError, match="slack"):
        Problem(
            sense="min",
            objective=Polynomial.variable("s1_1"),
            variables={"s1_1": Var("s1_1", slack_of=(1, 1))},
        )


def test_normalized_negates_maximization():
    problem = make_maxindset(InstanceGraph(2, ()), lam=1)
    normalized = problem.normalized()
    assert normalized.sense == "min"
    assert normalized.objective == -problem.objective
    assert normalized.family == problem.family


def test_default_penalty_weight_dominates_objective_range():
    problem = make_maxindset(InstanceGraph(4, ()))
    assert problem.default_penalty_weight() == 5  # 1 + |{-x1-x2-x3-x4}| bound


def test_constraint_validation():
    with pytest.raises(InvalidInputError):
        Constraint(lhs=Polynomial.variable("x1"), rhs=Fraction(1), weight=Fraction(-1))
    with pytest.raises(InvalidInputError):
        Constraint(lhs=Polynomial.variable("x1"), rhs=Fraction(1), lower=Fraction(2))
