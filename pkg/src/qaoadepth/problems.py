"""Constrained binary optimization problems and the studied problem families.

A :class:`Problem` is an objective polynomial plus a list of ``lhs <= rhs``
constraints over registered binary variables.  Generators build the classic
families (MaxCut, MaxIndSet, Vertex Cover, Knapsack, TSP, SAT) from natural
inputs and tag the result so depth analyzers can recognize the family later.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .poly import Polynomial

MINIMIZE = "min"
MAXIMIZE = "max"


@dataclass(frozen=True)
class Var:
    """A binary decision variable; slack bits remember their origin."""

    name: str
    #: (constraint index, bit index), both 1-based, for slack bits; None otherwise.
    slack_of: tuple[int, int] | None = None

    @property
    def is_slack(self) -> bool:
        return self.slack_of is not None


@dataclass(frozen=True)
class Constraint:
    """lhs <= rhs, optionally two-sided (lower <= lhs <= rhs).

    ``weight`` is the penalty multiplier used when the constraint is turned
    into a squared penalty; ``None`` means "use the problem-level default".
    ``slack_bound`` optionally caps the slack range used to size slack bits
    when domain knowledge guarantees the slack never exceeds it at optima.
    ``reference_expansion`` may hold an externally supplied expansion of the
    squared penalty; the dualizer diffs its own expansion against it and
    reports every discrepancy.
    """

    lhs: Polynomial
    rhs: Fraction
    weight: Fraction | None = None
    lower: Fraction | None = None
    slack_bound: Fraction | None = None
    label: str = ""
    reference_expansion: Polynomial | None = None

    def __post_init__(self):
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if self.weight is not None:
            object.__setattr__(self, "weight", Fraction(self.weight))
            if self.weight <= 0:
                raise InvalidInputError(f"penalty weight must be positive, got {self.weight}")
        if self.lower is not None:
            object.__setattr__(self, "lower", Fraction(self.lower))
            if self.lower >= self.rhs:
                raise InvalidInputError(
                    f"two-sided constraint needs lower < rhs, got {self.lower} >= {self.rhs}"
                )
        if self.slack_bound is not None:
            object.__setattr__(self, "slack_bound", Fraction(self.slack_bound))
            if self.slack_bound < 0:
                raise InvalidInputError("slack_bound must be nonnegative")


@dataclass
class Problem:
    """A constrained problem over registered binary variables."""

    sense: str
    objective: Polynomial
    constraints: tuple[Constraint, ...] = ()
    variables: dict[str, Var] = field(default_factory=dict)
    family: str | None = None
    family_info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sense not in (MINIMIZE, MAXIMIZE):
            raise InvalidInputError(f"sense must be 'min' or 'max', got {self.sense!r}")
        self.constraints = tuple(self.constraints)
        used = set(self.objective.variables())
        for con in self.constraints:
            used.update(con.lhs.variables())
        missing = used - set(self.variables)
        if missing:
            raise InvalidInputError(f"unregistered variables: {sorted(missing)}")
        for var in self.variables.values():
            if var.is_slack:
                raise InvalidInputError(
                    f"slack variable {var.name!r} may not appear before dualization"
                )

    def var_names(self) -> tuple[str, ...]:
        return tuple(self.variables)

    def normalized(self) -> "Problem":
        """Equivalent minimization problem (objective negated for max)."""
        if self.sense == MINIMIZE:
            return self
        return Problem(
            sense=MINIMIZE,
            objective=-self.objective,
            constraints=self.constraints,
            variables=dict(self.variables),
            family=self.family,
            family_info=dict(self.family_info, normalized_from=MAXIMIZE),
        )

    def default_penalty_weight(self) -> Fraction:
        """1 plus an interval upper bound on |objective| over the cube.

        Guarantees the penalty of any unit integral violation dominates the
        largest possible objective swing.
        """
        obj = self.normalized().objective
        low = sum((min(Fraction(0), c) for _, c in obj.terms()), Fraction(0))
        high = sum((max(Fraction(0), c) for _, c in obj.terms()), Fraction(0))
        return Fraction(1) + max(abs(low), abs(high))


def _registry(names: Iterable[str]) -> dict[str, Var]:
    return {name: Var(name) for name in names}


@dataclass(frozen=True)
class InstanceGraph:
    """A simple graph with 1-based vertices and optional edge weights."""

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        normalized = []
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInputError(f"edge ({u},{v}) outside vertex range 1..{self.n}")
            if u == v:
                raise InvalidInputError(f"loop edge ({u},{v}) not allowed")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInputError(f"duplicate edge ({u},{v}); multigraphs are rejected")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(normalized))
        if self.weights is not None:
            if len(self.weights) != len(self.edges):
                raise InvalidInputError("weights must match edges one-to-one")
            object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    def weight(self, index: int) -> Fraction:
        return self.weights[index] if self.weights is not None else Fraction(1)

    def degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(1, self.n + 1)}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees().values(), default=0)


def _vertex_var(i: int) -> str:
    return f"x{i}"


def make_maxcut(g: InstanceGraph) -> Problem:
    """MaxCut as an unconstrained minimization.

    Each edge {i,j} contributes w*(2*xi*xj - xi - xj), which is -w exactly
    when the edge is cut, so the minimum equals minus the maximum cut weight.
    """
    terms: list[tuple[tuple[str, ...], Fraction]] = []
    for idx, (u, v) in enumerate(g.edges):
        w = g.weight(idx)
        xu, xv = _vertex_var(u), _vertex_var(v)
        terms.append(((xu, xv), 2 * w))
        terms.append(((xu,), -w))
        terms.append(((xv,), -w))
    return Problem(
        sense=MINIMIZE,
        objective=Polynomial.from_terms(terms),
        constraints=(),
        variables=_registry(_vertex_var(i) for i in range(1, g.n + 1)),
        family="maxcut",
        family_info={"n": g.n, "edges": list(g.edges)},
    )


def _check_lambda(lam) -> Fraction | None:
    if lam is None:
        return None
    lam = Fraction(lam)
    if lam <= 0:
        raise InvalidInputError(f"penalty weight must be positive, got {lam}")
    return lam


def make_maxindset(g: InstanceGraph, lam=None) -> Problem:
    """Maximum independent set: max sum(xi) with xi*xj <= 0 per edge."""
    lam = _check_lambda(lam)
    objective = Polynomial.from_terms(((_vertex_var(i),), 1) for i in range(1, g.n + 1))
    constraints = tuple(
        Constraint(
            lhs=Polynomial({(_vertex_var(u), _vertex_var(v)): 1}),
            rhs=Fraction(0),
            weight=lam,
            label=f"edge({u},{v})",
        )
        for u, v in g.edges
    )
    return Problem(
        sense=MAXIMIZE,
        objective=objective,
        constraints=constraints,
        variables=_registry(_vertex_var(i) for i in range(1, g.n + 1)),
        family="maxindset",
        family_info={"n": g.n, "edges": list(g.edges)},
    )


def make_vertex_cover(g: InstanceGraph, lam=None) -> Problem:
    """Minimum vertex cover: min sum(xi) with (1-xi)+(1-xj) <= 1 per edge."""
    lam = _check_lambda(lam)
    objective = Polynomial.from_terms(((_vertex_var(i),), 1) for i in range(1, g.n + 1))
    constraints = tuple(
        Constraint(
            lhs=Polynomial({(): 2, (_vertex_var(u),): -1, (_vertex_var(v),): -1}),
            rhs=Fraction(1),
            weight=lam,
            label=f"edge({u},{v})",
        )
        for u, v in g.edges
    )
    return Problem(
        sense=MINIMIZE,
        objective=objective,
        constraints=constraints,
        variables=_registry(_vertex_var(i) for i in range(1, g.n + 1)),
        family="vertex_cover",
        family_info={"n": g.n, "edges": list(g.edges)},
    )


def make_knapsack(
    values: Sequence,
    weights: Sequence,
    capacity,
    lam=None,
    preprocess: bool = False,
) -> Problem:
    """0/1 knapsack: max sum(vi*xi) subject to sum(wi*xi) <= capacity.

    With ``preprocess=True`` (weights must be sorted ascending, values
    positive) the capacity constraint is tightened to the two-sided form
    capacity - w_n <= sum(wi*xi) <= capacity: any solution lighter than that
    leaves room for another item, so optima are unaffected and the slack
    range shrinks from ``capacity`` to ``w_n``.
    """
    lam = _check_lambda(lam)
    if len(values) != len(weights):
        raise InvalidInputError("values and weights must have equal length")
    n = len(weights)
    weights = [Fraction(w) for w in weights]
    values = [Fraction(v) for v in values]
    capacity = Fraction(capacity)
    if any(w <= 0 for w in weights):
        raise InvalidInputError("weights must be positive")
    if capacity <= 0:
        raise InvalidInputError("capacity must be positive")
    if preprocess:
        if any(values[i] <= 0 for i in range(n)):
            raise InvalidInputError("preprocessing requires positive values")
        if any(weights[i] > weights[i + 1] for i in range(n - 1)):
            raise InvalidInputError("preprocessing requires weights sorted ascending")

    names = [_vertex_var(i) for i in range(1, n + 1)]
    objective = Polynomial.from_terms(((names[i],), values[i]) for i in range(n))
    load = Polynomial.from_terms(((names[i],), weights[i]) for i in range(n))

    constraints: tuple[Constraint, ...]
    if sum(weights, Fraction(0)) <= capacity:
        warnings.warn("capacity constraint is redundant (every item fits); dropping it")
        constraints = ()
    elif preprocess:
        w_max = weights[-1]
        constraints = (
            Constraint(
                lhs=load,
                rhs=capacity,
                weight=lam,
                lower=capacity - w_max,
                slack_bound=w_max,
                label="capacity",
            ),
        )
    else:
        constraints = (Constraint(lhs=load, rhs=capacity, weight=lam, label="capacity"),)

    return Problem(
        sense=MAXIMIZE,
        objective=objective,
        constraints=constraints,
        variables=_registry(names),
        family="knapsack",
        family_info={
            "n": n,
            "capacity": capacity,
            "max_weight": max(weights),
            "preprocess": preprocess,
        },
    )


def _edge_var(u: int, v: int) -> str:
    u, v = min(u, v), max(u, v)
    return f"e{u}_{v}"


def make_tsp(g: InstanceGraph, subtour_subsets: Sequence[Iterable[int]] = ()) -> Problem:
    """Traveling salesperson on edge variables.

    Every vertex must have tour degree exactly 2; each equality is expanded
    into a <= pair.  Subtour elimination sets Q (2 <= |Q| < n) are supplied
    by the caller since the full family is exponential; constraints that can
    never bind (for example |Q| = 2, where the bound is vacuous on binary
    variables) are dropped with a warning.
    """
    if g.weights is None:
        raise InvalidInputError("TSP needs an edge-weighted graph")
    names = [_edge_var(u, v) for u, v in g.edges]
    objective = Polynomial.from_terms(
        ((_edge_var(u, v),), g.weight(idx)) for idx, (u, v) in enumerate(g.edges)
    )

    constraints: list[Constraint] = []
    for vertex in range(1, g.n + 1):
        incident = [_edge_var(u, v) for u, v in g.edges if vertex in (u, v)]
        degree = Polynomial.from_terms(((name,), 1) for name in incident)
        # degree == 2, written as the <= pair (<= 2 and -degree <= -2)
        constraints.append(Constraint(lhs=degree, rhs=Fraction(2), label=f"degree({vertex})<="))
        constraints.append(Constraint(lhs=-degree, rhs=Fraction(-2), label=f"degree({vertex})>="))

    n_subtour = 0
    for subset in subtour_subsets:
        q = sorted(set(subset))
        if len(q) < 2:
            raise InvalidInputError(f"subtour set {q} must have at least 2 vertices")
        if len(q) >= g.n:
            raise InvalidInputError(f"subtour set {q} must be a proper subset of the vertices")
        if any(v < 1 or v > g.n for v in q):
            raise InvalidInputError(f"subtour set {q} outside vertex range")
        inside = set(q)
        members = [
            _edge_var(u, v) for u, v in g.edges if u in inside and v in inside
        ]
        lhs = Polynomial.from_terms(((name,), 1) for name in members)
        rhs = Fraction(len(q) - 1)
        upper = sum((max(Fraction(0), c) for _, c in lhs.terms()), Fraction(0))
        if upper <= rhs:
            warnings.warn(f"subtour constraint on {q} can never bind; dropping it")
            continue
        constraints.append(Constraint(lhs=lhs, rhs=rhs, label=f"subtour({','.join(map(str, q))})"))
        n_subtour += 1

    return Problem(
        sense=MINIMIZE,
        objective=objective,
        constraints=constraints,
        variables=_registry(names),
        family="tsp",
        family_info={
            "n_vertices": g.n,
            "n_edge_vars": len(names),
            "n_subtour": n_subtour,
        },
    )


def make_sat(clauses: Sequence[Sequence[int]]) -> Problem:
    """Soft SAT: minimize the number of violated clauses.

    Clauses are lists of nonzero signed integers (DIMACS convention: ``3``
    means x3, ``-3`` means "not x3").  Clause c gets an indicator z_c that is
    free to be 1 exactly when the clause is unsatisfied, enforced through
    the contrapositive form  sum(unsatisfied literals) - z_c <= |c| - 1.
    """
    if not clauses:
        raise InvalidInputError("clause list must be nonempty")
    max_var = 0
    for clause in clauses:
        if not clause:
            raise InvalidInputError("empty clauses are not allowed")
        for lit in clause:
            if lit == 0:
                raise InvalidInputError("literal 0 is not allowed")
            max_var = max(max_var, abs(lit))

    x_names = [_vertex_var(i) for i in range(1, max_var + 1)]
    z_names = [f"z{c}" for c in range(1, len(clauses) + 1)]
    objective = Polynomial.from_terms(((z,), 1) for z in z_names)

    constraints = []
    for c, clause in enumerate(clauses, start=1):
        seen_vars = set()
        terms: list[tuple[tuple[str, ...], Fraction]] = []
        for lit in clause:
            name = _vertex_var(abs(lit))
            if name in seen_vars:
                raise InvalidInputError(f"variable {name} repeats in clause {c}")
            seen_vars.add(name)
            if lit > 0:
                # positive literal unsatisfied when x = 0: contributes 1 - x
                terms.append(((), Fraction(1)))
                terms.append(((name,), Fraction(-1)))
            else:
                terms.append(((name,), Fraction(1)))
        terms.append(((f"z{c}",), Fraction(-1)))
        constraints.append(
            Constraint(
                lhs=Polynomial.from_terms(terms),
                rhs=Fraction(len(clause) - 1),
                label=f"clause({c})",
            )
        )

    return Problem(
        sense=MINIMIZE,
        objective=objective,
        constraints=tuple(constraints),
        variables=_registry(x_names + z_names),
        family="sat",
        family_info={"n_vars": max_var, "clauses": [list(c) for c in clauses]},
    )
