"""Proper edge colorings of the interaction hypergraph.

A color class is a set of hyperedges with pairwise disjoint supports, i.e.
a set of gates that can run in one circuit layer.  Three methods are
provided:

* :func:`color_exact` - branch and bound, returns the true chromatic index
  (with the exhausted search as certificate) within a node budget;
* :func:`color_misra_gries` - constructive Delta+1 coloring for ordinary
  (2-uniform) graphs;
* :func:`color_greedy` - first-fit fallback for arbitrary hypergraphs.

Every coloring constructed here is re-checked for properness, whatever the
method, and carries the applicable documented upper bounds as annotations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceededError, InvalidInputError
from .hypergraph import DerivedHypergraph

#: Default node budget for the exact coloring search.
DEFAULT_EXACT_BUDGET = 2_000_000


@dataclass(frozen=True)
class BoundRef:
    """A documented chromatic-index bound and whether it applies here."""

    name: str
    kind: str  # "lower" or "upper"
    status: str  # "theorem", "conjecture" or "asymptotic"
    applies: bool
    value: int | None
    note: str = ""


@dataclass(frozen=True)
class EdgeColoring:
    classes: tuple[tuple[int, ...], ...]
    method: str  # "exact", "misra_gries" or "greedy"
    lower_bound: int
    upper_bound_refs: tuple[BoundRef, ...] = ()

    @property
    def num_colors(self) -> int:
        return len(self.classes)

    def color_of(self) -> dict[int, int]:
        return {e: c for c, cls in enumerate(self.classes) for e in cls}


def check_proper(h: DerivedHypergraph, classes: Sequence[Sequence[int]]) -> None:
    """Raise unless the classes form a proper coloring covering every edge."""
    seen: set[int] = set()
    for cls in classes:
        used_vertices: set[str] = set()
        for index in cls:
            if index in seen:
                raise InvalidInputError(f"edge {index} colored twice")
            seen.add(index)
            support = set(h.edges[index].support)
            if used_vertices & support:
                raise InvalidInputError(
                    f"edges in one class share vertices {sorted(used_vertices & support)}"
                )
            used_vertices |= support
    if seen != set(range(len(h.edges))):
        raise InvalidInputError("coloring does not cover every edge exactly once")


def _greedy_intersecting_set(h: DerivedHypergraph) -> list[int]:
    """A maximal set of pairwise intersecting edges (a clique of conflicts)."""
    m = len(h.edges)
    supports = [set(e.support) for e in h.edges]
    degree = [sum(1 for j in range(m) if j != i and supports[i] & supports[j]) for i in range(m)]
    order = sorted(range(m), key=lambda i: (-degree[i], h.edges[i].support))
    clique: list[int] = []
    for i in order:
        if all(supports[i] & supports[j] for j in clique):
            clique.append(i)
    return clique


def combinatorial_lower_bound(h: DerivedHypergraph) -> int:
    """Valid lower bound: max vertex degree, a conflict clique, and a counting bound."""
    m = len(h.edges)
    if m == 0:
        return 0
    bound = max(h.max_degree(), len(_greedy_intersecting_set(h)))
    touched = len(h.touched_vertices())
    min_size = min(len(e.support) for e in h.edges)
    max_matching = touched // min_size  # no class can pack more disjoint edges
    if max_matching:
        bound = max(bound, math.ceil(m / max_matching))
    return bound


def bounds(h: DerivedHypergraph) -> tuple[int, tuple[BoundRef, ...]]:
    """Lower bound plus annotated documented upper bounds with applicability."""
    lower = combinatorial_lower_bound(h)
    n = len(h.touched_vertices())
    linear = h.is_linear()
    two_uniform = h.uniform_size() == 2
    uppers = (
        BoundRef(
            name="edge_count",
            kind="upper",
            status="theorem",
            applies=True,
            value=len(h.edges),
            note="one layer per gate always works",
        ),
        BoundRef(
            name="vizing",
            kind="upper",
            status="theorem",
            applies=two_uniform,
            value=h.max_degree() + 1 if two_uniform else None,
            note="chromatic index of a simple graph is Delta or Delta+1",
        ),
        BoundRef(
            name="chang_lawler",
            kind="upper",
            status="theorem",
            applies=linear,
            value=math.ceil(Fraction(3 * n, 2) - 2) if linear else None,
            note="ceil(1.5n - 2) for linear hypergraphs on n vertices",
        ),
        BoundRef(
            name="erdos_faber_lovasz",
            kind="upper",
            status="conjecture",
            applies=linear,
            value=n if linear else None,
            note="conjectured n for linear hypergraphs; not assumed anywhere",
        ),
        BoundRef(
            name="kahn",
            kind="upper",
            status="asymptotic",
            applies=linear,
            value=None,
            note="n + o(n) for linear hypergraphs; no finite value at fixed n",
        ),
    )
    return lower, uppers


def make_coloring(
    h: DerivedHypergraph,
    classes: Sequence[Sequence[int]],
    method: str,
    lower_bound: int | None = None,
) -> EdgeColoring:
    """Validate and package a coloring, attaching the bound annotations."""
    check_proper(h, classes)
    lower, uppers = bounds(h)
    if lower_bound is not None:
        lower = max(lower, lower_bound)
    return EdgeColoring(
        classes=tuple(tuple(cls) for cls in classes),
        method=method,
        lower_bound=lower,
        upper_bound_refs=uppers,
    )


def color_greedy(h: DerivedHypergraph, order: str = "degree_desc") -> EdgeColoring:
    """First-fit coloring; deterministic given the order choice."""
    m = len(h.edges)
    supports = [set(e.support) for e in h.edges]
    if order == "input":
        sequence = list(range(m))
    elif order == "degree_desc":
        degree = [
            sum(1 for j in range(m) if j != i and supports[i] & supports[j]) for i in range(m)
        ]
        sequence = sorted(range(m), key=lambda i: (-degree[i], h.edges[i].support))
    else:
        raise InvalidInputError(f"unknown greedy order {order!r}")

    class_vertices: list[set[str]] = []
    classes: list[list[int]] = []
    for index in sequence:
        placed = False
        for c in range(len(classes)):
            if not (class_vertices[c] & supports[index]):
                classes[c].append(index)
                class_vertices[c] |= supports[index]
                placed = True
                break
        if not placed:
            classes.append([index])
            class_vertices.append(set(supports[index]))
    for cls in classes:
        cls.sort()
    return make_coloring(h, classes, method="greedy")


def color_misra_gries(h: DerivedHypergraph) -> EdgeColoring:
    """Constructive proper coloring of a 2-uniform hypergraph with <= Delta+1 colors."""
    for edge in h.edges:
        if len(edge.support) != 2:
            raise InvalidInputError(
                "misra-gries needs a 2-uniform hypergraph; "
                f"edge {edge.support} has width {len(edge.support)}"
            )
    m = len(h.edges)
    if m == 0:
        return make_coloring(h, (), method="misra_gries")

    max_degree = h.max_degree()
    palette = range(1, max_degree + 2)

    incident: dict[str, dict[int, str]] = {}  # vertex -> {color: other endpoint}
    edge_color: dict[tuple[str, str], int] = {}

    def key(a: str, b: str) -> tuple[str, str]:
        return (a, b) if a <= b else (b, a)

    def free_color(v: str) -> int:
        used = incident.get(v, {})
        for color in palette:
            if color not in used:
                return color
        raise AssertionError(f"no free color at {v}; palette too small")

    def assign(a: str, b: str, color: int) -> None:
        k = key(a, b)
        old = edge_color.get(k)
        if old is not None:
            del incident[a][old]
            del incident[b][old]
        edge_color[k] = color
        incident.setdefault(a, {})[color] = b
        incident.setdefault(b, {})[color] = a

    def unassign(a: str, b: str) -> None:
        k = key(a, b)
        old = edge_color.pop(k)
        del incident[a][old]
        del incident[b][old]

    for edge in h.edges:
        u, v = edge.support
        # Shortcut: a color free at both endpoints colors the edge directly.
        shared = next(
            (col for col in palette
             if col not in incident.get(u, {}) and col not in incident.get(v, {})),
            None,
        )
        if shared is not None:
            assign(u, v, shared)
            continue
        # Maximal fan of u starting at v: each next edge's color is free at
        # the previous fan vertex.
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            extension = None
            for color, w in sorted(incident.get(u, {}).items()):
                if w not in in_fan and color not in incident.get(last, {}):
                    extension = w
                    break
            if extension is None:
                break
            fan.append(extension)
            in_fan.add(extension)

        c = free_color(u)
        d = free_color(fan[-1])

        if c != d:
            # Invert the maximal path from u alternating colors d, c.
            # Unassign first: flipping in place would transiently give two
            # incident edges the same color and corrupt the bookkeeping.
            path = []
            current, color = u, d
            while color in incident.get(current, {}):
                nxt = incident[current][color]
                path.append((current, nxt, color))
                current = nxt
                color = c if color == d else d
            for a, b, _ in path:
                unassign(a, b)
            for a, b, color in path:
                assign(a, b, d if color == c else c)

        # d is now free at u; find the first fan vertex where d is free and
        # rotate the fan prefix onto it.
        pivot = None
        for index, w in enumerate(fan):
            if d not in incident.get(w, {}):
                pivot = index
                break
        if pivot is None:
            raise AssertionError("no fan vertex with the free color; fan invariant broken")
        for i in range(pivot):
            shifted = edge_color[key(u, fan[i + 1])]
            unassign(u, fan[i + 1])
            assign(u, fan[i], shifted)
        assign(u, fan[pivot], d)

    colors_used = sorted(set(edge_color.values()))
    index_of = {
        key(*h.edges[i].support): i for i in range(m)
    }
    classes = [
        sorted(index_of[k] for k, col in edge_color.items() if col == color)
        for color in colors_used
    ]
    coloring = make_coloring(h, classes, method="misra_gries")
    if coloring.num_colors > max_degree + 1:
        raise AssertionError("misra-gries exceeded Delta+1 colors")
    return coloring


def color_exact(h: DerivedHypergraph, budget: int = DEFAULT_EXACT_BUDGET) -> EdgeColoring:
    """Exact chromatic index by branch and bound.

    Edges are pre-ordered by conflict degree; a maximal clique of pairwise
    intersecting edges is pre-colored to break palette symmetry, and branches
    open a new color only when that could still beat the incumbent.  The
    exhausted search certifies optimality.  Raises
    :class:`BudgetExceededError` when the node budget runs out.
    """
    m = len(h.edges)
    if m == 0:
        return make_coloring(h, (), method="exact")
    supports = [frozenset(e.support) for e in h.edges]
    conflicts: list[list[int]] = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if supports[i] & supports[j]:
                conflicts[i].append(j)
                conflicts[j].append(i)

    lower = combinatorial_lower_bound(h)
    incumbent = color_greedy(h, order="degree_desc")
    if h.uniform_size() == 2:
        # Delta+1 construction is a far better incumbent than first-fit and
        # instantly certifies class-2 graphs whose lower bound is Delta+1.
        constructive = color_misra_gries(h)
        if constructive.num_colors < incumbent.num_colors:
            incumbent = constructive
    best_classes: list[list[int]] = [list(cls) for cls in incumbent.classes]
    best_count = incumbent.num_colors
    if best_count == lower:
        return make_coloring(h, best_classes, method="exact", lower_bound=lower)

    clique = _greedy_intersecting_set(h)
    colors = [-1] * m
    for position, edge in enumerate(clique):
        colors[edge] = position
    pre_colored = len(clique)

    nodes = 0
    done = False

    def saturation(edge: int) -> tuple[int, int, int]:
        neighbor_colors = {colors[j] for j in conflicts[edge] if colors[j] >= 0}
        return (len(neighbor_colors), len(conflicts[edge]), -edge)

    def dfs(assigned: int, used: int) -> None:
        nonlocal nodes, best_count, best_classes, done
        if done:
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(budget, "exact edge coloring")
        if used >= best_count:
            return
        if assigned == m:
            best_count = used
            grouped: list[list[int]] = [[] for _ in range(used)]
            for index, color in enumerate(colors):
                grouped[color].append(index)
            best_classes = grouped
            if best_count == lower:
                done = True
            return
        candidates = [i for i in range(m) if colors[i] < 0]
        edge = max(candidates, key=saturation)
        neighbor_colors = {colors[j] for j in conflicts[edge] if colors[j] >= 0}
        for color in range(used):
            if color not in neighbor_colors:
                colors[edge] = color
                dfs(assigned + 1, used)
                colors[edge] = -1
                if done:
                    return
        if used + 1 < best_count:
            colors[edge] = used
            dfs(assigned + 1, used + 1)
            colors[edge] = -1

    dfs(pre_colored, pre_colored)
    return make_coloring(h, best_classes, method="exact", lower_bound=best_count)
