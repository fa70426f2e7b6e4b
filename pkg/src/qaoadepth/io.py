"""File formats and serialization.

Problems travel as JSON (schema below); plain graphs may come in as DIMACS
edge files for the family generators.  All numbers are exact end to end:
integers stay integers and non-integral rationals are {"num": p, "den": q}
objects, never floats, so repeated runs are byte-identical.

Problem JSON schema::

    {
      "sense": "min" | "max",
      "variables": ["x1", ...],
      "objective": [{"vars": ["x1", "x2"], "coeff": 2}, ...],
      "constraints": [
        {"terms": [{"vars": [...], "coeff": ...}, ...],
         "rhs": <number>,
         "lambda": <positive number, optional>,
         "lower": <number, optional two-sided bound>,
         "slack_bound": <number, optional slack-range cap>,
         "label": <string, optional>,
         "reference_expansion": [term, ...]  (optional)}
      ],
      "family": <string, optional>,
      "family_info": <object, optional>
    }
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .coloring import BoundRef, EdgeColoring
from .dualize import ConstraintDualization, ExpansionDiff, Pubo
from .errors import InvalidInputError
from .hypergraph import DerivedHypergraph
from .poly import Polynomial
from .problems import Constraint, InstanceGraph, Problem, Var
from .schedule import CircuitSchedule, DepthReport

TOOL_NAME = "qaoadepth"


# -- exact numbers -----------------------------------------------------------


def rational_to_json(value: Fraction):
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return {"num": value.numerator, "den": value.denominator}


def rational_from_json(value, path: str) -> Fraction:
    if isinstance(value, bool):
        raise InvalidInputError(f"{path}: expected a number, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise InvalidInputError(
            f"{path}: floats are not accepted; use an integer or {{'num', 'den'}}"
        )
    if isinstance(value, dict):
        extra = set(value) - {"num", "den"}
        if extra or "num" not in value or "den" not in value:
            raise InvalidInputError(f"{path}: rational object must have exactly num and den")
        num, den = value["num"], value["den"]
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
            raise InvalidInputError(f"{path}: num and den must be integers")
        if den == 0:
            raise InvalidInputError(f"{path}: zero denominator")
        return Fraction(num, den)
    raise InvalidInputError(f"{path}: expected a number, got {type(value).__name__}")


def _jsonify(value):
    """Recursively convert Fractions and tuples into JSON-plain values."""
    if isinstance(value, Fraction):
        return rational_to_json(value)
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonify(v) for k, v in value.items()}
    return value


# -- polynomials -------------------------------------------------------------


def polynomial_to_json(p: Polynomial) -> list[dict]:
    return [
        {"vars": list(support), "coeff": rational_to_json(coeff)}
        for support, coeff in p.terms()
    ]


def polynomial_from_json(data, known: set[str] | None, path: str) -> Polynomial:
    if not isinstance(data, list):
        raise InvalidInputError(f"{path}: expected a list of terms")
    pairs = []
    for i, term in enumerate(data):
        term_path = f"{path}[{i}]"
        if not isinstance(term, dict):
            raise InvalidInputError(f"{term_path}: expected an object")
        extra = set(term) - {"vars", "coeff"}
        if extra:
            raise InvalidInputError(f"{term_path}: unknown fields {sorted(extra)}")
        variables = term.get("vars", [])
        if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
            raise InvalidInputError(f"{term_path}.vars: expected a list of variable names")
        if known is not None:
            for j, name in enumerate(variables):
                if name not in known:
                    raise InvalidInputError(
                        f"{term_path}.vars[{j}]: unknown variable {name!r}"
                    )
        coeff = rational_from_json(term.get("coeff", 1), f"{term_path}.coeff")
        pairs.append((tuple(variables), coeff))
    return Polynomial.from_terms(pairs)


# -- problems ----------------------------------------------------------------


def problem_to_json(problem: Problem) -> dict:
    out: dict[str, Any] = {
        "sense": problem.sense,
        "variables": list(problem.variables),
        "objective": polynomial_to_json(problem.objective),
        "constraints": [],
    }
    for con in problem.constraints:
        entry: dict[str, Any] = {
            "terms": polynomial_to_json(con.lhs),
            "rhs": rational_to_json(con.rhs),
        }
        if con.weight is not None:
            entry["lambda"] = rational_to_json(con.weight)
        if con.lower is not None:
            entry["lower"] = rational_to_json(con.lower)
        if con.slack_bound is not None:
            entry["slack_bound"] = rational_to_json(con.slack_bound)
        if con.label:
            entry["label"] = con.label
        if con.reference_expansion is not None:
            entry["reference_expansion"] = polynomial_to_json(con.reference_expansion)
        out["constraints"].append(entry)
    if problem.family is not None:
        out["family"] = problem.family
    if problem.family_info:
        out["family_info"] = _jsonify(problem.family_info)
    return out


def problem_from_json(data, path: str = "problem") -> Problem:
    if not isinstance(data, dict):
        raise InvalidInputError(f"{path}: expected an object")
    extra = set(data) - {"sense", "variables", "objective", "constraints", "family", "family_info"}
    if extra:
        raise InvalidInputError(f"{path}: unknown fields {sorted(extra)}")
    sense = data.get("sense")
    if sense not in ("min", "max"):
        raise InvalidInputError(f"{path}.sense: expected 'min' or 'max', got {sense!r}")
    names = data.get("variables")
    if not isinstance(names, list) or not all(isinstance(n, str) and n for n in names):
        raise InvalidInputError(f"{path}.variables: expected a list of non-empty names")
    if len(set(names)) != len(names):
        raise InvalidInputError(f"{path}.variables: names must be unique")
    known = set(names)

    objective = polynomial_from_json(data.get("objective", []), known, f"{path}.objective")

    constraints = []
    raw_constraints = data.get("constraints", [])
    if not isinstance(raw_constraints, list):
        raise InvalidInputError(f"{path}.constraints: expected a list")
    for i, raw in enumerate(raw_constraints):
        c_path = f"{path}.constraints[{i}]"
        if not isinstance(raw, dict):
            raise InvalidInputError(f"{c_path}: expected an object")
        extra = set(raw) - {
            "terms", "rhs", "lambda", "lower", "slack_bound", "label", "reference_expansion",
        }
        if extra:
            raise InvalidInputError(f"{c_path}: unknown fields {sorted(extra)}")
        if "rhs" not in raw:
            raise InvalidInputError(f"{c_path}: missing rhs")
        lhs = polynomial_from_json(raw.get("terms", []), known, f"{c_path}.terms")
        kwargs: dict[str, Any] = {
            "lhs": lhs,
            "rhs": rational_from_json(raw["rhs"], f"{c_path}.rhs"),
        }
        if "lambda" in raw:
            kwargs["weight"] = rational_from_json(raw["lambda"], f"{c_path}.lambda")
        if "lower" in raw:
            kwargs["lower"] = rational_from_json(raw["lower"], f"{c_path}.lower")
        if "slack_bound" in raw:
            kwargs["slack_bound"] = rational_from_json(raw["slack_bound"], f"{c_path}.slack_bound")
        if "label" in raw:
            if not isinstance(raw["label"], str):
                raise InvalidInputError(f"{c_path}.label: expected a string")
            kwargs["label"] = raw["label"]
        if "reference_expansion" in raw:
            kwargs["reference_expansion"] = polynomial_from_json(
                raw["reference_expansion"], None, f"{c_path}.reference_expansion"
            )
        constraints.append(Constraint(**kwargs))

    family = data.get("family")
    if family is not None and not isinstance(family, str):
        raise InvalidInputError(f"{path}.family: expected a string")
    family_info = data.get("family_info", {})
    if not isinstance(family_info, dict):
        raise InvalidInputError(f"{path}.family_info: expected an object")

    return Problem(
        sense=sense,
        objective=objective,
        constraints=tuple(constraints),
        variables={name: Var(name) for name in names},
        family=family,
        family_info=dict(family_info),
    )


def read_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return problem_from_json(data, path="problem")


def write_problem(problem: Problem, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(problem_to_json(problem)))


# -- DIMACS edge files -------------------------------------------------------


def read_dimacs_graph(path: str) -> InstanceGraph:
    """DIMACS edge format: a 'p edge N M' header and 'e u v [weight]' lines."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc

    n = None
    declared_edges = None
    edges: list[tuple[int, int]] = []
    weights: list[Fraction] = []
    any_weight = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise InvalidInputError(f"{path}:{lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise InvalidInputError(
                    f"{path}:{lineno}: expected 'p edge <vertices> <edges>'"
                )
            try:
                n, declared_edges = int(fields[2]), int(fields[3])
            except ValueError:
                raise InvalidInputError(f"{path}:{lineno}: vertex/edge counts must be integers")
        elif fields[0] == "e":
            if n is None:
                raise InvalidInputError(f"{path}:{lineno}: edge before the problem line")
            if len(fields) not in (3, 4):
                raise InvalidInputError(f"{path}:{lineno}: expected 'e <u> <v> [weight]'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise InvalidInputError(f"{path}:{lineno}: endpoints must be integers")
            weight = Fraction(1)
            if len(fields) == 4:
                any_weight = True
                try:
                    weight = Fraction(fields[3])
                except (ValueError, ZeroDivisionError):
                    raise InvalidInputError(f"{path}:{lineno}: bad weight {fields[3]!r}")
            edges.append((u, v))
            weights.append(weight)
        else:
            raise InvalidInputError(f"{path}:{lineno}: unknown record {fields[0]!r}")

    if n is None:
        raise InvalidInputError(f"{path}: missing 'p edge' problem line")
    if declared_edges is not None and declared_edges != len(edges):
        raise InvalidInputError(
            f"{path}: header declares {declared_edges} edges but {len(edges)} found"
        )
    try:
        return InstanceGraph(
            n=n, edges=tuple(edges), weights=tuple(weights) if any_weight else None
        )
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc


# -- DOT export --------------------------------------------------------------

_DOT_PALETTE = (
    "red", "blue", "forestgreen", "darkorange", "purple", "teal",
    "deeppink", "saddlebrown", "olive", "navy", "crimson", "darkcyan",
)


def hypergraph_to_dot(h: DerivedHypergraph, coloring: EdgeColoring | None = None) -> str:
    """Graphviz rendering; hyperedges wider than 2 become labeled box nodes."""
    color_of = coloring.color_of() if coloring is not None else {}

    def attrs(index: int) -> str:
        if index not in color_of:
            return ""
        c = color_of[index]
        return f' [color="{_DOT_PALETTE[c % len(_DOT_PALETTE)]}", label="c{c}"]'

    lines = ["graph interactions {", "  node [shape=circle];"]
    for name in h.vertices:
        lines.append(f'  "{name}";')
    box = 0
    for index, edge in enumerate(h.edges):
        if len(edge.support) == 2:
            u, v = edge.support
            lines.append(f'  "{u}" -- "{v}"{attrs(index)};')
        else:
            aux = f"gate{box}"
            box += 1
            lines.append(f'  "{aux}" [shape=box, label="{",".join(edge.support)}"];')
            for name in edge.support:
                lines.append(f'  "{aux}" -- "{name}"{attrs(index)};')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- structured reports ------------------------------------------------------


def expansion_diff_to_json(diff: ExpansionDiff) -> dict:
    def pack(pairs):
        return [
            {"vars": list(s), "coeff": rational_to_json(c)} for s, c in sorted(pairs)
        ]

    return {
        "has_differences": diff.has_differences,
        "missing_in_reference": pack(diff.missing_in_reference),
        "unexpected_in_reference": pack(diff.unexpected_in_reference),
        "coefficient_mismatches": [
            {
                "vars": list(s),
                "computed": rational_to_json(a),
                "reference": rational_to_json(b),
            }
            for s, a, b in sorted(diff.coefficient_mismatches)
        ],
    }


def dualization_to_json(record: ConstraintDualization) -> dict:
    out: dict[str, Any] = {
        "index": record.index,
        "label": record.label,
        "dropped": record.dropped,
    }
    if record.dropped:
        out["reason"] = record.reason
    if record.cube_min is not None:
        out["cube_min"] = rational_to_json(record.cube_min)
        out["cube_min_exact"] = record.cube_min_exact
    if not record.dropped:
        out["slack_range"] = rational_to_json(record.slack_range)
        out["slack_bits"] = record.bit_count
        out["slack_vars"] = list(record.slack_vars)
        out["penalty_weight"] = rational_to_json(record.weight)
        out["penalty"] = polynomial_to_json(record.penalty)
    if record.notes:
        out["notes"] = list(record.notes)
    if record.expansion_diff is not None:
        out["expansion_diff"] = expansion_diff_to_json(record.expansion_diff)
    return out


def pubo_to_json(pubo: Pubo) -> dict:
    return {
        "objective": polynomial_to_json(pubo.objective),
        "constant_offset": rational_to_json(pubo.constant_offset),
        "original_sense": pubo.original_sense,
        "variables": list(pubo.variables),
        "slack_variables": list(pubo.slack_names()),
        "dualization": [dualization_to_json(r) for r in pubo.dualizations],
    }


def hypergraph_to_json(h: DerivedHypergraph) -> dict:
    return {
        "vertices": list(h.vertices),
        "edges": [
            {"support": list(e.support), "terms": len(e.monomials)} for e in h.edges
        ],
        "singletons": [
            {"var": name, "coeff": rational_to_json(coeff)} for name, coeff in h.singletons
        ],
        "constant": rational_to_json(h.constant),
        "max_degree": h.max_degree(),
        "linear": h.is_linear(),
        "uniform_size": h.uniform_size(),
    }


def bound_ref_to_json(ref: BoundRef) -> dict:
    return {
        "name": ref.name,
        "kind": ref.kind,
        "status": ref.status,
        "applies": ref.applies,
        "value": ref.value,
        "note": ref.note,
    }


def coloring_to_json(coloring: EdgeColoring) -> dict:
    return {
        "method": coloring.method,
        "num_colors": coloring.num_colors,
        "classes": [list(cls) for cls in coloring.classes],
        "lower_bound": coloring.lower_bound,
        "upper_bounds": [bound_ref_to_json(r) for r in coloring.upper_bound_refs],
    }


def schedule_to_json(sched: CircuitSchedule) -> dict:
    layers = []
    for layer in sched.layers:
        angle = "beta" if layer.kind == "mixer" else "gamma"
        gates = []
        for gate in layer.gates:
            entry: dict[str, Any] = {"qubits": list(gate.qubits)}
            if gate.kind != "mixer":
                entry["terms"] = [
                    {"vars": list(s), "coeff": rational_to_json(c)} for s, c in gate.terms
                ]
            gates.append(entry)
        layers.append({"kind": layer.kind, "angle": angle, "gates": gates})
    return {
        "variables": list(sched.variables),
        "iterations": sched.iterations,
        "structural_depth": sched.structural_depth,
        "total_depth": sched.iterations * sched.structural_depth,
        "layers": layers,
    }


def depth_report_to_json(report: DepthReport) -> dict:
    out: dict[str, Any] = {
        "structural_depth": report.structural_depth,
        "coloring_depth": report.coloring_depth,
        "singleton_overhead": report.singleton_overhead,
        "notes": list(report.notes),
    }
    if report.family_bound is not None:
        fb = report.family_bound
        out["family_bound"] = {
            "family": fb.family,
            "formula": fb.formula,
            "value": fb.value,
            "matches_structural": fb.matches_structural,
            "details": _jsonify(fb.details),
            "note": fb.note,
        }
    else:
        out["family_bound"] = None
    return out


def dumps(data) -> str:
    """Canonical JSON text: sorted keys, stable indentation, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- text rendering ----------------------------------------------------------

_ANSI_COLORS = (31, 32, 33, 34, 35, 36, 91, 92, 93, 94, 95, 96)


def render_schedule_text(sched: CircuitSchedule, color: bool = False) -> str:
    """Column-per-layer circuit sketch; qubits are rows, gates repeat per qubit."""
    headers = []
    cost_index = 0
    for layer in sched.layers:
        if layer.kind == "mixer":
            headers.append("mixer")
        elif layer.kind == "singleton":
            headers.append("1q")
        else:
            cost_index += 1
            headers.append(f"L{cost_index}")

    grid: list[list[str]] = []
    for name in sched.variables:
        row = []
        for layer in sched.layers:
            label = "."
            for gate in layer.gates:
                if name in gate.qubits:
                    label = gate.label
                    break
            row.append(label)
        grid.append(row)

    name_width = max((len(n) for n in sched.variables), default=0)
    widths = [
        max(len(headers[i]), max((len(row[i]) for row in grid), default=1))
        for i in range(len(sched.layers))
    ]

    def paint(text: str, layer_index: int) -> str:
        if not color or text == ".":
            return text
        code = _ANSI_COLORS[layer_index % len(_ANSI_COLORS)]
        return f"\x1b[{code}m{text}\x1b[0m"

    lines = [
        " ".join([" " * name_width] + [headers[i].ljust(widths[i]) for i in range(len(headers))])
    ]
    for v, name in enumerate(sched.variables):
        cells = []
        for i in range(len(sched.layers)):
            text = grid[v][i].ljust(widths[i])
            cells.append(paint(text, i) if grid[v][i] != "." else text)
        lines.append(" ".join([name.ljust(name_width)] + cells))
    if sched.iterations > 1:
        lines.append(f"(repeated {sched.iterations} times; angles gamma_k, beta_k per iteration)")
    return "\n".join(lines) + "\n"
