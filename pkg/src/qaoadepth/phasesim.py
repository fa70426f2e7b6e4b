"""Diagonal-phase oracle for schedules.

Every cost gate is diagonal in the computational basis, so one iteration of
the cost part of a schedule multiplies basis state |z> by a phase whose
exponent is (gamma times) the sum of all gate polynomials at z.  Tabulating
that exponent for every z and comparing it against the penalty objective
checks, exactly and without tolerances, that the schedule covers every
monomial exactly once.  Mixer layers are skipped: the check targets cost
coverage, not QAOA dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dualize import Pubo
from .errors import InvalidInputError
from .poly import EXACT_ENUMERATION_LIMIT, Polynomial
from .schedule import CircuitSchedule


@dataclass(frozen=True)
class PhaseTable:
    """Accumulated phase exponent per basis state, in units of gamma.

    Entry ``values[z]`` belongs to the assignment where variable
    ``variables[i]`` equals bit i of z.
    """

    variables: tuple[str, ...]
    values: tuple[Fraction, ...]

    def assignment(self, z: int) -> dict[str, int]:
        return {name: (z >> i) & 1 for i, name in enumerate(self.variables)}


def simulate_cost_phases(
    sched: CircuitSchedule, var_limit: int = EXACT_ENUMERATION_LIMIT
) -> PhaseTable:
    """Accumulate the per-basis-state phase of all cost and singleton layers."""
    variables = sched.variables
    if len(variables) > var_limit:
        raise InvalidInputError(
            f"phase table needs {len(variables)} variables but the limit is {var_limit}"
        )
    total = sched.covered_polynomial()
    values = total.values_over_cube(variables)
    return PhaseTable(variables=variables, values=tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    mismatch_assignment: dict | None = None
    phase: Fraction | None = None
    expected: Fraction | None = None

    @property
    def delta(self) -> Fraction | None:
        if self.phase is None or self.expected is None:
            return None
        return self.phase - self.expected


def check_equivalence(
    sched: CircuitSchedule, pubo: Pubo, var_limit: int = EXACT_ENUMERATION_LIMIT
) -> EquivalenceReport:
    """Phase table equals the penalty objective (minus its constant) everywhere.

    The constant term contributes only a global phase, so gates never carry
    it.  Reports the first mismatching assignment when the check fails.
    """
    table = simulate_cost_phases(sched, var_limit)
    target = pubo.objective - Polynomial.constant(pubo.objective.constant_term)
    expected = target.values_over_cube(table.variables)
    for z, phase in enumerate(table.values):
        if phase != expected[z]:
            return EquivalenceReport(
                equivalent=False,
                mismatch_assignment=table.assignment(z),
                phase=phase,
                expected=Fraction(expected[z]),
            )
    return EquivalenceReport(equivalent=True)
