"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies.
"""


class QaoaDepthError(Exception):
    """Base class for all package errors."""


class InvalidInputError(QaoaDepthError):
    """Malformed or inconsistent user input (files, arguments, problem data)."""


class MissingAssignmentError(QaoaDepthError):
    """A polynomial was evaluated with an assignment missing some variable."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"assignment is missing variable {variable!r}")


class InfeasibleConstraintError(QaoaDepthError):
    """A constraint cannot be satisfied by any binary assignment."""

    def __init__(self, index: int, minimum, rhs):
        self.index = index
        self.minimum = minimum
        self.rhs = rhs
        super().__init__(
            f"constraint {index} is infeasible: min over the cube is "
            f"{minimum}, which exceeds the bound {rhs}"
        )


class GateWidthError(QaoaDepthError):
    """A required gate acts on more qubits than the hardware limit allows.

    Splitting wide diagonal gates into narrower ones is deliberately not
    performed; re-run with a larger --gate-width if the hardware allows it.
    """

    def __init__(self, limit: int, supports):
        self.limit = limit
        self.supports = tuple(supports)
        names = ", ".join("{" + ",".join(s) + "}" for s in self.supports)
        super().__init__(
            f"gate width limit {limit} exceeded by interaction(s): {names}"
        )


class BudgetExceededError(QaoaDepthError):
    """An exact search ran out of its node budget before finishing."""

    def __init__(self, budget: int, context: str = ""):
        self.budget = budget
        self.context = context
        msg = f"search budget of {budget} nodes exceeded"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
