"""Exact multilinear polynomial algebra over named binary variables.

A polynomial is a map from monomial supports to rational coefficients:

    support = tuple of distinct variable names, sorted   (() = constant term)
    coefficient = Fraction, never zero for stored terms

Because every variable only takes values in {0, 1}, x**2 = x and products
of monomials reduce to the union of their supports.  Coefficients are kept
as exact rationals throughout; floats are rejected so that identities such
as "the penalty vanishes exactly on feasible points" can be asserted with
equality rather than tolerances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MissingAssignmentError

Support = tuple[str, ...]

#: Exhaustive enumeration over the binary cube is used below this many
#: variables; 2**20 evaluations complete in well under a second.
EXACT_ENUMERATION_LIMIT = 20


def _coerce(value) -> Fraction:
    """Convert an exact scalar to Fraction, rejecting floats."""
    if isinstance(value, bool):
        raise TypeError("bool is not a polynomial coefficient")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(
        f"coefficients must be int or Fraction, not {type(value).__name__}; "
        "exact arithmetic is required"
    )


def _canonical_support(variables: Iterable[str]) -> Support:
    names = sorted(set(variables))
    for name in names:
        if not isinstance(name, str) or not name:
            raise TypeError(f"variable names must be non-empty strings, got {name!r}")
    return tuple(names)


class Polynomial:
    """Immutable multilinear polynomial over binary variables."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Iterable[str], object] | None = None):
        canonical: dict[Support, Fraction] = {}
        if terms:
            for support, coeff in terms.items():
                key = _canonical_support(support)
                value = canonical.get(key, Fraction(0)) + _coerce(coeff)
                if value == 0:
                    canonical.pop(key, None)
                else:
                    canonical[key] = value
        self._terms = {k: canonical[k] for k in sorted(canonical)}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls({(): value})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        return cls({(name,): 1})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Iterable[str], object]]) -> "Polynomial":
        """Build from (variables, coefficient) pairs; repeated supports add up."""
        acc: dict[Support, Fraction] = {}
        for variables, coeff in pairs:
            key = _canonical_support(variables)
            acc[key] = acc.get(key, Fraction(0)) + _coerce(coeff)
        return cls(acc)

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[Support, Fraction]]:
        """Iterate (support, coefficient) pairs in canonical (lex) order."""
        return iter(self._terms.items())

    def coefficient(self, variables: Iterable[str]) -> Fraction:
        return self._terms.get(_canonical_support(variables), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        seen: set[str] = set()
        for support in self._terms:
            seen.update(support)
        return tuple(sorted(seen))

    def supports(self) -> tuple[Support, ...]:
        return tuple(self._terms)

    def degree(self) -> int:
        return max((len(s) for s in self._terms), default=0)

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # -- algebra -----------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for support, coeff in other._terms.items():
            acc[support] = acc.get(support, Fraction(0)) + coeff
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({s: -c for s, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _as_polynomial(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            scalar = _coerce(other)
            if scalar == 0:
                return Polynomial()
            return Polynomial({s: c * scalar for s, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc: dict[Support, Fraction] = {}
        for sa, ca in self._terms.items():
            set_a = set(sa)
            for sb, cb in other._terms.items():
                # x*x = x on {0,1}: the product support is the union.
                key = tuple(sorted(set_a.union(sb)))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return Polynomial(acc)

    __rmul__ = __mul__

    def square(self) -> "Polynomial":
        return self * self

    # -- evaluation and bounds ----------------------------------------------

    def evaluate(self, assignment: Mapping[str, int]) -> Fraction:
        """Evaluate at a {0,1} assignment covering every variable used."""
        total = Fraction(0)
        for support, coeff in self._terms.items():
            active = True
            for name in support:
                try:
                    bit = assignment[name]
                except KeyError:
                    raise MissingAssignmentError(name) from None
                if bit not in (0, 1):
                    raise ValueError(f"assignment for {name!r} must be 0 or 1, got {bit!r}")
                if bit == 0:
                    active = False
                    break
            if active:
                total += coeff
        return total

    def values_over_cube(self, order: Sequence[str] | None = None) -> list:
        """Values at every binary assignment, as a list indexed by bitmask.

        Assignment ``z`` sets variable ``order[i]`` to bit i of ``z``.  Uses
        the subset-sum (zeta) transform, so the cost is O(2**n * n) additions
        rather than one full evaluation per point.  Entries are exact (int
        when all coefficients are integral, Fraction otherwise).
        """
        names = list(self.variables() if order is None else order)
        position = {name: i for i, name in enumerate(names)}
        missing = set(self.variables()) - set(names)
        if missing:
            raise ValueError(f"order does not cover variables: {sorted(missing)}")
        # Integer fast path: Fractions with denominator 1 become plain ints,
        # which keeps the transform cheap; int and Fraction compare exactly.
        exact_ints = all(c.denominator == 1 for c in self._terms.values())
        zero = 0 if exact_ints else Fraction(0)
        values = [zero] * (1 << len(names))
        for support, coeff in self._terms.items():
            mask = 0
            for name in support:
                mask |= 1 << position[name]
            values[mask] += int(coeff) if exact_ints else coeff
        for i in range(len(names)):
            bit = 1 << i
            for z in range(1 << len(names)):
                if z & bit:
                    values[z] += values[z ^ bit]
        return values

    def minimum_over_cube(self, exact_limit: int = EXACT_ENUMERATION_LIMIT) -> tuple[Fraction, bool]:
        """Minimum over all binary assignments.

        Exhaustive (and exact) when at most ``exact_limit`` variables occur;
        otherwise returns the interval lower bound sum(min(0, coeff)), which
        never exceeds the true minimum.
        """
        if exact_limit < 0:
            raise ValueError("exact_limit must be >= 0")
        if len(self.variables()) <= exact_limit:
            return Fraction(min(self.values_over_cube(), default=0)), True
        bound = sum((min(Fraction(0), c) for c in self._terms.values()), Fraction(0))
        return bound, False

    def maximum_over_cube(self, exact_limit: int = EXACT_ENUMERATION_LIMIT) -> tuple[Fraction, bool]:
        """Maximum over all binary assignments; interval fallback mirrors the minimum."""
        if exact_limit < 0:
            raise ValueError("exact_limit must be >= 0")
        if len(self.variables()) <= exact_limit:
            return Fraction(max(self.values_over_cube(), default=0)), True
        bound = sum((max(Fraction(0), c) for c in self._terms.values()), Fraction(0))
        return bound, False

    # -- dunder plumbing -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for support, coeff in self._terms.items():
            body = "*".join(support)
            if not support:
                chunk = str(abs(coeff))
            elif abs(coeff) == 1:
                chunk = body
            else:
                chunk = f"{abs(coeff)}*{body}"
            sign = "-" if coeff < 0 else "+"
            parts.append(f"{sign} {chunk}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({self._terms!r})"


def _as_polynomial(value):
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Polynomial.constant(value)
    return NotImplemented


def assignments(names: Iterable[str]) -> Iterator[dict[str, int]]:
    """All {0,1} assignments of the given variables, in binary counting order."""
    names = list(names)
    for bits in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))
