"""Decide whether an entropy vector comes from some EPR-pair graph.

The generator vectors are linearly independent, so a vector in their span
has exactly one coefficient vector. Membership is then a sign check on that
solution. Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg
from .epr_model import (
    EntropyVector,
    EprGraph,
    generator_labels,
    graph_from_coefficients,
)
from .errors import DomainError, UnresolvableError
from .inequality import Inequality, evaluate, generator_vectors, span_constraints

MEMBER = "member"
NOT_IN_SPAN = "not_in_span"
NEGATIVE_COEFFICIENT = "negative_coefficient"

DEFAULT_TOL = 1e-6
DEFAULT_MAX_DENOMINATOR = 2**20


@dataclass(frozen=True)
class SpanWitness:
    equality: Inequality
    value: Fraction


@dataclass(frozen=True)
class NegativeWitness:
    generator: int
    label: str
    value: Fraction


@dataclass(frozen=True)
class MembershipResult:
    status: str
    decomposition: Optional[EprGraph] = None
    witness: SpanWitness | NegativeWitness | None = None
    snap_residual: float | None = None

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER


def decide(v: EntropyVector) -> MembershipResult:
    if not v.exact:
        raise DomainError("decide needs exact rational entropies; use decide_approx for floats")
    n = v.n
    for eq in span_constraints(n):
        value = evaluate(eq, v)
        if value != 0:
            return MembershipResult(NOT_IN_SPAN, witness=SpanWitness(eq, value))

    # columns are generators, rows are subset masks
    gens = [g.as_list() for g in generator_vectors(n)]
    system = [list(col) for col in zip(*gens)]
    coeffs = linalg.solve(system, v.as_list())
    if coeffs is None:  # pragma: no cover - excluded by the span check above
        raise AssertionError("vector passed the span equalities but the system is inconsistent")
    for k, c in enumerate(coeffs):
        if c < 0:
            return MembershipResult(
                NEGATIVE_COEFFICIENT,
                witness=NegativeWitness(k, generator_labels(n)[k], c),
            )
    return MembershipResult(MEMBER, decomposition=graph_from_coefficients(n, coeffs))


def snap(v: EntropyVector, tol: float = DEFAULT_TOL,
         max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> tuple[EntropyVector, float]:
    """Round each entry to the nearest rational with bounded denominator."""
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    snapped = {}
    worst = 0.0
    for m, x in v.values.items():
        q = Fraction(x).limit_denominator(max_denominator)
        if q < 0 and abs(q) <= tol:
            q = Fraction(0)
        err = abs(float(x) - float(q)) if not isinstance(x, Fraction) else float(abs(x - q))
        if err > tol:
            raise UnresolvableError(
                f"entry {m} = {float(x)!r} is {err:.3g} from the nearest rational {q}"
                f" with denominator <= {max_denominator}"
            )
        worst = max(worst, err)
        snapped[m] = q
    return EntropyVector(v.n, snapped), worst


def decide_approx(v: EntropyVector, tol: float = DEFAULT_TOL,
                  max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> MembershipResult:
    exact, residual = snap(v, tol, max_denominator)
    res = decide(exact)
    return MembershipResult(res.status, res.decomposition, res.witness, residual)
