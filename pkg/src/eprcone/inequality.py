"""Linear entropy inequalities and their certification on the EPR-pair cone.

An :class:`Inequality` asserts ``sum(coeffs[m] * S_m) >= 0`` (or ``== 0`` for
equalities). Every graph's entropy vector is a nonnegative combination of
the unit generator vectors, so a linear form is nonnegative on all graphs
if and only if it is nonnegative on each generator. :func:`certify`
records those generator values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Mapping, Sequence

from . import linalg
from .epr_model import EntropyVector, Value, entropy_vector, generator_graphs
from .errors import DomainError
from .subsets import check_mask, check_parties, format_mask, nonempty_masks

FAMILIES = ("subadditivity", "triangle", "ssa1", "ssa2", "mmi")
FAMILY_SLOTS = {"subadditivity": 2, "triangle": 2, "ssa1": 3, "ssa2": 3, "mmi": 3}


@dataclass(frozen=True)
class Inequality:
    n: int
    coeffs: Mapping[int, Fraction]
    name: str | None = None
    equality: bool = False

    def __post_init__(self):
        check_parties(self.n)
        coeffs = {}
        for m, c in dict(self.coeffs).items():
            check_mask(self.n, m)
            if isinstance(c, bool) or not isinstance(c, Rational):
                raise DomainError(f"coefficient for {format_mask(m)} must be rational, got {c!r}")
            if c:
                coeffs[m] = Fraction(c)
        if not coeffs:
            raise DomainError("inequality needs at least one nonzero coefficient")
        object.__setattr__(self, "coeffs", {m: coeffs[m] for m in sorted(coeffs)})

    def __str__(self):
        terms = []
        for m, c in self.coeffs.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            terms.append(f"{sign} {coef}S{format_mask(m)}")
        text = " ".join(terms)
        if text.startswith("+ "):
            text = text[2:]
        return f"{text} {'= 0' if self.equality else '>= 0'}"

    def negated(self) -> "Inequality":
        return Inequality(self.n, {m: -c for m, c in self.coeffs.items()}, None, self.equality)


@dataclass(frozen=True)
class Certificate:
    inequality: Inequality
    generator_values: tuple[Fraction, ...]
    valid: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "generator_values", tuple(self.generator_values))
        object.__setattr__(self, "valid", all(v >= 0 for v in self.generator_values))


def evaluate(ineq: Inequality, v: EntropyVector) -> Value:
    """The linear form at ``v``; exact for rational vectors."""
    if ineq.n != v.n:
        raise DomainError(f"inequality is over {ineq.n} parties, vector over {v.n}")
    total = Fraction(0) if v.exact else 0.0
    for m, c in ineq.coeffs.items():
        total += c * v.values[m] if v.exact else float(c) * v.values[m]
    return total


def _form(n, terms, name):
    coeffs: dict[int, Fraction] = {}
    for sign, mask in terms:
        coeffs[mask] = coeffs.get(mask, Fraction(0)) + sign
    return Inequality(n, coeffs, name)


def builtin_family(name: str, n: int, roles: Sequence[int] | None = None) -> list[Inequality]:
    """Instantiate a named family on disjoint role subsets (as masks).

    ``roles`` defaults to the singletons ``{1}, {2}, ...``. Triangle returns
    two forms, ``S_AB - S_A + S_B >= 0`` and ``S_AB + S_A - S_B >= 0``; every
    other family returns one.
    """
    if name not in FAMILIES:
        raise DomainError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    check_parties(n)
    k = FAMILY_SLOTS[name]
    if roles is None:
        if n < k:
            raise DomainError(f"{name} needs {k} parties, got {n}")
        roles = [1 << i for i in range(k)]
    roles = list(roles)
    if len(roles) != k:
        raise DomainError(f"{name} takes {k} role subsets, got {len(roles)}")
    seen = 0
    for r in roles:
        check_mask(n, r)
        if seen & r:
            raise DomainError(f"role subsets overlap in {name}")
        seen |= r
    label = f"{name}(" + ";".join(format_mask(r) for r in roles) + ")"

    if name == "subadditivity":
        a, b = roles
        return [_form(n, [(1, a), (1, b), (-1, a | b)], label)]
    if name == "triangle":
        a, b = roles
        return [
            _form(n, [(1, a | b), (-1, a), (1, b)], label + "[1]"),
            _form(n, [(1, a | b), (1, a), (-1, b)], label + "[2]"),
        ]
    a, b, c = roles
    if name == "ssa1":
        return [_form(n, [(1, a | c), (1, b | c), (-1, a), (-1, b)], label)]
    if name == "ssa2":
        return [_form(n, [(1, a | b), (1, b | c), (-1, b), (-1, a | b | c)], label)]
    # I(A:BC) - I(A:B) - I(A:C)
    return [
        _form(
            n,
            [(1, a | b), (1, a | c), (1, b | c), (-1, a), (-1, b), (-1, c), (-1, a | b | c)],
            label,
        )
    ]


@lru_cache(maxsize=None)
def generator_vectors(n: int) -> tuple[EntropyVector, ...]:
    return tuple(entropy_vector(g) for g in generator_graphs(n))


def certify(ineq: Inequality) -> Certificate:
    return Certificate(ineq, tuple(evaluate(ineq, g) for g in generator_vectors(ineq.n)))


@lru_cache(maxsize=None)
def span_constraints(n: int) -> tuple[Inequality, ...]:
    """Integer equalities cutting out the linear span of the generators.

    Kernel basis of the generator matrix (rows = generators, columns = subset
    masks ascending), one vector per free column in ascending mask order,
    scaled to coprime integers with the first nonzero coefficient positive.
    """
    check_parties(n)
    rows = [v.as_list() for v in generator_vectors(n)]
    masks = list(nonempty_masks(n))
    out = []
    for k, vec in enumerate(linalg.kernel(rows, len(masks))):
        ints = linalg.primitive_integer(vec)
        out.append(
            Inequality(n, {m: Fraction(c) for m, c in zip(masks, ints)}, f"span{n}[{k}]", True)
        )
    return tuple(out)
