"""Weighted EPR-pair graphs and the entropy vectors they induce.

A graph on ``n`` parties carries a nonnegative weight ``n_ij`` for every
unordered pair of parties (the number of EPR pairs shared between them) and
a weight ``N_i`` for every party (EPR pairs shared with an outside
environment). Each pair contributes one bit to the entropy of a subset ``A``
exactly when it straddles the boundary of ``A``::

    S_A = sum(n_ij for i in A, j not in A) + sum(N_i for i in A)

Weights are exact :class:`~fractions.Fraction` values. Entropies are in bits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterator, Mapping, Union

from .errors import DomainError
from .subsets import check_mask, check_parties, nonempty_masks

Value = Union[Fraction, float]

#: Lower bound accepted for float entropies that should be nonnegative.
FLOAT_NEGATIVE_SLACK = 1e-9


def _as_weight(w, what: str) -> Fraction:
    if isinstance(w, bool) or not isinstance(w, (Rational, str)):
        raise DomainError(f"{what} must be rational, got {w!r}")
    w = Fraction(w)
    if w < 0:
        raise DomainError(f"{what} must be >= 0, got {w}")
    return w


@dataclass(frozen=True)
class EprGraph:
    """Pair weights keyed by ``(i, j)`` with ``i < j``; environment weights by party.

    Zero weights are dropped on construction, so two graphs compare equal
    exactly when they describe the same entropies.
    """

    n: int
    pairs: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)
    env: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        check_parties(self.n)
        pairs = {}
        for key, w in dict(self.pairs).items():
            i, j = sorted(key)
            if not 1 <= i < j <= self.n:
                raise DomainError(f"pair {key} invalid for {self.n} parties")
            if (i, j) in pairs:
                raise DomainError(f"pair {(i, j)} given twice")
            w = _as_weight(w, f"pair weight {(i, j)}")
            pairs[(i, j)] = w
        env = {}
        for i, w in dict(self.env).items():
            if not isinstance(i, int) or not 1 <= i <= self.n:
                raise DomainError(f"environment index {i!r} invalid for {self.n} parties")
            env[i] = _as_weight(w, f"environment weight {i}")
        object.__setattr__(self, "pairs", {k: pairs[k] for k in sorted(pairs) if pairs[k]})
        object.__setattr__(self, "env", {k: env[k] for k in sorted(env) if env[k]})

    def pair(self, i: int, j: int) -> Fraction:
        return self.pairs.get((min(i, j), max(i, j)), Fraction(0))

    def environment(self, i: int) -> Fraction:
        return self.env.get(i, Fraction(0))

    def __add__(self, other: "EprGraph") -> "EprGraph":
        if not isinstance(other, EprGraph):
            return NotImplemented
        if other.n != self.n:
            raise DomainError("cannot add graphs over different party counts")
        pairs = dict(self.pairs)
        for k, w in other.pairs.items():
            pairs[k] = pairs.get(k, 0) + w
        env = dict(self.env)
        for k, w in other.env.items():
            env[k] = env.get(k, 0) + w
        return EprGraph(self.n, pairs, env)

    def scaled(self, factor) -> "EprGraph":
        factor = _as_weight(factor, "scale factor")
        return EprGraph(
            self.n,
            {k: w * factor for k, w in self.pairs.items()},
            {k: w * factor for k, w in self.env.items()},
        )


@dataclass(frozen=True)
class EntropyVector:
    """Entropy in bits of every nonempty subset of ``n`` parties.

    ``values`` maps subset masks to entropies. Model-derived vectors hold
    Fractions and have ``tol is None``; oracle vectors hold floats and record
    the tolerance they are good to.
    """

    n: int
    values: Mapping[int, Value]
    tol: float | None = None

    def __post_init__(self):
        check_parties(self.n)
        expected = set(nonempty_masks(self.n))
        if set(self.values) != expected:
            missing = sorted(expected - set(self.values))
            extra = sorted(set(self.values) - expected)
            raise DomainError(f"entropy vector masks wrong: missing {missing}, extra {extra}")
        vals = {}
        exact = True
        for m in sorted(self.values):
            v = self.values[m]
            if isinstance(v, bool):
                raise DomainError(f"entropy for mask {m} is not a number")
            if isinstance(v, Rational):
                v = Fraction(v)
            elif isinstance(v, float):
                exact = False
            else:
                try:
                    v = float(v)
                except (TypeError, ValueError):
                    raise DomainError(f"entropy for mask {m} is not a number: {v!r}") from None
                exact = False
            vals[m] = v
        if not exact:
            vals = {m: float(v) for m, v in vals.items()}
            slack = -max(self.tol or 0.0, FLOAT_NEGATIVE_SLACK)
            if any(v < slack for v in vals.values()):
                raise DomainError("entropy values must be nonnegative")
        elif any(v < 0 for v in vals.values()):
            raise DomainError("entropy values must be nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values.values())

    def __getitem__(self, mask: int) -> Value:
        return self.values[check_mask(self.n, mask)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def as_list(self) -> list[Value]:
        return [self.values[m] for m in nonempty_masks(self.n)]

    def __add__(self, other: "EntropyVector") -> "EntropyVector":
        if not isinstance(other, EntropyVector):
            return NotImplemented
        if other.n != self.n:
            raise DomainError("party count mismatch")
        return EntropyVector(self.n, {m: self.values[m] + other.values[m] for m in self.values})

    def scaled(self, factor) -> "EntropyVector":
        return EntropyVector(self.n, {m: v * factor for m, v in self.values.items()}, self.tol)


def subset_entropy(graph: EprGraph, subset: int) -> Fraction:
    """Total weight crossing the cut around ``subset``."""
    check_mask(graph.n, subset)
    s = Fraction(0)
    for (i, j), w in graph.pairs.items():
        if bool(subset >> (i - 1) & 1) != bool(subset >> (j - 1) & 1):
            s += w
    for i, w in graph.env.items():
        if subset >> (i - 1) & 1:
            s += w
    return s


def entropy_vector(graph: EprGraph) -> EntropyVector:
    return EntropyVector(graph.n, {m: subset_entropy(graph, m) for m in nonempty_masks(graph.n)})


def generator_labels(n: int) -> list[str]:
    """Names of the unit graphs, in generator order: ``e_ij`` then ``f_i``."""
    check_parties(n)
    return [f"e_{i}{j}" if n < 10 else f"e_{i},{j}" for i, j in combinations(range(1, n + 1), 2)] + [
        f"f_{i}" for i in range(1, n + 1)
    ]


def generator_graphs(n: int) -> list[EprGraph]:
    """The C(n,2) + n unit graphs: every pair lexicographically, then every environment."""
    check_parties(n)
    one = Fraction(1)
    gens = [EprGraph(n, {(i, j): one}) for i, j in combinations(range(1, n + 1), 2)]
    gens += [EprGraph(n, env={i: one}) for i in range(1, n + 1)]
    return gens


def graph_from_coefficients(n: int, coeffs) -> EprGraph:
    """Inverse of generator order: weight ``k`` goes to generator ``k``."""
    pair_keys = list(combinations(range(1, n + 1), 2))
    coeffs = list(coeffs)
    if len(coeffs) != len(pair_keys) + n:
        raise DomainError(f"expected {len(pair_keys) + n} coefficients, got {len(coeffs)}")
    pairs = dict(zip(pair_keys, coeffs[: len(pair_keys)]))
    env = {i + 1: w for i, w in enumerate(coeffs[len(pair_keys):])}
    return EprGraph(n, pairs, env)


def graph_coefficients(graph: EprGraph) -> list[Fraction]:
    """Weights of ``graph`` listed in generator order."""
    n = graph.n
    return [graph.pair(i, j) for i, j in combinations(range(1, n + 1), 2)] + [
        graph.environment(i) for i in range(1, n + 1)
    ]


def mutual_information(v: EntropyVector, a: int, b: int) -> Value:
    """``S_a + S_b - S_(a|b)`` for disjoint nonempty masks."""
    check_mask(v.n, a)
    check_mask(v.n, b)
    if a & b:
        raise DomainError(f"masks {a} and {b} overlap")
    return v[a] + v[b] - v[a | b]


def random_graph(
    n: int,
    rng: random.Random,
    max_numerator: int = 100,
    max_denominator: int = 100,
    zero_probability: float = 0.2,
) -> EprGraph:
    """Random graph with weights ``p/q``, ``0 <= p <= max_numerator``, ``1 <= q <= max_denominator``."""

    def weight():
        if rng.random() < zero_probability:
            return Fraction(0)
        return Fraction(rng.randint(0, max_numerator), rng.randint(1, max_denominator))

    pairs = {(i, j): weight() for i, j in combinations(range(1, n + 1), 2)}
    env = {i: weight() for i in range(1, n + 1)}
    return EprGraph(n, pairs, env)

