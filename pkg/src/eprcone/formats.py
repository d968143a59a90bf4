"""Line-oriented text formats for graphs, entropy vectors and inequalities.

Graph::

    parties 3
    pair 1 2 2
    pair 1 3 1/2
    env 3 1

Entropy vector, one line per subset in ascending mask order::

    {1}: 5/2
    {2}: 2

Inequality::

    parties 3
    term +1 {1,3}
    term -1 {1}
    sense >=0

``#`` starts a comment anywhere on a line. Rationals print as ``p/q`` or
plain integers, floats with 12 significant digits
(always with a decimal point, so they re-parse as floats).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .epr_model import EntropyVector, EprGraph
from .errors import DomainError, FormatError
from .inequality import Inequality
from .oracle import ENVIRONMENT, make_state, StateVector, DEFAULT_QUBIT_CAP
from .subsets import format_mask, nonempty_masks, parse_mask


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return format(float(x), "#.12g")


def parse_rational(text: str, line: int | None = None) -> Fraction:
    t = text.strip()
    try:
        if "/" in t:
            p, q = t.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(t))
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {text!r}", line) from None


def _parse_value(text: str, line: int):
    t = text.strip()
    if "/" in t or t.lstrip("+-").isdigit():
        return parse_rational(t, line)
    try:
        x = float(t)
    except ValueError:
        raise FormatError(f"bad number {text!r}", line) from None
    if not math.isfinite(x):
        raise FormatError(f"non-finite value {text!r}", line)
    return x


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"bad {what} {tok!r}", line) from None


def _parties_line(words, line) -> int:
    if len(words) != 2:
        raise FormatError("expected 'parties <n>'", line)
    n = _int(words[1], line, "party count")
    if n < 1:
        raise FormatError("party count must be >= 1", line)
    return n


def parse_graph(text: str) -> EprGraph:
    n = None
    pairs: dict = {}
    env: dict = {}
    for line, body in _lines(text):
        words = body.split()
        head = words[0]
        if head == "parties":
            if n is not None:
                raise FormatError("duplicate 'parties' line", line)
            n = _parties_line(words, line)
            continue
        if n is None:
            raise FormatError("'parties <n>' must come first", line)
        if head == "pair":
            if len(words) != 4:
                raise FormatError("expected 'pair <i> <j> <w>'", line)
            i, j = _int(words[1], line, "party"), _int(words[2], line, "party")
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise FormatError(f"pair ({i}, {j}) invalid for {n} parties", line)
            key = (min(i, j), max(i, j))
            w = parse_rational(words[3], line)
            if w < 0:
                raise FormatError("weights must be >= 0", line)
            pairs[key] = pairs.get(key, 0) + w
        elif head == "env":
            if len(words) != 3:
                raise FormatError("expected 'env <i> <w>'", line)
            i = _int(words[1], line, "party")
            if not 1 <= i <= n:
                raise FormatError(f"environment party {i} invalid for {n} parties", line)
            w = parse_rational(words[2], line)
            if w < 0:
                raise FormatError("weights must be >= 0", line)
            env[i] = env.get(i, 0) + w
        else:
            raise FormatError(f"unknown directive {head!r}", line)
    if n is None:
        raise FormatError("missing 'parties <n>' line")
    return EprGraph(n, pairs, env)


def format_graph(graph: EprGraph) -> str:
    out = [f"parties {graph.n}"]
    out += [f"pair {i} {j} {w}" for (i, j), w in graph.pairs.items()]
    out += [f"env {i} {w}" for i, w in graph.env.items()]
    return "\n".join(out) + "\n"


def parse_vector(text: str, tol: float | None = None) -> EntropyVector:
    values: dict = {}
    for line, body in _lines(text):
        if ":" not in body:
            raise FormatError("expected '{i,j,...}: <value>'", line)
        left, right = body.split(":", 1)
        mask = parse_mask(left)
        if mask in values:
            raise FormatError(f"subset {left.strip()} given twice", line)
        values[mask] = _parse_value(right, line)
    if not values:
        raise FormatError("empty entropy vector")
    n = max(values).bit_length()
    missing = [m for m in nonempty_masks(n) if m not in values]
    if missing:
        raise FormatError(
            f"entropy vector for {n} parties is missing {', '.join(format_mask(m) for m in missing)}"
        )
    if any(isinstance(v, float) for v in values.values()):
        values = {m: float(v) for m, v in values.items()}
    try:
        return EntropyVector(n, values, tol)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def format_vector(v: EntropyVector) -> str:
    return "".join(f"{format_mask(m)}: {format_number(v.values[m])}\n" for m in nonempty_masks(v.n))


def parse_inequality(text: str) -> Inequality:
    n = None
    coeffs: dict = {}
    sense = None
    for line, body in _lines(text):
        words = body.split(None, 1)
        head = words[0]
        if head == "parties":
            if n is not None:
                raise FormatError("duplicate 'parties' line", line)
            n = _parties_line(body.split(), line)
        elif head == "term":
            if n is None:
                raise FormatError("'parties <n>' must come first", line)
            parts = words[1].split(None, 1) if len(words) == 2 else []
            if len(parts) != 2:
                raise FormatError("expected 'term <±p/q> {i,j,...}'", line)
            c = parse_rational(parts[0], line)
            mask = parse_mask(parts[1], n)
            coeffs[mask] = coeffs.get(mask, 0) + c
        elif head == "sense":
            if sense is not None:
                raise FormatError("duplicate 'sense' line", line)
            value = words[1].replace(" ", "") if len(words) == 2 else ""
            if value not in (">=0", "=0"):
                raise FormatError("sense must be '>=0' or '=0'", line)
            sense = value
        else:
            raise FormatError(f"unknown directive {head!r}", line)
    if n is None:
        raise FormatError("missing 'parties <n>' line")
    if sense is None:
        raise FormatError("missing 'sense' line")
    try:
        return Inequality(n, coeffs, None, sense == "=0")
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def format_inequality(ineq: Inequality) -> str:
    out = []
    if ineq.name:
        out.append(f"# {ineq.name}")
    out.append(f"parties {ineq.n}")
    for m, c in ineq.coeffs.items():
        out.append(f"term {'+' if c > 0 else ''}{c} {format_mask(m)}")
    out.append(f"sense {'=0' if ineq.equality else '>=0'}")
    return "\n".join(out) + "\n"


def parse_roles(text: str, n: int) -> list[int]:
    """``"1;2;3,4"`` -> one mask per ``;``-separated slot."""
    slots = [s for s in text.split(";")]
    if any(not s.strip() for s in slots):
        raise FormatError(f"empty role in {text!r}")
    return [parse_mask(s, n) for s in slots]


def parse_partition(text: str) -> tuple[list, int]:
    """``"1:0,1;2:2;env:3"`` -> (owner per qubit, party count).

    Every qubit from 0 to the largest index mentioned must be assigned once.
    """
    owner: dict[int, object] = {}
    max_party = 0
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ":" not in chunk:
            raise FormatError(f"partition entry {chunk!r} needs 'party:qubits'")
        who, qubits = chunk.split(":", 1)
        who = who.strip()
        if who == ENVIRONMENT:
            party: object = ENVIRONMENT
        else:
            try:
                party = int(who)
            except ValueError:
                raise FormatError(f"bad party {who!r} in partition") from None
            if party < 1:
                raise FormatError(f"party indices start at 1, got {party}")
            max_party = max(max_party, party)
        for tok in qubits.split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                q = int(tok)
            except ValueError:
                raise FormatError(f"bad qubit {tok!r} in partition") from None
            if q < 0:
                raise FormatError(f"qubit indices start at 0, got {q}")
            if q in owner:
                raise FormatError(f"qubit {q} assigned twice")
            owner[q] = party
    if not owner:
        raise FormatError("empty partition")
    k = max(owner) + 1
    missing = [q for q in range(k) if q not in owner]
    if missing:
        raise FormatError(f"qubits {missing} not assigned")
    if max_party == 0:
        raise FormatError("partition assigns no qubits to a party")
    return [owner[q] for q in range(k)], max_party


def parse_state(text: str, assignment, cap: int = DEFAULT_QUBIT_CAP) -> StateVector:
    """``bell``, ``ghz:k``, ``w:k``, ``product:k``, ``random:k:seed``."""
    parts = text.strip().split(":")
    name = parts[0]
    try:
        args = [int(p) for p in parts[1:]]
    except ValueError:
        raise FormatError(f"bad state spec {text!r}") from None
    expected = {"bell": 0, "ghz": 1, "w": 1, "product": 1, "random": 2}
    if name not in expected:
        raise FormatError(f"unknown state {name!r}")
    if len(args) != expected[name]:
        raise FormatError(f"state {name!r} takes {expected[name]} parameter(s)")
    k = args[0] if args else None
    seed = args[1] if name == "random" else None
    return make_state(name, k, seed, assignment, cap)


def parse_pairs(text: str) -> dict[tuple[int, int], int]:
    """``"1-2:2,1-3:1"`` -> pair counts."""
    counts: dict[tuple[int, int], int] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            pair, count = chunk.split(":")
            i, j = (int(x) for x in pair.split("-"))
            c = int(count)
        except ValueError:
            raise FormatError(f"bad pair entry {chunk!r}; expected 'i-j:count'") from None
        if i == j or i < 1 or j < 1 or c < 0:
            raise FormatError(f"bad pair entry {chunk!r}")
        key = (min(i, j), max(i, j))
        counts[key] = counts.get(key, 0) + c
    return counts
