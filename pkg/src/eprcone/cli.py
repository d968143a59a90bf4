"""Command-line entry point.

Exit codes: 0 success / holds / member, 1 violated / not a member,
2 usage or data error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cone, formats
from .cone import MEMBER, NegativeWitness, SpanWitness
from .epr_model import entropy_vector, generator_labels, subset_entropy
from .errors import (
    DomainError,
    FormatError,
    NumericIntegrityError,
    ResourceError,
    UnresolvableError,
)
from .inequality import FAMILIES, builtin_family, certify, evaluate, span_constraints
from .oracle import (
    DEFAULT_QUBIT_CAP,
    ORACLE_TOL,
    ProtocolSpec,
    oracle_entropy_vector,
    run_protocol,
)
from .subsets import format_mask, parse_mask

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Fail(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _read(path: str, parse, *args):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise _Fail(f"{path}: cannot read: {exc}") from None
    try:
        return parse(text, *args)
    except FormatError as exc:
        raise _Fail(f"{path}: {exc}") from None
    except DomainError as exc:
        raise _Fail(f"{path}: {exc}") from None


def _echo(out, args, keys):
    out.append(f"# eprcone {args.command}")
    for key in keys:
        value = getattr(args, key)
        if value is not None:
            out.append(f"# {key}: {value}")


def _inequalities(args, n):
    if args.ineq is not None:
        ineq = _read(args.ineq, formats.parse_inequality)
        if ineq.n != n:
            raise _Fail(f"{args.ineq}: inequality is over {ineq.n} parties, expected {n}")
        return [ineq]
    roles = formats.parse_roles(args.roles, n) if args.roles else None
    return builtin_family(args.family, n, roles)


def _fmt_values(values):
    return "(" + ",".join(formats.format_number(v) for v in values) + ")"


def cmd_entropy(args, out):
    _echo(out, args, ["graph", "subset"])
    graph = _read(args.graph, formats.parse_graph)
    if args.subset:
        mask = parse_mask(args.subset, graph.n)
        out.append(f"{format_mask(mask)}: {subset_entropy(graph, mask)}")
    else:
        out.append(formats.format_vector(entropy_vector(graph)).rstrip("\n"))
    return EXIT_OK


def cmd_check(args, out):
    _echo(out, args, ["graph", "vector", "family", "roles", "ineq", "tol"])
    if args.graph:
        v = entropy_vector(_read(args.graph, formats.parse_graph))
    else:
        v = _read(args.vector, formats.parse_vector, ORACLE_TOL)
    tol = 0 if v.exact else args.tol
    status = EXIT_OK
    for ineq in _inequalities(args, v.n):
        value = evaluate(ineq, v)
        holds = abs(value) <= tol if ineq.equality else value >= -tol
        out.append(f"inequality: {ineq}")
        out.append(f"value: {formats.format_number(value)}")
        out.append("HOLDS" if holds else "VIOLATED")
        if not holds:
            status = EXIT_NO
    return status


def cmd_member(args, out):
    _echo(out, args, ["vector", "tol", "max_denominator"])
    v = _read(args.vector, formats.parse_vector)
    if v.exact:
        res = cone.decide(v)
    else:
        res = cone.decide_approx(v, args.tol, args.max_denominator)
        out.append(f"# snap residual: {formats.format_number(res.snap_residual)}")
    out.append(f"# status: {res.status}")
    w = res.witness
    if isinstance(w, SpanWitness):
        out.append(f"violated equality: {w.equality}")
        out.append(f"equality value: {w.value}")
    elif isinstance(w, NegativeWitness):
        out.append(f"negative coefficient: {w.label} = {w.value}")
    if res.status == MEMBER:
        out.append(formats.format_graph(res.decomposition).rstrip("\n"))
        out.append("# MEMBER")
        return EXIT_OK
    out.append("NOT A MEMBER")
    return EXIT_NO


def cmd_certify(args, out):
    _echo(out, args, ["family", "roles", "ineq", "parties"])
    status = EXIT_OK
    out.append("generators: " + ",".join(generator_labels(args.parties)))
    for ineq in _inequalities(args, args.parties):
        cert = certify(ineq)
        out.append(f"inequality: {ineq}")
        out.append(f"generator values: {_fmt_values(cert.generator_values)}")
        out.append("VALID" if cert.valid else "INVALID")
        if not cert.valid:
            status = EXIT_NO
    return status


def cmd_span(args, out):
    _echo(out, args, ["parties"])
    eqs = span_constraints(args.parties)
    out.append(f"# {len(eqs)} equalities")
    for eq in eqs:
        out.append(formats.format_inequality(eq).rstrip("\n"))
    return EXIT_OK


def cmd_oracle(args, out):
    _echo(out, args, ["state", "partition", "parties", "cap"])
    assignment, max_party = formats.parse_partition(args.partition)
    n = args.parties or max_party
    state = formats.parse_state(args.state, assignment, args.cap)
    out.append(formats.format_vector(oracle_entropy_vector(state, n)).rstrip("\n"))
    return EXIT_OK


def cmd_protocol(args, out):
    _echo(out, args, ["parties", "pairs", "rounds", "seed", "cap"])
    spec = ProtocolSpec(args.parties, formats.parse_pairs(args.pairs), args.rounds, args.seed, args.cap)
    state, predicted = run_protocol(spec)
    oracle = oracle_entropy_vector(state, spec.n)
    model = entropy_vector(predicted)
    dev = max(abs(oracle.values[m] - float(model.values[m])) for m in model.values)
    out.append("# predicted graph")
    out.append(formats.format_graph(predicted).rstrip("\n"))
    out.append("# oracle entropy vector")
    out.append(formats.format_vector(oracle).rstrip("\n"))
    out.append(f"max deviation: {dev:.3e}")
    agree = dev <= ORACLE_TOL
    out.append("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_NO


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eprcone", description="EPR-pair graph entropy tools.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("entropy", help="entropy vector of a graph file")
    e.add_argument("--graph", required=True)
    e.add_argument("--subset", help="single subset, e.g. 1,3")
    e.set_defaults(func=cmd_entropy)

    def add_ineq_source(sp):
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--family", choices=FAMILIES)
        grp.add_argument("--ineq", help="inequality file")
        sp.add_argument("--roles", help="role subsets, ';'-separated, e.g. '1;2;3'")

    c = sub.add_parser("check", help="evaluate an inequality on a graph or vector")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--vector")
    add_ineq_source(c)
    c.add_argument("--tol", type=float, default=ORACLE_TOL,
                   help="slack for float vectors (default %(default)g)")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("member", help="decide whether a vector comes from a graph")
    m.add_argument("--vector", required=True)
    m.add_argument("--tol", type=float, default=cone.DEFAULT_TOL)
    m.add_argument("--max-denominator", type=_positive_int, default=cone.DEFAULT_MAX_DENOMINATOR)
    m.set_defaults(func=cmd_member)

    cf = sub.add_parser("certify", help="evaluate an inequality on every generator")
    add_ineq_source(cf)
    cf.add_argument("--parties", type=_positive_int, required=True)
    cf.set_defaults(func=cmd_certify)

    s = sub.add_parser("span", help="equalities satisfied by every graph vector")
    s.add_argument("--parties", type=_positive_int, required=True)
    s.set_defaults(func=cmd_span)

    o = sub.add_parser("oracle", help="entropy vector of an explicit state")
    o.add_argument("--state", required=True, help="bell, ghz:k, w:k, product:k, random:k:seed")
    o.add_argument("--partition", required=True, help="e.g. '1:0,1;2:2;env:3'")
    o.add_argument("--parties", type=_positive_int)
    o.add_argument("--cap", type=_positive_int, default=DEFAULT_QUBIT_CAP)
    o.set_defaults(func=cmd_oracle)

    pr = sub.add_parser("protocol", help="run the EPR distribution protocol and compare")
    pr.add_argument("--parties", type=_positive_int, required=True)
    pr.add_argument("--pairs", required=True, help="e.g. '1-2:2,2-3:1'")
    pr.add_argument("--rounds", type=_nonneg_int, default=0)
    pr.add_argument("--seed", type=_nonneg_int, default=0)
    pr.add_argument("--cap", type=_positive_int, default=DEFAULT_QUBIT_CAP)
    pr.set_defaults(func=cmd_protocol)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out: list[str] = []
    try:
        code = args.func(args, out)
    except _Fail as exc:
        print(f"eprcone: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (DomainError, FormatError, ResourceError, NumericIntegrityError,
            UnresolvableError) as exc:
        print(f"eprcone: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write("\n".join(out) + "\n")
    return code


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
