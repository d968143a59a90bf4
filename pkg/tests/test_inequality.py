from fractions import Fraction as F
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from eprcone.epr_model import EprGraph, entropy_vector, graph_coefficients, random_graph
from eprcone.errors import DomainError
from eprcone.inequality import (
    FAMILIES,
    Inequality,
    builtin_family,
    certify,
    evaluate,
    generator_vectors,
    span_constraints,
)
from eprcone.oracle import make_state, oracle_entropy_vector
from eprcone.subsets import mask_of, nonempty_masks

from conftest import graphs

S = mask_of


def one(name, n=3, roles=None):
    (ineq,) = builtin_family(name, n, roles)
    return ineq


def test_ssa1_coefficients():
    assert dict(one("ssa1").coeffs) == {S([1, 3]): 1, S([2, 3]): 1, S([1]): -1, S([2]): -1}


def test_ssa2_coefficients():
    assert dict(one("ssa2").coeffs) == {S([1, 2]): 1, S([2, 3]): 1, S([2]): -1, S([1, 2, 3]): -1}


def test_subadditivity_coefficients():
    assert dict(one("subadditivity", 2).coeffs) == {1: 1, 2: 1, 3: -1}


def test_triangle_is_two_forms():
    a, b = builtin_family("triangle", 2)
    assert dict(a.coeffs) == {3: 1, 1: -1, 2: 1}
    assert dict(b.coeffs) == {3: 1, 1: 1, 2: -1}


def test_mmi_is_minus_tripartite_information():
    assert dict(one("mmi").coeffs) == {
        S([1, 2]): 1, S([1, 3]): 1, S([2, 3]): 1,
        S([1]): -1, S([2]): -1, S([3]): -1, S([1, 2, 3]): -1,
    }


def test_roles_can_be_composite():
    ineq = one("ssa1", 4, [S([1]), S([2]), S([3, 4])])
    assert dict(ineq.coeffs) == {S([1, 3, 4]): 1, S([2, 3, 4]): 1, S([1]): -1, S([2]): -1}


@pytest.mark.parametrize(
    "name,n,roles",
    [
        ("ssa1", 3, [1, 3, 4]),
        ("ssa1", 3, [1, 2]),
        ("subadditivity", 2, [1, 4]),
        ("nope", 3, None),
        ("ssa2", 2, None),
    ],
)
def test_family_errors(name, n, roles):
    with pytest.raises(DomainError):
        builtin_family(name, n, roles)


def test_evaluate_examples():
    sub = one("subadditivity", 2)
    assert evaluate(sub, entropy_vector(EprGraph(2, {(1, 2): 5}, {1: 7, 2: 9}))) == 10
    assert evaluate(one("ssa1"), entropy_vector(EprGraph(3))) == 0
    assert evaluate(one("ssa2"), entropy_vector(EprGraph(3, {(1, 3): 4}))) == 8


def test_evaluate_party_mismatch():
    with pytest.raises(DomainError):
        evaluate(one("ssa1"), entropy_vector(EprGraph(2)))


def test_certify_ssa1():
    cert = certify(one("ssa1"))
    assert cert.generator_values == (0, 0, 0, 0, 0, 2)
    assert cert.valid


def test_certify_ssa2():
    cert = certify(one("ssa2"))
    assert cert.generator_values == (0, 2, 0, 0, 0, 0)
    assert cert.valid


def test_certify_reversed_ssa1():
    cert = certify(one("ssa1").negated())
    assert cert.generator_values[5] == -2
    assert not cert.valid


@pytest.mark.parametrize("name", FAMILIES)
@pytest.mark.parametrize("n", [3, 4])
def test_builtin_families_are_cone_valid(name, n):
    for ineq in builtin_family(name, n):
        assert certify(ineq).valid


def test_inequality_needs_a_term():
    with pytest.raises(DomainError):
        Inequality(2, {1: 0})
    with pytest.raises(DomainError):
        Inequality(2, {4: 1})


def test_span_n2_empty():
    assert span_constraints(2) == ()


def test_span_n3():
    (eq,) = span_constraints(3)
    assert eq.equality
    assert dict(eq.coeffs) == {1: 1, 2: 1, 4: 1, 7: 1, 3: -1, 5: -1, 6: -1}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_span_dimension_matches_exact_rank(n):
    rows = [v.as_list() for v in generator_vectors(n)]
    expected = (2**n - 1) - sympy.Matrix(rows).rank()
    assert len(span_constraints(n)) == expected
    assert expected == 2**n - 1 - n * (n - 1) // 2 - n


@pytest.mark.parametrize("n", [3, 4, 5])
def test_span_equalities_vanish_on_graphs(n):
    rng = random.Random(n)
    eqs = span_constraints(n)
    for v in generator_vectors(n):
        assert all(evaluate(eq, v) == 0 for eq in eqs)
    for _ in range(100):
        v = entropy_vector(random_graph(n, rng))
        assert all(evaluate(eq, v) == 0 for eq in eqs)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_span_equalities_are_canonical(n):
    for eq in span_constraints(n):
        coeffs = list(eq.coeffs.values())
        assert all(c.denominator == 1 for c in coeffs)
        assert coeffs[0] > 0
        g = 0
        for c in coeffs:
            g = sympy.igcd(g, int(c))
        assert g == 1


coefficient_maps = st.dictionaries(
    st.sampled_from(list(nonempty_masks(3))),
    st.fractions(min_value=-3, max_value=3, max_denominator=3),
    min_size=1,
).filter(lambda d: any(d.values()))


@settings(max_examples=200)
@given(coefficient_maps, graphs(n=3))
def test_certify_soundness(coeffs, g):
    ineq = Inequality(3, coeffs)
    if certify(ineq).valid:
        assert evaluate(ineq, entropy_vector(g)) >= 0


@settings(max_examples=200)
@given(coefficient_maps, graphs(n=3))
def test_certificate_reconstructs_value(coeffs, g):
    ineq = Inequality(3, coeffs)
    cert = certify(ineq)
    weights = graph_coefficients(g)
    assert sum((w * c for w, c in zip(weights, cert.generator_values)), F(0)) == evaluate(
        ineq, entropy_vector(g)
    )


@given(graphs(n=3))
def test_paper_ssa_identities(g):
    v = entropy_vector(g)
    assert evaluate(one("ssa1"), v) == 2 * g.environment(3)
    assert evaluate(one("ssa2"), v) == 2 * g.pair(1, 3)


@given(graphs(n=2))
def test_paper_subadditivity_identity(g):
    assert evaluate(one("subadditivity", 2), entropy_vector(g)) == 2 * g.pair(1, 2)


def test_mmi_valid_on_cone_but_violated_by_ghz4():
    mmi = one("mmi")
    assert certify(mmi).valid
    ghz4 = oracle_entropy_vector(make_state("ghz", 4, assignment=(1, 2, 3, "env")), 3)
    assert evaluate(mmi, ghz4) == pytest.approx(-1, abs=1e-9)


def test_evaluate_float_vector():
    v = oracle_entropy_vector(make_state("bell"), 2)
    assert isinstance(evaluate(one("subadditivity", 2), v), float)


def test_str_form():
    assert str(one("subadditivity", 2)) == "S{1} + S{2} - S{1,2} >= 0"
