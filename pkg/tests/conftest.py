from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from eprcone.epr_model import EprGraph

weights = st.fractions(min_value=0, max_value=50, max_denominator=20)


@st.composite
def graphs(draw, n=None, min_n=1, max_n=5):
    if n is None:
        n = draw(st.integers(min_n, max_n))
    pairs = {p: draw(weights) for p in combinations(range(1, n + 1), 2)}
    env = {i: draw(weights) for i in range(1, n + 1)}
    return EprGraph(n, pairs, env)


def cut_entropy_bruteforce(graph, parties):
    """Sum weights over every (i in A, j not in A), looping over explicit sets."""
    inside = set(parties)
    outside = set(range(1, graph.n + 1)) - inside
    total = Fraction(0)
    for i in inside:
        for j in outside:
            total += graph.pairs.get((min(i, j), max(i, j)), 0)
        total += graph.env.get(i, 0)
    return total


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
