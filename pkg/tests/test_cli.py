import subprocess
import sys

import pytest

from eprcone.cli import main
from eprcone.formats import parse_graph, parse_vector


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


@pytest.fixture
def files(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def test_certify_ssa1(run):
    code, out, _ = run("certify", "--family", "ssa1", "--parties", "3")
    assert code == 0
    assert "generator values: (0,0,0,0,0,2)" in out
    assert out.rstrip().endswith("VALID")
    assert "# family: ssa1" in out


def test_certify_ssa2(run):
    code, out, _ = run("certify", "--family", "ssa2", "--parties", "3")
    assert "generator values: (0,2,0,0,0,0)" in out


def test_certify_invalid_file(run, files):
    ineq = files("rev.ineq", "parties 3\nterm 1 {1}\nterm 1 {2}\nterm -1 {1,3}\nterm -1 {2,3}\nsense >=0\n")
    code, out, _ = run("certify", "--ineq", ineq, "--parties", "3")
    assert code == 1
    assert "(0,0,0,0,0,-2)" in out
    assert "INVALID" in out


def test_certify_triangle_prints_both_forms(run):
    code, out, _ = run("certify", "--family", "triangle", "--parties", "2")
    assert code == 0
    assert out.count("VALID") == 2


def test_entropy_empty_graph(run, files):
    g = files("empty.graph", "parties 3\n")
    code, out, _ = run("entropy", "--graph", g)
    assert code == 0
    v = parse_vector(out)
    assert all(x == 0 for x in v.as_list())


def test_entropy_single_subset(run, files):
    g = files("g.graph", "parties 3\npair 1 2 2\npair 1 3 1/2\npair 2 3 3\nenv 1 1\nenv 3 5\n")
    code, out, _ = run("entropy", "--graph", g, "--subset", "2,3")
    assert out.strip().splitlines()[-1] == "{2,3}: 15/2"


def test_member_ghz4(run, files):
    vec = files("ghz4.vec", "".join(f"{{{s}}}: 1\n" for s in ["1", "2", "1,2", "3", "1,3", "2,3", "1,2,3"]))
    code, out, _ = run("member", "--vector", vec)
    assert code == 1
    assert "violated equality: S{1} + S{2} - S{1,2} + S{3} - S{1,3} - S{2,3} + S{1,2,3} = 0" in out
    assert "NOT A MEMBER" in out


def test_entropy_member_roundtrip(run, files):
    text = "parties 4\npair 1 2 2\npair 2 4 1/3\nenv 3 7/5\n"
    g = files("g.graph", text)
    _, vec_out, _ = run("entropy", "--graph", g)
    v = files("g.vec", vec_out)
    code, out, _ = run("member", "--vector", v)
    assert code == 0
    assert parse_graph(out) == parse_graph(text)
    body = "".join(line + "\n" for line in out.splitlines() if not line.startswith("#"))
    assert body == text


def test_member_negative_coefficient(run, files):
    v = files("v.vec", "{1}: 1\n{2}: 1\n{1,2}: 3\n")
    code, out, _ = run("member", "--vector", v)
    assert code == 1
    assert "negative coefficient: e_12 = -1/2" in out


def test_oracle_then_member(run, files):
    code, out, _ = run("oracle", "--state", "ghz:4", "--partition", "1:0;2:1;3:2;env:3")
    assert code == 0
    v = parse_vector(out)
    assert not v.exact
    code, out, _ = run("member", "--vector", files("o.vec", out))
    assert code == 1
    assert "# snap residual" in out


def test_oracle_bell_member(run, files):
    _, out, _ = run("oracle", "--state", "bell", "--partition", "1:0;2:1")
    code, out, _ = run("member", "--vector", files("b.vec", out))
    assert code == 0
    assert "pair 1 2 1" in out


def test_check_graph(run, files):
    g = files("g.graph", "parties 2\npair 1 2 5\nenv 1 7\nenv 2 9\n")
    code, out, _ = run("check", "--graph", g, "--family", "subadditivity")
    assert code == 0
    assert "value: 10" in out


def test_check_violated(run, files):
    vec = files("ghz4.vec", "".join(f"{{{s}}}: 1\n" for s in ["1", "2", "1,2", "3", "1,3", "2,3", "1,2,3"]))
    code, out, _ = run("check", "--vector", vec, "--family", "mmi", "--roles", "1;2;3")
    assert code == 1
    assert "value: -1" in out
    assert "VIOLATED" in out


def test_check_equality_file(run, files):
    eq = files("span.ineq", "parties 3\nterm 1 {1}\nterm 1 {2}\nterm 1 {3}\nterm 1 {1,2,3}\n"
               "term -1 {1,2}\nterm -1 {1,3}\nterm -1 {2,3}\nsense =0\n")
    g = files("g.graph", "parties 3\npair 1 3 4\nenv 2 1\n")
    code, out, _ = run("check", "--graph", g, "--ineq", eq)
    assert code == 0


def test_span(run):
    code, out, _ = run("span", "--parties", "4")
    assert code == 0
    assert "# 5 equalities" in out
    assert out.count("sense =0") == 5


def test_protocol(run):
    code, out, _ = run("protocol", "--parties", "2", "--pairs", "1-2:2", "--rounds", "5", "--seed", "1")
    assert code == 0
    assert "AGREE" in out
    assert "# seed: 1" in out


def test_protocol_over_cap(run):
    code, _, err = run("protocol", "--parties", "2", "--pairs", "1-2:7")
    assert code == 2
    assert "cap" in err


def test_deterministic_output(run):
    argv = ["protocol", "--parties", "3", "--pairs", "1-2:1,2-3:2", "--rounds", "2", "--seed", "5"]
    assert run(*argv) == run(*argv)


def test_missing_file(run):
    code, _, err = run("entropy", "--graph", "/nonexistent/x.graph")
    assert code == 2
    assert "/nonexistent/x.graph" in err


def test_malformed_file_names_line(run, files):
    g = files("bad.graph", "parties 2\npair 1 2 oops\n")
    code, _, err = run("entropy", "--graph", g)
    assert code == 2
    assert "bad.graph" in err and "line 2" in err


def test_bad_roles(run):
    code, _, err = run("certify", "--family", "ssa1", "--roles", "1;1;2", "--parties", "3")
    assert code == 2


def test_usage_error_exit_code(run):
    with pytest.raises(SystemExit) as info:
        main(["certify", "--parties", "3"])
    assert info.value.code == 2


def test_console_module_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "eprcone.cli", "span", "--parties", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "sense =0" in proc.stdout
