import json

import pytest

from mseq import census
from mseq.cli import main
from mseq.field import FieldError, field_make
from mseq.formats import (
    ParseError,
    format_seqfile,
    parse_census_csv,
    parse_census_json,
    parse_mc_csv,
    parse_seqfile,
    read_sections,
)
from mseq.lfsr import Multisequence
from mseq.verify import SuiteResult, halves, second_half_bounded, suite_polytope


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- SeqFile ----------------------------------------------------------------------


def test_seqfile_parse_and_roundtrip():
    t = parse_seqfile("q=2 m=2 n=4\n0110\n1011\n")
    assert t.rows == ((0, 1, 1, 0), (1, 0, 1, 1))
    assert parse_seqfile(format_seqfile(t)) == t


def test_seqfile_large_q_and_modulus():
    t = parse_seqfile("# comment\nq=16 m=1 n=3 mod=1,1,0,0,1\n15, 0,7\n")
    assert t.rows == ((15, 0, 7),)
    assert t.field == field_make(16)
    assert parse_seqfile(format_seqfile(t)) == t
    t9 = parse_seqfile("q=9 m=1 n=2 mod=1,0,1\n38\n")
    assert t9.field == field_make(9, (1, 0, 1))


def test_seqfile_empty_sequence():
    t = parse_seqfile("q=3 m=2 n=0\n")
    assert (t.m, t.n) == (2, 0)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("q=2 m=1\n01\n", 1, 1),
        ("q=2 m=1 n=2 z=3\n01\n", 1, 13),
        ("q=2 m=2 n=2\n01\n", 2, 1),
        ("q=2 m=1 n=3\n01\n", 2, 1),
        ("q=2 m=1 n=3\n0x1\n", 2, 2),
        ("q=11 m=1 n=2\n1,a\n", 2, 3),
        ("", 1, 1),
    ],
)
def test_seqfile_parse_errors(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_seqfile(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_seqfile_symbol_out_of_range():
    with pytest.raises(FieldError, match="row 1, position 3"):
        parse_seqfile("q=2 m=1 n=3\n012\n")


# -- profile ------------------------------------------------------------------------


def test_cmd_profile(tmp_path, capsys):
    path = tmp_path / "s.txt"
    path.write_text("q=2 m=1 n=3\n110\n")
    code, out, _ = run(capsys, "profile", path)
    assert code == 0
    assert "profile: 1,1,2" in out and "L: 2" in out
    code, out, _ = run(capsys, "profile", path, "--format", "json")
    data = json.loads(out)
    assert data["profile"] == [1, 1, 2] and data["L"] == 2 and data["connection_poly"][0] == 1


def test_cmd_profile_zeros_and_errors(tmp_path, capsys):
    path = tmp_path / "z.txt"
    path.write_text("q=3 m=2 n=4\n0000\n0000\n")
    code, out, _ = run(capsys, "profile", path)
    assert code == 0 and "profile: 0,0,0,0" in out
    path.write_text("q=2 m=1 n=3\n012\n")
    code, _, err = run(capsys, "profile", path)
    assert code == 2 and "row 1, position 3" in err
    path.write_text("q=2 m=1 n=3\n01\n")
    code, _, err = run(capsys, "profile", path)
    assert code == 2 and "ParseError" in err and "line 2" in err


# -- census ------------------------------------------------------------------------


def test_cmd_census_blocks(capsys):
    code, out, _ = run(capsys, "census", "--q", 2, "--m", 1, "--n", "1..3")
    assert code == 0
    cells = parse_census_csv(out)
    assert [c[0].n for c in cells] == [1, 2, 3]
    t, e, z, b = cells[1]
    assert t.counts == (1, 2, 1) and e.e_exact == 1


@pytest.mark.parametrize("fmt, parser", [("csv", parse_census_csv), ("json", parse_census_json)])
def test_census_reports_roundtrip(capsys, fmt, parser):
    code, out, _ = run(capsys, "census", "--q", "2..3", "--m", "1..2", "--n", "2..4", "--format", fmt)
    assert code == 0
    for t, e, z, b in parser(out):
        fresh = census.enumerate_distribution(t.q, t.m, t.n)
        assert t == fresh
        assert e == census.expectation(fresh)
        assert z == census.deviation_table(fresh)
        assert b == census.fit_bounds(fresh)


def test_census_table_format(capsys):
    code, out, _ = run(capsys, "census", "--q", 2, "--m", 2, "--n", 3, "--format", "table")
    assert code == 0 and "q=2 m=2 n=3" in out and "lemma2 ok" in out


def test_census_budget_error(capsys):
    code, _, err = run(capsys, "census", "--q", 2, "--m", 3, "--n", 20)
    assert code == 2 and "BudgetExceeded" in err and "n=20" in err


def test_census_budget_flag_and_env(capsys, monkeypatch):
    code, _, err = run(capsys, "census", "--q", 2, "--m", 1, "--n", "1..8", "--budget", 64)
    assert code == 2 and "n=7" in err
    monkeypatch.setenv("MSEQ_BUDGET", "16")
    code, _, err = run(capsys, "census", "--q", 2, "--m", 1, "--n", 5)
    assert code == 2


def test_census_jobs_identical(capsys):
    _, one, _ = run(capsys, "census", "--q", 2, "--m", 2, "--n", "5..6", "--jobs", 1)
    _, three, _ = run(capsys, "census", "--q", 2, "--m", 2, "--n", "5..6", "--jobs", 3)
    assert one == three


def test_bad_range(capsys):
    with pytest.raises(SystemExit):
        main(["census", "--q", "2", "--m", "1", "--n", "5..2"])


# -- polytope ---------------------------------------------------------------------


def test_cmd_polytope_table(capsys):
    code, out, _ = run(capsys, "polytope", "--m", 2, "--L", 3)
    assert code == 0
    sections = dict(read_sections(out))
    rows = [(int(r["H"]), int(r["rho"]), int(r["M"]), int(r["bound"])) for r in sections["polytope"]]
    assert rows == [(0, 0, 0, 1), (1, 1, 1, 4), (2, 0, 1, 9), (3, 1, 2, 16)]
    assert all(r["ok"] == "true" for r in sections["polytope"])


def test_cmd_polytope_m1(capsys):
    _, out, _ = run(capsys, "polytope", "--m", 1, "--L", 7)
    sections = dict(read_sections(out))
    assert len(sections["polytope"]) == 1
    assert sections["functional_max"][0]["value"] == "0"


def test_cmd_polytope_vertices(capsys):
    _, out, _ = run(capsys, "polytope", "--m", 3, "--L", 6, "--vertices")
    sections = dict(read_sections(out))
    coords = {r["coords"] for r in sections["vertices"]}
    assert "2;2;2" in coords and "5/2;5/2;1" in coords
    _, out, _ = run(capsys, "polytope", "--m", 3, "--L", 6, "--vertices", "--format", "json")
    assert json.loads(out)["functional_max"][0]["argmax"] == "2;2;2"


# -- montecarlo ------------------------------------------------------------------------


def test_cmd_montecarlo(capsys):
    argv = ("montecarlo", "--q", 2, "--m", 2, "--n", 6, "--samples", 4000, "--seed", 42)
    code, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert code == 0 and a == b
    est = parse_mc_csv(a)
    exact = float(census.expectation(census.enumerate_distribution(2, 2, 6)).e_exact)
    assert abs(est.mean - exact) <= 4 * est.stderr
    _, c, _ = run(capsys, *argv, "--jobs", 2)
    assert c == a


def test_cmd_montecarlo_n0(capsys):
    _, out, _ = run(capsys, "montecarlo", "--q", 2, "--m", 2, "--n", 0, "--samples", 10, "--format", "json")
    assert float(json.loads(out)["mean"]) == 0.0


# -- verify ---------------------------------------------------------------------------


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "UnknownSuite" in err


def test_verify_small_polytope_suite():
    res = suite_polytope(max_m=3, max_L=8)
    assert res.ok and res.checks > 100


def test_verify_reports_counterexample(capsys, monkeypatch):
    def broken():
        res = SuiteResult("lemma2")
        res.check(True, "fine")
        res.check(False, "q=2 m=1 n=3 L=1: made up")
        return res

    monkeypatch.setitem(__import__("mseq.verify", fromlist=["SUITES"]).SUITES, "lemma2", broken)
    code, out, _ = run(capsys, "verify", "lemma2")
    assert code == 1 and "FAIL" in out and "q=2 m=1 n=3 L=1" in out


def test_halves():
    assert halves(range(1, 10)) == ([1, 2, 3, 4, 5], [6, 7, 8, 9])
    assert halves(range(1, 15)) == (list(range(1, 8)), list(range(8, 15)))
    ok, a, b = second_half_bounded({1: 1, 2: 1, 3: 2, 4: 1})
    assert not ok and (a, b) == (1, 2)
