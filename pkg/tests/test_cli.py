import csv
import io
import json
import subprocess
import sys

import pytest

from usf_lab.catalog import builtin_examples, resolve_builtin
from usf_lab.cli import SIM_COLUMNS, VERDICT_COLUMNS, build_id, main, parse_objective
from usf_lab.errors import ParseError
from usf_lab.ultrametric import maximize_over_polytope


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


# -- classify --------------------------------------------------------------------


def test_classify_path_three_at_sixteen(capsys):
    doc = run_json(capsys, "classify", "path:3", "--dim", "16", "--mode", "graph")
    assert doc["columns"] == VERDICT_COLUMNS
    (row,) = doc["rows"]
    assert row[0] == 16 and row[1] is True and row[2] is True
    assert row[6] == "any r >= 1"
    doc = run_json(capsys, "classify", "path:3", "--dim", "17", "--mode", "graph")
    assert doc["rows"][0][1] is False


def test_classify_edge_five(capsys):
    assert run_json(capsys, "classify", "edge:5", "--dim", "5")["rows"][0][1] is True
    assert run_json(capsys, "classify", "edge:5", "--dim", "6")["rows"][0][1] is False


def test_classify_text_report(capsys):
    code, out, _ = run(capsys, "classify", "three-pairs", "--dim", "7")
    assert code == 0
    assert "faithful" in out and "yes" in out and "r >= R_G(H)" in out


def test_classify_from_file(tmp_path, capsys):
    p = tmp_path / "p.hg"
    p.write_text("boundary: a b\ninterior: u\nedge e1: a u\nedge e2: u b\n")
    doc = run_json(capsys, "classify", str(p), "--dim", "12")
    assert doc["rows"][0][1] is True
    edges = doc["meta"]["hypergraph"]["edges"]
    assert {e: set(vs) for e, vs in edges.items()} == {"e1": {"a", "u"}, "e2": {"u", "b"}}


def test_malformed_file_exit_two(tmp_path, capsys):
    p = tmp_path / "bad.hg"
    p.write_text("boundary: a b\nedge e1 a b\n")
    code, _, err = run(capsys, "classify", str(p), "--dim", "6")
    assert code == 2
    assert "bad.hg:2:" in err


def test_unknown_input_exit_two(capsys):
    code, _, _ = run(capsys, "classify", "no-such-thing", "--dim", "6")
    assert code == 2


def test_bad_dimension_is_parse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "edge:2", "--dim", "4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_not_a_graph_exit_three_with_hint(capsys):
    code, _, err = run(capsys, "classify", "edge:3", "--dim", "6", "--mode", "graph")
    assert code == 3
    assert "NotAGraph" in err and "--mode hypergraph" in err


def test_missing_cap_exit_three(tmp_path, capsys):
    p = tmp_path / "h.hg"
    p.write_text("boundary: a b\ninterior: u\nedge e: a b u\n")
    code, _, err = run(capsys, "classify", str(p), "--dim", "6", "--edge-degree-cap", "1")
    assert code == 3 and "MissingCap" in err


# -- profile ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "name, last",
    [("tree-family:13", 13), ("three-pairs", 7), ("edge:2", 8), ("separating:11", 11)],
)
def test_profile_critical_dimension(capsys, name, last):
    doc = run_json(capsys, "profile", name, "--dims", "5..20", "--faithful-only")
    assert doc["meta"]["critical_faithful"] == last
    flags = [r[1] for r in doc["rows"]]
    assert flags == [d <= last for d in range(5, 21)]


def test_profile_text_marks_threshold(capsys):
    code, out, _ = run(capsys, "profile", "edge:2", "--dims", "6..10", "--mode", "graph")
    assert code == 0
    marked = [line for line in out.splitlines() if "<- last faithful" in line]
    assert len(marked) == 1 and marked[0].split()[0] == "8"
    assert "critical dimensions: faithful 8" in out


def test_profile_rejects_range_outside_bounds(capsys):
    with pytest.raises(SystemExit):
        main(["profile", "edge:2", "--dims", "3..9"])
    capsys.readouterr()


def test_profile_csv_round_trip(capsys):
    code, out, _ = run(capsys, "profile", "three-pairs", "--dims", "5..9", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    meta = dict(line[2:].split("=", 1) for line in lines if line.startswith("# "))
    assert json.loads(meta["critical_faithful"]) == 7
    rows = list(csv.reader(io.StringIO("\n".join(line for line in lines if not line.startswith("#")))))
    assert rows[0] == VERDICT_COLUMNS
    assert [r[1] for r in rows[1:]] == ["True", "True", "True", "False", "False"]


# -- simulate --------------------------------------------------------------------


def test_simulate_is_deterministic(tmp_path, capsys):
    argv = ["simulate", "--d", "2", "--side", "4", "--samples", "1000", "--stat", "component-count", "--seed", "7"]
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    assert main(argv + ["--format", "csv", "--out", str(a)]) == 0
    assert main(argv + ["--format", "csv", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    # the thread count is recorded in the header but leaves the rows unchanged
    assert main(argv + ["--format", "csv", "--out", str(c), "--threads", "2"]) == 0
    body = lambda p: [x for x in p.read_text().splitlines() if not x.startswith("#")]
    assert body(a) == body(c)
    text = a.read_text()
    assert f'# build="{build_id()}"' in text and "# seed=7" in text
    rows = list(csv.reader(io.StringIO("\n".join(x for x in text.splitlines() if not x.startswith("#")))))
    assert rows[0] == SIM_COLUMNS and len(rows) == 1001
    capsys.readouterr()


def test_simulate_pair_connect_monotone(capsys):
    doc = run_json(
        capsys, "simulate", "--d", "5", "--side", "12", "--samples", "4000", "--stat", "pair-connect", "--seed", "1"
    )
    values = [float(r[5]) for r in doc["rows"]]
    seps = [int(r[4].split("=")[1]) for r in doc["rows"]]
    assert seps == sorted(seps) and len(seps) >= 3
    assert values == sorted(values, reverse=True)


def test_simulate_explicit_pairs(capsys):
    doc = run_json(
        capsys, "simulate", "--d", "2", "--side", "4", "--samples", "200", "--stat", "pair-connect",
        "--pairs", "1,1:1,2;0,0:3,3",
    )
    assert [r[4] for r in doc["rows"]] == ["distance=1", "distance=6"]


def test_simulate_r_estimate(capsys):
    doc = run_json(
        capsys, "simulate", "--d", "5", "--side", "6", "--samples", "8", "--stat", "r-estimate", "--M", "2", "--r-max", "3"
    )
    assert doc["rows"][-1][4] == "threshold(M=2)" and doc["rows"][-1][5] == 1


def test_simulate_witness_count(capsys):
    doc = run_json(
        capsys, "simulate", "--d", "2", "--side", "4", "--samples", "3", "--stat", "witness-count",
        "--hypergraph", "edge:2", "--r", "3",
    )
    assert len(doc["rows"]) == 3 and all(int(r[5]) >= 0 for r in doc["rows"])


def test_simulate_memory_guard(capsys):
    code, _, err = run(capsys, "simulate", "--d", "5", "--side", "64", "--stat", "component-count")
    assert code == 4 and "budget" in err


def test_simulate_memory_guard_env(monkeypatch, capsys):
    monkeypatch.setenv("USF_LAB_MEM_BUDGET_MB", "0.001")
    code, _, _ = run(capsys, "simulate", "--d", "2", "--side", "8", "--stat", "component-count", "--samples", "1")
    assert code == 4


# -- ultrametric -------------------------------------------------------------------


def test_ultrametric_negative_term(tmp_path, capsys):
    p = tmp_path / "f.txt"
    p.write_text("points: a b c\nterm -1: a,b\n")
    doc = run_json(capsys, "ultrametric", str(p), "--samples", "50")
    (row,) = doc["rows"]
    assert row[0] == "0"
    assert any(set(block.split(",")) >= {"a", "b"} for block in row[1].split(" | "))
    assert row[3] is not None and float(row[3].split("/")[0]) >= 0


def test_ultrametric_matches_library(tmp_path, capsys):
    text = "points: a b c d\nterm 2: a,b c,d\nterm -3/2: a,c\nterm 1: b,d a,d\n"
    p = tmp_path / "f.txt"
    p.write_text(text)
    points, f = parse_objective(text)
    value, _ = maximize_over_polytope(f, points)
    doc = run_json(capsys, "ultrametric", str(p), "--samples", "100")
    assert doc["rows"][0][0] == str(value)


def test_ultrametric_over_cap_exit_three(tmp_path, capsys):
    pts = " ".join(f"p{i}" for i in range(11))
    p = tmp_path / "f.txt"
    p.write_text(f"points: {pts}\nterm 1: p0,p1\n")
    code, _, err = run(capsys, "ultrametric", str(p))
    assert code == 3 and "TooLarge" in err


def test_objective_parse_errors():
    with pytest.raises(ParseError):
        parse_objective("term 1: a,b\n")
    with pytest.raises(ParseError):
        parse_objective("points: a b\nterm x: a,b\n")
    with pytest.raises(ParseError):
        parse_objective("points: a b\nterm 1: a,z\n")


# -- catalog and entry point -------------------------------------------------------


def test_builtin_names_resolve_to_catalog():
    for name, ctor in builtin_examples().items():
        if name == "three-pairs":
            assert resolve_builtin(name) == ctor()
        else:
            n = 9 if name in ("tree-family", "separating") else 3
            assert resolve_builtin(f"{name}:{n}") == ctor(n)


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "usf_lab.cli", "classify", "edge:2", "--dim", "8", "--mode", "graph", "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert "True" in res.stdout
