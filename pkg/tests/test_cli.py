from __future__ import annotations

import json

import pytest

from rttlab.harness.cli import main
from rttlab.harness.io import read_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_writes_graph(tmp_path, capsys):
    path = tmp_path / "b.g6"
    code, _, err = run(capsys, "generate", "blocker:n=12,d=4,seed=2", "--out", str(path))
    assert code == 0
    assert read_graph(path).n == 12
    assert json.loads(err)["cross_triangles"] == 0


def test_generate_to_stdout_edgelist(capsys):
    code, out, _ = run(capsys, "generate", "g0:n=4,eta=1/2", "--format", "edgelist")
    assert code == 0 and out.splitlines()[0] == "4 5"


def test_solve_json(capsys):
    code, out, _ = run(capsys, "solve", "cliques:sizes=8+8", "--eta", "2/5", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["copies"], data["uncovered"], data["quasiperfect"]) == (4, 4, True)


def test_solve_budget_exit_code(capsys):
    code, out, _ = run(capsys, "solve", "gnp:n=40,p=1/2,seed=1", "--budget", "2")
    assert code == 3 and "bound" in out


def test_alpha(capsys):
    code, out, _ = run(capsys, "alpha", "cliques:sizes=3+3+3")
    assert code == 0 and out.strip() == "alpha_2 = 3"
    code, out, _ = run(capsys, "alpha", "cliques:sizes=3+3", "--star", "--json")
    assert json.loads(out)["value"] == 3  # the two triangles form a bipartite hole


def test_verify_absorber_codes(capsys):
    assert run(capsys, "verify-absorber", "cliques:sizes=6", "--S", "0,1,2", "--A", "3,4,5")[0] == 0
    assert run(capsys, "verify-absorber", "cliques:sizes=3+3", "--S", "0,1,3", "--A", "2,4,5")[0] == 2
    assert run(capsys, "verify-absorber", "cliques:sizes=6", "--S", "0,1", "--A", "3,4,5")[0] == 2


def test_template(capsys):
    code, out, _ = run(capsys, "template", "-m", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["z_size"] == 6 and not data["sampled"]


def test_merge(capsys, tmp_path):
    code, out, _ = run(capsys, "merge", "cliques:sizes=9+9")
    assert code == 0 and out.startswith("2 part(s)")
    target = tmp_path / "m.json"
    assert run(capsys, "merge", "cliques:sizes=6", "--json", "--out", str(target))[0] == 0
    assert json.loads(target.read_text())["parts"] == [list(range(6))]


def test_experiment_and_report(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("construction = blocker:n=12,d=4\neta = 1/5\noutput = res.csv\nsweep.seed = 0 1\n")
    code, out, _ = run(capsys, "experiment", str(cfg))
    assert code == 0 and "2 rows" in out
    code, out, _ = run(capsys, "report", str(tmp_path / "res.csv"), "--svg", str(tmp_path / "p.svg"))
    assert code == 0 and out.count("blocker:n=12") == 2
    assert (tmp_path / "p.svg").read_text().startswith("<svg")


def test_experiment_error_rows_exit_2(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("construction = blocker:n=12,d=4\noutput = res.csv\nsweep.n = 12 14\n")
    assert run(capsys, "experiment", str(cfg))[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["solve", "no-such-file"],
        ["solve", "g0:n=4"],
        ["solve", "cliques:sizes=3", "--pattern", "Q2"],
        ["generate", "zzz:n=1"],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(capsys, *argv)[0] == 1


def test_report_schema_mismatch(tmp_path, capsys):
    bad = tmp_path / "x.csv"
    bad.write_text("a,b\n1,2\n")
    assert run(capsys, "report", str(bad))[0] == 2


def test_construction_failure_exit_2(capsys):
    assert run(capsys, "generate", "cliquefree:n=20,r=2,alpha=1/20,strict=1")[0] == 2


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
