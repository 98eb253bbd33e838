from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import pytest

from rttlab.graph import min_degree
from rttlab.harness import (
    COLUMNS,
    ConfigError,
    ConstructionSpec,
    ExperimentConfig,
    read_graph,
    read_records,
    report,
    run_experiment,
    stable_rows,
    write_records,
)
from rttlab.harness.report import scatter_svg, summary
from rttlab.independence import alpha_r
from rttlab.patterns import Pattern
from rttlab.tiling import max_tiling


# -- construction literals ---------------------------------------------


@pytest.mark.parametrize(
    "text, name",
    [
        ("g0:n=10,eta=3/10", "g0"),
        ("disjoint_cliques:sizes=8+8", "cliques"),
        ("blocker:n=24,d=4,seed=1", "blocker"),
        ("triangle_factor_blocker:n=12,d=4", "blocker"),
        ("cliquefree:n=20,r=2", "cliquefree"),
        ("perturbed_union:n=12,eta=1/3,p=1/10", "perturbed"),
        ("g0_cliquefree:n=30,eta=1/5,r=2", "g0_cliquefree"),
        ("gnp:n=10,p=1/2", "gnp"),
    ],
)
def test_spec_parse_and_build(text, name):
    spec = ConstructionSpec.parse(text)
    assert spec.name == name
    g = spec.build(seed=0).graph
    assert g.n >= 1
    assert ConstructionSpec.parse(str(spec)) == spec


@pytest.mark.parametrize(
    "text",
    ["nope:n=3", "g0:n=10", "g0:n=10,eta=1/2,zz=1", "g0:n=10,n=11,eta=1/2", "g0:n=10,eta"],
)
def test_spec_errors(text):
    with pytest.raises(ConfigError):
        ConstructionSpec.parse(text)


def test_seed_in_literal_wins():
    spec = ConstructionSpec.parse("gnp:n=12,p=1/2,seed=4")
    assert spec.build(seed=0).graph == spec.build(seed=99).graph


def test_file_spec(tmp_path):
    path = tmp_path / "k.g6"
    path.write_text("C~\n")
    g = ConstructionSpec.parse(f"file:path={path}").build().graph
    assert g.n == 4 and g.num_edges == 6


# -- configs -------------------------------------------------------------


CONFIG = """
# two-by-two sweep
construction = cliques:sizes=8+8
pattern = K3
eta = 4/10
seed_base = 7
output = out.csv
sweep.sizes = 8+8, 5+5+5
sweep.eta = 2/5 1
"""


def test_config_points_and_lowest_terms(tmp_path):
    cfg = ExperimentConfig.parse(CONFIG, base_dir=tmp_path)
    assert cfg.eta == Fraction(2, 5)
    assert cfg.output == tmp_path / "out.csv"
    pts = cfg.points()
    assert [str(p.spec) for p in pts] == ["cliques:sizes=8+8"] * 2 + ["cliques:sizes=5+5+5"] * 2
    assert [p.eta for p in pts] == [Fraction(2, 5), 1] * 2
    assert [p.seed for p in pts] == [7, 8, 9, 10]


@pytest.mark.parametrize(
    "text",
    [
        "pattern = K3",
        "construction = g0:n=4,eta=1/2\nbogus = 1",
        "construction = g0:n=4,eta=1/2\nsweep.d = 1 2",
        "construction = g0:n=4,eta=1/2\neta = 0",
        "construction = g0:n=4,eta=1/2\npattern = Q7",
        "construction = g0:n=4,eta=1/2\ncap = 3\nsweep.n = 4 5\nsweep.eta = 1/2 1/3",
        "construction = g0:n=4,eta=1/2\njust text",
    ],
)
def test_config_errors(text):
    with pytest.raises(Exception) as info:
        ExperimentConfig.parse(text)
    assert isinstance(info.value, (ConfigError, ValueError))


def test_sweep_cap_default_is_ten_thousand():
    many = " ".join(str(i) for i in range(101))
    text = f"construction = g0:n=4,eta=1/2\nsweep.n = {many}\nsweep.seed = {many}"
    with pytest.raises(ConfigError):
        ExperimentConfig.parse(text)


# -- experiments ---------------------------------------------------------


def test_disjoint_cliques_row(tmp_path):
    cfg = ExperimentConfig.parse("construction = cliques:sizes=8+8\neta = 2/5\noutput = r.csv", base_dir=tmp_path)
    (rec,) = run_experiment(cfg)
    assert (rec.uncovered, rec.allowance, rec.quasiperfect, rec.status) == (4, 4, True, "ok")
    assert rec.factor == "no" and rec.optimal


def test_persisted_graphs_reproduce_their_rows(tmp_path):
    cfg = ExperimentConfig.parse(
        "construction = blocker:n=12,d=4\neta = 1/5\noutput = r.csv\nsweep.seed = 0 1 2", base_dir=tmp_path
    )
    run_experiment(cfg)
    rows = read_records(cfg.output)
    f = Pattern.clique(3)
    for row in rows:
        g = read_graph(tmp_path / row["graph_file"])
        assert int(row["n"]) == g.n
        assert int(row["min_degree"]) == min_degree(g)
        assert int(row["alpha_r"]) == alpha_r(g, 2).value
        assert int(row["copies"]) == max_tiling(g, f).copies
        assert (int(row["uncovered"]) - g.n) % f.k == 0
        assert row["factor"] == "no"


def test_parallel_matches_sequential(tmp_path):
    base = "construction = gnp:n=10,p=1/2\npattern = P3\noutput = {}\nsweep.seed = 0 1 2 3\nworkers = {}"
    seq = run_experiment(ExperimentConfig.parse(base.format("a.csv", 1), base_dir=tmp_path))
    par = run_experiment(ExperimentConfig.parse(base.format("b.csv", 2), base_dir=tmp_path))
    assert [tuple(r.row()[c] for c in COLUMNS if c not in ("wall_time", "graph_file")) for r in seq] == [
        tuple(r.row()[c] for c in COLUMNS if c not in ("wall_time", "graph_file")) for r in par
    ]


def test_failures_land_in_status(tmp_path):
    cfg = ExperimentConfig.parse(
        "construction = blocker:n=12,d=4\noutput = r.csv\nsweep.n = 12 13", base_dir=tmp_path
    )
    ok, bad = run_experiment(cfg)
    assert ok.status == "ok"
    assert bad.status.startswith("error:ValueError")


def test_budget_status(tmp_path):
    cfg = ExperimentConfig.parse(
        "construction = gnp:n=40,p=1/2,seed=3\nbudget = 3\nalpha_budget = 3\noutput = r.csv", base_dir=tmp_path
    )
    (rec,) = run_experiment(cfg)
    assert rec.status.startswith("budget:")
    assert rec.optimal is False


def test_rerun_is_byte_identical_apart_from_wall_time(tmp_path):
    cfg = ExperimentConfig.parse("construction = cliquefree:n=20,r=2\noutput = r.csv\nsweep.seed = 0 1", base_dir=tmp_path)
    first = stable_rows(run_experiment(cfg))
    second = stable_rows(run_experiment(cfg))
    assert first == second


# -- reports -------------------------------------------------------------


def test_empty_csv_gives_empty_report(tmp_path):
    path = write_records([], tmp_path / "e.csv")
    assert report(path) == ""
    (tmp_path / "blank.csv").write_text("")
    assert report(tmp_path / "blank.csv") == ""


def test_single_row_report_echoes_row(tmp_path):
    cfg = ExperimentConfig.parse("construction = cliques:sizes=8+8\neta = 2/5\noutput = r.csv", base_dir=tmp_path)
    run_experiment(cfg)
    lines = report(cfg.output).strip().splitlines()
    assert len(lines) == 2  # header plus the row
    assert "cliques:sizes=8+8" in lines[1] and " 4 " in lines[1]


def test_schema_mismatch(tmp_path):
    path = tmp_path / "bad.csv"
    with path.open("w", newline="") as fh:
        csv.writer(fh).writerows([["a", "b"], ["1", "2"]])
    with pytest.raises(ValueError, match="schema"):
        report(path)


def test_summary_and_svg(tmp_path):
    cfg = ExperimentConfig.parse(
        "construction = blocker:n=12,d=4\noutput = r.csv\nsweep.n = 12 18", base_dir=tmp_path
    )
    run_experiment(cfg)
    rows = read_records(cfg.output)
    summ = summary(rows)
    assert all(s["factor"] == "no" for s in summ)
    svg = scatter_svg(rows)
    assert svg.startswith("<svg") and svg.count("<circle") == 2
    report(cfg.output, tmp_path / "s.svg")
    assert Path(tmp_path / "s.svg").read_text() == svg
