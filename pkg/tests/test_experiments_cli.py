import json

import pytest

from wlgenus.cli import main
from wlgenus.corpus import torus_grid
from wlgenus.experiments import EXPERIMENTS, UnknownExperimentError, run_experiment
from wlgenus.graph import ColouredGraph, complete_graph, cycle_graph, path_graph


# -- experiments ------------------------------------------------------------------


def test_unknown_experiment():
    with pytest.raises(UnknownExperimentError):
        run_experiment("no-such-thing")


def test_aliases_cover_criteria():
    assert sorted(ac for ac, _ in EXPERIMENTS.values()) == [f"AC-{i}" for i in range(1, 10)]
    assert run_experiment("AC-6", {"n_max": 5}).experiment == "trees-wl1"


@pytest.mark.parametrize(
    "name,config",
    [
        ("trees-wl1", {"n_max": 6}),
        ("orbits", {"n_max": 4}),
        ("logic-wl", {"pairs": 6, "n_max": 5, "formulas": 10}),
        ("refine-invariants", {"n_max": 4, "ks": [1, 2], "automorphisms": 5}),
        ("surgery", {"count": 20, "max_n": 6, "max_m": 9}),
    ],
)
def test_report_is_deterministic(name, config):
    a = run_experiment(name, dict(config, seed=7))
    b = run_experiment(name, dict(config, seed=7))
    assert a.dumps() == b.dumps()
    assert a.verdicts
    obj = json.loads(a.dumps())
    assert obj["experiment"] == name and obj["seed"] == 7


def test_small_runs_pass():
    for name, config in [("trees-wl1", {"n_max": 7}), ("orbits", {"n_max": 5}), ("planar-wl3", {"n_max": 4})]:
        report = run_experiment(name, config)
        assert report.passed, report.summary()


def test_workers_do_not_change_results():
    cfg = {"pairs": 6, "n_max": 5, "formulas": 10, "seed": 1}
    assert run_experiment("logic-wl", cfg).dumps() == run_experiment("logic-wl", dict(cfg, workers=2)).dumps()


# -- command line -----------------------------------------------------------------


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj.to_json()))
    return str(p)


def test_cli_refine(tmp_path, capsys):
    g = _write(tmp_path, "g.json", path_graph(4))
    assert main(["refine", "-k", "1", "--graph", g]) == 0
    assert json.loads(capsys.readouterr().out)
    assert main(["refine", "-k", "1", "--graph", g, "--format", "dot"]) == 0
    assert capsys.readouterr().out.startswith("graph")


def test_cli_distinguish_exit_codes(tmp_path, c6, two_triangles):
    a = _write(tmp_path, "a.json", c6)
    b = _write(tmp_path, "b.json", two_triangles)
    assert main(["distinguish", "-k", "1", "--a", a, "--b", b]) == 1
    assert main(["distinguish", "-k", "2", "--a", a, "--b", b]) == 0


def test_cli_errors(tmp_path):
    assert main(["refine", "-k", "1", "--graph", str(tmp_path / "missing.json")]) == 2
    assert main(["experiment", "--name", "bogus"]) == 2
    assert main(["nonsense"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["genus", "--graph", str(bad)]) == 2


def test_cli_iso(tmp_path, c6, two_triangles):
    a = _write(tmp_path, "a.json", c6)
    b = _write(tmp_path, "b.json", c6.relabel([3, 1, 4, 0, 5, 2]))
    c = _write(tmp_path, "c.json", two_triangles)
    assert main(["iso", "--a", a, "--b", b]) == 0
    assert main(["iso", "--a", a, "--b", c]) == 1


def test_cli_genus_and_faces(tmp_path, capsys):
    g = _write(tmp_path, "k5.json", complete_graph(5))
    assert main(["genus", "--graph", g]) == 0
    assert json.loads(capsys.readouterr().out)["euler_genus"] == 1  # projective plane
    e = _write(tmp_path, "grid.json", torus_grid(3, 3))
    assert main(["faces", "--embedding", e, "--cut", "0,1,2", "--out-prefix", str(tmp_path / "cut")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["num_faces"] == 9 and out["euler_genus"] == 2
    assert (tmp_path / "cut_piece0.json").exists()


def test_cli_necklace(tmp_path, capsys):
    e = _write(tmp_path, "grid.json", torus_grid(3, 3))
    assert main(["cut", "--embedding", e]) == 0
    assert "cut" in json.loads(capsys.readouterr().out)


def test_cli_cfi_outputs(tmp_path, capsys):
    base = _write(tmp_path, "base.json", cycle_graph(3))
    prefix = str(tmp_path / "c3")
    assert main(["cfi", "--base", base, "--out-prefix", prefix, "--threshold", "2"]) == 0
    report = json.loads((tmp_path / "c3_report.json").read_text())
    assert report["size"] == report["expected_size"] == 18
    assert report["threshold"] == 2
    tw = ColouredGraph.from_json(json.loads((tmp_path / "c3_twisted.json").read_text()))
    assert tw.n == 18
    capsys.readouterr()
    assert main(["cfi", "--base", _write(tmp_path, "p.json", path_graph(3))]) == 2


def test_cli_enumerate(capsys):
    assert main(["enumerate", "--n", "4", "--connected"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 6


def test_cli_wl_dim(tmp_path, capsys):
    fam = tmp_path / "fam.json"
    fam.write_text(json.dumps([cycle_graph(6).to_json(), cycle_graph(3).disjoint_union(cycle_graph(3)).to_json()]))
    g = _write(tmp_path, "g.json", cycle_graph(6))
    assert main(["wl-dim", "--graph", g, "--family", str(fam), "--kmax", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 2
    assert main(["wl-dim", "--graph", g, "--family", str(fam), "--kmax", "1"]) == 1


def test_cli_experiment(capsys):
    assert main(["experiment", "--name", "trees-wl1", "--config", '{"n_max": 5}']) == 0
    assert json.loads(capsys.readouterr().out)["passed"] is True
