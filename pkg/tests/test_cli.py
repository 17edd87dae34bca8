import json

import pytest

from rexlab.cli import main
from rexlab.graph import read_edgelist
from rexlab.verify import verify_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, (json.loads(out.splitlines()[-1]) if out else None)


@pytest.mark.parametrize("argv", [
    ["construct", "brown", "--p", "3"],
    ["construct", "h", "--p", "5", "--t", "2"],
    ["construct", "h-star", "--p", "13", "--t", "2"],
    ["construct", "norm", "--p", "3", "--s", "3"],
    ["construct", "norm", "--p", "5", "--s", "2", "--loops"],
    ["construct", "er-parsons", "--q", "7", "--which", "r2"],
    ["construct", "er-parsons", "--q", "5", "--which", "er"],
    ["construct", "bipartite-c4", "--M", "30", "--p", "3"],
    ["construct", "bipartite-k2t", "--M", "168", "--p", "13", "--t", "2", "--k", "12"],
    ["construct", "cayley-sum", "--orders", "4", "4", "--set", "1,0;0,1", "--loops"],
])
def test_construct_round_trip(argv, tmp_path, capsys):
    code, payload = run(capsys, *argv, "--outdir", str(tmp_path))
    assert code == 0 and payload["contract"]["ok"]
    report = json.loads((tmp_path / (payload["graph_file"].rsplit("/", 1)[-1][:-6] + ".json")).read_text())
    assert report["schema"] == 1
    G = read_edgelist(payload["graph_file"])
    again = verify_graph(G, free=[tuple(map(int, k.split(","))) for k in report["freeness"]]).to_dict()
    for key in ("n", "edge_count", "loop_count", "regular_degree", "degree_histogram", "max_codegree", "freeness"):
        assert again[key] == report[key]


def test_construct_explicit_paths(tmp_path, capsys):
    g, r = tmp_path / "g.txt", tmp_path / "r.json"
    code, _ = run(capsys, "construct", "brown", "--p", "3", "--out-graph", str(g), "--out-report", str(r))
    assert code == 0 and g.exists() and json.loads(r.read_text())["regular_degree"] == 6


def test_verify_file(tmp_path, capsys):
    path = tmp_path / "c5.edges"
    path.write_text("n 5 loops 0\n0 1\n1 2\n2 3\n3 4\n0 4\n")
    code, payload = run(capsys, "verify", str(path), "--free", "2", "2", "--spectra")
    assert code == 0
    assert payload["regular_degree"] == 2 and payload["freeness"] == {"2,2": True}
    assert payload["spectral"]["adjacency_max"] == pytest.approx(2)


def test_pipeline_report(tmp_path, capsys):
    code, payload = run(capsys, "pipeline", "c4", "--n", "60", "--outdir", str(tmp_path))
    assert code == 0
    assert payload["regular_degree"] == 3 and payload["freeness"] == {"2,2": True}
    assert payload["bound_comparison"]["achieved_degree"] == 3
    assert payload["pipeline"]["forbidden"] == [2, 2]


@pytest.mark.parametrize("argv", [
    ["pipeline", "c4", "--n", "5"],
    ["pipeline", "k33", "--n", "30"],
    ["pipeline", "kst", "--n", "179", "--s", "3", "--t", "7"],
])
def test_infeasible_exit_code(argv, tmp_path, capsys):
    code, payload = run(capsys, *argv, "--outdir", str(tmp_path))
    assert code == 4
    assert payload["infeasible"] is True and payload["constraints"]


@pytest.mark.parametrize("argv", [
    [],
    ["construct", "brown"],
    ["construct", "nope"],
    ["construct", "h", "--p", "7", "--t", "4"],
    ["pipeline", "kst", "--n", "81"],
    ["construct", "cayley-sum", "--orders", "4", "4", "--set", "1"],
])
def test_usage_errors(argv, tmp_path, capsys):
    assert main(argv + (["--outdir", str(tmp_path)] if argv and argv[0] != "verify" and len(argv) > 1 else [])) == 2


def test_malformed_file_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.edges"
    bad.write_text("n 3 loops 0\n0 5\n")
    assert main(["verify", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.edges")]) == 2


def test_budget_exhaustion_is_contract_failure(tmp_path, capsys):
    assert main(["pipeline", "kst", "--n", "81", "--s", "3", "--t", "7", "--budget", "1",
                 "--outdir", str(tmp_path)]) == 3
