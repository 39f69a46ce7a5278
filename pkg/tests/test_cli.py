import json

import pytest

from gambitnet.cli import main
from gambitnet.csvio import census_csv
from gambitnet.simulate import SimulationConfig, run_simulation


@pytest.fixture
def census_file(tmp_path):
    data = run_simulation(SimulationConfig(population=20, groups_per_census=4, censuses=5, runs=1, seed=3)).data[0]
    path = tmp_path / "census.csv"
    path.write_bytes(census_csv(data))
    return path


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.csv"
    path.write_text("u,v,weight\nhub,a,1\nhub,b,2\nhub,c,1\n")
    return path


def run(capsysbinary, *argv):
    code = main([str(a) for a in argv])
    out, err = capsysbinary.readouterr()
    return code, out, err


def test_measure_newman(capsysbinary, star_file):
    code, out, _ = run(capsysbinary, "measure", "--input", star_file, "--measure", "newman")
    assert code == 0
    res = json.loads(out)
    assert res["value"] == -1.0 and res["defined"] is True
    assert res["manifest"]["parameters"] == {"measure": "newman"}


def test_measure_undefined_is_reported(capsysbinary, tmp_path):
    path = tmp_path / "tri.csv"
    path.write_text("u,v,weight\nA,B,1\nB,C,1\nA,C,1\n")
    code, out, _ = run(capsysbinary, "measure", "--input", path, "--measure", "spearman")
    assert code == 0
    assert json.loads(out)["value"] == "undefined (zero degree variance)"


@pytest.mark.parametrize("measure", ["knn", "richclub", "localdiff"])
def test_measure_other(capsysbinary, star_file, measure):
    code, out, _ = run(capsysbinary, "measure", "--input", star_file, "--measure", measure)
    assert code == 0
    assert json.loads(out)["measure"] == measure


def test_measure_unknown_node(capsysbinary, star_file):
    code, _, err = run(capsysbinary, "measure", "--input", star_file, "--measure", "localdiff", "--node", "zz")
    assert code == 2 and b"zz" in err


def test_build_and_filter(capsysbinary, tmp_path):
    census = tmp_path / "c.csv"
    census.write_text("census,group,individual\n1,g,A\n1,g,B\n1,h,C\n2,g,A\n2,g,B\n2,h,C\n")
    code, out, _ = run(capsysbinary, "build", "--census", census, "--weighting", "frequency")
    assert code == 0 and out == b"u,v,weight\nA,B,1\n"
    edges = tmp_path / "e.csv"
    edges.write_text("u,v,weight\nA,B,0.5\nB,C,0.2\n")
    code, out, _ = run(capsysbinary, "filter", "--input", edges, "--threshold", "0.3")
    assert code == 0 and out == b"u,v,weight\nA,B,1\n"


def test_build_binary(capsysbinary, tmp_path):
    census = tmp_path / "c.csv"
    census.write_text("census,group,individual\n1,g,A\n1,g,B\n2,g,A\n2,g,B\n")
    code, out, _ = run(capsysbinary, "build", "--census", census, "--binary")
    assert code == 0 and out == b"u,v,weight\nA,B,1\n"


def test_nulltest(capsysbinary, census_file, tmp_path):
    nulls = tmp_path / "nulls.csv"
    code, out, _ = run(
        capsysbinary, "nulltest", "--census", census_file, "--replicates", "20",
        "--burnin", "200", "--thin", "5", "--null-out", nulls,
    )
    assert code == 0
    res = json.loads(out)
    assert res["replicates"] == 20 and res["burn_in"] == 200 and res["thin"] == 5
    assert 0 < res["p_two_sided"] <= 1
    assert res["manifest"]["seed"] == 0
    assert len(nulls.read_text().splitlines()) == 21


def test_nulltest_undefined_exit_3(capsysbinary, tmp_path):
    census = tmp_path / "c.csv"
    census.write_text("census,group,individual\n1,g,A\n1,g,B\n1,g,C\n")
    code, _, err = run(capsysbinary, "nulltest", "--census", census, "--replicates", "5")
    assert code == 3 and b"undefined" in err


def test_simulate_outputs(capsysbinary, tmp_path):
    out = tmp_path / "trace.csv"
    summary = tmp_path / "summary.csv"
    code, _, _ = run(
        capsysbinary, "simulate", "--pop", "20", "--groups", "4", "--censuses", "3", "--runs", "2",
        "--out", out, "--summary-out", summary,
    )
    assert code == 0
    assert out.read_text().splitlines()[0] == "run,census,assortativity,defined,edges,associations_observed"
    assert len(summary.read_text().splitlines()) == 4
    manifest = json.loads((tmp_path / "trace.csv.manifest.json").read_text())
    assert manifest["parameters"]["population"] == 20 and manifest["seed"] == 0


def test_simulate_thresholds(capsysbinary):
    code, out, err = run(capsysbinary, "simulate", "--pop", "20", "--groups", "4", "--censuses", "2",
                         "--runs", "1", "--thresholds", "0.2,0.5")
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0].startswith("threshold,") and len(lines) == 1 + 2 * 2
    assert json.loads(err)["parameters"]["thresholds"] == [0.2, 0.5]


def test_meta_text_and_json(capsysbinary):
    code, out, _ = run(capsysbinary, "meta")
    assert code == 0 and b"Kruskal-Wallis H=26.83" in out
    code, out, _ = run(capsysbinary, "meta", "--json")
    assert code == 0 and json.loads(out)["n_networks"] == 88


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["measure", "--input", "x.csv"],
        ["simulate", "--pop", "1"],
        ["simulate", "--thresholds", "0.5,2"],
        ["simulate", "--threads", "0"],
        ["nulltest", "--census", "x.csv", "--replicates", "0"],
        ["filter", "--input", "x.csv", "--threshold", "0"],
    ],
)
def test_usage_errors_exit_1(capsysbinary, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse exits directly
        code = exc.code
    assert code == 1


def test_data_errors_exit_2(capsysbinary, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("u,v,weight\nA,B,1\nB,A,1\n")
    assert run(capsysbinary, "measure", "--input", bad, "--measure", "newman")[0] == 2
    assert run(capsysbinary, "build", "--census", tmp_path / "missing.csv")[0] == 2
    dup = tmp_path / "dup.csv"
    dup.write_text("census,group,individual\n1,a,A\n1,b,A\n")
    assert run(capsysbinary, "nulltest", "--census", dup)[0] == 2


@pytest.mark.parametrize("method", ["swap", "resample"])
def test_threads_do_not_change_output(capsysbinary, census_file, method):
    args = ["nulltest", "--census", census_file, "--replicates", "30", "--method", method, "--seed", "7"]
    outs = {run(capsysbinary, *args, "--threads", t)[1] for t in ("1", "2", "4")}
    assert len(outs) == 1
