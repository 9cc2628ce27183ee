import csv
import json
import subprocess
import sys

import pytest

from nrslab.cli import main


@pytest.fixture
def poly(tmp_path):
    def make(roots, a0="1"):
        p = tmp_path / f"poly{len(roots)}.json"
        p.write_text(json.dumps({"a0": a0, "roots": roots}))
        return str(p)

    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_verify_single_case(capsys):
    code, out = run(capsys, "verify", "--suite", "jacobian", "--d", "3", "--m", "2")
    doc = json.loads(out)
    assert code == 0 and doc["summary"] == {"total": 1, "passed": 1, "failed": 0}


def test_verify_unknown_suite(capsys):
    assert main(["verify", "--suite", "bogus"]) == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["attractors"])
    assert err.value.code == 2


def test_global_flags_either_side(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["--seed", "4", "verify", "--suite", "newton-series", "--out", str(out1)]) == 0
    assert main(["verify", "--suite", "newton-series", "--seed", "4", "--out", str(out2)]) == 0
    assert json.loads(out1.read_text())["seed"] == json.loads(out2.read_text())["seed"] == 4


def test_verify_csv(capsys):
    code, out = run(capsys, "verify", "--suite", "jacobian", "--d", "4", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("suite,id")
    assert len(out.splitlines()) == 3


def test_attractors(poly, capsys):
    code, out = run(capsys, "attractors", "--poly", poly(["1", "2", "3"], "-6"), "--m", "2")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert sorted(p["coords"][0] for p in doc["points"]) == ["3", "4", "5"]


def test_attractors_symbolic(poly, capsys):
    code, out = run(capsys, "attractors", "--poly", poly(["1", "2", "3"]), "--m", "1", "--symbolic")
    assert code == 0 and json.loads(out)["points"][0]["coords"] == ["z1"]


def test_attractors_bad_m(poly, capsys):
    assert main(["attractors", "--poly", poly(["1", "2"]), "--m", "2"]) == 2


def test_jacobian_numeric(poly, capsys):
    code, out = run(capsys, "jacobian", "--poly", poly(["1", "2", "3"], "-6"), "--m", "2", "--numeric")
    doc = json.loads(out)
    assert code == 0 and doc["factored_det"]["1,2"] == "1/18"
    assert all(r["relative_error"] < 1e-6 for r in doc["numeric"])


def test_jacobian_symbolic(poly, capsys):
    code, out = run(capsys, "jacobian", "--poly", poly(["1", "2", "3"]), "--m", "2", "--symbolic")
    assert code == 0 and json.loads(out)["factorization_holds"]


def test_gpoly_and_paths(poly, tmp_path, capsys):
    code, out = run(capsys, "gpoly", "--poly", poly(["1", "2", "3"]), "--emit-paths", str(tmp_path / "paths"))
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == 3 and doc["paths_written"] > 0
    files = sorted((tmp_path / "paths").iterdir())
    assert len(files) == 4
    assert all(isinstance(json.loads(f.read_text()), list) for f in files)


def test_nrs2_csv_and_grid(poly, tmp_path, capsys):
    p = poly(["1", "2", "3"], "-6")
    out_csv = tmp_path / "n.csv"
    code, out = run(capsys, "nrs2", "--poly", p, "--starts", "50", "--seed", "3", "--csv", str(out_csv))
    doc = json.loads(out)
    assert code == 0 and doc["starts"] == 50 and doc["seed"] == 3
    rows = list(csv.reader(open(out_csv)))
    assert rows[0][:4] == ["start_re0", "start_im0", "start_re1", "start_im1"] and len(rows) == 51
    code, out = run(capsys, "nrs2", "--poly", p, "--grid", "4x3", "--box=-2,2")
    assert code == 0 and json.loads(out)["starts"] == 12
    assert main(["nrs2", "--poly", p, "--box", "2,1"]) == 2


def test_nrs2_seed_reproducible(poly, capsys):
    p = poly(["1", "2", "3"], "-6")
    _, a = run(capsys, "nrs2", "--poly", p, "--starts", "30", "--seed", "8")
    _, b = run(capsys, "nrs2", "--poly", p, "--starts", "30", "--seed", "8")
    assert a == b


def test_graphs(capsys):
    code, out = run(capsys, "graphs", "--d", "3", "--check-bijection")
    doc = json.loads(out)
    assert code == 0 and doc["bijection"]["cases"] == 27 and "identity" not in doc
    assert main(["graphs", "--d", "7"]) == 2


def test_identities(capsys):
    code, out = run(capsys, "identities", "--suite", "newton-series")
    assert code == 0 and json.loads(out)["summary"]["failed"] == 0


def test_bounds_and_override(poly, capsys):
    p = poly([str(i) for i in range(1, 8)])
    assert main(["attractors", "--poly", p, "--m", "1"]) == 2
    assert main(["attractors", "--poly", p, "--m", "1", "--unsafe-large"]) == 0


def test_unreadable_poly(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["attractors", "--poly", str(bad), "--m", "1"]) == 2


def test_config_file_overrides(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("seed = 12\n")
    code, out = run(capsys, "verify", "--suite", "newton-series", "--config", str(cfg))
    assert code == 0 and json.loads(out)["seed"] == 12


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "nrslab.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and "nrslab" in out.stdout
