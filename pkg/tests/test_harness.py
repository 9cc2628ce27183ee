import csv
import io
import json
from fractions import Fraction

import pytest

from nrslab.errors import ConfigInvalid, UnknownSuite
from nrslab.harness import (
    Case,
    Report,
    RunConfig,
    case_rng,
    check_bounds,
    digest,
    emit_report,
    load_config_file,
    resolve_seed,
    run_suite,
    to_jsonable,
)
from nrslab.laurent import SparseLaurent


def test_empty_report_is_valid_json(tmp_path):
    path = tmp_path / "r.json"
    emit_report(Report("attractors", 1), "json", str(path))
    doc = json.loads(path.read_text())
    assert doc["cases"] == [] and doc["summary"]["total"] == 0 and doc["seed"] == 1


def test_report_round_trip():
    r = Report("x", 3, [Case("a", digest([1]), True, "0", 0.5, {"v": Fraction(1, 3)})])
    doc = json.loads(r.to_json())
    assert json.loads(json.dumps(doc)) == doc
    assert doc["cases"][0]["detail"]["v"] == "1/3"
    assert "wall_time" not in r.to_dict(timings=False)["cases"][0]


def test_csv_report():
    r = Report("x", 3, [Case("a", "d", False, "bad", 0.1)])
    rows = list(csv.reader(io.StringIO(r.to_csv())))
    assert rows[0] == ["suite", "id", "inputs_digest", "passed", "residual", "wall_time"]
    assert rows[1][:5] == ["x", "a", "d", "0", "bad"]


def test_serialisation_rules():
    x = SparseLaurent.var("x")
    assert to_jsonable(Fraction(-2, 4)) == "-1/2"
    assert to_jsonable(Fraction(6, 3)) == "2"
    assert to_jsonable(complex(1, -2)) == [1.0, -2.0]
    assert to_jsonable(x + 1) == str(x + 1)
    assert to_jsonable(SparseLaurent.const(Fraction(3, 4))) == "3/4"
    assert to_jsonable({"k": (1, Fraction(1, 2))}) == {"k": [1, "1/2"]}


def test_case_streams_are_independent_of_order():
    a = case_rng(42, 3).integers(0, 10**9, size=4).tolist()
    case_rng(42, 0).integers(0, 10, size=100)
    assert case_rng(42, 3).integers(0, 10**9, size=4).tolist() == a
    assert case_rng(42, 4).integers(0, 10**9, size=4).tolist() != a


def test_config_validation():
    with pytest.raises(ConfigInvalid):
        RunConfig(mode="fast").validate()
    with pytest.raises(ConfigInvalid):
        RunConfig(threads=0).validate()
    with pytest.raises(ConfigInvalid):
        RunConfig(d=7).validate()
    RunConfig(d=7, unsafe_large=True).validate()
    with pytest.raises(ConfigInvalid):
        check_bounds(3, 5)
    check_bounds(9, 9, unsafe=True)


def test_config_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# comment\nseed = 17\nd_range = 2,5\nunsafe-large = yes\n")
    vals = load_config_file(p)
    assert vals == {"seed": 17, "d_range": (2, 5), "unsafe_large": True}
    p.write_text("colour = blue\n")
    with pytest.raises(ConfigInvalid):
        load_config_file(p)
    p.write_text("seed 3\n")
    with pytest.raises(ConfigInvalid):
        load_config_file(p)


def test_seed_precedence(monkeypatch):
    monkeypatch.setenv("NRSLAB_SEED", "5")
    assert resolve_seed(None, {}) == 5
    assert resolve_seed(None, {"seed": 6}) == 6
    assert resolve_seed(7, {"seed": 6}) == 7
    monkeypatch.delenv("NRSLAB_SEED")
    assert resolve_seed(None, {}) == 0
    monkeypatch.setenv("NRSLAB_SEED", "abc")
    with pytest.raises(ConfigInvalid):
        resolve_seed(None, {})


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope", RunConfig())


def test_single_case_selection():
    r = run_suite("jacobian", RunConfig(d=3, m=2))
    assert [c.id for c in r.cases] == ["jacobian/d3/m2/symbolic"]
    assert r.passed


def test_threads_do_not_change_results():
    one = run_suite("jacobian", RunConfig(seed=9)).to_dict(timings=False)
    two = run_suite("jacobian", RunConfig(seed=9, threads=2)).to_dict(timings=False)
    assert one == two


def test_seed_changes_digests_not_outcomes():
    a = run_suite("nrs2", RunConfig(seed=1, d=3))
    b = run_suite("nrs2", RunConfig(seed=2, d=3))
    assert a.passed and b.passed
    assert [c.inputs_digest for c in a.cases] != [c.inputs_digest for c in b.cases]


def test_crashing_case_is_a_failure(monkeypatch):
    from nrslab import harness

    def boom(cfg):
        return [("boom", _raise, (), {})]

    monkeypatch.setitem(harness.SUITES, "boom", boom)
    r = run_suite("boom", RunConfig())
    assert not r.passed and r.cases[0].residual.startswith("RuntimeError")


def _raise():
    raise RuntimeError("no")
