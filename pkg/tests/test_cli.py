import json
import pathlib
import subprocess
import sys

import pytest

from dmanifold.cli import SceneError, canonical, load_scene, load_scene_text, run_scene, scene_from_data
from dmanifold.cli import main as cli_main
from dmanifold.cli import scene as scene_mod
from dmanifold.cli.scene import dumps

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = sorted((ROOT / "fixtures").glob("*.json"))
GOLDEN = ROOT / "fixtures" / "golden"

SMALL = {
    "declarations": {
        "X": {"type": "model", "n": 1, "k": 1, "s": ["x^3 - x"]},
        "o": {"type": "orientation", "model": "X", "sign": 1},
        "w": {"type": "witnesses", "model": "X", "points": [[-1], [0], [1]], "complete": True},
        "p": {"type": "polynomial", "nvars": 1, "p": "x^2", "window": ["-1", "1"]},
    },
    "tasks": [
        {"name": "count", "op": "count", "args": ["o", "w"], "expect": {"value": 1}},
        {"name": "deg", "op": "count", "args": ["p"], "expect": {"value": 0}},
    ],
}


def write(tmp_path, data, name="scene.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return str(p)


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "dmanifold", *args], capture_output=True, text=True, cwd=ROOT)


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_fixture_scenes_pass(path):
    rep = run_scene(load_scene(str(path)))
    assert rep["status"] == "PASS", [t for t in rep["tasks"] if t["status"] != "PASS"]


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_golden_reports(path):
    got = dumps(run_scene(load_scene(str(path)), certificates=True))
    assert got == (GOLDEN / path.name).read_text(encoding="utf-8")


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.name)
def test_canonical_form_is_a_fixed_point(path):
    once = canonical(load_scene(str(path)))
    twice = canonical(scene_from_data(json.loads(dumps(once))))
    assert once == twice
    # the canonical scene means the same thing
    assert run_scene(scene_from_data(once)) == run_scene(load_scene(str(path)))


def test_parallel_runs_match_serial():
    path = str(ROOT / "fixtures" / "corners_quadrant.json")
    assert run_scene(load_scene(path), jobs=3) == run_scene(load_scene(path))


def test_reports_are_deterministic_and_untimed():
    a = dumps(run_scene(scene_from_data(SMALL)))
    b = dumps(run_scene(scene_from_data(SMALL)))
    assert a == b and "seconds" not in a
    timed = run_scene(scene_from_data(SMALL), timing=True)
    assert all("seconds" in t for t in timed["tasks"])


def test_certificates_are_stripped_unless_requested():
    plain = run_scene(scene_from_data(SMALL))
    full = run_scene(scene_from_data(SMALL), certificates=True)
    assert "certificate" not in plain["tasks"][0]["result"]
    signs = full["tasks"][0]["result"]["certificate"]["signs"]
    assert [s["sign"] for s in signs] == [1, -1, 1]


def test_exit_codes(tmp_path):
    good = write(tmp_path, SMALL)
    assert cli_main(["run", "--scene", good]) == 0
    failing = json.loads(json.dumps(SMALL))
    failing["tasks"][0]["expect"] = {"value": 3}
    assert cli_main(["run", "--scene", write(tmp_path, failing, "f.json")]) == 1
    assert cli_main(["run", "--scene", write(tmp_path, "{", "bad.json")]) == 2


def test_failure_report_names_the_path(tmp_path, capsys):
    failing = json.loads(json.dumps(SMALL))
    failing["tasks"] = [{"name": "c", "op": "count", "args": ["o", "w"], "expect": {"value": 3}}]
    assert cli_main(["run", "--scene", write(tmp_path, failing)]) == 1
    rep = json.loads(capsys.readouterr().out)
    (task,) = rep["tasks"]
    assert task["status"] == "FAIL" and task["failures"][0]["path"] == "value"
    assert rep["summary"] == {"failed": 1, "passed": 0, "total": 1}


def test_json_errors_carry_line_and_column():
    with pytest.raises(SceneError, match=r"s\.json:2:\d+"):
        load_scene_text('{"declarations": {},\n  "tasks": [,]}', "s.json")


def test_unresolved_reference_names_the_declaration():
    data = {"declarations": {"m": {"type": "morphism", "source": "nowhere", "target": "nowhere",
                                   "f": [], "fhat": []}}, "tasks": []}
    with pytest.raises(SceneError, match=r"declarations\.m: unresolved reference 'nowhere'"):
        scene_from_data(data).resolve_all()


def test_wrongly_typed_reference():
    data = json.loads(json.dumps(SMALL))
    data["declarations"]["o"]["model"] = "p"
    with pytest.raises(SceneError, match="is a polynomial, expected model"):
        scene_from_data(data).resolve_all()


def test_cycles_are_detected(monkeypatch):
    def alias(sc, name, d):
        return sc.get(d["of"])

    monkeypatch.setitem(scene_mod._BUILDERS, "alias", alias)
    data = {"declarations": {"a": {"type": "alias", "of": "b"}, "b": {"type": "alias", "of": "a"}}, "tasks": []}
    with pytest.raises(SceneError, match="cyclic definition: a -> b -> a"):
        scene_from_data(data).resolve_all()


@pytest.mark.parametrize("poly, msg", [
    ("x + q", "unknown symbols"),
    ("0.5*x", "floating point"),
    ("x^", "cannot parse"),
    ([[1, 0, [1]]], "nonzero denominator"),
])
def test_bad_polynomials_are_input_errors(poly, msg):
    data = {"declarations": {"p": {"type": "polynomial", "nvars": 1, "p": poly}}, "tasks": []}
    with pytest.raises(SceneError, match=msg):
        scene_from_data(data).resolve_all()


def test_non_zero_witness_is_rejected():
    data = json.loads(json.dumps(SMALL))
    data["declarations"]["w"]["points"] = [[2]]
    with pytest.raises(SceneError, match=r"declarations\.w\.points\[0\]"):
        scene_from_data(data).resolve_all()


def test_duplicate_task_names():
    data = json.loads(json.dumps(SMALL))
    data["tasks"].append(dict(data["tasks"][0]))
    with pytest.raises(SceneError, match="duplicate task name"):
        scene_from_data(data)


def test_unknown_task_filter(tmp_path):
    assert cli_main(["run", "--scene", write(tmp_path, SMALL), "--task", "nope"]) == 2


def test_single_task_filter(tmp_path, capsys):
    assert cli_main(["run", "--scene", write(tmp_path, SMALL), "--task", "deg"]) == 0
    assert [t["name"] for t in json.loads(capsys.readouterr().out)["tasks"]] == ["deg"]


def test_one_off_subcommands(tmp_path, capsys):
    path = write(tmp_path, SMALL)
    assert cli_main(["count", "--scene", path, "o", "w"]) == 0
    assert json.loads(capsys.readouterr().out)["tasks"][0]["result"]["value"] == 1
    assert cli_main(["count", "--scene", path]) == 2  # missing the entity
    assert cli_main(["count", "--scene", path, "p", "--args", "[1]"]) == 2


def test_one_off_reports_negative_verdicts(tmp_path, capsys):
    atlas = str(ROOT / "fixtures" / "atlas_two_charts.json")
    assert cli_main(["atlas-check", "--scene", atlas, "bad"]) == 1
    assert cli_main(["atlas-check", "--scene", atlas, "good"]) == 0


def test_output_file_and_canon(tmp_path):
    path = write(tmp_path, SMALL)
    out = tmp_path / "report.json"
    assert cli_main(["run", "--scene", path, "--output", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == "PASS"
    canon = tmp_path / "canon.json"
    assert cli_main(["canon", "--scene", path, "--output", str(canon)]) == 0
    data = json.loads(canon.read_text())
    assert data["declarations"]["p"]["p"] == [[1, 1, [2]]]


def test_console_entry_point_runs_as_a_module():
    r = run_cli("run", "--scene", str(ROOT / "fixtures" / "fibre_point.json"))
    assert r.returncode == 0 and json.loads(r.stdout)["status"] == "PASS"
    r = run_cli("run", "--scene", str(ROOT / "fixtures" / "missing.json"))
    assert r.returncode == 2 and "dmanifold: error:" in r.stderr
