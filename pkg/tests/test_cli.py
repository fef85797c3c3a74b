from __future__ import annotations

import json
import subprocess
import sys

import pytest

from matrigid.cli import matroid_from_json, run


def _json_run(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def _write(tmp_path, doc):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(doc))
    return str(path)


K4_GRAPH = {"vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}


def test_laman_on_k4_graph(tmp_path, capsys):
    code, doc = _json_run(capsys, ["laman", "--input", _write(tmp_path, K4_GRAPH), "--m", "2"])
    assert code == 0
    assert doc["independent"] is False
    assert doc["witness"] == 63
    assert doc["seed"] == 0


def test_tutte_columns_input(tmp_path, capsys):
    doc = {"field": {"p": 2}, "columns": [[1, 0], [0, 1], [1, 1]]}
    code, out = _json_run(capsys, ["tutte", "--input", _write(tmp_path, doc)])
    assert code == 0
    assert out["tutte"] == ["(0,1): 1", "(1,0): 1", "(2,0): 1"]


def test_photos_brute_equal(capsys):
    code, out = _json_run(capsys, ["examples", "u23", "--command", "photos", "--k", "1", "--d", "2", "--brute"])
    assert code == 0
    assert out["formula"] == out["brute"]["total"] == "60"
    assert out["equal"] is True


def test_rigidity_example(capsys):
    code, out = _json_run(capsys, ["examples", "fano", "--command", "rigidity", "--d", "3", "--seed", "4"])
    assert code == 0
    assert out["seed"] == 4
    assert out["facet_sizes"] == [6]
    assert len(out["facets"]) == 7


def test_counterexample_slope(capsys):
    code, out = _json_run(capsys, ["examples", "counterexample", "--command", "slope", "--k", "1", "--d", "3"])
    assert code == 0
    assert out["m"] == "3/2" and out["full"] is False


def test_edmonds_and_nesting(capsys):
    code, out = _json_run(capsys, ["examples", "k4", "--command", "edmonds", "--d", "2"])
    assert code == 0 and out["agree"] and not out["laman"]
    code, out = _json_run(capsys, ["examples", "k4", "--command", "nesting", "--d", "2"])
    assert code == 0 and out["ok"]


def test_output_is_deterministic(capsys):
    argv = ["examples", "k4", "--command", "rigidity", "--d", "2", "--kind", "H", "--seed", "9"]
    first = _json_run(capsys, argv)
    second = _json_run(capsys, argv)
    assert first == second


@pytest.mark.parametrize("argv", [
    ["laman", "--input", "/nonexistent.json", "--m", "2"],
    ["examples", "k4", "--command", "laman"],
    ["examples", "k4", "--command", "laman", "--m", "1/2"],
    ["examples", "nosuch"],
    ["tutte"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2


def test_bad_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["tutte", "--input", str(path)]) == 2
    assert "not valid JSON" in capsys.readouterr().err


def test_matroid_from_json_graph_defaults_to_gf2():
    M = matroid_from_json(K4_GRAPH)
    assert M.field.q == 2 and M.rank == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "matrigid", "examples", "u24", "--command", "tutte"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("# tutte seed=0")
