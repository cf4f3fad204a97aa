import json
import os
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from khkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def schema(name):
    text = resources.files("khkit").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def test_jones_trefoil(capsys):
    code, out, _ = run(capsys, "jones", "--braid", "2: 1 1 1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, schema("jones"))
    assert payload["agreement"] is True
    assert payload["bracket"] == [[2, 1], [6, 1], [8, -1]] == payload["skein"]


def test_jones_unknot_text(capsys):
    code, out, _ = run(capsys, "jones", "--braid", "1:")
    assert code == 0
    assert "1" in out.split()


def test_missing_or_bad_pd_file(capsys, tmp_path):
    assert run(capsys, "jones", "--pd", str(tmp_path / "nope.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("X(1,2,3)")
    assert run(capsys, "jones", "--pd", str(bad))[0] == 2


def test_input_source_must_be_unique(capsys):
    assert run(capsys, "jones", "--braid", "1:", "--unlink", "2")[0] == 2
    assert run(capsys, "jones")[0] == 2
    assert run(capsys, "jones", "--braid", "2: 7")[0] == 2


def test_pd_file_input(capsys, tmp_path):
    f = tmp_path / "trefoil.txt"
    f.write_text("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\n")
    code, out, _ = run(capsys, "khovanov", "--pd", str(f), "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("khovanov"))


def test_khovanov_unknot_and_unlink(capsys):
    code, out, _ = run(capsys, "khovanov", "--braid", "1:", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema("khovanov"))
    assert code == 0 and payload["euler_jones_check"] is True
    assert {(g["i"], g["j"]): g["free"] for g in payload["bigraded"]} == {(0, -1): 1, (0, 1): 1}
    code, out, _ = run(capsys, "khovanov", "--unlink", "3", "--format", "json")
    ranks = {g["j"]: g["free"] for g in json.loads(out)["bigraded"]}
    assert code == 0 and ranks == {3: 1, 1: 3, -1: 3, -3: 1}


def test_khovanov_trefoil_torsion(capsys):
    code, out, _ = run(capsys, "khovanov", "--braid", "2: 1 1 1", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["euler_jones_check"]
    assert {"i": 3, "j": 7, "free": 0, "torsion": [2]} in payload["bigraded"]


def test_csv_output(capsys):
    code, out, _ = run(capsys, "khovanov", "--braid", "2: 1 1", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].count(",") >= 2


def test_crossing_cap(capsys):
    assert run(capsys, "khovanov", "--braid", "2: 1 1 1 1", "--max-crossings", "3")[0] == 3


def test_markov_pass_and_trivial(capsys):
    code, out, _ = run(capsys, "markov-test", "--braid", "2: 1 1 1", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema("markov"))
    assert code == 0 and payload["pass"] and payload["steps"] == 50
    code, out, _ = run(capsys, "markov-test", "--braid", "2: 1 1 1", "--steps", "0", "--format", "json")
    assert code == 0 and json.loads(out)["walked"] == "2: 1 1 1"


def test_markov_injected_bug(capsys):
    code, out, _ = run(capsys, "markov-test", "--braid", "2: 1 1 1", "--steps", "5", "--inject-bug", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema("markov"))
    assert code == 1 and not payload["pass"] and payload["diff"]


@pytest.mark.parametrize("argv,check", [
    (["slice", "matchings", "--m", "3"], lambda p: p["count"] == 5 and len(p["matchings"]) == 5),
    (["slice", "sl2", "--n", "2"], lambda p: p["identity"]),
    (["slice", "charpoly", "--m", "4", "--trials", "50"], lambda p: p["failures"] == 0),
    (["slice", "transport"], lambda p: p["return_error"] < 1e-6),
])
def test_slice_subcommands(capsys, argv, check):
    code, out, _ = run(capsys, *argv, "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, schema("slice"))
    assert code == 0 and payload["pass"] and check(payload)


def test_slice_cap(capsys):
    assert run(capsys, "slice", "matchings", "--m", "20")[0] == 3


@pytest.mark.parametrize("argv", [
    ["jones", "--braid", "3: 1 -2 1 -2"],
    ["khovanov", "--braid", "3: 1 -2 1 -2", "--format", "json"],
    ["markov-test", "--braid", "2: 1 1 1", "--steps", "30", "--seed", "7", "--format", "csv"],
    ["slice", "transport", "--seed", "3", "--format", "json"],
])
def test_repeated_runs_are_byte_identical(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second


def test_console_script_with_threads_matches_serial():
    argv = [sys.executable, "-m", "khkit", "khovanov", "--braid", "3: 1 1 -2 1 -2 -2", "--format", "json"]
    serial = subprocess.run(argv, capture_output=True, text=True, env={**os.environ, "KHKIT_THREADS": "1"})
    pooled = subprocess.run(argv, capture_output=True, text=True, env={**os.environ, "KHKIT_THREADS": "3"})
    assert serial.returncode == pooled.returncode == 0
    assert serial.stdout == pooled.stdout
