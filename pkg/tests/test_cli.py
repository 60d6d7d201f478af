from __future__ import annotations

import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from vosper.cli import main

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
K4 = str(ROOT / "docs" / "examples" / "k4.txt")
C5 = str(ROOT / "docs" / "examples" / "c5.txt")


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def schema(name: str) -> dict:
    return json.loads((SCHEMAS / f"{name}.v1.json").read_text())


def test_analyze_z7(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "Z7", "--subset", "1,2,3")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("analyze"))
    assert (doc["kappa"], doc["kappa2"], doc["vosperian"], doc["superconnected"]) == (3, 3, False, True)
    assert doc["condition"] == "cond_iii"
    assert doc["cayley"]["vosperian_verdict"]["witness"] == {"r": 1, "a": 4, "complement": [4, 5, 6]}


def test_analyze_directed_five_cycle(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "Z5", "--subset", "1", "--oracle")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("analyze"))
    assert code == 0
    assert (doc["vosperian"], doc["superconnected"]) == (False, True)
    verdict = doc["cayley"]["superconnected_verdict"]
    assert verdict["via"] == "coprogression" and verdict["witness"]["r"] == 1
    assert doc["oracle"]["vosperian"] is False


def test_analyze_edges(capsys):
    code, out, _ = run(capsys, "analyze", "--edges", K4)
    doc = json.loads(out)
    jsonschema.validate(doc, schema("analyze"))
    assert code == 0 and doc["vosperian"] is True and doc["cayley"] is None


def test_analyze_text_format(capsys):
    code, out, _ = run(capsys, "analyze", "--edges", K4, "--format", "text")
    assert code == 0
    assert "vosperian: true" in out.splitlines()


@pytest.mark.parametrize(
    "argv,expected",
    [
        (["analyze", "--group", "Z7"], 2),
        (["analyze", "--group", "Z7", "--subset", "1", "--edges", K4], 2),
        (["analyze", "--group", "Q9", "--subset", "1"], 2),
        (["analyze", "--group", "Z6", "--subset", "1,x"], 2),
        (["analyze", "--edges", "/nonexistent/file.txt"], 2),
        (["analyze", "--group", "Z6", "--subset", "2"], 3),
        (["analyze", "--group", "Z6", "--subset", "0,1"], 3),
        (["bogus"], 2),
        ([], 2),
        (["atoms", "--group", "Z5", "--subset", "1", "--k", "0"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, expected):
    code, out, err = run(capsys, *argv)
    assert code == expected
    assert out == "" and err


def test_non_regular_edges_exit_3(capsys, tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("3 2\n0 1\n1 2\n")
    assert run(capsys, "analyze", "--edges", str(p))[0] == 3


def test_enumerate_oracle_order6(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-order", "6", "--oracle")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows and all(r["agreement"] == "true" for r in rows)


def test_enumerate_edges_of_range(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-order", "1")
    assert code == 0 and out.strip().count("\n") == 0  # header only
    assert run(capsys, "enumerate", "--max-order", "13")[0] == 2


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-order", "5", "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema("audit"))


def test_enumerate_bytes_ignore_thread_count(capsys, monkeypatch):
    _, serial, _ = run(capsys, "enumerate", "--max-order", "6")
    monkeypatch.setenv("VOSPER_THREADS", "3")
    _, parallel, _ = run(capsys, "enumerate", "--max-order", "6")
    assert serial == parallel


def test_verify_duality(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "duality", "--seed", "42", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verify"))
    assert code == 0 and doc["passed"] and doc["seed"] == 42


def test_verify_twin_class_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma5")
    assert code == 0
    assert "PASS" in out


def test_verify_classifier_agreement_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "thm6", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verify"))
    assert code == 0, doc["findings"]


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_verify_is_byte_identical(capsys):
    first = run(capsys, "verify", "--suite", "lemma4", "--seed", "9")[1]
    assert run(capsys, "verify", "--suite", "lemma4", "--seed", "9")[1] == first


def test_atoms_z5(capsys):
    code, out, _ = run(capsys, "atoms", "--group", "Z5", "--subset", "1", "--k", "2")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("atoms"))
    assert code == 0 and doc["kappa_k"] == 1
    assert [a["set"] for a in doc["atoms"]] == [[0, 1], [0, 4], [1, 2], [2, 3], [3, 4]]


def test_atoms_not_separable(capsys):
    code, _, err = run(capsys, "atoms", "--group", "Z5", "--subset", "1,2,3,4", "--k", "2")
    assert code == 3 and "2-separable" in err


def test_atoms_mirror_under_reversal(capsys, tmp_path):
    rev = tmp_path / "c5rev.txt"
    rev.write_text("5 5\n" + "".join(f"{(i + 1) % 5} {i}\n" for i in range(5)))
    fwd = json.loads(run(capsys, "atoms", "--edges", C5)[1])
    back = json.loads(run(capsys, "atoms", "--edges", str(rev))[1])
    strip = lambda atoms: [(a["set"], a["boundary"]) for a in atoms]
    assert strip(fwd["atoms"]) == strip(back["negative_atoms"])
    assert strip(fwd["negative_atoms"]) == strip(back["atoms"])


def test_console_script_module():
    proc = subprocess.run(
        [sys.executable, "-m", "vosper.cli", "analyze", "--group", "Z5", "--subset", "1,2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["vosperian"] is True
