import json
import subprocess
import sys

from quadstokes import algebra, harness
from quadstokes.cli import load_quad, main
from quadstokes.quad import TRIPOD, Quadrangulation, validate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_triangles_on_hexagon(capsys):
    code, out, _ = run(capsys, "triangles", "--quad", "hexagon")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["F = 1 + x + y", "H = 1 + x*y", "h = 1 + x"]
    code, out, _ = run(capsys, "triangles", "--quad", "6:0-3", "--json")
    assert json.loads(out) == {"F": "1 + x + y", "H": "1 + x*y", "h": "1 + x", "f_vector": [1, 2]}


def test_compat_count(capsys):
    assert run(capsys, "compat", "--quad", "tripod", "--count")[1] == "12\n"
    code, out, _ = run(capsys, "compat", "--quad", "catalan:4", "--list")
    assert code == 0 and len(out.splitlines()) == 14


def test_enumerate_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", "--squares", "4", "--json")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 55
    for d in data:
        q = Quadrangulation.from_json(d)
        assert validate(q.polygon, q.edges) == q
    _, out, _ = run(capsys, "enumerate", "--squares", "5", "--connected", "--up-to", "rotation")
    assert len(out.splitlines()) == 11
    _, out, _ = run(capsys, "enumerate", "--squares", "5", "--connected", "--up-to", "twist")
    assert len(out.splitlines()) == 4


def test_json_file_input(capsys, tmp_path):
    good = tmp_path / "tripod.json"
    good.write_text(json.dumps(TRIPOD.to_json()))
    assert load_quad(str(good)) == TRIPOD
    assert run(capsys, "serpents", "--quad", str(good))[0] == 0


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "compat", "--quad", str(bad), "--count")
    assert code == 1 and json.loads(err)["error"] == "malformed-json"

    crossing = tmp_path / "crossing.json"
    crossing.write_text(json.dumps({"polygon": 8, "inner_edges": [[0, 3], [1, 4]]}))
    code, _, err = run(capsys, "compat", "--quad", str(crossing), "--count")
    assert code == 1 and json.loads(err)["error"] == "invalid-quadrangulation"

    code, _, err = run(capsys, "triangles", "--quad", "6:0-2")
    assert code == 1 and json.loads(err)["error"] == "invalid-quadrangulation"

    code, _, err = run(capsys, "triangles", "--quad", "no-such-thing")
    assert code == 1 and json.loads(err)["error"] == "missing-input"

    code, _, err = run(capsys, "enumerate", "--squares", "12")
    assert code == 1 and json.loads(err)["error"] == "size-bound"

    code, _, err = run(capsys, "check", "--max-squares", "2", "--conjectures", "bogus")
    assert code == 1 and json.loads(err)["error"] == "usage"

    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "--help")[0] == 0


def test_check_no_twice(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "check", "--max-squares", "4", "--conjectures", "no-twice", "--report", str(report))
    assert code == 0
    assert "holds" in out and "COUNTEREXAMPLE" not in out
    data = json.loads(report.read_text())
    (c,) = data["conjectures"]
    assert c["scope"]["inputs"] == 71 and c["totals"]["counterexamples"] == 0


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["check", "--max-squares", "3", "--conjectures", "count-match,h-symmetry,lattice"]
    assert run(capsys, *args, "--report", str(a))[0] == 0
    assert run(capsys, *args, "--report", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_counterexample_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(harness.CONJECTURES, "always-false", lambda q: (q.n < 2, {}))
    code, out, _ = run(capsys, "check", "--max-squares", "2", "--conjectures", "always-false")
    assert code == 3 and "COUNTEREXAMPLE" in out


def test_invariant_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(algebra, "check_f_morphism", lambda a: {"product": False})
    assert run(capsys, "algebra", "--demo", "hexagon")[0] == 2


def test_poset_outputs(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "poset", "--quad", "tripod", "--dot", str(dot), "--analyze")
    assert code == 0 and json.loads(out)["vertices"] == 12
    assert dot.read_text().count("->") == 18


def test_species_outputs(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "species", "--variant", "cross-tree", "--order", "8", "--csv", str(path))
    assert code == 0 and len(out.splitlines()) == 8
    assert path.read_text().splitlines()[0] == "squares,Tb,T,Ti,Tsq,Tsqi,TB"
    assert run(capsys, "species", "--order", "100")[0] == 1


def test_lucas_and_algebra(capsys):
    code, out, _ = run(capsys, "lucas", "--n", "3", "--check-nests", "2")
    rows = json.loads(out)
    assert code == 0 and [r["l(1)"] for r in rows] == [2, 12, 78]
    assert rows[1]["nests_match"] and "nests_match" not in rows[2]
    code, out, _ = run(capsys, "algebra", "--demo", "hexagon")
    data = json.loads(out)
    assert code == 0 and data["derivation"] == "1" and all(data["checks"].values())


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "quadstokes", "compat", "--quad", "hexagon"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "2\n"
