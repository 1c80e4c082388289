import json
import subprocess
import sys

import pytest

from pointplane.cli import main, parse_axioms
from pointplane.errors import UsageError


def run(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out.decode("utf-8"), out.err.decode("utf-8")


def test_build(tmp_path, capsysbinary):
    out = tmp_path / "m.json"
    code, _, _ = run(capsysbinary, "build", "--q", "2", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert (doc["num_points"], doc["num_planes"], len(doc["incident_pairs"])) == (15, 15, 105)
    again = tmp_path / "again.json"
    run(capsysbinary, "build", "--q", "2", "--out", str(again))
    assert out.read_bytes() == again.read_bytes()


def test_build_rejects_composite(capsysbinary):
    code, _, err = run(capsysbinary, "build", "--q", "9")
    assert code == 2 and "prime" in err


def test_check_q3_foundations_and_h(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--q", "3", "--axioms", "1,2,3,4,H,Hdual")
    assert code == 0
    doc = json.loads(out)
    assert doc["format"] == "report-v1" and doc["generator"] == "splitmix64"
    assert {r["axiom"] for r in doc["reports"]} == {"1p", "1π", "2p", "2π", "3p", "3π", "4",
                                                    "H", "Hdual"}
    assert all(r["status"] == "holds" for r in doc["reports"])


def test_check_q2_h_fails(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--q", "2", "--axioms", "H")
    assert code == 1
    (r,) = json.loads(out)["reports"]
    assert r["status"] == "fails"
    assert r["counterexample"] == {"plane": 0, "vertices": [1, 3, 7, 13], "diagonals": [5, 9, 11]}


def test_check_q2_p_vacuous(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--q", "2", "--axioms", "P")
    assert code == 0
    assert json.loads(out)["reports"][0]["status"] == "vacuous"


def test_check_usage_errors(capsysbinary):
    assert run(capsysbinary, "check", "--q", "3", "--axioms", "Z")[0] == 2
    assert run(capsysbinary, "check", "--model", "/nonexistent.json")[0] == 2
    assert run(capsysbinary, "check")[0] == 2


def test_parse_axioms():
    assert parse_axioms("H,1") == ["1p", "1π", "H"]
    assert parse_axioms("3pi,all")[0] == "1p"
    with pytest.raises(UsageError):
        parse_axioms("")


def test_check_q5_defaults_to_sampling(capsysbinary):
    code, out, _ = run(capsysbinary, "check", "--q", "5", "--axioms", "H", "--seed", "4")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 4
    assert doc["mode"] == {"exhaustive": False, "samples": 2000}
    assert doc["reports"][0]["sample_seed"] == 4


def test_check_imported_model(tmp_path, capsysbinary):
    m = tmp_path / "bad.json"
    m.write_text(json.dumps({"format": "incidence-v1", "provenance": "imported", "q": None,
                             "num_points": 1, "num_planes": 1, "incident_pairs": [[0, 0]]}))
    code, out, _ = run(capsysbinary, "check", "--model", str(m), "--axioms", "1")
    doc = json.loads(out)
    assert code == 1 and len(doc["model"]["sha256"]) == 64


def test_claims(capsysbinary):
    code, out, _ = run(capsysbinary, "claims", "--q", "3", "--which", "harmonicity",
                       "--samples", "100", "--seed", "7")
    assert code == 0 and len(json.loads(out)["traces"]) == 100
    code, out, _ = run(capsysbinary, "claims", "--q", "2", "--which", "harmonicity",
                       "--samples", "10", "--seed", "7")
    assert code == 1
    for tr in json.loads(out)["traces"]:
        bad = {c["claim"] for c in tr["claims"] if c["status"] != "pass"}
        assert bad == {9}
    code, out, _ = run(capsysbinary, "claims", "--q", "3", "--which", "projectivity",
                       "--samples", "100", "--seed", "7")
    assert code == 0
    assert all(t["verdict"] == t["derived"]["direct_verdict"] for t in json.loads(out)["traces"])


def test_claims_explicit_config(capsysbinary):
    code, out, _ = run(capsysbinary, "claims", "--q", "3", "--which", "harmonicity",
                       "--point", "7", "--faces", "10,11,28,30", "--omega", "19")
    assert code == 0 and json.loads(out)["traces"][0]["config"]["omega"] == 19
    code, _, err = run(capsysbinary, "claims", "--q", "3", "--which", "harmonicity",
                       "--point", "0", "--faces", "1,2,3,4")
    assert code == 2


def test_claims_refuse_non_model(tmp_path, capsysbinary):
    m = tmp_path / "bad.json"
    m.write_text(json.dumps({"format": "incidence-v1", "provenance": "imported", "q": None,
                             "num_points": 2, "num_planes": 2,
                             "incident_pairs": [[0, 0], [0, 1], [1, 0], [1, 1]]}))
    code, _, err = run(capsysbinary, "claims", "--model", str(m), "--which", "harmonicity")
    assert code == 2 and "AXIOM 1p" in err


def test_stats(capsysbinary):
    code, out, _ = run(capsysbinary, "stats", "--q", "2")
    doc = json.loads(out)
    assert code == 0
    assert doc["lines"] == 35 and doc["points_per_line"] == {"3": 35}
    assert doc["quadrangles_per_plane"] == {"7": 15}
    assert doc["hexagons_per_pair"] == {"0": 315}
    doc = json.loads(run(capsysbinary, "stats", "--q", "3")[1])
    assert doc["lines"] == 130 and doc["pencil_sizes"] == {"4": 40 * 13}


def test_stats_non_model(tmp_path, capsysbinary):
    m = tmp_path / "bad.json"
    pairs = [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1], [3, 2]]
    m.write_text(json.dumps({"format": "incidence-v1", "provenance": "imported", "q": None,
                             "num_points": 4, "num_planes": 3, "incident_pairs": pairs}))
    code, out, _ = run(capsysbinary, "stats", "--model", str(m))
    assert code == 0 and json.loads(out)["lines"] == "undefined (AXIOM [4] fails)"


def test_dual_roundtrip(tmp_path, capsysbinary):
    m, d, dd = tmp_path / "m.json", tmp_path / "d.json", tmp_path / "dd.json"
    run(capsysbinary, "build", "--q", "2", "--out", str(m))
    assert run(capsysbinary, "dual", "--model", str(m), "--out", str(d))[0] == 0
    run(capsysbinary, "dual", "--model", str(d), "--out", str(dd))
    a, b = json.loads(m.read_text()), json.loads(dd.read_text())
    assert a["incident_pairs"] == b["incident_pairs"]
    code, out, _ = run(capsysbinary, "check", "--model", str(d), "--axioms", "1,2,3,4")
    assert code == 0


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "pointplane", "check", "--q", "2", "--axioms", "all"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd + ["--workers", "2"], capture_output=True)
    assert a.returncode == b.returncode == 1
    assert a.stdout == b.stdout
