import json
import subprocess
import sys

import pytest

from pdlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_formats(capsys):
    code, out, _ = run(capsys, "gen", "wheel:4")
    assert code == 0 and len(out.strip().splitlines()) == 8
    code, out, _ = run(capsys, "gen", "corona:complete:3,wheel:4", "--json")
    d = json.loads(out)
    assert d["order"] == 18 and d["command"] == "gen" and d["tool"] == "pdlab"
    code, out, _ = run(capsys, "gen", "path:3", "--format", "dot")
    assert out.startswith("graph")


def test_edge_list_file_roundtrip(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "cycle:5")
    f = tmp_path / "c5.txt"
    f.write_text(out)
    code, out, _ = run(capsys, "pd", str(f), "--json")
    assert code == 0 and json.loads(out)["pd"] == 3


def test_pd_json(capsys):
    code, out, _ = run(capsys, "pd", "corona:complete:3,wheel:4", "--json")
    d = json.loads(out)
    assert code == 0 and d["pd"] == 4 and d["status"] == "solved"
    assert len(d["witness"]["classes"]) == 4


def test_pd_single_k(capsys):
    code, out, _ = run(capsys, "pd", "corona:complete:3,wheel:4", "--k", "3", "--json")
    assert code == 0 and json.loads(out)["exists"] is False
    code, out, _ = run(capsys, "pd", "corona:complete:3,wheel:4", "--k", "3", "--budget-nodes", "0", "--json")
    assert code == 3 and json.loads(out)["exists"] is None


def test_pd_undecided_exit(capsys):
    code, out, _ = run(capsys, "pd", "corona:complete:3,wheel:4", "--budget-nodes", "5", "--json")
    assert code == 3 and json.loads(out)["status"] == "undecided"


def test_json_stable_across_threads(capsys):
    outs = set()
    for t in ("1", "2", "4"):
        code, out, _ = run(capsys, "pd", "corona:complete:3,wheel:5", "--json", "--threads", t)
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("PDLAB_THREADS", "x")
    code, _, err = run(capsys, "pd", "path:4")
    assert code == 2 and "PDLAB_THREADS" in err


def test_check(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"classes": [["v1"], ["v2", "v3"]]}))
    code, out, _ = run(capsys, "check", "path:3", str(good), "--json")
    assert code == 0 and json.loads(out)["resolving"] is True
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"classes": [["v1", "v2", "v3"]]}))
    code, out, err = run(capsys, "check", "path:3", str(bad))
    assert code == 1 and "not resolving" in err
    assert "violation.u:" in out and "violation.v:" in out


def test_check_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "check", "path:3", str(tmp_path / "missing.json"))
    assert code == 2 and "missing.json" in err
    bad = tmp_path / "unknown.json"
    bad.write_text(json.dumps({"classes": [["v1", "zz"], ["v2", "v3"]]}))
    code, _, err = run(capsys, "check", "path:3", str(bad))
    assert code == 2 and "zz" in err


def test_usage_errors(capsys):
    assert run(capsys, "pd", "nosuch:3")[0] == 2
    assert run(capsys, "pd", "path:3", "--k", "7")[0] == 2
    assert run(capsys, "construct", "m=n", "--n", "2")[0] == 2
    assert run(capsys, "verify-paper", "--n-min", "5", "--n-max", "3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["pd", "path:3", "--threads", "0"])
    assert exc.value.code == 2


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "m=n+1", "--n", "5", "--json")
    d = json.loads(out)
    assert code == 0 and d["resolving"] and d["interpretations"] == ["staircase-v1"]
    code, out, _ = run(capsys, "construct", "m=n", "--n", "4", "--interpretation", "literal-v1", "--json")
    assert code == 1 and "two classes" in json.loads(out)["error"]
    code, _, _ = run(capsys, "construct", "special-K3W5", "--interpretation", "repair-minimal-v1")
    assert code == 1


def test_analyze_and_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "corona:complete:3,wheel:4", "--json")
    assert code == 0 and json.loads(out)["chartrand"] == [3, 16]
    code, out, _ = run(capsys, "analyze", "corona:complete:3,wheel:5", "--json")
    d = json.loads(out)
    assert code == 0 and d["histogram_formulas"]


def test_dist(capsys):
    code, out, _ = run(capsys, "dist", "path:3", "--json")
    assert json.loads(out)["distances"] == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]


def test_verify_zero_budget(capsys):
    code, out, _ = run(capsys, "verify-paper", "--n-max", "4", "--budget-nodes", "0")
    assert code == 3
    assert "confirmed: 0, refuted: 0" in out


def test_verify_json_and_out(capsys, tmp_path):
    target = tmp_path / "v.json"
    code, out, _ = run(capsys, "verify-paper", "--n-max", "3", "--json", "--out", str(target))
    assert code == 1 and out == ""
    d = json.loads(target.read_text())
    assert d["summary"]["refuted"] >= 1 and d["config_hash"]


def test_config_hash_ignores_threads(capsys):
    a = json.loads(run(capsys, "pd", "path:5", "--json", "--threads", "1")[1])
    b = json.loads(run(capsys, "pd", "path:5", "--json", "--threads", "3")[1])
    c = json.loads(run(capsys, "pd", "path:5", "--json", "--symmetry", "off")[1])
    assert a["config_hash"] == b["config_hash"] != c["config_hash"]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "pdlab.cli", "pd", "complete:4", "--json"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and json.loads(r.stdout)["pd"] == 4
