import json
import shutil
import subprocess

import jsonschema
import pytest

from qres.cli import main

SCHEMA = json.load(open("docs/resolution.schema.json"))


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_germ_human_output(capsys):
    rc, out, _ = run(capsys, "germ", "x^2 - y^4", "--type", "X(2;1,1)")
    assert rc == 0
    assert "delta_w   = 1" in out
    assert "euler_orb = -1" in out
    assert "blow-ups:" in out


def test_germ_json_output(capsys):
    rc, out, _ = run(capsys, "germ", "x^2 - y^4", "--type", "X(2;1,1)",
                     "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1 and doc["command"] == "germ"
    assert doc["invariants"]["delta_w"] == "1"
    assert doc["invariants"]["mu"] == 3
    assert doc["trace"]["blowups"][0]["weights"] == [2, 1]
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_germ_override_weights_and_modes(capsys):
    args = ("germ", "x*y + (x^2 - y^3)^2", "--type", "X(7;2,3)",
            "--weights", "(1,5)")
    rc, out, _ = run(capsys, *args)
    assert rc == 0
    assert "-> 3/5" in out and "-> 2/5" in out
    assert "Q-smooth ends (plain mode stops here):" in out
    assert "transpose" in out                  # orientation warning
    rc, out, _ = run(capsys, *args, "--mode", "strong")
    assert rc == 0
    assert out.count("weights (") == 2         # both steps are blow-ups now
    assert "Q-smooth ends" not in out
    assert "delta_w   = 1" in out


def test_curve_human_output(capsys):
    rc, out, _ = run(capsys, "curve", "x0*x1 + x2", "--w", "2,3,5")
    assert rc == 0
    assert "curve of degree 5, weights (2,3,5)" in out
    assert "virtual genus: 7/12" in out
    assert "genus: 0" in out
    assert "vertices on the curve included" in out


def test_curve_json_output(capsys):
    rc, out, _ = run(capsys, "curve", "x0*x1 + x2", "--w", "2,3,5", "--json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["command"] == "curve" and doc["degree"] == 5
    assert doc["virtual_genus"] == "7/12" and doc["genus"] == "0"
    assert {p["delta_w"] for p in doc["points"]} == {"1/4", "1/3"}
    assert doc["weights"] == [2, 3, 5]


def test_curve_manual_points(capsys):
    rc, out, _ = run(capsys, "curve", "x0*x1 + x2", "--w", "2,3,5",
                     "--points", "[1:0:0];[0:1:0]")
    assert rc == 0
    assert "points (user supplied):" in out
    assert "genus: 0" in out


def test_resolve_writes_files(tmp_path, capsys):
    jp, dp = tmp_path / "t.json", tmp_path / "t.dot"
    rc, out, _ = run(capsys, "resolve", "y^2 - x^3",
                     "--json", str(jp), "--dot", str(dp))
    assert rc == 0
    assert "wrote %s" % jp in out and "wrote %s" % dp in out
    doc = json.loads(jp.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert doc["root"]["blowup"]["nu"] == 6
    dot = dp.read_text()
    assert dot.startswith("digraph resolution {")
    rc2 = main(["resolve", "y^2 - x^3", "--json", str(jp), "--dot", str(dp)])
    capsys.readouterr()
    assert rc2 == 0
    assert jp.read_text() == json.dumps(doc, indent=2, sort_keys=True) + "\n"
    assert dp.read_text() == dot


def test_resolve_stdout(capsys):
    rc, out, _ = run(capsys, "resolve", "y^2 - x^3", "--dot", "-")
    assert rc == 0
    assert out.startswith("digraph resolution {")


def test_bad_inputs_exit_2(capsys):
    cases = [
        ("germ", "x +"),
        ("germ", "x", "--type", "X(4;2,1)"),          # not in normal form
        ("germ", "x + y", "--type", "X(3;1,2)"),      # not semi-invariant
        ("curve", "x0 + x1^2", "--w", "1,1,1"),       # not quasi-homogeneous
        ("curve", "x0*x1 + x2", "--w", "2,4,6"),
        ("resolve", "x", "--json", "-"),              # degenerate monomial
        ("resolve", "y^2 - x^3"),                     # no output selected
    ]
    for argv in cases:
        rc, _, err = run(capsys, *argv)
        assert rc == 2, argv
        assert err.strip(), argv


def test_budget_exhaustion_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("QRES_EXT_BOUND", "1")
    rc, _, err = run(capsys, "germ", "(y^2 - 2*x^2)^2 - x^7")
    assert rc == 3
    assert "bound" in err


def test_unwritable_output_exits_4(tmp_path, capsys):
    rc, _, err = run(capsys, "resolve", "y^2 - x^3", "--json", str(tmp_path))
    assert rc == 4
    assert err.startswith("io error:")


def test_check_subcommand(capsys):
    rc, out, _ = run(capsys, "check", "lattice")
    assert rc == 0
    assert "lattice" in out and "0 failed" in out
    with pytest.raises(SystemExit):
        main(["check", "bogus"])
    capsys.readouterr()


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit):
        main([])


@pytest.mark.skipif(shutil.which("qres") is None,
                    reason="console script not on PATH")
def test_console_script_entry_point():
    proc = subprocess.run(["qres", "germ", "y^2 - x^3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "delta_w   = 1" in proc.stdout
