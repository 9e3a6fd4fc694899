import json
import subprocess
import sys

import pytest

from lajet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_exit_codes(capsys):
    assert run(capsys, "check", "tangent")[0] == 0
    code, out, _ = run(capsys, "check", "broken")
    assert code == 1
    doc = json.loads(out)
    assert doc["schema"] == "lajet.report/1"
    fails = [c for s in doc["report"]["sections"] for c in s["checks"] if c["status"] == "fail"]
    assert fails and all("witness" in c for c in fails)
    code, _, err = run(capsys, "check", "missing.cfg")
    assert code == 2 and "cannot read" in err


def test_groupoid_command(capsys):
    assert run(capsys, "groupoid", "tangent", "--order", "4")[0] == 0
    assert run(capsys, "groupoid", "solvable", "--order", "4")[0] == 0
    assert run(capsys, "groupoid", "tangent", "--order", "1")[0] == 2
    assert run(capsys, "groupoid", "broken")[0] == 1


def test_homology_command(capsys):
    code, out, _ = run(capsys, "homology", "abelian2", "--no-suites")
    assert code == 0
    data = json.loads(out)["report"]["sections"][0]["data"]
    assert data["cochain_cohomology"]["dims"]["0"] == 1
    assert data["cochain_cohomology"]["dims"]["1"] == 2
    code, out, _ = run(capsys, "homology", "tangent", "--point", "0", "--no-suites")
    data = json.loads(out)["report"]["sections"][0]["data"]
    assert data["chain_homology"]["koszul"]["0"] == 1 and data["chain_homology"]["koszul"]["1"] == 1


@pytest.mark.parametrize("argv", [
    ["homology", "tangent", "--point", "0,1"],
    ["homology", "tangent", "--out", "a.json", "--golden", "g"],
    ["homology", "tangent", "--arity", "1"],
    ["complexes", "tangent", "--degree", "0"],
    ["check", "tangent", "--jobs", "0"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_demo_tangent(capsys):
    code, out, _ = run(capsys, "demo-tangent")
    assert code == 0
    assert "S(a (x) b)     = b (x) a" in out
    assert "[ok] antipode" in out


def test_out_and_env(tmp_path, capsys, monkeypatch):
    out = tmp_path / "r.json"
    assert run(capsys, "check", "solvable", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["report"]["status"] == "pass"
    monkeypatch.setenv("LAJET_OUT", str(tmp_path / "env"))
    assert run(capsys, "check", "solvable", "tangent")[0] == 0
    assert sorted(p.name for p in (tmp_path / "env").iterdir()) == ["check-solvable.json", "check-tangent1.json"]


def test_jobs_match_serial(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "complexes", "tangent", "anchored", "--arity", "2", "--golden", str(a))[0] == 0
    assert run(capsys, "complexes", "tangent", "anchored", "--arity", "2", "--golden", str(b), "--jobs", "2")[0] == 0
    for p in a.iterdir():
        assert p.read_bytes() == (b / p.name).read_bytes()


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "lajet.cli", "check", "tangent", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("check[tangent1]: PASS")
