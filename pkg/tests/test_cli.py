import json
import subprocess
import sys
from fractions import Fraction

import pytest

from pi4congruent import cli, selfcheck, theta
from pi4congruent.curve import Triangle


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    env = json.loads(out.out)
    assert set(env) == {"command", "inputs", "result", "provenance", "exact"}
    assert json.loads(json.dumps(env)) == env
    return code, env


def test_classify_congruent_json(capsys):
    code, env = run_json(capsys, "classify", "5", "pi/4")
    assert code == 0 and env["result"]["outcome"] == "Congruent" and env["exact"]
    t = env["result"]["triangle"]
    T = Triangle(Fraction(t["a"]), Fraction(t["b"]), Fraction(t["c"]))
    assert T.is_valid() and T.area == 5


def test_classify_not_congruent(capsys):
    code, out = run(capsys, "classify", "1", "pi/4")
    assert code == 0 and "NotCongruent" in out.out and "g1" in out.out


def test_classify_conditional(capsys):
    code, env = run_json(capsys, "classify", "231", "3pi/4")
    assert code == 0 and env["result"]["hypothesis"] == "BSD"
    assert env["result"]["notes"]


def test_classify_unknown_exit_code(capsys):
    code, env = run_json(capsys, "classify", "42", "pi/4", "--bound", "2")
    assert code == 2 and env["result"]["outcome"] == "Unknown"


def test_usage_errors(capsys):
    assert cli.main(["classify", "6", "pi/5"]) == 1
    assert cli.main(["classify", "0", "pi/4"]) == 1
    assert cli.main(["nonsense"]) == 1
    assert cli.main(["family", "residue", "1"]) == 1
    assert cli.main(["shu-zhai", "5"]) == 1
    assert cli.main(["theta", "raw", "1,1,-1,0,0,0", "5"]) == 1


def test_witness(capsys):
    code, env = run_json(capsys, "witness", "7", "3pi/4")
    assert code == 0 and env["result"]["point"] == ["28/1", "98/1"]
    code, _ = run(capsys, "witness", "1", "pi/4", "--bound", "20")
    assert code == 2


def test_theta_basis_and_raw(capsys):
    code, env = run_json(capsys, "theta", "f1", "80")
    assert code == 0
    assert env["result"]["coefficients"][:10] == [0, 1, 0, 0, 0, 0, 0, 0, 0, 3]
    code, out = run(capsys, "theta", "raw", "1,1,1,0,0,0", "4")
    assert out.out.strip() == "theta[1, 1, 1, 0, 0, 0] = 1 + 6*q + 12*q^2 + 8*q^3 + 6*q^4 + O(q^5)"


def test_lcheck(capsys):
    code, out = run(capsys, "lcheck", "1..25", "3pi/4")
    assert code == 0 and "FAIL" not in out.out
    code, env = run_json(capsys, "lcheck", "1..12", "pi/4", "--threads", "2")
    assert code == 0 and env["exact"] is False and all(r["ok"] for r in env["result"])


def test_family_subcommands(capsys):
    code, env = run_json(capsys, "family", "residue", "1", "3", "2")
    assert code == 0 and env["result"]["values"][0] == 1990
    code, env = run_json(capsys, "family", "rank2", "2")
    assert env["result"]["P_on_E"] == ["1025/1", "42025/1"]
    code, env = run_json(capsys, "family", "stewart-top", "0")
    assert env["result"]["d"] == 24192
    code, env = run_json(capsys, "family", "param", "3", "1", "--angle", "3pi/4")
    assert env["result"]["value"] == 6
    code, env = run_json(capsys, "family", "classes", "1", "3", "10")
    assert code == 0 and env["result"]["values"]


def test_shu_zhai_and_tiling(capsys):
    code, env = run_json(capsys, "shu-zhai", "7", "3", "11")
    assert code == 0 and len(env["result"]) == 2
    code, env = run_json(capsys, "tiling", "1")
    assert code == 0 and env["result"]["piece_count"] == 8 and env["result"]["k"] == 2


def test_selfcheck_passes(capsys):
    code, out = run(capsys, "selfcheck")
    assert code == 0 and "FAIL" not in out.out


def test_selfcheck_catches_perturbed_form_table(monkeypatch):
    table = dict(theta.FORM_TABLE)
    d, q1, _ = table["f1"]
    table["f1"] = (d, q1, (4, 8, 35, 0, -4, 0))
    monkeypatch.setattr(theta, "FORM_TABLE", table)
    failed = {r.name for r in selfcheck.run() if not r.passed}
    assert "theta expansion f1" in failed


def test_selfcheck_catches_flipped_root_number(monkeypatch):
    mod = selfcheck._classify
    real = mod.root_number
    monkeypatch.setattr(mod, "root_number", lambda n: -real(n) if n == 1 else real(n))
    failed = {r.name for r in selfcheck.run() if not r.passed}
    assert "root number / forced-zero coherence" in failed


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "pi4congruent", "classify", "2", "pi/4", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["outcome"] == "Congruent"


@pytest.mark.parametrize("value,expected", [(Fraction(3, 4), "3/4"), (Fraction(5), "5/1")])
def test_rationals_serialise_as_strings(value, expected):
    assert cli.jsonable(value) == expected
