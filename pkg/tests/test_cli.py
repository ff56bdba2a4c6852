import json
import subprocess
import sys

import pytest

from sigma_forge import bernoulli, cli, sigma2


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_xi0_pretty(capsys):
    code, out, _ = run(["expand", "xi", "--k", "0", "--weight", "14", "--format", "pretty"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "(2) * u1^3/3!",
        "(4*l4) * u1^7/7!",
        "(-64*l6) * u1^9/9!",
        "(408*l4^2 - 1600*l8) * u1^11/11!",
        "(8576*l4*l6 - 17920*l10) * u1^13/13!",
    ]


def test_expand_g_infinity(capsys):
    code, out, _ = run(["expand", "G-infinity", "--weight", "10", "--format", "pretty"], capsys)
    assert code == 0
    assert out.splitlines() == ["tau_0 = 1", "tau_4 = -1/5*l4", "tau_6 = -1/7*l6",
                                "tau_8 = 1/75*l4^2 - 1/9*l8", "tau_10 = 3/385*l4*l6 - 1/11*l10"]


def test_expand_bh_table(capsys):
    code, out, _ = run(["expand", "bh", "--max-n", "10", "--format", "pretty"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "C_4/4 = -2/5*l4", "C_6/6 = -24/7*l6", "C_8/8 = 48/5*l4^2 - 80*l8",
        "C_10/10 = 3456/11*l4*l6 - 40320/11*l10",
        "D_6/6 = 1/7*l6", "D_8/8 = -2/5*l4^2 + 4/3*l8", "D_10/10 = -144/11*l4*l6 + 360/11*l10",
    ]


def test_json_schema_and_determinism(capsys):
    argv = ["expand", "sigma-mu", "--weight", "10"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "sigma-forge/1"
    assert doc["result"]["table"][0] == {"m": 3, "n": 0, "weight": 3, "coeff": "2/1"}


def test_lambda_substitution(capsys):
    code, out, _ = run(["expand", "sigma-xi", "--weight", "7", "--lambda", "l4=1/2,λ6=3", "--format", "csv"], capsys)
    assert code == 0
    assert "7,0,7,2/1\n" in out and "4,1,7,1/1\n" in out


def test_out_file(tmp_path, capsys):
    p = tmp_path / "s.json"
    assert cli.main(["expand", "universal-bernoulli", "--max-n", "4", "--out", str(p)]) == 0
    doc = json.loads(p.read_text())
    assert doc["result"]["B"][2] == [2, "-1/2*f1^2 + 2/3*f2"]


@pytest.mark.parametrize("suite", ["heat", "routes", "integrality", "ode", "degeneration", "clarke"])
def test_check_suites_pass(suite, capsys):
    code, out, _ = run(["check", suite, "--weight", "14", "--max-n", "20"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["result"]["pass"], [i for i in doc["result"]["items"] if not i["pass"]]


def test_check_valuations_reports_witness_on_failure(monkeypatch, capsys):
    monkeypatch.setattr(bernoulli, "theorem_bound", lambda kind, n, p: 50)
    code, out, _ = run(["check", "valuations", "--max-n", "12", "--primes", "2,3"], capsys)
    doc = json.loads(out)
    assert code == 1 and not doc["result"]["pass"]
    bad = [i for i in doc["result"]["items"] if not i["pass"]]
    assert bad[0]["witness"][0]["bound"] == 50


@pytest.mark.parametrize("argv", [
    ["expand", "sigma-xi", "--weight", "2"],
    ["check", "valuations", "--primes", "2,9"],
    ["expand", "F", "--lambda", "l4=0.5"],
    ["expand", "F", "--lambda", "l5=1"],
    ["expand", "xi", "--format", "csv"],
])
def test_config_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and "sigma-forge:" in err


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        cli.main(["expand", "nonsense"])
    assert e.value.code == 2


def test_internal_failure_exits_3(monkeypatch, capsys):
    def broken(N=20):
        raise ArithmeticError("routes disagree at (3, 0)")
    monkeypatch.setattr(sigma2, "sigma_xi", broken)
    code, _, err = run(["expand", "sigma-xi"], capsys)
    assert code == 3 and "(3, 0)" in err


def test_dump_operators(capsys):
    code, out, _ = run(["dump-operators"], capsys)
    doc = json.loads(out)
    assert code == 0 and set(doc["result"]) == {"Q0", "Q2", "Q4", "Q6"}
    code, out, _ = run(["dump-operators", "--genus", "1", "--format", "pretty"], capsys)
    assert out.startswith("Q0 = ")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "sigma_forge", "expand", "mu", "--k", "3", "--weight", "6",
                        "--format", "pretty"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "(2) * u3^0/0!"
