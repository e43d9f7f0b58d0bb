import json
import subprocess
import sys

import pytest

from hcalg import __version__
from hcalg.cli import main


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def usage_error(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    return exc.value.code, capsys.readouterr().err


def test_bratteli_text(capsys):
    code, out = run(["bratteli", "--n", "5", "--p", "3", "--d", "2"], capsys)
    assert code == 0
    assert "row sizes: 3, 5, 7" in out
    assert "row -1: (5,4,3,2,1)" in out


def test_bratteli_json(capsys):
    code, out = run(["bratteli", "--n", "5", "--p", "3", "--d", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["hcalg_version"] == __version__
    assert [len(r) for r in data["graph"]["rows"]] == [1, 3, 5, 7]


def test_paths_json(capsys):
    code, out = run(["paths", "--n", "5", "--p", "3", "--d", "2", "--lambda", "7,6,4,2,1", "--format", "json"],
                    capsys)
    data = json.loads(out)
    assert code == 0
    assert len(data["paths"]) == 3
    assert all(p[-1] == [7, 6, 4, 2, 1] for p in data["paths"])


def test_lambda_outside_row_is_usage_error(capsys):
    code, err = usage_error(["paths", "--n", "5", "--p", "3", "--d", "2", "--lambda", "8,4,3,2,1"], capsys)
    assert code == 2
    assert "not in row 2" in err


def test_non_strict_lambda_is_usage_error(capsys):
    code, _ = usage_error(["paths", "--n", "2", "--p", "2", "--d", "1", "--lambda", "3,3"], capsys)
    assert code == 2


def test_missing_lambda_is_usage_error(capsys):
    code, err = usage_error(["module", "--n", "2", "--p", "2", "--d", "1"], capsys)
    assert code == 2
    assert "--lambda" in err


def test_bad_tolerance_is_usage_error(capsys):
    code, _ = usage_error(["bratteli", "--n", "2", "--tolerance", "-1"], capsys)
    assert code == 2


def test_module_json(capsys):
    code, out = run(["module", "--n", "2", "--p", "2", "--d", "1", "--lambda", "5,1", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["module"]["dim"] == len(data["module"]["basis"])


def test_verify_passes(capsys):
    code, out = run(["verify", "--n", "2", "--p", "2", "--d", "2", "--lambda", "5,2"], capsys)
    assert code == 0, out
    assert "commutant" in out


def test_verify_odd_needs_odd_variant(capsys):
    code, _ = usage_error(["verify", "--n", "2", "--p", "2", "--d", "1", "--lambda", "5,1",
                           "--algebra", "H_od", "--variant", "D"], capsys)
    assert code == 2


def test_oracle_casimir(capsys):
    code, out = run(["oracle", "--n", "2", "--check", "casimir", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_identities_kappa_and_control(capsys):
    assert run(["identities", "--suite", "kappa"], capsys)[0] == 0
    assert run(["identities", "--suite", "kappa", "--perturb"], capsys)[0] == 1


def test_identities_unknown_suite(capsys):
    code, _ = usage_error(["identities", "--suite", "nope"], capsys)
    assert code == 2


def test_stembridge(capsys):
    code, out = run(["stembridge", "--lambda", "2,1", "--mu", "3,1", "--gamma", "4,3", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["coefficient"] == 1
    assert data["witnesses"] == [[["1'", "1"], ["1", "2"]]]


def test_report_subset(capsys):
    code, out = run(["report", "--criteria", "2,3"], capsys)
    assert code == 0
    assert out.count("PASS") == 2


def test_report_bad_criteria(capsys):
    code, _ = usage_error(["report", "--criteria", "11"], capsys)
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / "g.json"
    code, out = run(["bratteli", "--n", "2", "--format", "json", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["graph"]["rows"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hcalg.cli", "bratteli", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "row sizes" in proc.stdout


def test_bad_tolerance_env_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("HCALG_TOLERANCE", "-1")
    code, err = usage_error(["bratteli", "--n", "2"], capsys)
    assert code == 2
    assert "HCALG_TOLERANCE" in err


def test_oversized_tensor_space_is_usage_error(capsys):
    code, err = usage_error(["oracle", "--n", "2", "--d", "10", "--check", "sergeev"], capsys)
    assert code == 2
    assert "exceeds" in err
