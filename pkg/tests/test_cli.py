import csv
import io
import json
import math

import pytest

from paramlap.cli import main
from paramlap.report import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_eval_exponential(capsys):
    code, rec, _ = as_json(capsys, "eval", "ml2", "--alpha", "1", "--beta", "1", "--z", "1")
    assert code == 0 and rec["value"] == 2.718281828459045
    assert set(rec) == {"value", "terms_used", "tail_bound"}


def test_eval_prabhakar_matches_ml2(capsys):
    args = ["--alpha", "0.7", "--beta", "1.3", "--z", "0.5"]
    _, a, _ = as_json(capsys, "eval", "prabhakar", "--gamma", "1", *args)
    _, b, _ = as_json(capsys, "eval", "ml2", *args)
    assert a["value"] == pytest.approx(b["value"], rel=1e-15)


def test_eval_time_profile(capsys):
    _, rec, _ = as_json(capsys, "eval", "ml2", "--alpha", "1", "--beta", "1", "--lambda", "-1", "--t", "2")
    assert rec["value"] == pytest.approx(math.exp(-2), rel=1e-14)


def test_eval_rejects_bad_alpha(capsys):
    code, _, err = run(capsys, "eval", "ml2", "--alpha", "-1", "--beta", "1", "--z", "1")
    assert code == 2 and "alpha must be positive" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "ml2", "--z", "1", "--t", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_deriv_euler_constant(capsys):
    _, rec, _ = as_json(capsys, "deriv", "ml2", "--wrt", "beta", "--alpha", "1", "--beta", "1", "--lambda", "0",
                        "--t", "1")
    assert rec["value"] == pytest.approx(0.5772156649015329, rel=1e-14)


def test_deriv_zero_alpha_derivative(capsys):
    _, rec, _ = as_json(capsys, "deriv", "ml2", "--wrt", "alpha", "--lambda", "0", "--alpha", "0.7", "--beta", "1.2",
                        "--t", "2")
    assert rec["value"] == 0.0


def test_deriv_oracle(capsys):
    _, rec, _ = as_json(capsys, "deriv", "ml2", "--wrt", "alpha", "--alpha", "1", "--beta", "1", "--lambda", "1",
                        "--t", "1", "--oracle")
    assert rec["rel_diff"] <= 1e-6
    assert rec["fd_value"] == pytest.approx(rec["value"], rel=1e-6)


def test_laplace_profile(capsys):
    code, rec, _ = as_json(capsys, "laplace", "profile", "ml2", "--alpha", "1", "--beta", "1", "--lambda", "1",
                           "--s", "2")
    assert code == 0 and rec["value"] == pytest.approx(1.0, rel=1e-9)


def test_laplace_deriv(capsys):
    _, rec, _ = as_json(capsys, "laplace", "deriv", "ml2", "--wrt", "alpha", "--alpha", "1", "--beta", "1",
                        "--lambda", "1", "--s", "2")
    assert rec["value"] == pytest.approx(-math.log(2), rel=1e-8)


def test_laplace_validity_gate(capsys):
    code, _, err = run(capsys, "laplace", "profile", "ml2", "--alpha", "1", "--beta", "1", "--lambda", "1",
                       "--s", "0.5")
    assert code == 3 and "outside validity region |λ s^{−α}| < 1" in err


def test_laplace_deriv_requires_wrt(capsys):
    code, _, err = run(capsys, "laplace", "deriv", "ml2", "--s", "2")
    assert code == 2 and "--wrt" in err


def test_check_single_json(capsys):
    code, out, _ = run(capsys, "check", "ML.LT", "--format", "json")
    assert code == 0
    reps = json.loads(out)
    assert reps and all(r["verdict"] == "PASS" and r["id"] == "ML.LT" for r in reps)
    assert dumps(reps) == out


def test_check_unknown_identity(capsys):
    code, _, err = run(capsys, "check", "NO.SUCH.ID")
    assert code == 2 and "unknown identity" in err


def test_check_printed_variant_fails(capsys):
    code, out, _ = run(capsys, "check", "M4.dA1", "--printed", "--format", "json")
    assert code == 1
    assert all(r["variant"] == "printed" and r["verdict"] == "FAIL" for r in json.loads(out))


def test_check_printed_without_variant(capsys):
    code, _, err = run(capsys, "check", "ML.LT", "--printed")
    assert code == 2 and "no printed variant" in err


def test_check_preset_file(capsys, tmp_path):
    path = tmp_path / "presets.json"
    path.write_text(json.dumps([{"family": "wright", "alpha": 0.5, "beta": 1.0, "lambda": 0.5, "grid": [2.0]}]))
    code, out, _ = run(capsys, "check", "W.LT1", "--preset-file", str(path), "--format", "json")
    reps = json.loads(out)
    assert code == 0 and len(reps) == 1
    assert reps[0]["grid"] == [2.0] and reps[0]["params"]["alpha"] == 0.5


def test_check_bad_preset_file(capsys, tmp_path):
    path = tmp_path / "presets.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "check", "all", "--preset-file", str(path))
    assert code == 2 and "not valid JSON" in err


@pytest.mark.slow
def test_check_all_csv_report(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "check", "all", "--report", str(path), "--jobs", "4")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(path.read_text())))
    assert rows and {r["verdict"] for r in rows} <= {"PASS", "SKIPPED_OUT_OF_REGION"}
    assert "CONV.T8" in {r["id"] for r in rows}
    assert "FAIL" not in out


def test_tolerance_env_var(capsys, monkeypatch):
    monkeypatch.setenv("PARAMLAP_TOL", "1e-3")
    _, loose, _ = as_json(capsys, "laplace", "profile", "ml2", "--alpha", "0.5", "--beta", "1", "--lambda", "1",
                          "--s", "3")
    monkeypatch.setenv("PARAMLAP_TOL", "1e-12")
    _, tight, _ = as_json(capsys, "laplace", "profile", "ml2", "--alpha", "0.5", "--beta", "1", "--lambda", "1",
                          "--s", "3")
    assert loose["evaluations"] < tight["evaluations"]
    monkeypatch.setenv("PARAMLAP_TOL", "abc")
    code, _, err = run(capsys, "laplace", "profile", "ml2", "--s", "3")
    assert code == 2 and "PARAMLAP_TOL" in err


def test_kernel_examples(capsys):
    _, rec, _ = as_json(capsys, "kernel", "--a", "1", "--b", "1", "--t", "2", "--tprime", "1")
    assert rec["value"] == 1.0
    _, rec, _ = as_json(capsys, "kernel", "--a", "0.5", "--b", "0.5", "--t", "1", "--tprime", "1")
    assert rec["value"] == pytest.approx(math.exp(-0.25) / math.sqrt(math.pi), rel=1e-8)
    code, _, err = run(capsys, "kernel", "--a", "1", "--b", "0", "--t", "1", "--tprime", "1")
    assert code == 2 and "delta case is not pointwise" in err


def test_csv_and_table_formats(capsys):
    code, out, _ = run(capsys, "kernel", "--a", "1", "--b", "1", "--t", "2", "--tprime", "1", "--format", "csv")
    assert out == "value\n1\n"
    _, out, _ = run(capsys, "eval", "ml2", "--z", "1")
    assert out.startswith("value") and "2.71828183" in out


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) >= 38
    assert any(line.startswith("ML.pure.dA") and "[TH23-EXP]" in line for line in lines)
