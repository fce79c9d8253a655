import csv
import io
import json
import subprocess
import sys

import pytest

from trilegendre import cli


def run(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, want", [
    (["eval", "ellip_k", "0"], 1.570796326794897),
    (["eval", "phi_R", "0"], 3.141592653589793),
    (["eval", "gamma", "0.25"], 3.625609908221908),
    (["eval", "legendre_p", "-1/2", "0"], 1.1803405990160962),
    (["eval", "legendre_q", "0", "0.5"], 0.5493061443340549),
    (["eval", "phi_L", "0"], 3.141592653589793),
])
def test_eval_values(argv, want, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert abs(float(out) - want) < 1e-13 * abs(want)
    assert len(out.strip().replace("-", "").replace(".", "").lstrip("0")) >= 15


def test_eval_exact_digits(capsys):
    assert run(["eval", "ellip_k", "0"], capsys)[1] == "1.570796326794897\n"
    assert run(["eval", "phi_R", "0"], capsys)[1] == "3.141592653589793\n"
    assert run(["eval", "phi_R", "1"], capsys)[1] == "0\n"


def test_eval_errors(capsys):
    code, _, err = run(["eval", "gamma", "-1"], capsys)
    assert code == 1 and "DomainError" in err
    assert run(["eval", "nosuch", "1"], capsys)[0] == 2
    assert run(["eval", "gamma"], capsys)[0] == 2
    assert run(["eval", "gamma", "abc"], capsys)[0] == 2
    assert run(["bogus"], capsys)[0] == 2


def test_verify_single_case(capsys):
    code, out, _ = run(["verify", "--case", "K′²K"], capsys)
    assert code == 0
    assert out.startswith("PASS  K′²K") and out.strip().endswith("1/1 passed")


def test_case_pattern_accepts_ascii_minus(capsys):
    code, out, _ = run(["verify", "--case", "ν=-1/6 t-form"], capsys)
    assert code == 0 and "1/1 passed" in out


def test_verify_grid_subset(capsys):
    code, out, _ = run(["verify", "--case", "closed-form*", "--nu", "-1/2,0,0.7"], capsys)
    assert code == 0 and "3/3 passed" in out


def test_verify_unknown_case_is_usage_error(capsys):
    assert run(["verify", "--case", "no-such-case"], capsys)[0] == 2


def test_unattainable_tolerance_exits_one(capsys):
    code, out, _ = run(["verify", "--case", "closed-form*", "--nu", "2", "--tol", "1e-30"], capsys)
    assert code == 1
    assert "ConvergenceError" in out and "err_est" in out


def test_perturbed_rhs_exits_one(capsys):
    code, out, _ = run(["verify", "--case", "K′*", "--perturb-rhs"], capsys)
    assert code == 1 and "FAIL" in out


def test_usage_errors(capsys):
    assert run(["verify", "--tol", "-1"], capsys)[0] == 2
    assert run(["verify", "--nu", "-1.5"], capsys)[0] == 2
    assert run(["verify", "--quad", "simpson"], capsys)[0] == 2
    assert run(["verify", "--max-level", "1"], capsys)[0] == 2
    assert run(["sweep", "--nu", "3"], capsys)[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["verify", "--case", "pzero*", "--nu", "-0.5,0", "--json"]
    a = run(argv, capsys)[1]
    b = run(argv, capsys)[1]
    assert a == b
    doc = json.loads(a)
    assert doc["summary"] == {"failed": 0, "passed": 2, "total": 2}
    assert [c["case_id"] for c in doc["cases"]] == ["pzero[nu=-0.5]", "pzero[nu=0]"]


def test_csv_output(capsys):
    out = run(["verify", "--case", "macrobert*", "--csv"], capsys)[1]
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 and all(r["pass"] == "True" for r in rows)


def test_sweep_rows(capsys):
    code, out, _ = run(["sweep", "--nu", "-0.5,0,1,2.5", "--csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["nu"]) for r in rows] == [-0.5, 0.0, 1.0, 2.5]
    for r in rows:
        assert float(r["abs_err"]) < 1e-7 * max(1.0, abs(float(r["phi_R"])))


def test_sweep_json(capsys):
    code, out, _ = run(["sweep", "--nu", "0", "--json"], capsys)
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert abs(row["phi_L"] - 3.141592653589793) < 1e-10


def test_gauss_jacobi_option(capsys):
    code, out, _ = run(["sweep", "--nu", "0,1,2", "--quad", "gauss-jacobi"], capsys)
    assert code == 0


def test_catalog_lists_cases(capsys):
    code, out, _ = run(["catalog"], capsys)
    assert code == 0
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert "K′³" in ids and "phi_L(0)=pi" in ids and "hpb:balanced[nu=-0.5]" in ids
    assert len(ids) == len(set(ids))


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# degrees\nnu = -1/3, 0.25\ncase = closed-form*\noutput = json\n", encoding="utf-8")
    code, out, _ = run(["verify", "--config", str(cfg)], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["total"] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n", encoding="utf-8")
    assert run(["verify", "--config", str(bad)], capsys)[0] == 2


def test_parse_helpers():
    assert cli.parse_real("−1/3") == pytest.approx(-1 / 3)
    assert cli.parse_grid("0, 1/2,") == (0.0, 0.5)
    with pytest.raises(cli.UsageError):
        cli.parse_real("1/0")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trilegendre", "eval", "ellip_k", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1.570796326794897\n"
