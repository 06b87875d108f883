import csv
import json
import subprocess
import sys

import pytest

from surfstat.cli import main


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_single(capsys):
    code, out, _ = run(["trace", "--prime", "5", "--lambda", "2"], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["p", "lambda", "a_leg", "a_cl", "A_p"]
    assert rows[1][:3] == ["5", "2", "-2"]


def test_trace_lambda_one(capsys):
    code, out, _ = run(["trace", "--prime", "5", "--lambda", "1"], capsys)
    assert code == 0
    assert out.splitlines()[1] == "5,1,,-2,-1"


def test_trace_all_lambdas_checked(capsys):
    code, out, _ = run(["trace", "--primes", "5..13", "--check"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 1 + 4 + 6 + 10 + 12


@pytest.mark.parametrize(
    "args",
    [
        ["verify", "--primes", "4"],
        ["verify", "--primes", "5..50", "--suite", "nope"],
        ["trace", "--prime", "7", "--lambda", "0"],
        ["moments", "--prime", "7", "--workers", "0"],
        ["distribution", "--primes", "5,7"],
        ["gauss", "--format", "xml"],
        ["frobnicate"],
    ],
)
def test_config_errors_exit_2(args, capsys):
    assert run(args, capsys)[0] == 2


def test_verify_ok(capsys):
    code, out, err = run(["verify", "--primes", "5..13", "--suite", "field,gauss,curves,cp"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["total_failures"] == 0 and rep["total_checks"] > 0
    assert "failures" in err


def test_verify_strict_fails(capsys):
    code, out, _ = run(["verify", "--primes", "7", "--suite", "gn", "--strict"], capsys)
    assert code == 1
    assert json.loads(out)["total_failures"] > 0


def test_verify_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--primes", "5..13,53", "--samples", "5", "--seed", "7"]
    assert run(args + ["--out", str(a)], capsys)[0] == 0
    assert run(args + ["--out", str(b), "--workers", "3"], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("prime = 7\nlambda = 3\nformat = json  # comment\n")
    code, out, _ = run(["trace", "--config", str(cfg)], capsys)
    assert code == 0
    rec = json.loads(out)["records"]
    assert [(r["p"], r["lam"]) for r in rec] == [(7, 3)]
    code, out, _ = run(["trace", "--config", str(cfg), "--lambda", "4", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[1].startswith("7,4,")


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run(["trace", "--config", str(bad)], capsys)[0] == 2
    bad.write_text("prime = seven\n")
    assert run(["trace", "--config", str(bad)], capsys)[0] == 2
    assert run(["trace", "--config", str(tmp_path / "missing.cfg")], capsys)[0] == 2


def test_distribution_csv_and_figure(tmp_path, capsys):
    out = tmp_path / "hist.csv"
    code, _, err = run(["distribution", "--prime", "211", "--bins", "20", "--out", str(out)], capsys)
    assert code == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["bin_left", "bin_right", "count", "empirical_density", "model_a", "model_b"]
    assert len(rows) == 21
    assert sum(int(r[2]) for r in rows[1:]) == 210
    assert (tmp_path / "hist.png").stat().st_size > 0
    assert "winner" in err


def test_distribution_byte_identical(tmp_path, capsys):
    paths = [tmp_path / f"h{i}.csv" for i in range(2)]
    for i, pth in enumerate(paths):
        run(["distribution", "--prime", "211", "--out", str(pth), "--workers", str(1 + i)], capsys)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert (tmp_path / "h0.png").read_bytes() == (tmp_path / "h1.png").read_bytes()


def test_moments(tmp_path, capsys):
    out = tmp_path / "m.json"
    code, _, _ = run(["moments", "--primes", "101,211", "--max-m", "3", "--out", str(out)], capsys)
    assert code == 0
    rep = json.loads(out.read_text())["reports"]
    assert [r["p"] for r in rep] == [101, 211]
    assert all("m3_sign" in r for r in rep)
    assert (tmp_path / "m.png").exists()
    code, _, _ = run(["moments", "--prime", "101", "--out", str(tmp_path / "n.json"), "--no-figure"], capsys)
    assert code == 0 and not (tmp_path / "n.png").exists()


def test_gn(capsys):
    code, out, _ = run(["gn", "--primes", "11,13", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))[1:]
    assert {r[2] for r in rows} == {"3g3", "9g9"}
    assert all(r[5] == "True" for r in rows)
    code, out, _ = run(["gn", "--prime", "13"], capsys)
    assert json.loads(out)["moments"][0]["link_exact"]
    assert run(["gn", "--prime", "13", "--lambda", "1"], capsys)[0] == 2


def test_gauss_and_jacobi(capsys):
    code, out, _ = run(["gauss", "--prime", "5", "--j", "2", "--format", "csv"], capsys)
    assert code == 0
    row = out.splitlines()[1].split(",")
    assert abs(float(row[2]) - 5**0.5) < 1e-9 and row[6] == "2"
    code, out, _ = run(["jacobi", "--prime", "11", "--j1", "0", "--j2", "0"], capsys)
    assert code == 0
    assert abs(json.loads(out)["sums"][0]["re"] - 9) < 1e-9


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "surfstat", "trace", "--prime", "7", "--lambda", "3"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("p,lambda")
    res = subprocess.run([sys.executable, "-m", "surfstat", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
