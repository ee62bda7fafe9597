import csv
import io
import json
import subprocess
import sys

import pytest

from dickedepth.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, list(csv.DictReader(io.StringIO(out))), err


def test_threshold(capsys):
    code, rows, _ = run(["threshold", "--N", "4"], capsys)
    assert code == 0
    assert [(r["r"], r["p_num"], r["p_den"]) for r in rows] == [
        ("0", "1", "1"),
        ("1", "3", "4"),
        ("2", "2", "3"),
        ("3", "3", "4"),
        ("4", "1", "1"),
    ]
    assert (rows[2]["m0_star"], rows[2]["j_star"]) == ("2", "1")


def test_threshold_single_r(capsys):
    code, rows, _ = run(["threshold", "--N", "100", "--r", "50"], capsys)
    assert code == 0 and len(rows) == 1
    assert (rows[0]["p_num"], rows[0]["p_den"]) == ("50", "99")


def test_qx_with_witness(capsys, tmp_path):
    path = tmp_path / "w.json"
    code, rows, _ = run(["qx", "--N", "4", "--X", "1-2", "--witness", str(path)], capsys)
    assert code == 0
    lo, hi = float(rows[0]["q_lower"]), float(rows[0]["q_upper"])
    assert lo == pytest.approx(0.8354102, abs=1e-6) and lo <= hi
    assert json.loads(path.read_text())["value"] == pytest.approx(lo)


def test_rdm(capsys):
    code, rows, _ = run(["rdm", "--N", "4", "--r", "2", "--pop", "1"], capsys)
    assert code == 0
    assert float(rows[0]["min_eig_pt"]) == pytest.approx(-1 / 6)
    assert float(rows[0]["p_prime"]) == pytest.approx(0.6)


def test_rdm_rational_population(capsys):
    code, rows, _ = run(["rdm", "--N", "4", "--r", "2", "--pop", "3/5"], capsys)
    assert code == 0
    assert float(rows[0]["min_eig_pt"]) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("hits,verdict", [(560, "certified_depth_N"), (520, "inconclusive")])
def test_certify(capsys, tmp_path, hits, verdict):
    path = tmp_path / "rec.csv"
    path.write_text(f"# N=100 shots=1000\nr,count\n50,{hits}\n")
    code, rows, _ = run(["certify", "--input", str(path), "--target", "50"], capsys)
    assert code == 0
    assert rows[0]["verdict"] == verdict


def test_certify_window_jsonl(capsys, tmp_path):
    path = tmp_path / "rec.jsonl"
    path.write_text('{"N": 4, "shots": 1000}\n{"r": 1, "count": 500}\n{"r": 2, "count": 500}\n')
    code, rows, _ = run(["certify", "--input", str(path), "--format", "jsonl", "--target", "1,2"], capsys)
    assert code == 0
    assert rows[0]["target"] == "1-2" and rows[0]["verdict"] == "certified_depth_N"


def test_certify_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("# N=100 shots=1000\n50,560\n"))
    code, rows, _ = run(["certify", "--input", "-", "--target", "50", "--noise", "white"], capsys)
    assert code == 0 and "PPT" in rows[0]["notes"]


def test_figure_to_file(capsys, tmp_path):
    path = tmp_path / "fig.csv"
    assert main(["figure", "--which", "fig2b", "--n-max", "10", "--output", str(path)]) == 0
    assert capsys.readouterr().out == ""
    rows = list(csv.DictReader(path.open()))
    assert [(r["N"], float(r["p_prime"])) for r in rows][1] == ("4", 0.6)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["threshold"],
        ["threshold", "--N", "x"],
        ["figure", "--which", "fig9", "--n-max", "4"],
        ["threshold", "--N", "1"],
        ["rdm", "--N", "4", "--r", "2", "--pop", "1.5"],
        ["qx", "--N", "4", "--X", "3-9"],
        ["certify", "--input", "/nonexistent/file.csv", "--target", "1"],
        ["figure", "--which", "fig1a", "--n-max", "500"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert capsys.readouterr().err


@pytest.mark.parametrize(
    "text,extra",
    [
        ("# N=100 shots=1000\n50,10\n50,20\n", []),
        ("# N=100 shots=10\n50,20\n", []),
        ("# N=100 shots=1000\n50,560\n", ["--N", "50"]),
    ],
)
def test_parse_errors_exit_2(text, extra, capsys, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    assert main(["certify", "--input", str(path), "--target", "50", *extra]) == 2
    assert "error" in capsys.readouterr().err


def test_numerical_failure_exit_3(capsys, monkeypatch):
    from dickedepth import cli
    from dickedepth.errors import NumericalError

    def boom(*_):
        raise NumericalError("synthetic")

    monkeypatch.setattr(cli, "rdm_scan_row", boom)
    assert main(["rdm", "--N", "4", "--r", "2", "--pop", "1"]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dickedepth", "threshold", "--N", "2"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.splitlines()[0] == "N,r,p_num,p_den,p_float,m0_star,j_star"
    assert proc.stdout.splitlines()[2].startswith("2,1,1,2,0.5")
