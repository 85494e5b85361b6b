import csv
import json
import subprocess
import sys

import pytest

from relaxbell import bounds, hvmodel, metrics, saturate
from relaxbell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_output(capsys):
    assert run(capsys, "bound", "--i2", "0", "--s12", "0", "--m2", "0")[:2] == (0, "2.000000 SubGap\n")
    code, out, _ = run(capsys, "bound", "--i2", "0.2", "--s12", "0.6", "--m2", "0.4")
    assert out == f"{bounds.chsh_bound(0.2, 0.6, 0.4).value:.6f} CrossGap\n"


def test_feasible_exit_codes(capsys):
    assert run(capsys, "feasible", "--i2", "0.333", "--s12", "0.333", "--m2", "0", "--v", "0.828")[0] == 3
    assert run(capsys, "feasible", "--i2", "0.3", "--s12", "0.42", "--m2", "0", "--v", "0.828")[0] == 0


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "bound", "--i2", "0.9", "--s12", "0", "--m2", "0")[0] == 2
    assert run(capsys, "bound", "--i2", "0.1")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "bound", "--i2", "0", "--s12", "0", "--m2", "0", "--extra", "1")[0] == 2
    assert run(capsys, "metrics", "--model", "/nonexistent/model.json")[0] == 2


def test_invalid_model_exits_4(capsys, tmp_path):
    doc = saturate.table1_model(0.5).to_dict()
    doc["weights"]["xy"] = [0.7, 0.7]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "metrics", "--model", str(path))
    assert code == 4
    assert "sums to" in err


def test_saturate_metrics_bound_round_trip(capsys, tmp_path):
    path = tmp_path / "model.json"
    code, out, _ = run(capsys, "saturate", "--kind", "combined", "--i2", "0.2", "--s12", "0.6", "--m2", "0.4", "--out", str(path))
    assert code == 0
    model = hvmodel.load_model(path)
    assert out == f"chsh {hvmodel.chsh(model):.6f}\n"

    code, out, _ = run(capsys, "metrics", "--model", str(path))
    printed = dict(line.split() for line in out.splitlines())
    prof = metrics.profile(model)
    assert printed == {k: f"{v:.6f}" for k, v in prof.to_dict().items()}

    measured = bounds.chsh_bound(prof.i2, prof.s12, prof.m2)
    assert measured.value == pytest.approx(hvmodel.chsh(model), abs=1e-9)


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--kind", "mi", "--i2", "0.2", "--s12", "0.7"], lambda: saturate.mi_saturating_model(0.2, 0.7)),
        (["--kind", "table1", "--p", "0.3"], lambda: saturate.table1_model(0.3)),
    ],
)
def test_saturate_writes_library_model(capsys, tmp_path, argv, expected):
    path = tmp_path / "m.json"
    assert run(capsys, "saturate", *argv, "--out", str(path))[0] == 0
    assert hvmodel.load_model(path) == expected()


def test_oracle_writes_argmax(capsys, tmp_path):
    model_path, report_path = tmp_path / "argmax.json", tmp_path / "report.json"
    code, out, _ = run(
        capsys, "oracle", "--i2", "0.2", "--s12", "0.6", "--m2", "0.4", "--resolution", "16",
        "--out", str(model_path), "--report", str(report_path),
    )
    assert code == 0
    assert "best_chsh 3.360000" in out and "sound True" in out
    report = json.loads(report_path.read_text())
    assert report["best_chsh"] == pytest.approx(3.36, abs=1e-9)
    assert hvmodel.chsh(hvmodel.load_model(model_path)) == pytest.approx(3.36, abs=1e-9)


def test_tradeoff_csv(capsys, tmp_path):
    path = tmp_path / "fig3.csv"
    assert run(capsys, "tradeoff", "--figure", "3", "--resolution", "100", "--out", str(path))[0] == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["m2", "v"]
    nearest = min(rows[1:], key=lambda r: abs(float(r[0]) - 0.828))
    assert float(nearest[1]) == pytest.approx(0.828, abs=0.011)
    assert float(nearest[1]) == pytest.approx(float(nearest[0]), abs=1e-11)
    assert path.read_text() == bounds.tradeoff_grid(3, 100).to_csv()


def test_identical_invocations_identical_outputs(capsys, tmp_path):
    for fig in (1, 2, 3, 4):
        a, b = tmp_path / f"a{fig}.csv", tmp_path / f"b{fig}.csv"
        run(capsys, "tradeoff", "--figure", str(fig), "--resolution", "20", "--out", str(a))
        run(capsys, "tradeoff", "--figure", str(fig), "--resolution", "20", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


def test_simulate(capsys, tmp_path):
    path = tmp_path / "t1.json"
    hvmodel.save_model(saturate.table1_model(0.5), path)
    code, out, _ = run(capsys, "simulate", "--model", str(path), "--runs", "200000", "--seed", "3")
    assert code == 0
    expected = hvmodel.sample_experiment(saturate.table1_model(0.5), 200000, 3).estimate
    assert out.splitlines()[0] == f"estimate {expected:.6f}"
    assert run(capsys, "simulate", "--model", str(path), "--runs", "0")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "relaxbell", "bound", "--i2", "0", "--s12", "1", "--m2", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "4.000000 CrossGap\n"
