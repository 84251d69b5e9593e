import csv
import json

import pytest

from facticity.cli import dispatch
from facticity.estimator import estimate
from facticity.synthetic import accreting_blocks


def read_csv(path):
    with open(path) as f:
        return list(csv.reader(f))


def test_curves(tmp_path):
    out = tmp_path / "c.csv"
    assert dispatch(["curves", "--k-list", "4,8", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["k", "s", "phi_collapse", "threshold_bits", "max_bound"]
    assert len(rows) == 1 + 2 * 101
    assert rows[-1] == ["8", "1.000000", "0.367160", "249.538429", "267.000000"]


def test_exact_cap_is_usage_error(capsys):
    assert dispatch(["exact", "--max-code-len", "40", "--all"]) == 1
    assert "30" in capsys.readouterr().err


def test_missing_input_is_runtime_error(capsys):
    assert dispatch(["estimate", "--input", "missing.txt"]) == 2
    assert "missing.txt" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    assert dispatch(["curves", "--bogus"]) == 1
    assert "--bogus" in capsys.readouterr().err


def test_exact_single_string(tmp_path):
    out = tmp_path / "e.json"
    assert dispatch(["exact", "--max-code-len", "10", "--string", "0110", "--json", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert (d["k2"], d["phi"], d["certified"], d["csoph"]) == (5, 0, True, 1)


def test_exact_all_csv_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert dispatch(["exact", "--max-code-len", "9", "--all", "--csv", "--workers", "1", "--out", str(a)]) == 0
    assert dispatch(["exact", "--max-code-len", "9", "--all", "--csv", "--workers", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = read_csv(a)
    assert rows[0] == ["x", "n", "k2", "phi", "k1", "delta", "rho", "certified", "label"]
    assert rows[1][:4] == ["", "0", "1", "0"]


def test_estimate_text_and_raw(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("0" * 2048 + "\n" + "0" * 2048 + "\n")
    out = tmp_path / "r.json"
    assert dispatch(["estimate", "--input", str(f), "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert (d["phi"], d["k2"], d["model"]) == (33, 33, "bernoulli")
    raw = tmp_path / "x.bin"
    raw.write_bytes(b"\x00" * 512)
    assert dispatch(["estimate", "--input", str(raw), "--raw", "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == d


def test_estimate_rejects_non_bits(tmp_path):
    f = tmp_path / "x.txt"
    f.write_text("0120")
    assert dispatch(["estimate", "--input", str(f)]) == 2


def test_sweep_csv_and_svg(tmp_path):
    out, svg = tmp_path / "s.csv", tmp_path / "s.svg"
    args = ["sweep", "--k", "4", "--grid", "5", "--reps", "2", "--seed", "3", "--out", str(out), "--svg", str(svg)]
    assert dispatch(args) == 0
    first = out.read_bytes()
    rows = read_csv(out)
    assert rows[0] == ["s", "p", "rep", "n", "k2_hat", "phi_hat", "rho_hat", "delta_hat",
                       "label", "phi_collapse", "threshold_bits"]
    assert len(rows) == 11
    assert svg.read_text().count("<polyline") == 2
    assert dispatch(args) == 0
    assert out.read_bytes() == first


def test_classify(tmp_path):
    xs = accreting_blocks(0)
    f = tmp_path / "series.txt"
    f.write_text("\n".join(xs) + "\n")
    out = tmp_path / "p.json"
    assert dispatch(["classify", "--input", str(f), "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["class"] == "factic"
    assert d["series"][0][1:] == [estimate(xs[0]).k2, estimate(xs[0]).phi]


def test_classify_too_short(tmp_path):
    f = tmp_path / "series.txt"
    f.write_text("0101\n0101\n")
    assert dispatch(["classify", "--input", str(f)]) == 2


def test_codec(capsys):
    assert dispatch(["codec", "encode", "--bits", "11001110"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["encoded"] == "000100111001110" and d["length"] == 15
    assert dispatch(["codec", "decode", "--bits", "010011"]) == 0
    assert json.loads(capsys.readouterr().out) == {"payload": "0", "rest": "11"}
    assert dispatch(["codec", "decode", "--bits", "01"]) == 2


def test_run(capsys):
    assert dispatch(["run", "--code", "010101101"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d == {"output": "01", "consumed_all": True, "steps": 3, "status": "ok"}


@pytest.mark.parametrize("argv", [[], ["nope"], ["run"], ["exact", "--string", "01", "--all"]])
def test_usage_errors(argv):
    assert dispatch(argv) == 1
