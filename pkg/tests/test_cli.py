import csv
import io
import math
import re
import subprocess
import sys

import numpy as np
import pytest

from decohere import NaturalParams, packet_state, p0
from decohere import cli
from decohere.analysis import QuadratureReport
from decohere.cli import main

NUM = re.compile(r"^-?\d\.\d{12}e[+-]\d{2,3}$|^(inf|nan)$")
ZUREK = ["--mass-g", "1", "--temperature-K", "300", "--sigma-cm", "0.01", "--d-cm", "1"]
GDA = ["--d-over-sigma", "20", "--d-over-lambda", "1"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def check_numeric_format(table):
    for row in table[1:]:
        for cell in row:
            if cell not in ("true", "false"):
                assert NUM.match(cell), cell


def test_figure1_csv(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "figure1", "--out", str(out), "--svg", str(tmp_path / "fig1.svg"))
    assert code == 0
    table = rows(out.read_text())
    assert ",".join(table[0]) == "x_over_sigma,sigmaP_dlam5,sigmaP_dlam1,sigmaP_T0"
    assert len(table) == 2402
    check_numeric_format(table)
    meta = (tmp_path / "fig1.meta").read_text()
    assert "engine_version = " in meta and "t_natural = 8.0" in meta and "kernel = free" in meta
    assert (tmp_path / "fig1.svg").read_text().startswith("<svg")


def test_figure1_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "figure1", "--out", str(a))
    run(capsys, "figure1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    _, stdout, _ = run(capsys, "figure1")
    assert stdout.encode() == a.read_bytes()


def test_figure1_curve_shapes(capsys):
    _, stdout, _ = run(capsys, "figure1")
    data = np.array(rows(stdout)[1:], dtype=float)
    x, solid, gda, cold = data.T
    centre = np.flatnonzero(x == 0)[0]
    assert cold[centre] > gda[centre]
    # solid curve: at most the single symmetric envelope minimum at x = 0, no fringe alternation
    win = np.abs(x) <= 5
    y = solid[win]
    slope = np.sign(np.diff(y))
    turns = np.flatnonzero(slope[1:] != slope[:-1])
    for i in turns:
        depth = abs(y[i + 1] - y[max(i - 40, 0)]) / y[i + 1]
        assert x[win][i + 1] == pytest.approx(0.0, abs=0.05) or depth < 1e-3
    assert len(turns) <= 1


def test_profile_single_packet(capsys):
    code, out, err = run(capsys, "profile", "--d-over-sigma", "0", "--t-temp", "0.5", "--t-natural", "3",
                         "--n-points", "241", "--x-halfwidth-sigma", "12")
    assert code == 0
    table = rows(out)
    assert ",".join(table[0]) == "x_over_sigma,sigmaP"
    check_numeric_format(table)
    data = np.array(table[1:], dtype=float)
    st = packet_state("free", 3.0, NaturalParams(0.0, 0.5))
    np.testing.assert_allclose(data[:, 1], p0(data[:, 0], st), rtol=1e-11)
    assert "normalization" in err and "pass" in err


def test_profile_zurek_regime_report(capsys):
    code, _, err = run(capsys, "profile", "--mass-g", "1", "--temperature-K", "300", "--sigma-cm", "1",
                       "--d-cm", "1")
    assert code == 0
    ratio = float(re.search(r"d/lambda_th = (\S+)", err).group(1))
    assert 1.8e20 <= ratio <= 2.1e20


def test_profile_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# GDA curve\nmode = natural\nd_over_sigma = 20\nd_over_lambda = 1  # d = lambda_th\n"
                   "n_points = 11\nx_halfwidth_sigma = 5\n")
    code, out, _ = run(capsys, "profile", "--config", str(cfg))
    assert code == 0 and len(rows(out)) == 12
    code, out, _ = run(capsys, "profile", "--config", str(cfg), "--n-points", "21")
    assert code == 0 and len(rows(out)) == 22


@pytest.mark.parametrize("argv", [
    ["profile", "--d-over-sigma", "20", "--t-temp", "0", "--d-over-lambda", "1"],
    ["profile", "--d-over-sigma", "20"],
    ["profile", "--d-over-sigma", "20", "--t-temp", "0", "--t-natural", "1", "--t-over-tmix", "0.2"],
    ["profile", "--d-over-sigma", "20", "--t-temp", "0", "--kernel", "markov"],
    ["profile", "--d-over-sigma", "0", "--t-temp", "0"],
    ["profile", "--d-over-sigma", "-1", "--t-temp", "0"],
    ["profile", "--mass-g", "1", "--temperature-K", "300"],
    ["profile", "--mass-g", "1", "--temperature-K", "300", "--sigma-cm", "1", "--d-cm", "1",
     "--d-over-sigma", "2"],
    ["profile", "--d-over-sigma", "x"],
    ["bogus"],
    ["sweep", "--d-over-sigma", "20", "--t-temp", "0", "--axis", "t", "--values", "2,1"],
    ["sweep", "--d-over-sigma", "20", "--t-temp", "0", "--axis", "mass", "--values", "1"],
    ["attenuation", "--d-over-sigma", "20", "--t-temp", "1", "--steps", "1"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 64


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("d_over_sigma 20\n")
    assert main(["profile", "--config", str(bad)]) == 64
    bad.write_text("d_over_sigma = 20\nfoo = 1\n")
    assert main(["profile", "--config", str(bad)]) == 64
    assert main(["profile", "--config", str(tmp_path / "missing.cfg")]) == 64


def test_io_error(tmp_path, capsys):
    assert main(["figure1", "--out", str(tmp_path / "no" / "such" / "dir.csv")]) == 2


def test_normalization_failure_exit(monkeypatch, capsys):
    monkeypatch.setattr(cli, "normalization_check",
                        lambda *a, **k: QuadratureReport(0.9, 1e-12, 1e-9, False, 0))
    assert main(["profile", *GDA]) == 3


def test_attenuation_zero_temperature(capsys):
    code, out, err = run(capsys, "attenuation", "--d-over-sigma", "20", "--t-temp", "0", "--steps", "5")
    assert code == 0
    assert "no finite decoherence time" in err
    data = np.array(rows(out)[1:], dtype=float)
    assert np.all(data[:, 1] == 1.0)


def test_attenuation_gaussian_regime(capsys):
    tau = math.sqrt(8) / (50 * 2)
    code, out, err = run(capsys, "attenuation", "--d-over-sigma", "50", "--t-temp", "4",
                         "--t-max", repr(tau), "--steps", "101")
    assert code == 0
    table = rows(out)
    assert ",".join(table[0]) == "t_natural,a_exact,a_gauss"
    check_numeric_format(table)
    data = np.array(table[1:], dtype=float)
    assert np.max(np.abs(data[:, 1] - data[:, 2])) < 0.01


def test_attenuation_prints_tau(capsys):
    code, _, err = run(capsys, "attenuation", "--d-over-sigma", "20", "--t-temp", "0.0625")
    assert code == 0 and "tau_d = 0.565685" in err


def test_attenuation_physical_seconds(capsys):
    code, _, err = run(capsys, "attenuation", *ZUREK)
    assert code == 0 and re.search(r"= \S+ s$", err.strip().splitlines()[-1])


def test_sweep_fig1(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--d-over-sigma", "20", "--t-temp", "0", "--axis", "d_over_lambda",
                     "--values", "0,1,5", "--out", str(out))
    assert code == 0
    table = rows(out.read_text())
    assert ",".join(table[0]) == "axis_value,a_at_tstar,visibility,tau_d,in_regime"
    check_numeric_format(table)
    vis = [float(r[2]) for r in table[1:]]
    a = [float(r[1]) for r in table[1:]]
    assert vis[0] == pytest.approx(1.0, abs=0.02)
    assert vis[1] == pytest.approx(0.63, abs=0.03)
    assert vis[2] < 1e-3
    assert a == sorted(a, reverse=True)
    assert [r[4] for r in table[1:]] == ["false", "false", "true"]


def test_sweep_extension_kernel_note(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, _, err = run(capsys, "sweep", "--d-over-sigma", "20", "--t-temp", "0.01", "--kernel", "ohmic-ht",
                       "--axis", "gamma_tilde", "--values", "0,0.01,0.1", "--out", str(out))
    assert code == 0
    assert "extension kernel" in err
    assert "extension kernel" in (tmp_path / "g.meta").read_text()


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", *ZUREK)
    assert code == 0
    assert 1.8e20 <= float(re.search(r"d/lambda_th = (\S+)", out).group(1)) <= 2.1e20
    code, _, _ = run(capsys, "classify", *GDA)
    assert code == 1
    code, out, _ = run(capsys, "classify", "--d-over-sigma", "20", "--t-temp", "0")
    assert code == 1 and "d/lambda_th = 0\n" in out
    code, _, _ = run(capsys, "classify", *GDA, "--threshold", "0.5")
    assert code == 0


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "decohere.cli", "classify", *GDA],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "outside" in proc.stdout
