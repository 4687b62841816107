import csv
import os

import numpy as np
import pytest

from entroflux import cli
from entroflux.errors import ConfigError


def _rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


# config parsing

def test_empty_config_gives_defaults():
    cfg = cli.parse_config("")
    assert (cfg.cfl, cfg.q, cfg.eps, cfg.delta, cfg.theta) == (0.1, 10.0, 0.1, 1e-16, 0.1)
    assert cfg.sensor_mode == "exponential" and cfg.integrator == 3
    assert cli.parse_config(None) == cfg


def test_config_overrides_applied():
    cfg = cli.parse_config("cfl=0.2 flux=eckep scheme=hes")
    assert (cfg.cfl, cfg.flux, cfg.scheme) == (0.2, "eckep", "hes")
    cfg = cli.parse_config("# header\nnx=64  # grid\n\nt_final=0.5\nsensor-mode=quadratic")
    assert (cfg.nx, cfg.tfinal, cfg.sensor_mode) == (64, 0.5, "quadratic")


def test_flags_override_file():
    cfg = cli.parse_config("cfl=0.2\nflux=ec1", {"cfl": 0.3, "flux": None})
    assert cfg.cfl == 0.3 and cfg.flux == "ec1"


@pytest.mark.parametrize("text, key, line", [
    ("flux=unknown", "flux", None),
    ("cfl=0.1\nbogus=1", "bogus", 2),
    ("nx=abc", "nx", 1),
    ("cfl=2.0", "cfl", None),
    ("nx=0", "nx", None),
    ("justaword", "justaword", 1),
])
def test_config_errors_name_the_key(text, key, line):
    with pytest.raises(ConfigError) as err:
        cli.parse_config(text)
    assert err.value.key == key
    if line is not None:
        assert err.value.line == line


# verbs and outputs

def test_run_1d_writes_csv_and_diagnostics(tmp_path):
    assert cli.main(["run", "sod", "--out", str(tmp_path)]) == cli.EXIT_OK
    rows = _rows(tmp_path / "sod.csv")
    assert rows[0] == ["x", "rho", "u", "p", "e_int"]
    assert len(rows) == 101
    x, rho, u, p, e = (float(v) for v in rows[50])
    assert e == pytest.approx(p / (0.4 * rho), rel=1e-14)
    diag = _rows(tmp_path / "sod_diagnostics.csv")
    assert ",".join(diag[0]) == ("t,total_entropy,total_ke,res_rho,res_momx,res_momy,"
                                 "res_E,min_rho,min_p")
    assert float(diag[-1][0]) == pytest.approx(0.2)


def test_csv_uses_fifteen_significant_digits(tmp_path):
    cli.main(["run", "case5", "--tfinal", "0.01", "--out", str(tmp_path)])
    x = _rows(tmp_path / "case5.csv")[1][0]
    assert x == f"{0.005:.15g}"
    rho = _rows(tmp_path / "case5.csv")[1][1]
    assert len(rho.replace(".", "").lstrip("0")) <= 15


def test_run_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert cli.main(["run", "case1", "--scheme", "hes", "--out", str(d)]) == 0
    assert (a / "case1.csv").read_bytes() == (b / "case1.csv").read_bytes()


def test_run_2d_writes_vtk(tmp_path):
    code = cli.main(["run", "taylor_green", "--nx", "8", "--ny", "6", "--tfinal", "0.05",
                     "--out", str(tmp_path)])
    assert code == cli.EXIT_OK
    text = (tmp_path / "taylor_green.vtk").read_text().splitlines()
    assert text[0].startswith("# vtk DataFile") and "ASCII" in text
    assert "DIMENSIONS 9 7 1" in text and "CELL_DATA 48" in text
    for name in ("rho", "p", "mach", "entropy"):
        assert f"SCALARS {name} double 1" in text
    assert (tmp_path / "taylor_green_diagnostics.csv").exists()


def test_eoc_table_shape(tmp_path):
    code = cli.main(["eoc", "--flux", "eckep", "--levels", "3", "--tfinal", "0.5",
                     "--out", str(tmp_path)])
    assert code == cli.EXIT_OK
    rows = _rows(tmp_path / "eoc_eckep.csv")
    assert rows[0] == ["N", "l1_err", "eoc_l1", "l2_err", "eoc_l2"]
    assert [r[0] for r in rows[1:]] == ["40", "80", "160"]
    assert rows[1][2] == "" and rows[1][4] == ""
    assert float(rows[3][2]) > 0.5


def test_bench_rows_and_inputs(tmp_path):
    code = cli.main(["bench", "--out", str(tmp_path), "--seed", "3"])
    assert code == cli.EXIT_OK
    rows = _rows(tmp_path / "bench.csv")
    assert rows[0] == ["flux", "mean_ns", "stddev_ns"]
    assert [r[0] for r in rows[1:]] == ["EC1", "EC2", "ECKEP", "LLF", "Roe", "central"]
    assert all(float(r[1]) > 0 and float(r[2]) >= 0 for r in rows[1:])
    a = cli.bench_inputs(1000, seed=3)
    b = cli.bench_inputs(1000, seed=3)
    for u, v in zip(a, b):
        np.testing.assert_array_equal(u, v)
    assert np.all((a[0][:, 0] >= 0.1) & (a[0][:, 0] <= 10.0))
    assert np.all(np.abs(a[0][:, 1:3]) <= 5.0)


def test_bench_rejects_small_iteration_count(tmp_path):
    assert cli.main(["bench", "--iterations", "1000", "--out", str(tmp_path)]) == cli.EXIT_CONFIG


def test_list_cases(capsys):
    assert cli.main(["list-cases"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    for name in ("case1", "sod", "density_wave", "oblique_shock", "dmr_full"):
        assert name in out


# exit codes

def test_exit_config(tmp_path, capsys):
    assert cli.main(["run", "sod", "--flux", "bogus", "--out", str(tmp_path)]) == 2
    assert cli.main(["run", "no_such_case", "--out", str(tmp_path)]) == 2
    cfg = tmp_path / "run.cfg"
    cfg.write_text("cfl=0.1\nfoo=1\n")
    assert cli.main(["run", "sod", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_exit_positivity(tmp_path):
    code = cli.main(["run", "case2", "--flux", "central", "--scheme", "none",
                     "--out", str(tmp_path)])
    assert code == cli.EXIT_POSITIVITY


def test_exit_nonconvergence(tmp_path):
    code = cli.main(["run", "oblique_shock", "--max-steps", "3", "--out", str(tmp_path)])
    assert code == cli.EXIT_NONCONVERGENCE


def test_exit_io(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert cli.main(["run", "case5", "--tfinal", "0.01", "--out", str(blocker)]) == cli.EXIT_IO
    assert cli.main(["run", "sod", "--config", str(tmp_path / "missing.cfg")]) == cli.EXIT_IO


def test_thread_env(tmp_path, monkeypatch):
    monkeypatch.setenv("ENTROFLUX_THREADS", "0")
    assert cli.main(["run", "case5", "--tfinal", "0.01", "--out", str(tmp_path)]) == 2
    monkeypatch.setenv("ENTROFLUX_THREADS", "many")
    assert cli.main(["run", "case5", "--tfinal", "0.01", "--out", str(tmp_path)]) == 2
    monkeypatch.setenv("ENTROFLUX_THREADS", "1")
    assert cli.main(["run", "case5", "--tfinal", "0.01", "--out", str(tmp_path)]) == 0


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "entroflux", "list-cases"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "case1" in out.stdout
