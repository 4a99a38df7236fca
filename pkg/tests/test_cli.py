import csv
import io
import json
import math

import pytest

from ring_entropy import __version__, measures
from ring_entropy.cli import ConfigError, EXIT_COMPUTE, EXIT_IO, EXIT_OK, EXIT_USAGE, load_config, parse_config_text, run
from ring_entropy.model import Orbital


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_params_example():
    code, out, _ = _run(["params", "--a", "20", "--nu", "0", "--m", "0"])
    assert code == EXIT_OK
    (row,) = _rows(out)
    assert float(row["lambda"]) == pytest.approx(4.4721360, abs=1e-7)
    assert float(row["alpha_th"]) == pytest.approx(0.1545085, abs=1e-7)
    assert float(row["r_eff"]) == 1.0


def test_bound_example():
    code, out, _ = _run(["bound", "--alpha", "1"])
    assert code == EXIT_OK
    assert float(_rows(out)[0]["f"]) == pytest.approx(4.2894, abs=1e-4)


def test_figure_tsallis_sides():
    code, out, _ = _run(["figure", "tsallis-sides", "--a", "20", "--steps", "6"])
    assert code == EXIT_OK
    rows = _rows(out)
    assert list(rows[0]) == ["alpha", "t_rho[0,0]", "t_gamma[0,0]", "t_rho[0,2]", "t_gamma[0,2]", "t_rho[1,0]",
                             "t_gamma[1,0]"]
    assert len(rows) == 6
    last = rows[-1]
    assert float(last["alpha"]) == 1.0
    assert float(last["t_rho[1,0]"]) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-12)
    # the n = m = 0 ring saturates at alpha = 1/2
    assert float(rows[0]["t_rho[0,0]"]) == pytest.approx(float(rows[0]["t_gamma[0,0]"]), rel=1e-6)


@pytest.mark.parametrize("preset", ["renyi-sums", "delta-nu", "renyi-ab-position", "renyi-ab-momentum"])
def test_other_figure_presets(preset):
    code, out, _ = _run(["figure", preset, "--a", "20", "--steps", "3"])
    assert code == EXIT_OK
    rows = _rows(out)
    assert len(rows) == 3 and len(rows[0]) > 2


def test_figure_momentum_na_cells():
    code, out, _ = _run(["figure", "renyi-ab-momentum", "--orbitals", "0,-1", "--alpha", "0.45", "--start", "0",
                      "--stop", "1", "--steps", "3"])
    assert code == EXIT_OK
    cells = [r["R_gamma[0,-1](alpha=0.45)"] for r in _rows(out)]
    assert cells[0] != "NA" and cells[1] != "NA" and cells[2] == "NA"


def test_below_threshold_exit_code_and_allow_missing():
    argv = ["entropy", "--nu", "1", "--m", "-1", "--alpha", "0.4,1"]
    code, out, err = _run(argv)
    assert code == EXIT_COMPUTE and out == "" and "threshold" in err
    code, out, _ = _run(argv + ["--allow-missing"])
    assert code == EXIT_OK
    rows = _rows(out)
    assert rows[0]["R_gamma"] == "NA" and rows[0]["R_rho"] != "NA"
    assert rows[1]["R_gamma"] != "NA"


def test_usage_errors():
    assert _run([])[0] == EXIT_USAGE
    assert _run(["nosuch"])[0] == EXIT_USAGE
    assert _run(["params", "--alpha", "one"])[0] == EXIT_USAGE
    assert _run(["params", "--a", "-1"])[0] == EXIT_USAGE
    assert _run(["params", "--n", "1", "--orbitals", "0,0"])[0] == EXIT_USAGE


def test_io_errors(tmp_path):
    assert _run(["params", "--config", str(tmp_path / "missing.cfg")])[0] == EXIT_IO
    assert _run(["params", "-o", str(tmp_path / "no" / "dir.csv")])[0] == EXIT_IO


def test_output_file(tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = _run(["bound", "--alpha", "2", "-o", str(path)])
    assert code == EXIT_OK and out == ""
    assert float(_rows(path.read_text())[0]["f"]) == pytest.approx(4.199002276583238, abs=1e-14)


def test_empty_config_gives_defaults(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    cfg = load_config(path)
    assert (cfg.spec.a, cfg.spec.nu, cfg.spec.field_ratio, cfg.spec.omega0) == (0.0, 0.0, 0.0, 0.5)
    assert cfg.orbitals == [Orbital(0, 0)] and cfg.alpha_grid == [1.0]
    assert cfg.output_format == "csv" and cfg.output_path is None


def test_flag_overrides_file(tmp_path):
    path = tmp_path / "ring.cfg"
    path.write_text("a=20\n")
    assert load_config(path).spec.a == 20.0
    assert load_config(path, {"a": 5.0}).spec.a == 5.0
    code, out, _ = _run(["params", "--config", str(path), "--a", "5"])
    assert code == EXIT_OK and float(_rows(out)[0]["lambda"]) == pytest.approx(math.sqrt(5))


def test_config_sections_and_comments():
    text = """
    # ring setup
    [ring]
    a = 20   # antidot
    nu = 0.25
    [run]
    orbitals = 0,0; 1,-1
    alpha = 0.6, 2
    format = JSON
    [tolerances]
    momentum = 1e-9
    """
    v = parse_config_text(text)
    assert v["a"] == 20.0 and v["nu"] == 0.25
    assert v["orbitals"] == [(0, 0), (1, -1)] and v["alpha"] == [0.6, 2.0]
    assert v["format"] == "json" and v["tol_momentum"] == 1e-9


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("a = 1\nalpha=one\n", 2, "alpha"),
        ("a = 1\n\nfoo = 3\n", 3, "valid keys"),
        ("[ring]\nalpha = 1\n", 2, "valid keys: a, omega0, field_ratio, nu"),
        ("[nowhere]\n", 1, "valid sections"),
        ("a 1\n", 1, "key = value"),
        ("orbitals = 1\n", 1, "pairs"),
        ("[tolerances]\nmomentum = x\n", 2, "momentum"),
    ],
)
def test_config_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as exc:
        parse_config_text(text)
    assert exc.value.line == line
    assert f"line {line}:" in str(exc.value) and fragment in str(exc.value)


def test_config_error_exit_code(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("a = 1\nalpha=one\n")
    code, _, err = _run(["params", "--config", str(path)])
    assert code == EXIT_USAGE and "line 2" in err


def test_nonpositive_tolerance_rejected(tmp_path):
    path = tmp_path / "tol.cfg"
    path.write_text("[tolerances]\nmomentum = 0\n")
    assert _run(["params", "--config", str(path)])[0] == EXIT_USAGE


def test_json_metadata_and_null_cells():
    code, out, _ = _run(["entropy", "--nu", "1", "--m", "-1", "--alpha", "0.4", "--allow-missing", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    meta = doc["metadata"]
    assert meta["version"] == __version__ and meta["omega0"] == 0.5 and "hbar" in meta["units"]
    assert meta["command"] == "entropy"
    assert set(meta["column_tags"]) == set(doc["rows"][0])
    assert doc["rows"][0]["R_gamma"] is None


def test_json_round_trip_is_bit_identical(tmp_path):
    argv = ["uncertainty", "--a", "20", "--nu", "0.25", "--field-ratio", "2", "--orbitals", "0,0;1,-1;0,2",
            "--alpha", "0.6,1,2.5", "--format", "json"]
    code, first, _ = _run(argv)
    assert code == EXIT_OK
    path = tmp_path / "first.json"
    path.write_text(first)
    code, second, _ = _run(["uncertainty", "--config", str(path), "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(second) == json.loads(first)
    # and again through the file alone, run twice
    assert _run(["uncertainty", "--config", str(path), "--format", "json"])[1] == second


def test_momentum_tolerance_override_is_scoped(tmp_path):
    before = measures.MOMENTUM_TOL
    code, out, _ = _run(["entropy", "--a", "20", "--n", "1", "--alpha", "2", "--momentum-tol", "1e-8", "--format",
                         "json"])
    assert code == EXIT_OK
    assert json.loads(out)["metadata"]["config"]["tolerances"] == {"momentum": 1e-8}
    assert measures.MOMENTUM_TOL == before


def test_csv_conventions():
    code, out, _ = _run(["spectrum", "--a", "1", "--n-max", "1", "--m-max", "1"])
    assert code == EXIT_OK
    rows = _rows(out)
    assert len(rows) == 6
    energies = [float(r["energy"]) for r in rows]
    assert energies == sorted(energies)
    assert all("," not in v and ";" not in v for r in rows for v in r.values())


def test_sweep_command():
    code, out, _ = _run(["sweep", "--a", "20", "--orbitals", "0,0", "--alpha", "2", "--steps", "5"])
    assert code == EXIT_OK
    rows = _rows(out)
    assert [float(r["nu"]) for r in rows] == [-0.5, -0.25, 0.0, 0.25, 0.5]
    assert list(rows[0]) == ["nu", "R_rho[0,0]", "R_gamma[0,0]", "E[0,0]", "J[0,0]"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
