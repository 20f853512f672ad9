import json
import math

import pytest

from ccaswitch.cli import main
from ccaswitch.config import load_config, parse_number
from ccaswitch.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def rows_of(csv_text):
    lines = csv_text.strip().splitlines()
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def test_parse_number_sugar():
    assert parse_number("2pi*3e9") == pytest.approx(2 * math.pi * 3e9)
    assert parse_number("pi/4") == pytest.approx(math.pi / 4)
    assert parse_number("-0.5") == -0.5
    assert parse_number("3e6") == 3e6
    assert parse_number("2pi") == pytest.approx(2 * math.pi)
    with pytest.raises(ConfigError):
        parse_number("2banana")


def test_load_text_and_json_configs(tmp_path):
    txt = tmp_path / "a.cfg"
    txt.write_text("# comment\nlattice.t = 1.5\nsweep.k = pi/8, pi/4\n")
    cfg = load_config(str(txt))
    assert cfg["lattice.t"] == 1.5
    assert cfg["sweep.k"] == pytest.approx([math.pi / 8, math.pi / 4])

    js = tmp_path / "a.json"
    js.write_text(json.dumps({"lattice.t": "2pi", "sweep.k": [0.1, "pi/2"]}))
    cfg2 = load_config(str(js))
    assert cfg2["lattice.t"] == pytest.approx(2 * math.pi)
    assert cfg2["sweep.k"][1] == pytest.approx(math.pi / 2)


def test_transmission_sweep_rows(capsys, tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("sweep.k = pi/4, pi/2\n"
                   "sweep.lambda_min = -1\nsweep.lambda_max = 1\n"
                   "sweep.lambda_step = 0.5\n")
    code, out, _ = run(capsys, "transmission-sweep", "--config", str(cfg))
    assert code == 0
    header, rows = rows_of(out)
    assert header == ["lambda", "k", "T", "R"]
    table = {(float(r[0]), float(r[1])): (float(r[2]), float(r[3]))
             for r in rows}
    assert table[(0.0, math.pi / 4)][0] == pytest.approx(1.0)
    assert table[(-1.0, math.pi / 2)] == (0.0, 1.0)
    assert table[(1.0, math.pi / 2)][0] == pytest.approx(0.64)
    for t_coef, r_coef in table.values():
        assert t_coef + r_coef == pytest.approx(1.0, abs=1e-12)


def test_dispersion_default(capsys):
    code, out, _ = run(capsys, "dispersion")
    assert code == 0
    header, rows = rows_of(out)
    assert header == ["k", "energy", "group_velocity"]
    assert len(rows) == 201


def test_scatter_sim_small_grid(capsys, tmp_path):
    cfg = tmp_path / "sc.cfg"
    cfg.write_text("scatter.lambda = -1, 0\nscatter.k0 = pi/2\n")
    code, out, _ = run(capsys, "scatter-sim", "--config", str(cfg),
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["max_abs_error"] <= 0.02
    by_lam = {row[0]: row for row in data["rows"]}
    assert by_lam[-1.0][3] <= 1e-6


def test_scatter_sim_rejects_slow_k0(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("scatter.k0 = 0.01\n")
    code, _, err = run(capsys, "scatter-sim", "--config", str(cfg))
    assert code == 3
    assert json.loads(err)["error"] == "precondition"


def test_config_error_exit_code(capsys, tmp_path):
    cfg = tmp_path / "broken.cfg"
    cfg.write_text("sweep.lambda_step = -1\n")
    code, _, err = run(capsys, "transmission-sweep", "--config", str(cfg))
    assert code == 2
    assert json.loads(err)["error"] == "config"
    code2, _, _ = run(capsys, "dispersion", "--config", "/nonexistent.cfg")
    assert code2 == 2


def test_coupler_design_defaults(capsys):
    code, out, _ = run(capsys, "coupler-design", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["g_min"] == pytest.approx(1.1e6, rel=0.5)
    assert data["summary"]["g_max"] == pytest.approx(23e6, rel=0.5)
    cols = data["columns"]
    harmonic = cols.index("harmonic_regime_ok")
    cos_col = cols.index("cos_pi_f")
    for row in data["rows"]:
        assert row[harmonic] == (row[cos_col] >= 0.05 - 1e-12)


def test_switch_map_csv_byte_stable(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["switch-map", "--out", str(out1)]) == 0
    assert main(["switch-map", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_validate_adiabatic_default(capsys):
    code, out, _ = run(capsys, "validate-adiabatic", "--format", "json")
    assert code == 0
    data = json.loads(out)
    rel = data["columns"].index("rel_diff")
    diffs = [row[rel] for row in data["rows"]]
    assert all(d <= 0.05 for d in diffs)
    assert diffs == sorted(diffs, reverse=True)


def test_units_flag_consistency(capsys):
    _, out_paper, _ = run(capsys, "coupler-design", "--units", "paper",
                          "--format", "json")
    _, out_si, _ = run(capsys, "coupler-design", "--units", "si",
                       "--format", "json")
    a = json.loads(out_paper)["summary"]
    b = json.loads(out_si)["summary"]
    assert a["g_min"] == pytest.approx(b["g_min"], rel=1e-9)
    assert a["g_max"] == pytest.approx(b["g_max"], rel=1e-9)
