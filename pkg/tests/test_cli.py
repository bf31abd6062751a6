import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from rabiam.cli import main, parse_value
from rabiam.csvio import emit_plot_script, read_run_csv, write_run_csv
from rabiam.errors import ConfigError, SchemaError
from rabiam.metrics import estimate_period
from rabiam.params import params_resonant
from rabiam.presets import (
    PRESET_IDS,
    RESONANCE_PHASE_GROUP,
    expand_preset,
    preset_config,
)
from rabiam.runner import RunConfig, config_from_mapping, execute
from rabiam.sweep import SUMMARY_COLUMNS, sweep
from rabiam.trajectory import MethodKind


def run_cli(*argv):
    return main([str(a) for a in argv])


def header(path):
    with open(path, encoding="utf-8") as fh:
        return fh.readline().strip().split(",")


def test_run_rwa_half_period(tmp_path):
    code = run_cli("run", "--methods", "rwa", "--eps3", 1.0, "--resonant",
                   "--duration", 2, "--samples", 5, "--out", tmp_path)
    assert code == 0
    t, cols = read_run_csv(tmp_path / "run.csv")
    assert t[1] == 0.5 and abs(cols["rwa"][1]) < 1e-12
    raw = (tmp_path / "run.csv").read_bytes()
    assert b"\r" not in raw and raw.startswith(b"t_scaled,P1_rwa\n")


def test_run_from_json(tmp_path):
    cfg = {"methods": ["nrwa", "rwa"], "params": {"Omega_R": 1, "eps1": 0.1, "eps2": 0.01},
           "init": {"theta": math.pi / 3, "phi": 0}, "duration_periods": 1, "samples": 101,
           "integrator": {"scheme": "trapezoid"}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert run_cli("run", "--config", path, "--out", tmp_path, "--name", "x") == 0
    assert header(tmp_path / "x.csv") == ["t_scaled", "P1_nrwa", "P1_rwa"]


def test_raw_time_flag(tmp_path):
    assert run_cli("run", "--methods", "rwa", "--omega", 3, "--Omega", 2, "--Omega-R", 2,
                   "--duration", 1, "--samples", 3, "--raw-time", "--out", tmp_path) == 0
    t, _ = read_run_csv(tmp_path / "run.csv")
    assert t[-1] == pytest.approx(math.pi, rel=1e-11)
    assert header(tmp_path / "run.csv")[0] == "t"


@pytest.mark.parametrize("argv, fragment", [
    (["--methods", "rwa", "--eps3", "0.1", "--resonant", "--duration", "0", "--samples", "5"], "duration"),
    (["--methods", "rwa", "--eps3", "0.1", "--resonant", "--duration", "1", "--samples", "1"], "samples"),
    (["--methods", "", "--eps3", "0.1", "--resonant", "--duration", "1", "--samples", "5"], "non-empty"),
    (["--methods", "am2_nr", "--eps3", "0.1", "--resonant", "--duration", "1", "--samples", "5"], "Delta != 0"),
    (["--methods", "am2_r", "--eps1", "0.5", "--eps2", "0.01", "--duration", "1", "--samples", "5"], "Delta = 0"),
    (["--methods", "rwa", "--eps1", "1", "--eps2", "1", "--duration", "1", "--samples", "5"], "positive"),
    (["--methods", "foo", "--eps3", "0.1", "--duration", "1", "--samples", "5"], "valid methods"),
])
def test_invalid_config_exits_2(tmp_path, capsys, argv, fragment):
    assert run_cli("run", *argv, "--out", tmp_path) == 2
    err = capsys.readouterr().err.strip()
    assert fragment in err and "\n" not in err
    assert not (tmp_path / "run.csv").exists()


def test_divergence_exits_3(tmp_path, capsys):
    code = run_cli("run", "--methods", "nrwa", "--eps1", 0.5, "--eps2", 0.01, "--duration", 10,
                   "--samples", 2001, "--dt", 0.00785, "--out", tmp_path)
    assert code == 3
    assert "diverged" in capsys.readouterr().err


def test_config_mapping_errors():
    base = {"methods": ["rwa"], "params": {"eps3": 0.1}, "duration_periods": 1, "samples": 3}
    assert config_from_mapping(base).params.resonant
    for bad in ({**base, "extra": 1},
                {**base, "params": {"eps3": 0.1, "eps1": 0.5}},
                {**base, "params": {"eps3": 0.1, "resonant": False}},
                {**base, "init": "excited"},
                {**base, "integrator": {"steps": 3}},
                {k: v for k, v in base.items() if k != "samples"}):
        with pytest.raises(ConfigError):
            config_from_mapping(bad)


def test_parse_value():
    assert parse_value("pi/6") == pytest.approx(math.pi / 6)
    assert parse_value("11pi/6") == pytest.approx(11 * math.pi / 6)
    assert parse_value("-pi") == pytest.approx(-math.pi)
    assert parse_value("0.25") == 0.25
    with pytest.raises(ConfigError):
        parse_value("tau")


def test_preset_column_sets(tmp_path):
    assert run_cli("figure", "fig1g", "--out", tmp_path) == 0
    assert header(tmp_path / "fig1g.csv") == ["t_scaled", "P1_nrwa", "P1_rwa", "P1_am2_nr", "P1_am1_nr"]
    assert run_cli("figure", "fig7d", "--out", tmp_path) == 0
    assert header(tmp_path / "fig7d.csv")[1:] == [
        "P1_nrwa", "P1_rwa", "P1_am2_nr", "P1_am1_nr", "P1_am2_r", "P1_am1_r"]


def test_figure_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run_cli("figure", "fig2h", "--out", a) == 0
    assert run_cli("figure", "fig2h", "--out", b) == 0
    assert (a / "fig2h.csv").read_bytes() == (b / "fig2h.csv").read_bytes()


def test_preset_catalogue():
    ids = set(PRESET_IDS)
    for fig, n in (("fig1", 8), ("fig2", 8), ("fig3", 4), ("fig4", 8), ("fig5", 8), ("fig6", 6), ("fig7", 4)):
        assert {f"{fig}{c}" for c in "abcdefgh"[:n]} <= ids
    assert "fig8j" not in ids and {"fig8i", "fig8k", "fig8m", RESONANCE_PHASE_GROUP} <= ids
    assert [name for name, _ in expand_preset(RESONANCE_PHASE_GROUP)] == [f"fig8{c}" for c in "abcdefghiklm"]
    with pytest.raises(ConfigError):
        preset_config("fig9a")


@pytest.mark.parametrize("pid, eps1, eps2, phase", [
    ("fig1a", -0.5, 0.4, None), ("fig1h", 0.5, 0.01, None), ("fig2a", -0.9, 0.01, None),
    ("fig4d", 0.5, 0.1, math.pi / 3), ("fig5h", 0.1, 0.01, math.pi / 3),
    ("fig6d", 0.5, 0.01, math.pi), ("fig7c", 5.0, 0.01, None),
])
def test_detuned_presets_match_panel_parameters(pid, eps1, eps2, phase):
    cfg = preset_config(pid)
    assert cfg.params.eps1 == pytest.approx(eps1, rel=1e-12)
    assert cfg.params.eps2 == pytest.approx(eps2, rel=1e-12)
    c1, c2 = cfg.init.c1, cfg.init.c2
    if phase is None:
        assert (c1, c2) == (1, 0)
    else:
        assert np.angle(c1 / c2) == pytest.approx(np.angle(np.exp(1j * phase)), abs=1e-12)


@pytest.mark.parametrize("pid, eps3, phase", [
    ("fig3a", 0.9, None), ("fig3d", 0.05, None), ("fig3p-c", 0.1, math.pi / 3),
    ("fig8d", 0.1, math.pi / 2), ("fig8k", 0.1, 3 * math.pi / 2), ("fig8m", 0.1, 11 * math.pi / 6),
])
def test_resonant_presets_match_panel_parameters(pid, eps3, phase):
    cfg = preset_config(pid)
    assert cfg.params.resonant and cfg.params.eps3 == pytest.approx(eps3, rel=1e-12)
    if phase is not None:
        assert np.angle(cfg.init.c1 / cfg.init.c2) == pytest.approx(np.angle(np.exp(1j * phase)), abs=1e-12)


def test_every_preset_expands_to_a_valid_config():
    for pid in PRESET_IDS:
        for _, cfg in expand_preset(pid):
            assert isinstance(cfg, RunConfig) and cfg.samples >= 2 and cfg.duration_periods > 0


def test_csv_round_trip(tmp_path):
    cfg = preset_config("fig3c")
    trajs = execute(cfg)
    path = write_run_csv(tmp_path / "r.csv", cfg.scaled_times(), {m: t.p1 for m, t in trajs.items()})
    t, cols = read_run_csv(path)
    np.testing.assert_allclose(t, cfg.scaled_times(), rtol=1e-11, atol=1e-15)
    for m, tr in trajs.items():
        np.testing.assert_allclose(cols[m.value], tr.p1, rtol=1e-11, atol=1e-15)
    p_mem = estimate_period(cfg.scaled_times(), trajs[MethodKind.RWA].p1)
    assert estimate_period(t, cols["rwa"]) == pytest.approx(p_mem, rel=1e-9)


def test_read_csv_schema_errors(tmp_path):
    bad = tmp_path / "bad.csv"
    for text in ("time,P1_rwa\n0,1\n", "t_scaled,P1_xyz\n0,1\n", "t_scaled,P1_rwa\n0,1,2\n", "t_scaled\n0\n", ""):
        bad.write_text(text)
        with pytest.raises(SchemaError):
            read_run_csv(bad)


def test_sweep_eps2(tmp_path):
    base = preset_config("fig1h")
    summary = sweep("eps2", [0.4, 0.1, 0.04, 0.01], base, tmp_path, workers=2)
    lines = summary.read_text().splitlines()
    assert lines[0].split(",") == list(SUMMARY_COLUMNS)
    assert len(lines) == 5
    assert sorted(p.name for p in tmp_path.glob("eps2_*.csv")) == [f"eps2_{i:03d}.csv" for i in range(4)]
    values = [float(line.split(",")[0]) for line in lines[1:]]
    assert values == [0.4, 0.1, 0.04, 0.01]
    assert all(line.split(",")[1] for line in lines[1:])


def test_sweep_phase_cli(tmp_path):
    values = ",".join(["0"] + [f"{k}pi/6" for k in range(1, 12)])
    code = run_cli("sweep", "--methods", "nrwa,rwa,am2_r,am1_r", "--eps3", 0.1, "--resonant",
                   "--duration", 1, "--samples", 401, "--axis", "phase", "--values", values,
                   "--workers", 1, "--out", tmp_path)
    assert code == 0
    assert len(list(tmp_path.glob("phase_*.csv"))) == 12


def test_sweep_crossover_point_needs_override(tmp_path):
    doc = {"methods": ["nrwa", "am2_nr", "am2_r"], "params": {"eps1": 0.5, "eps2": 0.01},
           "duration_periods": 1, "samples": 201, "sweep": {"axis": "eps1", "values": [1]}}
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps(doc))
    assert run_cli("sweep", "--config", path, "--out", tmp_path / "no") == 2
    doc["override_resonance_guard"] = True
    path.write_text(json.dumps(doc))
    assert run_cli("sweep", "--config", path, "--workers", 1, "--out", tmp_path / "yes") == 0
    assert header(tmp_path / "yes" / "eps1_000.csv")[1:] == ["P1_nrwa", "P1_am2_nr", "P1_am2_r"]


def test_sweep_is_all_or_nothing(tmp_path):
    base = preset_config("fig1h")
    with pytest.raises(ConfigError):
        sweep("eps2", [0.1, 0.9], base, tmp_path / "out", workers=1)
    assert not (tmp_path / "out").exists()
    assert run_cli("sweep", "--methods", "nrwa", "--eps1", 0.5, "--eps2", 0.01, "--duration", 1,
                   "--samples", 11, "--axis", "eps2", "--values", "0.1,0.9", "--out", tmp_path / "cli") == 2
    assert not (tmp_path / "cli").exists()


def test_plot_script_legend_order(tmp_path):
    assert run_cli("figure", "fig3a", "--out", tmp_path) == 0
    script = emit_plot_script(tmp_path / "fig3a.csv")
    text = script.read_text()
    order = [text.index(f"'P1_{m}'") for m in ("nrwa", "rwa", "am2_r", "am1_r")]
    assert order == sorted(order)
    assert "('P1_nrwa', 'NRWA', '-', 'forestgreen')" in text
    assert "('P1_rwa', 'RWA', '--', 'red')" in text
    assert "('P1_am2_r', 'AM2 (resonant)', ':', 'blue')" in text
    assert "('P1_am1_r', 'AM1 (resonant)', '-.', 'black')" in text


def test_plot_script_crossover_styles(tmp_path):
    assert run_cli("figure", "fig7a", "--out", tmp_path) == 0
    text = emit_plot_script(tmp_path / "fig7a.csv").read_text()
    assert "('P1_am2_r', 'AM2 (resonant)', '--', 'cyan')" in text
    assert "('P1_am1_r', 'AM1 (resonant)', '-.', 'gray')" in text


def test_plot_single_curve_renders(tmp_path):
    pytest.importorskip("matplotlib")
    cfg = RunConfig(("rwa",), params_resonant(1.0, 0.1), 1.0, 51)
    csv_path = write_run_csv(tmp_path / "one.csv", cfg.scaled_times(),
                             {m: t.p1 for m, t in execute(cfg).items()})
    assert run_cli("plot", csv_path, "--out", tmp_path / "scripts") == 0
    script = tmp_path / "scripts" / "one.py"
    assert script.read_text().count("'P1_") == 1
    env = {**os.environ, "MPLBACKEND": "Agg"}
    subprocess.run([sys.executable, str(script)], check=True, env=env, cwd=tmp_path)
    assert (tmp_path / "one.png").stat().st_size > 0


def test_plot_missing_file(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    with pytest.raises(SchemaError, match="nope.csv"):
        emit_plot_script(missing)
    assert run_cli("plot", missing) == 2
    assert "nope.csv" in capsys.readouterr().err


def test_plot_malformed_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y\n1,2\n")
    with pytest.raises(SchemaError):
        emit_plot_script(bad)


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "rabiam", "figure", "fig3d", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and (tmp_path / "fig3d.csv").exists()
