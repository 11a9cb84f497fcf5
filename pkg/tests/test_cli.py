"""Command-line behavior: CSV output, exit codes, determinism, atomicity."""

import math
import os

import pytest

from crnoma.cli import main

EXACT_SCENARIO = """
label: exact

env:
  bandwidth_hz: 1.0
  noise_psd_dbm_hz: 30.0
  carrier_ghz: 5.0

sensing:
  transmit_time_s: 1.0
  sense_time_s: 1.0
  p_false_alarm: 0.1
  p_detection: 0.9

devices:
  hrc_power: 0.7
  mrc_power: 0.3
  hrc_gains: [1.0]
  mrc_gains: [0.5]

primary:
  power: 0.0
  gain: 1.0

overheads:
  circuit_power: 1.0
  sensing_power: 7.3890560989306495

sweep:
  start: 0.0
  stop: 1.0
  step: 0.5
"""

SYMMETRIC_SCENARIO = """
label: symmetric

env:
  bandwidth_hz: 1.0e+6
  noise_psd_dbm_hz: -174.0
  carrier_ghz: 5.0

sensing:
  transmit_time_s: 0.125e-3
  sense_time_s: 0.125e-3
  p_false_alarm: 0.5
  p_detection: 0.5

devices:
  hrc_power: 0.7
  mrc_power: 0.3
  hrc_gains: [1.0e-13]
  mrc_gains: [8.0e-14]

primary:
  power: 0.0
  gain: 1.5e-14

overheads:
  circuit_power: 99.0
  sensing_power: 1.0
"""

INFEASIBLE_SCENARIO = """
label: infeasible

env:
  bandwidth_hz: 1.0e+6
  noise_psd_dbm_hz: -174.0
  carrier_ghz: 5.0

sensing:
  transmit_time_s: 0.125e-3
  sense_time_s: 0.125e-3
  p_false_alarm: 0.1
  p_detection: 0.9

devices:
  hrc_power: 0.7
  mrc_power: 0.3
  hrc_gains: [1.0e-18]
  mrc_gains: [8.0e-19]

primary:
  power: 0.0
  gain: 1.5e-14

overheads:
  circuit_power: 99.0
  sensing_power: 1.0
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def data_rows(csv_text):
    return [line for line in csv_text.splitlines() if line and not line.startswith("#")]


def test_sweep_csv_structure(tmp_path, default_scenario):
    out = tmp_path / "hrc_effectual.csv"
    rc = main(["sweep", "--state", "effectual", "--device", "hrc", "--out", str(out)])
    assert rc == 0
    text = out.read_text()
    lines = text.splitlines()
    meta = [line for line in lines if line.startswith("#")]
    assert any("scenario_hash" in line for line in meta)
    assert any("unit_mode: watt" in line for line in meta)
    assert any("infeasible_pairs: 0" in line for line in meta)
    rows = data_rows(text)
    header, body = rows[0], rows[1:]
    assert header == (
        "p_x,throughput_bps_original,throughput_bps_optimized,"
        "ee_original,ee_optimized,improvement_pct"
    )
    assert len(body) == 101
    assert all(row.count(",") == 5 for row in body)


def test_sweep_is_byte_deterministic(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    main(["sweep", "--state", "interference", "--device", "mrc", "--out", str(first)])
    main(["sweep", "--state", "interference", "--device", "mrc", "--out", str(second)])
    assert first.read_bytes() == second.read_bytes()


def test_sweep_improvement_constant_off_origin(tmp_path):
    out = tmp_path / "sweep.csv"
    main(["sweep", "--state", "effectual", "--device", "hrc", "--out", str(out)])
    body = data_rows(out.read_text())[1:]
    first = body[0].split(",")
    assert float(first[0]) == 0.0
    assert first[5] == "nan"
    improvements = [float(row.split(",")[5]) for row in body[1:]]
    spread = max(improvements) - min(improvements)
    assert spread <= 1e-9 * abs(improvements[0])
    assert all(i > 50.0 for i in improvements)


def test_sweep_interference_matches_effectual_without_primary(tmp_path):
    """With no primary power and equal detection weights the states coincide."""
    scenario = write(tmp_path, "sym.yaml", SYMMETRIC_SCENARIO)
    eff = tmp_path / "eff.csv"
    intf = tmp_path / "intf.csv"
    main(["sweep", scenario, "--state", "effectual", "--device", "hrc", "--out", str(eff)])
    main(["sweep", scenario, "--state", "interference", "--device", "hrc", "--out", str(intf)])
    assert data_rows(eff.read_text()) == data_rows(intf.read_text())


def test_sweep_to_stdout(capsys):
    rc = main(["sweep", "--state", "effectual", "--device", "mrc"])
    assert rc == 0
    captured = capsys.readouterr().out
    assert "p_x,throughput_bps_original" in captured
    assert len(data_rows(captured)) == 102  # header + 101 rows


def test_optimize_exact_power(tmp_path, capsys):
    scenario = write(tmp_path, "exact.yaml", EXACT_SCENARIO)
    rc = main(["optimize", scenario, "--state", "effectual"])
    assert rc == 0
    out = capsys.readouterr().out
    expected = math.e**2 - 1.0
    assert f"{expected:.12e}" in out


def test_optimize_flags_infeasible_rows(tmp_path, capsys):
    scenario = write(tmp_path, "infeasible.yaml", INFEASIBLE_SCENARIO)
    rc = main(["optimize", scenario, "--state", "effectual"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "no" in out
    assert "nan" in out


def test_optimize_cascaded_changes_only_mrc(tmp_path, capsys):
    rc = main(["optimize", "--state", "interference", "--coupling", "nominal"])
    assert rc == 0
    nominal = capsys.readouterr().out
    rc = main(["optimize", "--state", "interference", "--coupling", "cascaded"])
    assert rc == 0
    cascaded = capsys.readouterr().out

    def rows_for(device, text):
        return [line for line in text.splitlines() if f"  {device}" in line]

    assert rows_for("hrc", nominal) == rows_for("hrc", cascaded)
    assert rows_for("mrc", nominal) != rows_for("mrc", cascaded)


def test_optimize_csv_output(tmp_path):
    out = tmp_path / "optima.csv"
    rc = main(["optimize", "--state", "effectual", "--out", str(out)])
    assert rc == 0
    rows = data_rows(out.read_text())
    assert rows[0] == "pair,device,feasible,p_star_w,ee_bps_per_watt,lambert_arg"
    assert len(rows) == 11  # header + 5 hrc + 5 mrc


def test_pathloss_command(capsys):
    rc = main(["pathloss", "--d", "100", "--f", "5", "--omega", "0.5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "los_db: 85.979400" in out
    assert "nlos_db: 114.273220" in out
    assert "average_db: 100.126310" in out
    assert "power_gain: 9.713348929289e-11" in out


def test_pathloss_omega_one_is_los(capsys):
    rc = main(["pathloss", "--d", "100", "--f", "5", "--omega", "1.0"])
    assert rc == 0
    out = capsys.readouterr().out
    los = [line for line in out.splitlines() if line.startswith("los_db")][0]
    avg = [line for line in out.splitlines() if line.startswith("average_db")][0]
    assert los.split(": ")[1] == avg.split(": ")[1]


def test_pathloss_rejects_zero_distance(capsys):
    rc = main(["pathloss", "--d", "0", "--f", "5"])
    assert rc == 2
    assert "error" in capsys.readouterr().err


def test_validate_default_passes(capsys):
    rc = main(["validate", "--trials", "50"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert "closed_form_vs_oracle" in out
    assert "reference_ee_hrc_interference" in out


def test_validate_is_reproducible(capsys):
    main(["validate", "--trials", "40", "--seed", "7"])
    first = capsys.readouterr().out
    main(["validate", "--trials", "40", "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second


def test_validate_fails_on_uncalibrated_scenario(tmp_path, capsys):
    """Strong-gain scenario: optimization gains fall under the 50% floor."""
    text = SYMMETRIC_SCENARIO.replace("hrc_gains = [1.0e-13]", "hrc_gains = [1.0e-9]")
    text = text.replace("mrc_gains = [8.0e-14]", "mrc_gains = [8.0e-10]")
    scenario = write(tmp_path, "strong.yaml", text)
    rc = main(["validate", scenario, "--trials", "30"])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out


def test_config_error_exit_code(tmp_path, capsys):
    scenario = write(tmp_path, "broken.yaml", "env: [unclosed")
    rc = main(["sweep", scenario, "--state", "effectual", "--device", "hrc"])
    assert rc == 2
    assert "configuration error" in capsys.readouterr().err


def test_missing_scenario_file_exit_code(capsys):
    rc = main(["sweep", "/no/such/file.yaml", "--state", "effectual", "--device", "hrc"])
    assert rc == 2
    assert "cannot read scenario" in capsys.readouterr().err


def test_no_partial_output_on_write_failure(tmp_path, capsys):
    target = tmp_path / "missing_dir" / "out.csv"
    rc = main(["sweep", "--state", "effectual", "--device", "hrc", "--out", str(target)])
    assert rc == 2
    assert not target.exists()
    assert not (tmp_path / "missing_dir").exists()


def test_scenario_env_var_override(tmp_path, monkeypatch, capsys):
    scenario = write(tmp_path, "sym.yaml", SYMMETRIC_SCENARIO)
    monkeypatch.setenv("CRNOMA_SCENARIO", scenario)
    rc = main(["sweep", "--state", "effectual", "--device", "hrc"])
    assert rc == 0
    assert "scenario_label: symmetric" in capsys.readouterr().out


def test_leftover_temp_files_are_not_kept(tmp_path):
    out = tmp_path / "clean.csv"
    main(["sweep", "--state", "effectual", "--device", "hrc", "--out", str(out)])
    leftovers = [name for name in os.listdir(tmp_path) if name.startswith(".crnoma-")]
    assert leftovers == []
