"""Command-line interface, exercised through real subprocesses."""

import subprocess
import sys

import pytest

GOOD_CONFIG = """
model = two_level_eigenbasis
schedule.omega0 = 5
schedule.gamma0 = 0.1
rescaling.T = 10
rescaling.T_FF = 1
phase.mode = optimal
grid.steps = 1000
output.path = run.csv
output.quantity = instantaneous
"""


def cli(*args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "ffscale.cli", *args],
        cwd=cwd,
        capture_output=True,
        text=True,
    )


def test_list_presets(tmp_path):
    proc = cli("list-presets", cwd=tmp_path)
    assert proc.returncode == 0
    for name in ("fig1-left", "fig1-right", "fig2", "fig3", "fig1"):
        assert name in proc.stdout


def test_run_custom_config(tmp_path):
    (tmp_path / "scenario.cfg").write_text(GOOD_CONFIG)
    proc = cli("run", "scenario.cfg", cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    out = tmp_path / "run.csv"
    assert out.exists()
    assert "run.csv" in proc.stdout
    header = out.read_text().splitlines()[0]
    assert header.startswith("t,dC_std")


def test_run_out_override(tmp_path):
    (tmp_path / "scenario.cfg").write_text(GOOD_CONFIG)
    proc = cli("run", "scenario.cfg", "--out", "custom.csv", cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "custom.csv").exists()
    assert not (tmp_path / "run.csv").exists()


def test_run_steps_override_rejects_odd(tmp_path):
    (tmp_path / "scenario.cfg").write_text(GOOD_CONFIG)
    proc = cli("run", "scenario.cfg", "--steps", "1001", cwd=tmp_path)
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_bad_config_exits_two(tmp_path):
    (tmp_path / "broken.cfg").write_text(GOOD_CONFIG + "mystery = 1\n")
    proc = cli("run", "broken.cfg", cwd=tmp_path)
    assert proc.returncode == 2
    assert "error:" in proc.stderr
    assert "mystery" in proc.stderr


def test_missing_config_file_exits_two(tmp_path):
    proc = cli("run", "absent.cfg", cwd=tmp_path)
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_preset_writes_named_output(tmp_path):
    proc = cli("preset", "fig2", "--steps", "1000", cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "fig2.csv").exists()


def test_preset_rerun_byte_identical(tmp_path):
    a_dir = tmp_path / "a"
    b_dir = tmp_path / "b"
    a_dir.mkdir()
    b_dir.mkdir()
    assert cli("preset", "fig2", "--steps", "1000", cwd=a_dir).returncode == 0
    assert cli("preset", "fig2", "--steps", "1000", cwd=b_dir).returncode == 0
    assert (a_dir / "fig2.csv").read_bytes() == (b_dir / "fig2.csv").read_bytes()


def test_preset_group_writes_both_members(tmp_path):
    proc = cli("preset", "fig1", "--steps", "1000", "--out", "group", cwd=tmp_path)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "group" / "fig1-left.csv").exists()
    assert (tmp_path / "group" / "fig1-right.csv").exists()


def test_seed_override_only_for_ising(tmp_path):
    (tmp_path / "scenario.cfg").write_text(GOOD_CONFIG)
    proc = cli("run", "scenario.cfg", "--seed", "5", cwd=tmp_path)
    assert proc.returncode == 2
    assert "seed" in proc.stderr


def test_unknown_preset_exits_two(tmp_path):
    proc = cli("preset", "fig7", cwd=tmp_path)
    assert proc.returncode == 2
    assert "error:" in proc.stderr
