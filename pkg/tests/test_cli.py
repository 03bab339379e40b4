import json
import os

import pytest

from fefetsim import cli


def _run(tmp_path, *argv):
    return cli.main([*argv, "--out", str(tmp_path)])


def test_verify_scheme_nominal_passes(tmp_path, capsys):
    status = _run(tmp_path, "verify-scheme", "--vw0", "-1.5", "--vw1", "3.2",
                  "--scheme", "mixed")
    assert status == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "pass" in out and "disturb" not in out.replace("disturb\n", "")
    summary = json.loads(
        (tmp_path / "verify-scheme" / "summary.json").read_text())
    assert summary["any_disturb"] is False


def test_verify_scheme_flags_disturb_with_exit_code(tmp_path, capsys):
    status = _run(tmp_path, "verify-scheme", "--vw0", "-1.0", "--vw1", "4.5",
                  "--scheme", "vdd3")
    assert status == cli.EXIT_CHECK_FAILED
    assert "disturb" in capsys.readouterr().out


def test_verify_scheme_partial_risk_still_exits_ok(tmp_path, capsys):
    status = _run(tmp_path, "verify-scheme", "--vw0", "-1.0", "--vw1", "2.1",
                  "--scheme", "vdd3")
    assert status == cli.EXIT_OK
    assert "partial-risk" in capsys.readouterr().out


def test_word_write_single_word(tmp_path, capsys):
    status = _run(tmp_path, "run", "word-write", "--word", "0x0F",
                  "--rows", "4", "--cols", "4")
    assert status == cli.EXIT_OK
    assert "0x0F" in capsys.readouterr().out
    assert (tmp_path / "word-write" / "word_write.csv").exists()


def test_disturb_command_artifacts(tmp_path):
    status = _run(tmp_path, "run", "disturb", "--rows", "4", "--cols", "4")
    assert status == cli.EXIT_OK
    out = tmp_path / "disturb"
    assert (out / "disturb.csv").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary["all_logic_preserved"] is True
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "disturb"
    assert manifest["config"]["rows"] == 4
    assert manifest["config_provenance"]["rows"] == "flag"
    assert any(a["file"] == "disturb.csv" and len(a["sha256"]) == 64
               for a in manifest["artifacts"])


def test_mc_seeded_and_deterministic(tmp_path):
    status = _run(tmp_path, "mc", "--samples", "25", "--seed", "42")
    assert status == cli.EXIT_OK
    first = (tmp_path / "mc" / "mc.csv").read_bytes()
    status = _run(tmp_path, "mc", "--samples", "25", "--seed", "42")
    assert status == cli.EXIT_OK
    assert (tmp_path / "mc" / "mc.csv").read_bytes() == first


def test_power_command(tmp_path):
    assert _run(tmp_path, "power") == cli.EXIT_OK
    summary = json.loads((tmp_path / "power" / "summary.json").read_text())
    assert summary["flatness"] <= 1.2


def test_area_command_prints_comparison(tmp_path, capsys):
    assert _run(tmp_path, "area") == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "AND" in out and "C-AND" in out
    rows = (tmp_path / "area" / "area.csv").read_text().splitlines()
    assert rows[0] == "spacing,and_lambda2,cand_lambda2,improvement"
    assert len(rows) == 3


def test_device_sweep_with_plots(tmp_path):
    assert _run(tmp_path, "device-sweep", "--plot") == cli.EXIT_OK
    out = tmp_path / "device-sweep"
    assert (out / "transfer.csv").exists()
    assert (out / "hysteresis.csv").exists()
    assert (out / "transfer.svg").exists()
    assert (out / "hysteresis.svg").exists()


def test_missing_config_file_exit_code(tmp_path, capsys):
    status = _run(tmp_path, "area", "--config", str(tmp_path / "nope.json"))
    assert status == cli.EXIT_MISSING_FILE
    assert "not found" in capsys.readouterr().err


def test_unknown_config_key_exit_code(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text('{"schema_version": 1, "rowz": 4}')
    status = _run(tmp_path, "area", "--config", str(cfgfile))
    assert status == cli.EXIT_UNKNOWN_KEY
    assert "rowz" in capsys.readouterr().err


def test_bad_config_value_exit_code(tmp_path, capsys):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text('{"schema_version": 1, "topology": "nor"}')
    status = _run(tmp_path, "area", "--config", str(cfgfile))
    assert status == cli.EXIT_BAD_VALUE
    assert "topology" in capsys.readouterr().err


def test_out_dir_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("FEFETSIM_OUT", str(tmp_path / "envout"))
    assert cli.main(["area"]) == cli.EXIT_OK
    assert (tmp_path / "envout" / "area" / "summary.json").exists()
