"""
Tests for the contact-thermo command-line interface.
"""

import json
import logging
from unittest.mock import patch

import numpy as np
import pytest

from contact_thermo import __version__
from contact_thermo.cli.commands import cli, main
from contact_thermo.cli.output import _fmt, csv_header, summary_text
from contact_thermo.cli.runner import (
    EXIT_AUDIT,
    EXIT_CONFIG,
    EXIT_ERROR,
    EXIT_INTERRUPTED,
    EXIT_OK,
    EXIT_STEP_FAILURE,
    run_experiment,
)
from contact_thermo.core.config import load_experiment
from contact_thermo.experiments import resolve_experiment
from contact_thermo.integrators import simulate


def run_args(config, out, *extra):
    return ["run", "--config", str(config), "--out", str(out), *extra]


class TestCLIBasics:
    """Test basic CLI functionality."""

    def test_cli_help(self, cli_runner):
        result = cli_runner.invoke(cli, ["--help"])
        assert result.exit_code == 0
        assert "contact-thermo" in result.output
        for command in ("run", "batch", "selftest", "list"):
            assert command in result.output

    def test_cli_version(self, cli_runner):
        result = cli_runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_run_help(self, cli_runner):
        result = cli_runner.invoke(cli, ["run", "--help"])
        assert result.exit_code == 0
        assert "--config" in result.output
        assert "--strict" in result.output

    def test_run_requires_config(self, cli_runner):
        result = cli_runner.invoke(cli, ["run"])
        assert result.exit_code != 0
        assert "--config" in result.output

    def test_unexpected_error_is_logged(self, caplog, capsys):
        with patch(
            "contact_thermo.cli.commands.cli", side_effect=RuntimeError("boom")
        ):
            with caplog.at_level(logging.ERROR, logger="contact_thermo"):
                with pytest.raises(SystemExit) as exc_info:
                    main()
        assert exc_info.value.code == EXIT_ERROR
        assert "Unexpected error: boom" in caplog.text
        assert caplog.records[-1].exc_info is not None
        assert "Unexpected error: boom" in capsys.readouterr().err

    def test_keyboard_interrupt(self, capsys):
        with patch("contact_thermo.cli.commands.cli", side_effect=KeyboardInterrupt):
            with pytest.raises(SystemExit) as exc_info:
                main()
        assert exc_info.value.code == EXIT_INTERRUPTED


class TestListCommand:
    def test_table(self, cli_runner):
        result = cli_runner.invoke(cli, ["list"])
        assert result.exit_code == 0
        assert "Experiment" in result.output
        assert "fig1_dho" in result.output
        assert "thermo_particles" in result.output

    def test_plain_list(self, cli_runner):
        result = cli_runner.invoke(cli, ["list", "--format", "list"])
        assert result.exit_code == 0
        assert "fig5_herglotz" in result.output.split()

    def test_json(self, cli_runner):
        result = cli_runner.invoke(cli, ["list", "-f", "json"])
        assert result.exit_code == 0
        entries = json.loads(result.output)
        assert entries["fig5_herglotz"]["method"] == "herglotz"
        assert entries["fig3_particles"]["model"] == "thermo_particles"


class TestRunCommand:
    def test_energy_preserving_run(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, run_args("fig1_dho", tmp_path))
        assert result.exit_code == EXIT_OK
        assert "First law:  PASS" in result.output
        assert "Second law: PASS" in result.output

        lines = (tmp_path / "fig1_dho.csv").read_text().splitlines()
        assert lines[0] == "t,q,p,S,H,S_total,T_1"
        assert len(lines) == 502
        assert lines[1].startswith("0,0,10,0,50,")

        report = json.loads((tmp_path / "fig1_dho.json").read_text())
        assert report["laws"]["passed"] is True
        assert report["steps_completed"] == 500
        assert report["failure"] is None
        summary = (tmp_path / "fig1_dho.txt").read_text()
        assert summary.startswith("Experiment: fig1_dho")

    def test_particles_strict(self, cli_runner, tmp_path):
        result = cli_runner.invoke(
            cli, run_args("fig3_particles", tmp_path, "--strict")
        )
        assert result.exit_code == EXIT_OK
        report = json.loads((tmp_path / "fig3_particles.json").read_text())
        assert report["equilibration"]["t_infinity"] == pytest.approx(286.575)
        assert "predicted T = 286.575" in result.output

    def test_herglotz_run(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, run_args("fig5_herglotz", tmp_path))
        assert result.exit_code == EXIT_OK
        report = json.loads((tmp_path / "fig5_herglotz.json").read_text())
        assert report["herglotz"]["entropy_margin"] >= -1e-10
        assert report["final_state"].keys() == {"q", "p", "S"}

    def test_configuration_error(
        self, cli_runner, tmp_path, write_config, tiny_experiment
    ):
        path = write_config(tiny_experiment.replace("name: damped", "name: pendulum"))
        result = cli_runner.invoke(cli, run_args(path, tmp_path / "out"))
        assert result.exit_code == EXIT_CONFIG
        assert "Configuration error" in result.output
        assert "line: 4" in result.output
        assert not (tmp_path / "out").exists()

    @pytest.mark.parametrize("setting", ["tol_solve: 0.0", "max_iter: 0"])
    def test_bad_solver_setting_is_configuration_error(
        self, cli_runner, tmp_path, write_config, tiny_experiment, setting
    ):
        path = write_config(tiny_experiment + f"  {setting}\n")
        result = cli_runner.invoke(cli, run_args(path, tmp_path / "out"))
        assert result.exit_code == EXIT_CONFIG
        assert "line: 14" in result.output

    def test_missing_config(self, cli_runner, tmp_path):
        result = cli_runner.invoke(cli, run_args(tmp_path / "missing.yaml", tmp_path))
        assert result.exit_code == EXIT_CONFIG

    def test_audit_failure_only_fails_under_strict(
        self, cli_runner, tmp_path, write_config, tiny_experiment
    ):
        text = tiny_experiment.replace("dg:gonzalez", "rk4") + (
            "audit:\n  tol_energy: 1.0e-15\n"
        )
        path = write_config(text)
        strict = cli_runner.invoke(cli, run_args(path, tmp_path, "--strict"))
        assert strict.exit_code == EXIT_AUDIT
        assert "First law:  FAIL" in strict.output
        lenient = cli_runner.invoke(cli, run_args(path, tmp_path))
        assert lenient.exit_code == EXIT_OK

    def test_step_failure(self, cli_runner, tmp_path, write_config, tiny_experiment):
        path = write_config(tiny_experiment + "  max_iter: 1\n")
        result = cli_runner.invoke(cli, run_args(path, tmp_path))
        assert result.exit_code == EXIT_STEP_FAILURE
        assert "Step 0 failed" in result.output
        report = json.loads((tmp_path / "tiny.json").read_text())
        assert report["steps_completed"] == 0
        assert report["failure"]["step_index"] == 0

    def test_seed_override(self, cli_runner, tmp_path, write_config, tiny_experiment):
        path = write_config(tiny_experiment)
        result = cli_runner.invoke(cli, run_args(path, tmp_path, "--seed", "42"))
        assert result.exit_code == EXIT_OK
        assert json.loads((tmp_path / "tiny.json").read_text())["seed"] == 42

    def test_artifacts_are_reproducible(
        self, cli_runner, tmp_path, write_config, tiny_experiment
    ):
        path = write_config(tiny_experiment)
        cli_runner.invoke(cli, run_args(path, tmp_path / "a"))
        cli_runner.invoke(cli, run_args(path, tmp_path / "b"))
        for suffix in ("csv", "json", "txt"):
            first = (tmp_path / "a" / f"tiny.{suffix}").read_bytes()
            assert first == (tmp_path / "b" / f"tiny.{suffix}").read_bytes()

    def test_log_file(self, cli_runner, tmp_path, write_config, tiny_experiment):
        path = write_config(tiny_experiment)
        log_file = tmp_path / "logs" / "run.log"
        result = cli_runner.invoke(
            cli, ["--log-file", str(log_file), *run_args(path, tmp_path)]
        )
        assert result.exit_code == EXIT_OK
        assert "Running experiment 'tiny'" in log_file.read_text()


class TestBatchCommand:
    def test_all_pass(self, cli_runner, tmp_path, write_config, tiny_experiment):
        path = write_config(tiny_experiment)
        result = cli_runner.invoke(
            cli, ["batch", str(path), "fig3_particles", "--out", str(tmp_path)]
        )
        assert result.exit_code == EXIT_OK
        assert "✓ tiny: 10 steps" in result.output
        assert "✓ fig3_particles: 500 steps" in result.output
        assert (tmp_path / "fig3_particles.csv").exists()

    def test_highest_code_wins(
        self, cli_runner, tmp_path, write_config, tiny_experiment
    ):
        good = write_config(tiny_experiment, name="good.yaml")
        failing = write_config(
            tiny_experiment.replace("name: tiny", "name: failing") + "  max_iter: 1\n",
            name="failing.yaml",
        )
        broken = write_config(
            tiny_experiment.replace("name: damped", "name: pendulum"),
            name="broken.yaml",
        )
        result = cli_runner.invoke(
            cli,
            [
                "batch",
                str(good),
                str(failing),
                str(broken),
                "--jobs",
                "2",
                "--out",
                str(tmp_path / "out"),
            ],
        )
        assert result.exit_code == EXIT_STEP_FAILURE
        assert "✗ " in result.output
        assert "Configuration error" in result.output

    def test_shared_prefix_rejected(
        self, cli_runner, tmp_path, write_config, tiny_experiment
    ):
        first = write_config(tiny_experiment, name="first.yaml")
        second = write_config(
            tiny_experiment.replace("dg:gonzalez", "rk4"), name="second.yaml"
        )
        out = tmp_path / "out"
        result = cli_runner.invoke(
            cli, ["batch", str(first), str(second), "--jobs", "2", "--out", str(out)]
        )
        assert result.exit_code == EXIT_CONFIG
        assert "Artifact prefix 'tiny' is shared by" in result.output
        assert not out.exists()

    def test_same_experiment_twice_rejected(self, cli_runner, tmp_path):
        result = cli_runner.invoke(
            cli, ["batch", "fig1_dho", "fig1_dho", "--out", str(tmp_path)]
        )
        assert result.exit_code == EXIT_CONFIG
        assert not (tmp_path / "fig1_dho.csv").exists()


class TestSelftestCommand:
    def test_passes(self, cli_runner):
        result = cli_runner.invoke(cli, ["selftest", "--samples", "20"])
        assert result.exit_code == EXIT_OK
        assert result.output.count("PASS") == 7

    def test_injected_fault(self, cli_runner):
        result = cli_runner.invoke(
            cli, ["selftest", "--samples", "5", "--inject-fault", "skew"]
        )
        assert result.exit_code == EXIT_AUDIT
        assert "FAIL  structure-skew-symmetry" in result.output

    def test_json_report(self, cli_runner):
        result = cli_runner.invoke(cli, ["selftest", "--samples", "5", "--json"])
        assert result.exit_code == EXIT_OK
        data = json.loads(result.output)
        assert data["passed"] is True
        assert len(data["checks"]) == 7

    def test_unknown_fault_rejected(self, cli_runner):
        result = cli_runner.invoke(cli, ["selftest", "--inject-fault", "energy"])
        assert result.exit_code == 2


class TestRunner:
    def test_no_output_directory(
        self, tmp_path, monkeypatch, tiny_experiment, write_config
    ):
        config = load_experiment(write_config(tiny_experiment))
        monkeypatch.chdir(tmp_path)
        result = run_experiment(config, None)
        assert result.csv_path is None
        assert result.exit_code() == EXIT_OK
        assert list(tmp_path.iterdir()) == [tmp_path / "experiment.yaml"]

    def test_report_contents(self):
        config = load_experiment(resolve_experiment("fig3_particles"))
        result = run_experiment(config)
        report = result.report
        assert report["model"]["parameters"] == {"c_a": 1.0, "c_b": 1.0, "k": 1.0}
        assert report["solver"]["kind"] == "fixed_point"
        assert report["solver"]["total_iterations"] >= 500
        assert set(report["final_state"]) == {"S1", "S2"}
        assert "herglotz" not in report


class TestOutput:
    def test_composed_header(self, particles, particles_state, cfg):
        traj = simulate(particles, "dg", particles_state, cfg, 1)
        assert csv_header(traj) == ["t", "S1", "S2", "H", "S_total", "T_1", "T_2"]

    def test_float_format_round_trips(self, rng):
        for value in rng.standard_normal(50) * 1e3:
            assert float(_fmt(value)) == value
        assert _fmt(np.float64(0.1)) == "0.10000000000000001"

    def test_summary_text(self):
        config = load_experiment(resolve_experiment("fig1_dho"))
        text = summary_text(run_experiment(config).report)
        assert "Experiment: fig1_dho" in text
        assert "PASS" in text
        assert "Steps:      500/500" in text
