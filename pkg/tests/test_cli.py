"""
Unit tests for the command-line interface and its exit codes
"""
import json

import pytest
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from src.experiments.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, main

JUMP_HALF = os.path.join(ROOT, "data", "scenarios", "jump_half.scn")


class TestCommands:
    """Test subcommands end to end"""

    def test_det_verify(self, capsys):
        """Test det with the cofactor cross-check"""
        code = main(["det", "--source", "piece [0, 1]: 3", "--n", "5", "--verify", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["det_bruteforce"] == 144.0
        assert payload["relative_difference"] < 1e-12

    def test_predict_cycle(self, capsys):
        """Test predict on a scenario's potential"""
        code = main(["predict", "--scenario", JUMP_HALF, "--cycle", "--n", "100", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["cycle"]) == 2
        assert payload["liminf"] - 1e-12 <= payload["prediction(n=100)"] <= payload["limsup"] + 1e-12

    def test_sweep_stdout(self, capsys):
        """Test sweep writes CSV to stdout without --output"""
        code = main(["sweep", "--source", "piece [0, 1]: 3", "--n", "1..5", "--workers", "1"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n,ratio,prediction,error"
        assert len(lines) == 6

    def test_sweep_then_fit(self, tmp_path, capsys):
        """Test fitting a sweep file written by the sweep command"""
        output = str(tmp_path / "linear.json")
        assert main([
            "sweep", "--source", "piece [0, 1]: x + 3", "--n", "100..600 step 50",
            "--workers", "1", "--output", output, "--format", "json",
        ]) == EXIT_OK
        assert main(["fit", "--input", output, "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["count"] == 11

    def test_shift_target(self, capsys):
        """Test the shift solve lands on the target"""
        code = main(["shift-target", "--source", "piece [0, 1]: x + 3", "--target", "1.2", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["check"] == pytest.approx(1.2, rel=1e-12)

    def test_shift_check(self, capsys):
        """Test the moment gap for two shifts"""
        code = main([
            "shift-check", "--source", "piece [0, 1]: x + 3", "--n", "1000",
            "--eps-a", "0", "--eps-b", "5", "--json",
        ])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["moment_gap"] == pytest.approx(0.03502, abs=1e-8)

    def test_em_check(self, capsys):
        """Test the residual table and its constant"""
        code = main(["em-check", "--source", "piece [0, 1]: x^2", "--n", "64, 128"])
        assert code == EXIT_OK
        captured = capsys.readouterr()
        lines = captured.out.splitlines()
        assert lines[0] == "n,exact,formula,residual,residual_n"
        assert len(lines) == 3
        assert "C =" in captured.err

    def test_ms_series(self, capsys):
        """Test the coefficient listing and E(f)"""
        code = main(["ms-series", "--source", "piece [0, 1]: 3", "--K", "10", "--show", "2"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "V_1" in out
        assert "E(f)" in out
        assert "disagrees" in out

    def test_kms(self, capsys):
        """Test the trace check command"""
        code = main(["kms", "--source", "piece [0, 1]: 3", "--n", "100", "--json"])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["gap"] == pytest.approx(0.02, abs=1e-9)

    def test_run_with_report(self, tmp_path, capsys):
        """Test running a scenario file and saving its report"""
        scenario = tmp_path / "small.scn"
        scenario.write_text(
            "piece [0, 1]: x + 3\n"
            "n = 20..40\n"
            "checks = ratio, predict, fit, ms\n"
            f"output = {tmp_path / 'small.csv'}\n"
        )
        report = tmp_path / "report.json"
        code = main(["run", str(scenario), "--workers", "1", "--report", str(report)])
        assert code == EXIT_OK
        assert json.loads(capsys.readouterr().out)["scenario"] == "small"
        assert json.loads(report.read_text())["checks"]["ratio"]["count"] == 21
        assert (tmp_path / "small.csv").exists()


class TestExitCodes:
    """Test error mapping"""

    def test_floor_violation(self):
        """Test f below 2 + eps0 is invalid input"""
        assert main(["det", "--source", "piece [0, 1]: 1.5", "--n", "5"]) == EXIT_VALIDATION

    def test_missing_file(self, tmp_path):
        """Test an unreadable potential file"""
        missing = str(tmp_path / "missing.pot")
        assert main(["det", "--potential", missing, "--n", "5"]) == EXIT_VALIDATION

    def test_missing_potential(self):
        """Test a command without any potential"""
        assert main(["det", "--n", "5"]) == EXIT_VALIDATION

    def test_eigen_cap(self):
        """Test the eigensolver cap is a numerical failure"""
        assert main(["kms", "--source", "piece [0, 1]: 3", "--n", "5000"]) == EXIT_NUMERICAL

    def test_fit_too_few(self, tmp_path):
        """Test a degenerate fit is a numerical failure"""
        output = str(tmp_path / "short.csv")
        assert main(["sweep", "--source", "piece [0, 1]: 3", "--n", "1..5", "--workers", "1", "--output", output]) == EXIT_OK
        assert main(["fit", "--input", output]) == EXIT_NUMERICAL

    def test_unknown_command(self):
        """Test argparse rejects unknown subcommands"""
        with pytest.raises(SystemExit) as info:
            main(["plot"])
        assert info.value.code == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
