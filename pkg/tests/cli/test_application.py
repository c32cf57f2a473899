"""Tests for the command-line interface."""

from pathlib import Path

import pytest
import yaml

from fracflow.cli import FracflowCLI, main
from fracflow.cli.application import AlgorithmChoice
from fracflow.mms import ErrorRow, ErrorTable
from fracflow.twogrid import Algorithm
from fracflow.wellbore import RateCurve, RatePoint

TINY_MMS = """
[discretization]
H = 1/2
h = 1/4
dt = 1/4
T = 1/4
algorithm = traditional
convection = false
[layout]
counts = 2, 2
overlap = 1/4
"""

TINY_WELLBORE = """
[problem]
kind = wellbore
[wellbore]
k_F_values = 0.1, 0.2
h = 1/3
T = 0.1
"""


def _write(directory: str, text: str) -> Path:
    path = Path(directory) / "run.conf"
    path.write_text(text, encoding="utf-8")
    return path


class TestAlgorithmChoice:
    """Tests for AlgorithmChoice."""

    def test_mapping(self) -> None:
        """Should map dashed names to algorithms."""
        assert AlgorithmChoice("local-parallel").algorithm is Algorithm.LOCAL_PARALLEL
        assert AlgorithmChoice.TRADITIONAL.algorithm is Algorithm.TRADITIONAL


class TestFracflowCLI:
    """Tests for FracflowCLI."""

    def test_precedence(self, temp_workspace: str) -> None:
        """Should prefer flags over the config file over settings."""
        path = _write(temp_workspace, "[run]\nworkers = 3\noutput_dir = from_config\n")
        cli = FracflowCLI(path)
        assert cli.workers == 3
        assert cli.output_dir == Path("from_config")
        cli = FracflowCLI(path, workers=5, output_dir=Path(temp_workspace))
        assert cli.workers == 5
        assert cli.output_dir == Path(temp_workspace)

    def test_converge_needs_mms(self, temp_workspace: str) -> None:
        """Should refuse convergence tables for the wellbore problem."""
        cli = FracflowCLI(_write(temp_workspace, TINY_WELLBORE))
        assert cli.is_wellbore
        with pytest.raises(ValueError):
            cli.converge()


class TestMain:
    """Tests for main and its exit codes."""

    def test_defaults(self, capsys: pytest.CaptureFixture) -> None:
        """Should print the default configuration."""
        assert main(["defaults"]) == 0
        assert "[discretization]" in capsys.readouterr().out

    def test_print_defaults_flag(self, capsys: pytest.CaptureFixture) -> None:
        """Should print defaults and exit without a command."""
        assert main(["--print-defaults"]) == 0
        assert "[wellbore]" in capsys.readouterr().out

    def test_unknown_command(self) -> None:
        """Should return 2 for usage errors."""
        assert main(["explode"]) == 2

    def test_missing_config_file(self, temp_workspace: str) -> None:
        """Should return 2 when the config file does not exist."""
        assert main(["run", "-c", str(Path(temp_workspace) / "nope.conf")]) == 2

    def test_invalid_config(self, temp_workspace: str) -> None:
        """Should return 1 for configuration errors."""
        path = _write(temp_workspace, "[run]\nthreads = 2\n")
        assert main(["run", "-c", str(path)]) == 1

    def test_mesh_info(self, temp_workspace: str, capsys: pytest.CaptureFixture) -> None:
        """Should print counts and export the partitioned mesh."""
        path = _write(temp_workspace, TINY_MMS)
        vtk = Path(temp_workspace) / "mesh.vtk"
        assert main(["mesh-info", "-c", str(path), "--vtk", str(vtk)]) == 0
        out = capsys.readouterr().out
        assert "INTERFACE edges" in out
        assert "SCALARS owner int 1" in vtk.read_text(encoding="utf-8")

    def test_run_mms(self, temp_workspace: str) -> None:
        """Should run once and write the VTK file and summary."""
        path = _write(temp_workspace, TINY_MMS)
        out = Path(temp_workspace) / "out"
        assert main(["run", "-c", str(path), "-o", str(out)]) == 0
        assert (out / "traditional.vtk").exists()
        summary = yaml.safe_load((out / "summary.yaml").read_text(encoding="utf-8"))
        assert summary["command"] == "run"
        assert summary["results"]["picard"]["steps"] == 1
        assert "uc_h1" in summary["results"]["errors"]

    def test_converge_writes_csv(self, temp_workspace: str, mocker) -> None:
        """Should write the sweep returned by the solver as CSV."""
        errors = {c: 0.5 for c in ("uc_h1", "pF_h1", "pf_l2", "pf_h1", "pm_l2", "pm_h1")}
        table = ErrorTable([ErrorRow(0.25, 0.5, 0.0625, errors)], Algorithm.LOCAL_PARALLEL)
        sweep = mocker.patch("fracflow.cli.application.convergence_sweep", return_value=table)
        out = Path(temp_workspace)
        path = _write(temp_workspace, TINY_MMS)
        assert main(["converge", "-c", str(path), "-o", str(out), "-a", "local-parallel"]) == 0
        assert sweep.call_args.args[1] is Algorithm.LOCAL_PARALLEL
        assert (out / "convergence_local_parallel.csv").exists()

    def test_wellbore_both(self, temp_workspace: str, mocker) -> None:
        """Should sweep with both algorithms and compare their rates."""

        def fake_sweep(cfg, values, algorithm, workers=1, on_run=None):
            points = (RatePoint(0.1, 1.0, 0.1), RatePoint(0.2, 2.0, 0.1))
            return RateCurve(points, algorithm)

        mocker.patch("fracflow.cli.application.sweep_kF", side_effect=fake_sweep)
        out = Path(temp_workspace)
        path = _write(temp_workspace, TINY_WELLBORE)
        assert main(["wellbore", "-c", str(path), "-o", str(out), "--both"]) == 0
        assert (out / "rate_traditional.csv").exists()
        assert (out / "rate_local_parallel.csv").exists()
        summary = yaml.safe_load((out / "summary.yaml").read_text(encoding="utf-8"))
        assert summary["results"]["max_relative_Q_difference"] == 0.0
        assert summary["results"]["traditional"]["increasing"] is True
