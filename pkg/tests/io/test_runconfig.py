"""Tests for the run configuration format."""

from pathlib import Path

import pytest

from fracflow.errors import InvariantViolation, IoError, ParseError, TypeMismatch, UnknownKey
from fracflow.io import (
    ProblemKind,
    RunConfig,
    defaults_text,
    load_config,
    parse_config,
    serialize_config,
)
from fracflow.twogrid import Algorithm


class TestParseConfig:
    """Tests for parse_config."""

    def test_empty_gives_defaults(self) -> None:
        """Should fill every omitted key with its default."""
        assert parse_config("# nothing\n\n") == RunConfig()

    def test_values(self) -> None:
        """Should accept fractions, lists, booleans, enums and paths."""
        config = parse_config(
            """
            [problem]
            kind = wellbore
            [discretization]
            H = 1/8   # coarse
            h = 1/32
            algorithm = traditional
            convection = no
            [layout]
            counts = 4, 2
            [converge]
            h = 1/4, 1/8
            H = 1/2, 1/4
            dt = 1/16, 1/64
            [run]
            output_dir = results/a
            workers = 3
            """
        )
        d = config.discretization
        assert config.problem.kind is ProblemKind.WELLBORE
        assert d.H == 0.125 and d.h == 1.0 / 32.0
        assert d.algorithm is Algorithm.TRADITIONAL
        assert d.convection is False
        assert config.layout.counts == (4, 2)
        assert config.run.output_dir == Path("results/a")
        assert [lv.dt for lv in config.convergence_levels()] == [1.0 / 16.0, 1.0 / 64.0]

    def test_dashed_enum(self) -> None:
        """Should accept dashes in enum values."""
        config = parse_config("[discretization]\nalgorithm = local-parallel\n")
        assert config.discretization.algorithm is Algorithm.LOCAL_PARALLEL

    @pytest.mark.parametrize(
        "text,error,line",
        [
            ("[nope]\n", UnknownKey, 1),
            ("[run]\nthreads = 2\n", UnknownKey, 2),
            ("[run]\nworkers 2\n", ParseError, 2),
            ("workers = 2\n", ParseError, 1),
            ("[run]\nworkers = 2\nworkers = 3\n", ParseError, 3),
            ("[run]\n\nworkers =\n", ParseError, 3),
            ("[run]\n2bad = 1\n", ParseError, 2),
            ("[discretization]\nh = small\n", TypeMismatch, 2),
            ("[run]\nworkers = 1/2\n", TypeMismatch, 2),
            ("[run]\nvtk = maybe\n", TypeMismatch, 2),
            ("[layout]\ncounts = 1, 2, 3\n", TypeMismatch, 2),
            ("[discretization]\nalgorithm = fast\n", TypeMismatch, 2),
            ("[run]\nworkers = 0\n", InvariantViolation, 2),
            ("[discretization]\nH = 1/16\nh = 1/4\n", InvariantViolation, 2),
            ("[params]\n\nk_F = -1\n", InvariantViolation, 3),
        ],
    )
    def test_errors(self, text: str, error: type, line: int) -> None:
        """Should raise the matching error with its line number."""
        with pytest.raises(error) as info:
            parse_config(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}: ")

    def test_wellbore_sides(self) -> None:
        """Should reject the outlet side as an interface."""
        with pytest.raises(InvariantViolation):
            parse_config("[wellbore]\ninterface_sides = top, right\n")


class TestRunConfig:
    """Tests for RunConfig conversions."""

    def test_model_params_per_problem(self) -> None:
        """Should start from the problem's own coefficients."""
        assert parse_config("").model_params().k_m == 1.0
        wellbore = parse_config("[problem]\nkind = wellbore\n[params]\nk_F = 0.5\n")
        params = wellbore.model_params()
        assert params.k_m == 1e-8
        assert params.k_F == 0.5

    def test_twogrid_config(self) -> None:
        """Should carry sizes, layout and step settings."""
        cfg = parse_config("[discretization]\nH = 1/4\nh = 1/16\ndt = 1/32\n").twogrid_config(4)
        assert cfg.levels == 2
        assert cfg.step.dt == 1.0 / 32.0
        assert cfg.step.workers == 4
        assert cfg.layout.counts == (2, 2)

    def test_wellbore_config(self) -> None:
        """Should build the scenario with the configured overlap."""
        config = parse_config("[problem]\nkind = wellbore\n[wellbore]\nT = 1\noverlap = 2/3\n")
        wb = config.wellbore_config()
        assert wb.T == 1.0
        assert wb.layout.overlap == pytest.approx(2.0 / 3.0)
        assert wb.params.rho == 10.0


class TestSerialization:
    """Tests for serialize_config and defaults_text."""

    def test_round_trip(self) -> None:
        """Should parse back to an equal configuration."""
        config = parse_config(
            "[discretization]\nh = 1/48\nH = 1/12\n[layout]\nconduit_counts = 1, 3\n"
            "[params]\nalpha = 0.3\n"
        )
        assert parse_config(serialize_config(config)) == config

    def test_defaults_text(self) -> None:
        """Should parse to the defaults and list the effective parameters."""
        text = defaults_text()
        assert "# k_F = 1.0" in text
        assert parse_config(text) == RunConfig()

    def test_load_missing(self, temp_workspace: str) -> None:
        """Should raise IoError for unreadable files."""
        with pytest.raises(IoError):
            load_config(Path(temp_workspace) / "missing.conf")

    def test_load(self, temp_workspace: str) -> None:
        """Should read a file from disk."""
        path = Path(temp_workspace) / "run.conf"
        path.write_text("[run]\nworkers = 2\n", encoding="utf-8")
        assert load_config(path).run.workers == 2
