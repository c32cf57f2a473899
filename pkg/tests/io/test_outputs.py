"""Tests for CSV, VTK and summary outputs."""

from pathlib import Path

import numpy as np
import pytest

from fracflow.elements import Spaces
from fracflow.errors import IoError
from fracflow.io import (
    ERROR_HEADER,
    RATE_HEADER,
    format_number,
    picard_statistics,
    read_error_table,
    read_rate_curve,
    read_summary,
    write_csv,
    write_mesh_vtk,
    write_summary,
    write_vtk,
)
from fracflow.mesh import Mesh
from fracflow.mms import ErrorRow, ErrorTable, ManufacturedCase
from fracflow.stepping import ConduitStepInfo, initial_state
from fracflow.twogrid import Algorithm
from fracflow.wellbore import RateCurve, RatePoint


def _table() -> ErrorTable:
    errors = {c: 0.1 for c in ("uc_h1", "pF_h1", "pf_l2", "pf_h1", "pm_l2", "pm_h1")}
    return ErrorTable(
        rows=[
            ErrorRow(h=0.25, H=0.5, dt=1 / 16, errors=errors, cpu_s=1.5),
            ErrorRow(h=0.125, H=0.25, dt=1 / 64, errors={c: v / 4 for c, v in errors.items()}),
        ],
        algorithm=Algorithm.LOCAL_PARALLEL,
    )


class TestCsv:
    """Tests for CSV tables."""

    def test_format_number(self) -> None:
        """Should print six significant digits."""
        assert format_number(1.0 / 3.0) == "0.333333"
        assert format_number(None) == ""

    def test_error_table(self, temp_workspace: str) -> None:
        """Should write the fixed header, empty first rates and read back."""
        path = write_csv(_table(), Path(temp_workspace) / "sub" / "errors.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].split(",") == ERROR_HEADER
        first = dict(zip(ERROR_HEADER, lines[1].split(",")))
        second = dict(zip(ERROR_HEADER, lines[2].split(",")))
        assert first["uc_rate"] == ""
        assert float(second["pm_l2_rate"]) == pytest.approx(2.0)
        table = read_error_table(path, Algorithm.LOCAL_PARALLEL)
        assert [row.h for row in table.rows] == [0.25, 0.125]
        assert table.rates("pF_h1")[1] == pytest.approx(2.0)

    def test_rate_curve(self, temp_workspace: str) -> None:
        """Should write one row per permeability."""
        curve = RateCurve((RatePoint(0.02, 1.5, 3.0), RatePoint(0.04, 2.5, 3.1)), Algorithm.TRADITIONAL)
        path = write_csv(curve, Path(temp_workspace) / "rates.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0].split(",") == RATE_HEADER
        assert lines[1] == "0.02,1.5,traditional,3"
        assert read_rate_curve(path).Q == [1.5, 2.5]

    def test_empty_curve(self, temp_workspace: str) -> None:
        """Should write only the header for an empty curve."""
        path = write_csv(RateCurve((), Algorithm.TRADITIONAL), Path(temp_workspace) / "r.csv")
        assert path.read_text(encoding="utf-8") == ",".join(RATE_HEADER) + "\n"
        assert read_rate_curve(path).points == ()

    def test_wrong_header(self, temp_workspace: str) -> None:
        """Should refuse files with another header."""
        path = Path(temp_workspace) / "other.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(IoError):
            read_rate_curve(path)

    def test_unwritable(self, temp_workspace: str) -> None:
        """Should raise IoError when the target is a directory."""
        with pytest.raises(IoError):
            write_csv(_table(), Path(temp_workspace))


class TestVtk:
    """Tests for legacy VTK export."""

    def test_mesh_file(self, small_mesh: Mesh, temp_workspace: str) -> None:
        """Should write points, triangles and region tags."""
        path = write_mesh_vtk(small_mesh, Path(temp_workspace) / "mesh.vtk")
        text = path.read_text(encoding="utf-8")
        assert text.startswith("# vtk DataFile Version 2.0\n")
        assert "POINTS 45 double" in text
        assert "CELLS 64 256" in text
        assert "SCALARS region int 1" in text
        assert "POINT_DATA" not in text

    def test_state_with_meshio(
        self, small_spaces: Spaces, example1: ManufacturedCase, temp_workspace: str
    ) -> None:
        """Should be readable by meshio with every field."""
        meshio = pytest.importorskip("meshio")
        state = initial_state(small_spaces, example1.problem())
        path = write_vtk(state, Path(temp_workspace) / "state.vtk")
        data = meshio.read(path)
        assert data.points.shape == (45, 3)
        assert data.cells_dict["triangle"].shape == (64, 3)
        assert {"p_F", "p_f", "p_m", "p", "u_c"} <= set(data.point_data)
        # porous values vanish on conduit-only vertices
        top = small_spaces.mesh.vertices[:, 1] > 1.5
        assert np.all(data.point_data["p_F"][top] == 0.0)


class TestSummary:
    """Tests for YAML summaries."""

    def test_picard_statistics(self) -> None:
        """Should summarize iteration counts."""
        history = [ConduitStepInfo(3, True, 1e-11), ConduitStepInfo(5, False, 1e-4)]
        stats = picard_statistics(history)
        assert stats["steps"] == 2
        assert stats["iterations_mean"] == 4.0
        assert stats["iterations_max"] == 5
        assert stats["not_converged"] == 1
        assert picard_statistics([]) == {"steps": 0}

    def test_round_trip(self, temp_workspace: str) -> None:
        """Should store the command, config text and plain results."""
        results = {"Q": np.float64(1.25), "files": [Path("a.csv")], "rows": (1, 2)}
        path = write_summary(Path(temp_workspace), "wellbore", "[run]\n", results)
        assert path.name == "summary.yaml"
        doc = read_summary(path)
        assert doc["command"] == "wellbore"
        assert doc["config"] == "[run]\n"
        assert doc["results"] == {"Q": 1.25, "files": ["a.csv"], "rows": [1, 2]}
