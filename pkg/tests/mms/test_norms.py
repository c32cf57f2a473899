"""Tests for error norms and convergence tables."""

import numpy as np
import pytest

from fracflow.assembly import interpolate
from fracflow.elements import build_spaces
from fracflow.mesh import Mesh, build_rect_mesh, example1_domain
from fracflow.mms import (
    ConvergenceLevel,
    ErrorRow,
    ErrorTable,
    ExactField,
    ManufacturedCase,
    NormKind,
    compute_norms,
    convergence_sweep,
    infsup_constant,
    rate,
)
from fracflow.stepping import constant


def _interpolation_error(case: ManufacturedCase, h: float, name: str, which: NormKind) -> float:
    spaces = build_spaces(build_rect_mesh(example1_domain(), h))
    dofmap = spaces.velocity if name == "u_c" else spaces.porous
    field = interpolate(dofmap, case.exact[name].value, 0.2)
    return compute_norms(field, case.exact[name], 0.2, which)


class TestComputeNorms:
    """Tests for compute_norms."""

    def test_constant_exact(self, small_spaces) -> None:
        """Should integrate a constant error over the unit square."""
        exact = ExactField(constant(3.0), lambda x, y, t: np.zeros(np.shape(x) + (2,)))
        zero = interpolate(small_spaces.porous, constant(0.0))
        assert compute_norms(zero, exact, 0.0, NormKind.L2) == pytest.approx(3.0)
        assert compute_norms(zero, exact, 0.0, NormKind.H1_SEMI) == pytest.approx(0.0)

    def test_restricted_cells(self, small_mesh: Mesh, small_spaces) -> None:
        """Should integrate over the selected cells only."""
        exact = ExactField(constant(1.0), lambda x, y, t: np.zeros(np.shape(x) + (2,)))
        zero = interpolate(small_spaces.porous, constant(0.0))
        cells = small_spaces.porous.cells[:8]
        area = small_mesh.cell_areas()[cells].sum()
        assert compute_norms(zero, exact, 0.0, cells=cells) == pytest.approx(np.sqrt(area))

    @pytest.mark.parametrize(
        "name,which,order",
        [("p_m", NormKind.L2, 2.0), ("p_F", NormKind.H1_SEMI, 1.0), ("u_c", NormKind.H1_SEMI, 1.0)],
    )
    def test_interpolation_orders(
        self, example1: ManufacturedCase, name: str, which: NormKind, order: float
    ) -> None:
        """Should observe at least the optimal interpolation orders."""
        e1 = _interpolation_error(example1, 0.25, name, which)
        e2 = _interpolation_error(example1, 0.125, name, which)
        assert rate(e1, e2, 0.25, 0.125) > order - 0.4


class TestRates:
    """Tests for observed orders."""

    def test_rate(self) -> None:
        """Should compute log ratios and skip undefined cases."""
        assert rate(1.0, 0.25, 1.0, 0.5) == pytest.approx(2.0)
        assert rate(0.0, 1.0, 1.0, 0.5) is None
        assert rate(1.0, 1.0, 0.5, 0.5) is None
        assert rate(float("inf"), 1.0, 1.0, 0.5) is None

    def test_table_rates(self) -> None:
        """Should put None in the first row."""
        table = ErrorTable(
            rows=[
                ErrorRow(h=0.5, H=0.5, dt=0.1, errors={"pm_l2": 0.4}),
                ErrorRow(h=0.25, H=0.25, dt=0.1, errors={"pm_l2": 0.1}),
            ]
        )
        rates = table.rates("pm_l2")
        assert rates[0] is None
        assert rates[1] == pytest.approx(2.0)

    def test_sweep_rejects_unordered_levels(self) -> None:
        """Should require decreasing h."""
        levels = [ConvergenceLevel(0.25, 0.25, 0.25), ConvergenceLevel(0.5, 0.5, 0.25)]
        with pytest.raises(ValueError):
            convergence_sweep(levels)


class TestInfSup:
    """Tests for infsup_constant."""

    def test_bounded_below(self, coarse_mesh: Mesh, small_mesh: Mesh) -> None:
        """Should stay positive and roughly mesh independent."""
        b1 = infsup_constant(coarse_mesh)
        b2 = infsup_constant(small_mesh)
        assert 0.0 < b2 < 1.0
        assert b2 > 0.5 * b1
