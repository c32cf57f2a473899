"""Tests for step configuration and dof subsets."""

import numpy as np
import pytest

from fracflow.elements import Spaces
from fracflow.errors import NonDivisibleStep
from fracflow.stepping import (
    StepConfig,
    active_dofs,
    artificial_vertices,
    count_steps,
    default_step_config,
    local_index,
    relative_increment,
)


class TestStepConfig:
    """Tests for StepConfig."""

    def test_defaults(self) -> None:
        """Should default to dt = 1/16 with skew convection."""
        cfg = default_step_config()
        assert cfg.dt == 1.0 / 16.0
        assert cfg.skew is True
        assert cfg.convection is True
        assert cfg.workers == 1

    @pytest.mark.parametrize(
        "kwargs",
        [{"dt": 0.0}, {"picard_tol": 1.0}, {"picard_max": 0}, {"workers": 0}],
    )
    def test_invalid(self, kwargs: dict) -> None:
        """Should reject out-of-range settings."""
        with pytest.raises(ValueError):
            StepConfig(**kwargs)


class TestCountSteps:
    """Tests for count_steps."""

    def test_divisible(self) -> None:
        """Should count exact divisions."""
        assert count_steps(1.0, 1.0 / 16.0) == 16
        assert count_steps(10.0, 0.05) == 200

    def test_not_divisible(self) -> None:
        """Should raise NonDivisibleStep."""
        with pytest.raises(NonDivisibleStep):
            count_steps(1.0, 0.3)
        with pytest.raises(NonDivisibleStep):
            count_steps(0.1, 1.0)


class TestRelativeIncrement:
    """Tests for relative_increment."""

    def test_values(self) -> None:
        """Should measure |new - old| / |new|."""
        assert relative_increment(np.array([3.0, 4.0]), np.array([3.0, 4.0])) == 0.0
        assert relative_increment(np.array([3.0, 4.0]), np.zeros(2)) == pytest.approx(1.0)
        assert relative_increment(np.zeros(2), np.zeros(2)) == 0.0
        assert relative_increment(np.zeros(2), np.ones(2)) == float("inf")


class TestSubsets:
    """Tests for subdomain dof subsets."""

    def test_all_dofs(self, small_spaces: Spaces) -> None:
        """Should select every dof without positions."""
        assert np.array_equal(active_dofs(small_spaces.porous), np.arange(25))

    def test_cell_subset(self, small_spaces: Spaces) -> None:
        """Should select the dofs of the chosen cells only."""
        porous = small_spaces.porous
        dofs = active_dofs(porous, np.array([0]))
        assert np.array_equal(dofs, np.sort(porous.cell_dofs[0]))
        assert np.array_equal(local_index(dofs, dofs[::-1]), np.arange(3)[::-1])

    def test_local_index_outside(self, small_spaces: Spaces) -> None:
        """Should reject dofs outside the active set."""
        dofs = active_dofs(small_spaces.porous, np.array([0]))
        outside = np.setdiff1d(np.arange(25), dofs)[:1]
        with pytest.raises(ValueError):
            local_index(dofs, outside)

    def test_artificial_vertices(self, small_spaces: Spaces) -> None:
        """Should find no artificial boundary for the whole region."""
        porous = small_spaces.porous
        everything = np.arange(porous.n_cells)
        assert artificial_vertices(porous, everything).size == 0
        half = everything[porous.mesh.barycenters()[porous.cells, 0] < 0.5]
        shared = artificial_vertices(porous, half)
        assert np.allclose(porous.mesh.vertices[shared, 0], 0.5)
        assert shared.size == 5
