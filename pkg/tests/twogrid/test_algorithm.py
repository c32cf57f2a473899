"""Tests for the local parallel method and state comparison."""

import numpy as np
import pytest

from fracflow.assembly import assemble_divergence
from fracflow.errors import MissingCorrection, NotNested
from fracflow.mesh import Mesh, SubdomainLayout, refine_uniform
from fracflow.mms import ManufacturedCase
from fracflow.stepping import StepConfig, TraditionalSolver, zero_problem
from fracflow.twogrid import (
    CorrectionSet,
    LocalConduitProblem,
    LocalParallelSolver,
    TwoGridConfig,
    compare_states,
    match_vertices,
    speedup,
)


def _config(H: float, h: float, workers: int = 1) -> TwoGridConfig:
    step = StepConfig(dt=0.25, convection=False, workers=workers)
    return TwoGridConfig(H=H, h=h, layout=SubdomainLayout((2, 2), 0.25), step=step)


class TestLocalParallelSolver:
    """Tests for LocalParallelSolver."""

    def test_same_mesh_corrections_vanish(
        self, small_mesh: Mesh, example1_stokes: ManufacturedCase
    ) -> None:
        """Should produce zero corrections when H equals h."""
        lp = LocalParallelSolver(small_mesh, example1_stokes.problem(), _config(0.25, 0.25))
        coarse, corrections, composite = lp.march(2)
        for index, norm in corrections.norms.items():
            assert norm < 1e-8, index
        state = composite.to_state()
        for name, f in coarse.fields().items():
            assert np.allclose(getattr(state, name).coefficients, f.coefficients, atol=1e-8)

    def test_two_levels(self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase) -> None:
        """Should march on a refined mesh and merge all eight subdomains."""
        lp = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        assert lp.fine_mesh.n_vertices == 45
        assert len(lp.local) == 8
        coarse, corrections, composite = lp.march(1)
        assert coarse.t == pytest.approx(0.25)
        assert composite.t == pytest.approx(0.25)
        assert set(corrections.fields) == set(range(8))
        state = composite.to_state()
        for f in state.fields().values():
            assert np.all(np.isfinite(f.coefficients))

    def test_threads_match_serial(self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase) -> None:
        """Should give bitwise identical composites with worker threads."""
        composites = []
        for workers in (1, 4):
            lp = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25, workers))
            composites.append(lp.march(1)[2])
        for name, values in composites[0].cell_values.items():
            assert np.array_equal(values, composites[1].cell_values[name]), name

    def test_subdomain_order_does_not_matter(
        self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase
    ) -> None:
        """Should merge to the same composite when subdomains are solved in reverse."""
        forward = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        reverse = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        reverse.local = reverse.local[::-1]
        a = forward.march(2)[2]
        b = reverse.march(2)[2]
        for name, values in a.cell_values.items():
            assert np.array_equal(values, b.cell_values[name]), name

    def test_zero_data_stays_zero(self, coarse_mesh: Mesh) -> None:
        """Should keep homogeneous data exactly zero over ten steps."""
        lp = LocalParallelSolver(coarse_mesh, zero_problem(), _config(0.5, 0.25))
        coarse, corrections, composite = lp.march(10)
        assert composite.t == pytest.approx(2.5)
        for name, values in composite.cell_values.items():
            assert not values.any(), name
        assert all(norm == 0.0 for norm in corrections.norms.values())
        assert not any(f.coefficients.any() for f in coarse.fields().values())

    def test_enclosed_conduit_subdomains_conserve_mass(
        self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase
    ) -> None:
        """Should leave no continuity residual on subdomains with a closed boundary."""
        lp = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        enclosed = [
            local
            for local in lp.local
            if isinstance(local, LocalConduitProblem) and local.enclosed
        ]
        assert enclosed
        coarse, corrections, _ = lp.march(1)
        U = lp.prolong_state(coarse).u_c.coefficients
        spaces = lp.fine_spaces
        for local in enclosed:
            system = local.system
            w = U + corrections.get(local.subdomain.index)["u_c"]
            divergence = assemble_divergence(
                spaces.mesh, spaces.velocity, spaces.pressure, system.params.eta, system.positions
            )
            residual = (divergence @ w)[system.active_p]
            assert np.abs(residual).max() < 1e-10, local.subdomain.index

    def test_callback(self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase) -> None:
        """Should report each composite."""
        seen = []
        lp = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        lp.march(2, callback=lambda step, composite: seen.append((step, composite.t)))
        assert [s for s, _ in seen] == [1, 2]
        assert seen[-1][1] == pytest.approx(0.5)

    def test_missing_correction(self, coarse_mesh: Mesh, example1_stokes: ManufacturedCase) -> None:
        """Should raise MissingCorrection for an unknown subdomain."""
        lp = LocalParallelSolver(coarse_mesh, example1_stokes.problem(), _config(0.5, 0.25))
        corrections = CorrectionSet.zeros(lp.decomposition, lp.fine_spaces)
        with pytest.raises(MissingCorrection):
            corrections.get(99)


class TestCompare:
    """Tests for run comparison helpers."""

    def test_match_refined_and_direct(self, coarse_mesh: Mesh, small_mesh: Mesh) -> None:
        """Should pair vertices of geometrically identical meshes."""
        refined = refine_uniform(coarse_mesh, 1)
        perm = match_vertices(small_mesh, refined)
        assert np.allclose(refined.vertices[perm], small_mesh.vertices)

    def test_match_different_meshes(self, coarse_mesh: Mesh, small_mesh: Mesh) -> None:
        """Should raise NotNested when vertex sets differ."""
        with pytest.raises(NotNested):
            match_vertices(small_mesh, coarse_mesh)

    def test_compare_identical(self, small_spaces, example1_stokes: ManufacturedCase) -> None:
        """Should report zero differences for a state against itself."""
        solver = TraditionalSolver(small_spaces, example1_stokes.problem(), StepConfig(dt=0.5))
        state = solver.initial_state()
        diff = compare_states(state, state)
        assert set(diff) == {"p_F", "p_f", "p_m", "u_c", "p"}
        assert all(d.max_abs == 0.0 and d.relative_l2 == 0.0 for d in diff.values())

    def test_speedup(self) -> None:
        """Should divide wall times."""
        assert speedup(4.0, 2.0) == 2.0
        assert speedup(1.0, 0.0) == float("inf")
