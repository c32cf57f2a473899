"""Tests for partitioned backward-Euler marching."""

from dataclasses import replace

import numpy as np
import pytest

from fracflow.assembly import ModelParams
from fracflow.elements import Spaces
from fracflow.stepping import (
    StepConfig,
    TraditionalSolver,
    advance_traditional,
    constant,
    initial_state,
    step_porous,
    zero_problem,
    zero_state,
)


class TestState:
    """Tests for State."""

    def test_negative_time(self, small_spaces: Spaces) -> None:
        """Should reject negative times."""
        with pytest.raises(ValueError):
            zero_state(small_spaces, t=-1.0)

    def test_with_fields(self, small_spaces: Spaces) -> None:
        """Should replace only the given fields."""
        state = zero_state(small_spaces)
        new = state.with_fields(0.5, p_F=np.ones(small_spaces.porous.n_dofs))
        assert new.t == 0.5
        assert new.p_F.coefficients.sum() == small_spaces.porous.n_dofs
        assert not new.p_f.coefficients.any()
        assert new.spaces.velocity is small_spaces.velocity


class TestPorousStep:
    """Tests for step_porous."""

    def test_constant_pressures_are_steady(self, small_spaces: Spaces) -> None:
        """Should keep equal constant pressures constant without flow."""
        problem = replace(
            zero_problem(ModelParams(k_F=0.3, sigma=2.0)),
            p_F_bc=constant(5.0),
            p_f_bc=constant(5.0),
            p_m_bc=constant(5.0),
            p_F0=constant(5.0),
            p_f0=constant(5.0),
            p_m0=constant(5.0),
        )
        state = initial_state(small_spaces, problem)
        fields = step_porous(state, problem, StepConfig(dt=0.1))
        for f in fields:
            assert np.allclose(f.coefficients, 5.0)
            assert f.time == pytest.approx(0.1)


class TestTraditionalSolver:
    """Tests for TraditionalSolver."""

    def test_zero_problem_stays_zero(self, small_spaces: Spaces) -> None:
        """Should keep homogeneous data at zero with one Picard iteration."""
        solver = TraditionalSolver(small_spaces, zero_problem(), StepConfig(dt=0.25))
        state = solver.march(solver.initial_state(), 10)
        assert state.t == pytest.approx(2.5)
        for f in state.fields().values():
            assert not f.coefficients.any()
        assert len(solver.history) == 10
        assert all(info.converged and info.iterations == 1 for info in solver.history)

    def test_callback(self, small_spaces: Spaces) -> None:
        """Should call the callback once per step."""
        calls = []
        solver = TraditionalSolver(small_spaces, zero_problem(), StepConfig(dt=0.5, convection=False))
        solver.march(solver.initial_state(), 2, callback=lambda k, s, info: calls.append((k, s.t)))
        assert calls == [(1, 0.5), (2, 1.0)]

    def test_threads_match_serial(self, small_spaces: Spaces, example1) -> None:
        """Should give bitwise identical results with worker threads."""
        problem = example1.problem()
        results = []
        for workers in (1, 3):
            solver = TraditionalSolver(small_spaces, problem, StepConfig(dt=0.25, workers=workers))
            results.append(solver.march(solver.initial_state(), 1))
        for name, f in results[0].fields().items():
            assert np.array_equal(f.coefficients, getattr(results[1], name).coefficients), name

    def test_advance_traditional(self, small_spaces: Spaces, example1_stokes) -> None:
        """Should match one step of a solver built by hand."""
        problem = example1_stokes.problem()
        cfg = StepConfig(dt=0.25, convection=False)
        solver = TraditionalSolver(small_spaces, problem, cfg)
        state0 = solver.initial_state()
        a = solver.advance(state0)
        b = advance_traditional(state0, problem, cfg)
        assert np.allclose(a.u_c.coefficients, b.u_c.coefficients)
        assert np.allclose(a.p_m.coefficients, b.p_m.coefficients)
        assert np.all(np.isfinite(a.p.coefficients))
