"""Tests for the implicit solver and the one-step integrators."""

from unittest.mock import patch

import numpy as np
import pytest
from scipy.optimize import OptimizeResult

from contact_thermo.core.exceptions import (
    ContractViolationError,
    ModelParameterError,
    StepFailureError,
)
from contact_thermo.core.types import SolverKind, StepperConfig
from contact_thermo.integrators import (
    dg_step,
    dg_step_closed_form_dho,
    dg_step_info,
    dho_oracle,
    exact_dho,
    rk4_step,
)
from contact_thermo.integrators import solver as solver_module
from contact_thermo.integrators.solver import STALL_LIMIT, solve_implicit


class TestStepperConfig:
    def test_solver_from_string(self):
        assert StepperConfig(h=0.1, solver="newton").solver is SolverKind.NEWTON

    def test_defaults(self):
        cfg = StepperConfig(h=0.1)
        assert cfg.solver is SolverKind.FIXED_POINT
        assert cfg.tol_solve == 1e-12
        assert cfg.max_iter == 50

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"h": 0.0},
            {"h": -0.1},
            {"h": float("nan")},
            {"h": 0.1, "solver": "bisection"},
            {"h": 0.1, "tol_solve": 0.0},
            {"h": 0.1, "max_iter": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ContractViolationError):
            StepperConfig(**kwargs)


class TestSolveImplicit:
    """Test fixed-point iteration with its Newton fallback."""

    def test_contraction(self):
        result = solve_implicit(
            lambda y: 0.5 * y + 1.0, np.zeros(1), StepperConfig(h=1.0)
        )
        assert result.state[0] == pytest.approx(2.0, abs=1e-11)
        assert not result.newton
        assert result.iterations > 1

    def test_newton_fallback_on_expansion(self):
        result = solve_implicit(
            lambda y: -1.5 * y + 5.0, np.zeros(1), StepperConfig(h=1.0)
        )
        assert result.newton
        assert result.iterations > STALL_LIMIT
        assert result.state[0] == pytest.approx(2.0, abs=1e-10)

    def test_newton_only(self):
        cfg = StepperConfig(h=1.0, solver=SolverKind.NEWTON)
        result = solve_implicit(lambda y: np.cos(y), np.zeros(1), cfg)
        assert result.newton
        assert result.state[0] == pytest.approx(0.7390851332151607, abs=1e-12)

    def test_no_root(self):
        cfg = StepperConfig(h=1.0, solver=SolverKind.NEWTON)
        with pytest.raises(StepFailureError, match="did not converge") as exc_info:
            solve_implicit(lambda y: y + 1.0, np.zeros(1), cfg, step_index=7)
        assert exc_info.value.step_index == 7

    def test_root_finder_failure_is_step_failure(self):
        failed = OptimizeResult(
            x=np.array([0.0]),
            fun=np.array([2.0]),
            success=False,
            nfev=4,
            message="not making good progress",
        )
        cfg = StepperConfig(h=1.0, solver=SolverKind.NEWTON)
        with patch("contact_thermo.integrators.solver.root", return_value=failed):
            with pytest.raises(StepFailureError, match="good progress") as exc_info:
                solve_implicit(np.cos, np.zeros(1), cfg, step_index=3)
        assert exc_info.value.iterations == 4
        assert exc_info.value.residual == 2.0

    def test_newton_uses_scipy_root(self):
        cfg = StepperConfig(h=1.0, solver=SolverKind.NEWTON)
        with patch(
            "contact_thermo.integrators.solver.root", wraps=solver_module.root
        ) as mock_root:
            solve_implicit(np.cos, np.zeros(1), cfg)
        assert mock_root.call_args.kwargs["tol"] == cfg.tol_solve
        assert mock_root.call_args.kwargs["method"] == "hybr"

    def test_iteration_cap(self):
        cfg = StepperConfig(h=1.0, max_iter=3)
        with pytest.raises(StepFailureError) as exc_info:
            solve_implicit(lambda y: 0.9 * y + 1.0, np.zeros(1), cfg, step_index=2)
        assert exc_info.value.step_index == 2
        assert "[step 2]" in str(exc_info.value)


class TestDiscreteGradientStep:
    """Test one energy-preserving step."""

    @pytest.mark.parametrize("kind", ["gonzalez", "avf", "itoh-abe"])
    def test_energy_preserved(self, kind, dho, dho_state, cfg):
        x1 = dg_step(dho, kind, dho_state, cfg)
        assert dho.energy(x1) == pytest.approx(50.0, abs=1e-9)
        assert x1[2] > dho_state[2]

    def test_matches_closed_form(self, dho, cfg, rng):
        for _ in range(20):
            x = rng.uniform(-2, 2, 3)
            np.testing.assert_allclose(
                dg_step(dho, "gonzalez", x, cfg),
                dg_step_closed_form_dho(0.1, 0.1, x),
                rtol=0,
                atol=1e-10,
            )

    def test_newton_matches_fixed_point(self, dho, dho_state):
        fixed = dg_step(dho, "gonzalez", dho_state, StepperConfig(h=0.1))
        newton = dg_step(
            dho, "gonzalez", dho_state, StepperConfig(h=0.1, solver="newton")
        )
        np.testing.assert_allclose(newton, fixed, rtol=0, atol=1e-9)

    def test_step_info(self, dho, dho_state, cfg):
        info = dg_step_info(dho, "gonzalez", dho_state, cfg)
        assert info.iterations >= 1
        assert info.residual <= 1e-12 * 50

    def test_composed_step_conserves_energy(self, particles, particles_state, cfg):
        x1 = dg_step(particles, "gonzalez", particles_state, cfg)
        assert particles.energy(x1) == pytest.approx(
            particles.energy(particles_state), abs=1e-9
        )
        assert np.sum(x1) > np.sum(particles_state)

    def test_wrong_dimension(self, dho, cfg):
        with pytest.raises(ContractViolationError):
            dg_step(dho, "gonzalez", np.zeros(2), cfg)


class TestClosedForm:
    """Test the explicit Gonzalez step for the unit oscillator."""

    def test_entropy_never_decreases(self, rng):
        for _ in range(100):
            x = rng.uniform(-10, 10, 3)
            assert dg_step_closed_form_dho(0.1, 0.1, x)[2] >= x[2] - 1e-12

    def test_energy_conserved(self, dho, rng):
        for _ in range(20):
            x = rng.uniform(-10, 10, 3)
            x1 = dg_step_closed_form_dho(0.1, 0.1, x)
            assert dho.energy(x1) == pytest.approx(dho.energy(x), abs=1e-11)

    def test_entropy_increment_formula(self):
        q0, p0, h = 0.3, -1.1, 0.1
        den = 2 * 0.1 * h + h**2 + 4
        x1 = dg_step_closed_form_dho(0.1, h, np.array([q0, p0, 0.0]))
        expected = 4 * h * (h * q0 - 2 * p0) ** 2 / den**2
        assert x1[2] == pytest.approx(expected, rel=1e-12)


class TestRungeKutta:
    def test_rk4_step_close_to_exact(self, dho, dho_state):
        x1 = rk4_step(dho, dho_state, 0.01)
        np.testing.assert_allclose(x1, exact_dho(0.1, dho_state, 0.01), atol=1e-8)

    def test_rk4_entropy_monotone(self, dho, rng):
        for _ in range(50):
            x = rng.uniform(-5, 5, 3)
            assert rk4_step(dho, x, 0.1)[2] >= x[2]


class TestExactSolution:
    """Test the underdamped closed-form solution."""

    def test_initial_value(self, dho_state):
        np.testing.assert_allclose(exact_dho(0.1, dho_state, 0.0), dho_state)

    def test_energy_conserved(self, dho, dho_state):
        oracle = dho_oracle(0.1, dho_state)
        for t in (0.5, 3.0, 20.0):
            assert dho.energy(oracle(t)) == pytest.approx(50.0, rel=1e-12)

    def test_satisfies_equation_of_motion(self):
        x0 = np.array([1.0, 0.0, 0.0])
        t, dt = 1.3, 1e-4
        q = [exact_dho(0.1, x0, s)[0] for s in (t - dt, t, t + dt)]
        accel = (q[2] - 2 * q[1] + q[0]) / dt**2
        velocity = (q[2] - q[0]) / (2 * dt)
        assert accel + 0.1 * velocity + q[1] == pytest.approx(0.0, abs=1e-5)

    def test_momentum_is_velocity(self):
        x0 = np.array([1.0, 0.5, 0.0])
        t, dt = 2.0, 1e-6
        velocity = (exact_dho(0.1, x0, t + dt)[0] - exact_dho(0.1, x0, t - dt)[0]) / (
            2 * dt
        )
        assert exact_dho(0.1, x0, t)[1] == pytest.approx(velocity, abs=1e-8)

    @pytest.mark.parametrize("gamma", [0.0, 2.0, 3.0])
    def test_gamma_outside_underdamped_range(self, gamma):
        with pytest.raises(ModelParameterError):
            exact_dho(gamma, np.zeros(3), 1.0)

    def test_state_shape(self):
        with pytest.raises(ContractViolationError):
            exact_dho(0.1, np.zeros(5), 1.0)
