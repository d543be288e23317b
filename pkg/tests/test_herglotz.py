"""Tests for the discrete Herglotz integrator."""

import logging
from unittest.mock import patch

import numpy as np
import pytest
from scipy.optimize import OptimizeResult

from contact_thermo.core.exceptions import StepFailureError
from contact_thermo.integrators import herglotz_closed_form_dho, herglotz_step
from contact_thermo.integrators.herglotz import (
    discrete_momentum,
    entropy_update,
    initial_momentum,
)
from contact_thermo.systems import (
    ContactLagrangian,
    damped_system,
    midpoint_discrete_lagrangian,
    quadratic_potential,
)

H = 0.1
Q2 = 7.9401 / 4.01


@pytest.fixture
def ld(dho):
    return midpoint_discrete_lagrangian(dho.lagrangian, H)


class TestClosedForm:
    """The unit oscillator from q0 = 0, q1 = 1, S0 = 0 with h = gamma = 0.1."""

    def test_values(self):
        q2, s1 = herglotz_closed_form_dho(0.1, H, 0.0, 1.0, 0.0)
        assert q2 == pytest.approx(Q2, rel=1e-14)
        assert s1 == pytest.approx(9.975, rel=1e-14)

    def test_generic_step_matches(self, ld):
        q2, s1 = herglotz_step(ld, np.array([0.0]), np.array([1.0]), 0.0)
        assert q2[0] == pytest.approx(Q2, rel=1e-12)
        assert s1 == pytest.approx(9.975, rel=1e-12)

    def test_generic_step_matches_at_random(self, ld, rng):
        for _ in range(20):
            q0, q1, s0 = rng.uniform(-1, 1, 3)
            q2, s1 = herglotz_step(ld, np.array([q0]), np.array([q1]), s0)
            q2_ref, s1_ref = herglotz_closed_form_dho(0.1, H, q0, q1, s0)
            assert q2[0] == pytest.approx(q2_ref, abs=1e-12)
            assert s1 == pytest.approx(s1_ref, abs=1e-12)


class TestStepPieces:
    def test_entropy_update(self, ld):
        assert entropy_update(ld, np.zeros(1), np.ones(1), 0.0) == pytest.approx(9.975)

    def test_discrete_momentum(self, ld):
        # m (q1 - q0)/h - h V'(q_mid)/2
        p = discrete_momentum(ld, np.zeros(1), np.ones(1), 0.0)
        np.testing.assert_allclose(p, [9.975])

    def test_initial_momentum(self, ld):
        # -D1 / (1 + D_S) = 10.025 / 0.99
        p0 = initial_momentum(ld, np.zeros(1), np.ones(1), 0.0)
        np.testing.assert_allclose(p0, [10.025 / 0.99])

    def test_root_finder_logged(self, ld, caplog):
        with caplog.at_level(logging.DEBUG, logger="contact_thermo"):
            herglotz_step(ld, np.zeros(1), np.ones(1), 0.0)
        assert "herglotz step:" in caplog.text
        assert "Jacobian evaluations" in caplog.text

    def test_root_finder_failure(self, ld):
        failed = OptimizeResult(
            x=np.array([np.nan]),
            fun=np.array([1.0]),
            success=False,
            njev=3,
            message="stalled",
        )
        with patch("contact_thermo.integrators.herglotz.root", return_value=failed):
            with pytest.raises(StepFailureError, match="stalled") as exc_info:
                herglotz_step(ld, np.zeros(1), np.ones(1), 0.0, step_index=9)
        assert exc_info.value.step_index == 9
        assert exc_info.value.iterations == 3

    def test_iteration_cap(self, ld):
        with pytest.raises(StepFailureError) as exc_info:
            herglotz_step(ld, np.zeros(1), np.ones(1), 0.0, max_iter=0, step_index=4)
        assert exc_info.value.step_index == 4


class TestMultiDimensional:
    def test_two_dof_step_is_componentwise(self):
        model = damped_system(1.0, 0.1, quadratic_potential(1.0, n=2))
        ld2 = midpoint_discrete_lagrangian(model.lagrangian, H)
        q2, s1 = herglotz_step(ld2, np.zeros(2), np.array([1.0, 0.5]), 0.0)
        ref_a, _ = herglotz_closed_form_dho(0.1, H, 0.0, 1.0, 0.0)
        ref_b, _ = herglotz_closed_form_dho(0.1, H, 0.0, 0.5, 0.0)
        np.testing.assert_allclose(q2, [ref_a, ref_b], rtol=1e-12)
        # Both components contribute to the entropy
        _, s_a = herglotz_closed_form_dho(0.1, H, 0.0, 1.0, 0.0)
        _, s_b = herglotz_closed_form_dho(0.1, H, 0.0, 0.5, 0.0)
        assert s1 == pytest.approx(s_a + s_b)

    def test_heavy_particle(self):
        lagrangian = ContactLagrangian(2.0, quadratic_potential(1.0), 0.1)
        ld2 = midpoint_discrete_lagrangian(lagrangian, H)
        q_prev, q_cur = np.zeros(1), np.array([0.1])
        q_next, s_cur = herglotz_step(ld2, q_prev, q_cur, 0.0)
        p_cur = ld2.d2(q_prev, q_cur, 0.0)
        residual = ld2.d1(q_cur, q_next, s_cur) + (
            1 + ld2.d_s(q_cur, q_next, s_cur)
        ) * p_cur
        assert np.max(np.abs(residual)) < 1e-12
