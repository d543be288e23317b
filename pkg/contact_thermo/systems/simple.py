"""
Simple thermodynamic systems: one body with friction and a single entropy.

State layout (q, p, S).
"""

from typing import Optional

import numpy as np

from ..core.exceptions import ContractViolationError, ModelParameterError
from ..core.types import State, StateLayout
from ..utils.logging_config import get_logger
from .base import (
    EntropicPotential,
    ModelSpec,
    Potential,
    quadratic_potential,
    require_positive,
)
from .lagrangian import ContactLagrangian

logger = get_logger(__name__)


def damped_system(mass: float, gamma: float, potential: Potential) -> ModelSpec:
    """
    Mechanical system under viscous friction.

    H = |p|^2 / (2m) + V(q) + gamma S, so the temperature dH/dS is gamma.

    Args:
        mass: Particle mass m > 0
        gamma: Friction coefficient, must be > 0
        potential: V with analytic gradient

    Returns:
        ModelSpec with a single thermal coordinate and a contact Lagrangian

    Raises:
        ModelParameterError: If mass or gamma is not positive
    """
    require_positive("damped", mass=mass, gamma=gamma)
    n = potential.dim
    layout = StateLayout.simple(n)

    def energy(x: np.ndarray) -> float:
        q, p, s = x[:n], x[n : 2 * n], x[2 * n]
        return float(p @ p) / (2.0 * mass) + potential(q) + gamma * s

    def gradient(x: np.ndarray) -> np.ndarray:
        q, p = x[:n], x[n : 2 * n]
        return np.concatenate([potential.gradient(q), p / mass, [gamma]])

    return ModelSpec(
        name="damped",
        layout=layout,
        energy=energy,
        gradient=gradient,
        parameters={
            "mass": mass,
            "gamma": gamma,
            "potential": potential.name,
            **potential.parameters,
        },
        lagrangian=ContactLagrangian(mass=mass, potential=potential, gamma=gamma),
    )


def damped_harmonic_oscillator(
    gamma: float, mass: float = 1.0, stiffness: float = 1.0
) -> ModelSpec:
    """Damped oscillator H = p^2/(2m) + k q^2/2 + gamma S in one dimension."""
    return damped_system(mass, gamma, quadratic_potential(stiffness, n=1))


def is_unit_oscillator(model: ModelSpec) -> bool:
    """True for the m = 1, V = q^2/2 damped oscillator."""
    params = model.parameters
    return (
        model.name == "damped"
        and model.n_mech == (1,)
        and params.get("mass") == 1.0
        and params.get("potential") == "quadratic"
        and params.get("stiffness") == 1.0
    )


def quadratic_metric_system(
    g_inv: np.ndarray, potential: EntropicPotential
) -> ModelSpec:
    """
    H = g^{ij} p_i p_j / 2 + V(q, S) for a symmetric (co)metric g^{ij}.

    Indefinite metrics are accepted; the second law is then not guaranteed
    and a warning is logged.

    Raises:
        ModelParameterError: If g_inv is not square and symmetric
        ContractViolationError: If g_inv and the potential disagree in dimension
    """
    g_inv = np.atleast_2d(np.asarray(g_inv, dtype=float))
    n = g_inv.shape[0]
    if g_inv.shape != (n, n) or not np.allclose(g_inv, g_inv.T, rtol=0, atol=1e-14):
        raise ModelParameterError(
            "quadratic_metric", "g_inv", g_inv.tolist(), "must be square and symmetric"
        )
    if potential.dim != n:
        raise ContractViolationError(
            "Metric and potential dimensions differ", n, potential.dim
        )

    eigenvalues = np.linalg.eigvalsh(g_inv)
    positive_semidefinite = bool(eigenvalues.min() >= 0)
    if not positive_semidefinite:
        logger.warning(
            "Metric g_inv is indefinite (min eigenvalue %.3g); "
            "entropy production may be negative",
            eigenvalues.min(),
        )

    layout = StateLayout.simple(n)

    def energy(x: np.ndarray) -> float:
        q, p, s = x[:n], x[n : 2 * n], x[2 * n]
        return 0.5 * float(p @ g_inv @ p) + potential(q, s)

    def gradient(x: np.ndarray) -> np.ndarray:
        q, p, s = x[:n], x[n : 2 * n], x[2 * n]
        v_q, v_s = potential.gradient(q, s)
        return np.concatenate([v_q, g_inv @ p, [v_s]])

    return ModelSpec(
        name="quadratic_metric",
        layout=layout,
        energy=energy,
        gradient=gradient,
        parameters={
            "g_inv": g_inv.tolist(),
            "potential": potential.name,
            "positive_semidefinite": positive_semidefinite,
            **potential.parameters,
        },
    )


def entropy_production_indicator(model: ModelSpec, x: State) -> float:
    """
    Liouville derivative Delta_Q(H) = p . dH/dp of a simple model.

    Non-negative values mean the entropy cannot decrease along the flow.
    For H = g^{ij} p_i p_j / 2 + V this is g^{ij} p_i p_j.
    """
    if model.layout.is_composed:
        raise ContractViolationError(
            "Entropy production indicator needs a simple model", 1, model.thermal_count
        )
    x = model.check_state(x)
    n = model.n_mech[0]
    return float(x[n : 2 * n] @ np.asarray(model.gradient(x))[n : 2 * n])


def second_law_flag(model: ModelSpec, x: State) -> Optional[str]:
    """Warning text when Delta_Q(H) < 0 at x, otherwise None."""
    value = entropy_production_indicator(model, x)
    if value < 0:
        message = f"Delta_Q(H) = {value:.6g} < 0: second law violated at this state"
        logger.warning(message)
        return message
    return None
