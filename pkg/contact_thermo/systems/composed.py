"""
Two thermodynamic subsystems exchanging heat by Fourier's law.

State layout (q1, p1, S1, q2, p2, S2); subsystems without mechanics have
empty q and p blocks.
"""

from typing import Any, Callable, Dict, Optional

import numpy as np

from ..core.exceptions import ContractViolationError, TemperaturePositivityError
from ..core.types import State, StateLayout
from .base import ModelSpec, Potential, require_positive, zero_potential

T_MIN = 1e-12
"""Temperatures at or below this floor are rejected."""


def composed_system(
    name: str,
    n_a: int,
    n_b: int,
    energy: Callable[[np.ndarray], float],
    gradient: Callable[[np.ndarray], np.ndarray],
    k: float,
    parameters: Optional[Dict[str, Any]] = None,
) -> ModelSpec:
    """
    Build a composed model from a user supplied energy and gradient.

    Args:
        name: Model name
        n_a: Mechanical dimension of subsystem 1
        n_b: Mechanical dimension of subsystem 2
        energy: H on the layout (q1, p1, S1, q2, p2, S2)
        gradient: Analytic dH
        k: Heat conductivity, k >= 0
        parameters: Parameter record kept on the model
    """
    return ModelSpec(
        name=name,
        layout=StateLayout.composed(n_a, n_b),
        energy=energy,
        gradient=gradient,
        conductivity=float(k),
        parameters={"k": k, **(parameters or {})},
    )


def _thermal_energy(c: float, s: float) -> float:
    return c * float(np.exp(s / c))


def thermo_particles(c_a: float, c_b: float, k: float) -> ModelSpec:
    """
    Two thermal bodies without mechanics.

    H = c_a exp(S_a/c_a) + c_b exp(S_b/c_b), so T_a = exp(S_a/c_a).

    Raises:
        ModelParameterError: If a heat capacity is not positive or k < 0
    """
    require_positive("thermo_particles", c_a=c_a, c_b=c_b)

    def energy(x: np.ndarray) -> float:
        return _thermal_energy(c_a, x[0]) + _thermal_energy(c_b, x[1])

    def gradient(x: np.ndarray) -> np.ndarray:
        return np.array([np.exp(x[0] / c_a), np.exp(x[1] / c_b)])

    return composed_system(
        "thermo_particles", 0, 0, energy, gradient, k, {"c_a": c_a, "c_b": c_b}
    )


def thermo_springs(
    m_a: float,
    m_b: float,
    c_a: float,
    c_b: float,
    k: float,
    potential: Potential,
    name: str = "thermo_springs",
) -> ModelSpec:
    """
    Two oscillating bodies that each carry heat.

    H = |p_a|^2/(2 m_a) + |p_b|^2/(2 m_b) + V(q_a, q_b)
        + c_a exp(S_a/c_a) + c_b exp(S_b/c_b)

    The potential acts on the concatenated configuration (q_a, q_b) and
    must have even dimension.
    """
    require_positive(name, m_a=m_a, m_b=m_b, c_a=c_a, c_b=c_b)
    if potential.dim % 2:
        raise ContractViolationError(
            "Composed potentials act on (q_a, q_b) of equal size",
            "even dimension",
            potential.dim,
        )
    n = potential.dim // 2
    layout = StateLayout.composed(n, n)
    qa, pa, sa = layout.q_slice(0), layout.p_slice(0), layout.s_index(0)
    qb, pb, sb = layout.q_slice(1), layout.p_slice(1), layout.s_index(1)

    def energy(x: np.ndarray) -> float:
        q = np.concatenate([x[qa], x[qb]])
        kinetic = float(x[pa] @ x[pa]) / (2 * m_a) + float(x[pb] @ x[pb]) / (2 * m_b)
        return (
            kinetic
            + potential(q)
            + _thermal_energy(c_a, x[sa])
            + _thermal_energy(c_b, x[sb])
        )

    def gradient(x: np.ndarray) -> np.ndarray:
        q = np.concatenate([x[qa], x[qb]])
        v_q = potential.gradient(q)
        out = np.empty(layout.dim)
        out[qa] = v_q[:n]
        out[pa] = x[pa] / m_a
        out[sa] = np.exp(x[sa] / c_a)
        out[qb] = v_q[n:]
        out[pb] = x[pb] / m_b
        out[sb] = np.exp(x[sb] / c_b)
        return out

    return composed_system(
        name,
        n,
        n,
        energy,
        gradient,
        k,
        {
            "m_a": m_a,
            "m_b": m_b,
            "c_a": c_a,
            "c_b": c_b,
            "potential": potential.name,
            **potential.parameters,
        },
    )


def free_thermo_particles(
    m_a: float, m_b: float, c_a: float, c_b: float, k: float, n: int = 1
) -> ModelSpec:
    """Two freely moving particles exchanging heat (thermo_springs with V = 0)."""
    return thermo_springs(
        m_a, m_b, c_a, c_b, k, zero_potential(2 * n), name="free_thermo_particles"
    )


def entropy_from_temperature(c: float, temperature: float) -> float:
    """Invert T = exp(S/c): S = c ln T."""
    if not temperature > T_MIN:
        raise TemperaturePositivityError(0, temperature, T_MIN)
    return c * float(np.log(temperature))


def checked_temperatures(model: ModelSpec, x: State) -> np.ndarray:
    """
    Temperatures of a composed model, enforcing T_alpha > T_MIN.

    Raises:
        TemperaturePositivityError: For the first subsystem at or below the floor
    """
    temps = model.temperatures(x)
    for alpha, t in enumerate(temps):
        if not t > T_MIN:
            raise TemperaturePositivityError(alpha, float(t), T_MIN)
    return temps


def fourier_factor(model: ModelSpec, x: State) -> float:
    """
    K = k (1/T1 - 1/T2).

    Raises:
        ContractViolationError: If the model is not composed
        TemperaturePositivityError: If a temperature is not positive
    """
    if not model.layout.is_composed:
        raise ContractViolationError(
            "Fourier factor needs two thermal subsystems", 2, model.thermal_count
        )
    t1, t2 = checked_temperatures(model, x)
    return model.conductivity * (1.0 / t1 - 1.0 / t2)


def entropy_production_rate(model: ModelSpec, x: State) -> float:
    """Total entropy rate k (T2 - T1)^2 / (T1 T2) of a composed model."""
    t1, t2 = checked_temperatures(model, x)
    return model.conductivity * (t2 - t1) ** 2 / (t1 * t2)
