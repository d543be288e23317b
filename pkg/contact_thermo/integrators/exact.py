"""
Exact solution of the damped oscillator H = p^2/2 + q^2/2 + gamma S.

q'' + gamma q' + q = 0 with p = q', and S follows from conservation of H:
S(t) = S0 + (p0^2 + q0^2 - p^2 - q^2) / (2 gamma).
"""

from typing import Callable

import numpy as np

from ..core.exceptions import ContractViolationError, ModelParameterError
from ..core.types import State


def exact_dho(gamma: float, x0: State, t: float) -> State:
    """
    State of the underdamped oscillator at time t.

    Args:
        gamma: Friction coefficient, 0 < gamma < 2
        x0: Initial state (q0, p0, S0)
        t: Time

    Raises:
        ModelParameterError: If gamma is not in (0, 2)
        ContractViolationError: If x0 is not a 1-DOF state
    """
    if not 0 < gamma < 2:
        raise ModelParameterError(
            "exact_dho",
            "gamma",
            gamma,
            "closed form needs an underdamped 0 < gamma < 2",
        )
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (3,):
        raise ContractViolationError("exact_dho needs (q0, p0, S0)", (3,), x0.shape)
    q0, p0, s0 = x0

    omega = np.sqrt(1.0 - gamma**2 / 4.0)
    a = q0
    b = (p0 + 0.5 * gamma * q0) / omega
    decay = np.exp(-0.5 * gamma * t)
    c, s = np.cos(omega * t), np.sin(omega * t)
    q = decay * (a * c + b * s)
    p = decay * (-0.5 * gamma * (a * c + b * s) + omega * (-a * s + b * c))
    entropy = s0 + (p0**2 + q0**2 - p**2 - q**2) / (2.0 * gamma)
    return np.array([q, p, entropy])


def dho_oracle(gamma: float, x0: State) -> Callable[[float], State]:
    """t -> exact_dho(gamma, x0, t)."""
    return lambda t: exact_dho(gamma, x0, t)
