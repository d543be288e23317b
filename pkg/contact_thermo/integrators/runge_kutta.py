"""
Classical fourth-order Runge-Kutta reference integrator for x' = M(x) dH(x).

Not structure preserving; used to compare energy drift and convergence.
"""

import numpy as np

from ..core.types import State
from ..systems.base import ModelSpec
from ..systems.structure import model_vector_field

# Butcher tableau of the classical method
RK4_A = ((), (0.5,), (0.0, 0.5), (0.0, 0.0, 1.0))
RK4_B = (1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0)


def rk4_step(model: ModelSpec, x: State, h: float) -> State:
    """
    One RK4 step of the model flow.

    Raises:
        TemperaturePositivityError: If a stage of a composed model leaves T > 0
    """
    x = model.check_state(x)
    stages = []
    for row in RK4_A:
        y = x + h * sum((a * k for a, k in zip(row, stages)), np.zeros_like(x))
        stages.append(model_vector_field(model, y))
    return x + h * sum(b * k for b, k in zip(RK4_B, stages))
