"""
Approach to thermal equilibrium of two subsystems.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..core.exceptions import ContractViolationError
from ..core.types import Trajectory
from ..systems.base import ModelSpec


@dataclass
class EquilibrationMetrics:
    gap: np.ndarray
    """|T1 - T2| at every state."""

    t_infinity: Optional[float]
    """Predicted common temperature, None when the model has no closed form."""

    final_gap: float
    final_deviation: Optional[float]
    """max_alpha |T_alpha(t_N) - T_infinity|."""

    gap_non_increasing: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_infinity": self.t_infinity,
            "initial_gap": float(self.gap[0]),
            "final_gap": self.final_gap,
            "final_deviation": self.final_deviation,
            "gap_non_increasing": self.gap_non_increasing,
        }


def predicted_equilibrium(model: ModelSpec, t_a: float, t_b: float) -> Optional[float]:
    """
    (c_a T_a + c_b T_b) / (c_a + c_b) for exponential thermal energies.

    The thermal energy c exp(S/c) = c T is exchanged only between the two
    bodies, so c_a T_a + c_b T_b is conserved.
    """
    c_a = model.parameters.get("c_a")
    c_b = model.parameters.get("c_b")
    if c_a is None or c_b is None:
        return None
    return (c_a * t_a + c_b * t_b) / (c_a + c_b)


def equilibration_metrics(
    traj: Trajectory, model: ModelSpec, rtol: float = 1e-12
) -> EquilibrationMetrics:
    """
    Temperature gap series and distance from the predicted equilibrium.

    Args:
        traj: Trajectory of a composed model
        model: The composed model
        rtol: Relative slack for the monotone gap check

    Raises:
        ContractViolationError: If the model does not have two subsystems
    """
    if model.thermal_count != 2:
        raise ContractViolationError(
            "Equilibration needs two thermal subsystems", 2, model.thermal_count
        )
    temps = traj.temperatures
    gap = np.abs(temps[:, 0] - temps[:, 1])
    t_inf = predicted_equilibrium(model, float(temps[0, 0]), float(temps[0, 1]))
    deviation = None
    if t_inf is not None:
        deviation = float(np.max(np.abs(temps[-1] - t_inf)))
    slack = rtol * max(1.0, float(np.max(gap)))
    return EquilibrationMetrics(
        gap=gap,
        t_infinity=t_inf,
        final_gap=float(gap[-1]),
        final_deviation=deviation,
        gap_non_increasing=bool(np.all(np.diff(gap) <= slack)),
    )
