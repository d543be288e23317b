"""
Residuals of the thermodynamic Herglotz equations along sampled trajectories.
"""

from typing import Optional, Tuple

import numpy as np

from ..core.exceptions import ContractViolationError, InsufficientDataError
from ..core.types import Trajectory
from ..systems.lagrangian import ContactLagrangian


def _check_simple(traj: Trajectory, minimum: int) -> None:
    if traj.layout.is_composed:
        raise ContractViolationError(
            "Herglotz diagnostics need a simple trajectory",
            1,
            traj.layout.thermal_count,
        )
    if len(traj) < minimum:
        raise InsufficientDataError(
            "Trajectory too short for central differences", minimum, len(traj)
        )


def herglotz_residual_series(
    lagrangian: ContactLagrangian, traj: Trajectory, h: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Central-difference residuals at interior points.

    Motion:  d/dt(dL/dv) - dL/dq - (dL/dv)(dL/dS)
    Entropy: dS/dt - v . dL/dv

    Returns:
        (motion residuals of shape (N-1, n), entropy residuals of shape (N-1,))

    Raises:
        InsufficientDataError: For fewer than 3 samples
    """
    _check_simple(traj, 3)
    h = traj.h if h is None else h
    q = traj.q
    s = traj.entropy_total

    v = (q[2:] - q[:-2]) / (2 * h)
    accel = (q[2:] - 2 * q[1:-1] + q[:-2]) / h**2
    s_dot = (s[2:] - s[:-2]) / (2 * h)

    motion = np.empty_like(v)
    entropy = np.empty(len(v))
    for i in range(len(v)):
        qi, vi, si = q[i + 1], v[i], s[i + 1]
        p = lagrangian.d_v(qi, vi, si)
        # d/dt(m v) = m a for the mechanical family
        motion[i] = (
            lagrangian.mass * accel[i]
            - lagrangian.d_q(qi, vi, si)
            - p * lagrangian.d_s(qi, vi, si)
        )
        entropy[i] = s_dot[i] - float(vi @ p)
    return motion, entropy


def herglotz_residual(
    lagrangian: ContactLagrangian, traj: Trajectory, h: Optional[float] = None
) -> float:
    """Max over interior points of both Herglotz residuals."""
    motion, entropy = herglotz_residual_series(lagrangian, traj, h)
    return float(max(np.max(np.abs(motion)), np.max(np.abs(entropy))))


def herglotz_entropy_floor(
    lagrangian: ContactLagrangian, q0: np.ndarray, q1: np.ndarray, h: float
) -> float:
    """
    Lowest possible entropy change of one midpoint Herglotz step.

    dS = dq . (m dq/h - h grad V(q_mid)/2) >= -h^3 |grad V(q_mid)|^2 / (16 m).
    """
    grad = lagrangian.potential.gradient(0.5 * (np.asarray(q0) + np.asarray(q1)))
    return -(h**3) * float(grad @ grad) / (16.0 * lagrangian.mass)


def herglotz_entropy_margin(lagrangian: ContactLagrangian, traj: Trajectory) -> float:
    """
    min_k of (S_{k+1} - S_k) minus its floor; non-negative up to roundoff.
    """
    _check_simple(traj, 2)
    q = traj.q
    increments = np.diff(traj.entropy_total)
    floors = np.array(
        [
            herglotz_entropy_floor(lagrangian, q[k], q[k + 1], traj.h)
            for k in range(len(increments))
        ]
    )
    return float(np.min(increments - floors))
