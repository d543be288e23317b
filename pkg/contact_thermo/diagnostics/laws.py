"""
Discrete audits of the first and second law along a trajectory.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..core.types import Trajectory
from ..systems.base import ModelSpec
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class LawReport:
    """Outcome of audit_laws."""

    max_energy_drift: float
    """max_k |H_k - H_0|."""

    min_entropy_increment: float
    """min_k (S_total,k+1 - S_total,k); 0 for a single state."""

    first_law_residuals: np.ndarray
    """Discrete first-law residual of every step."""

    temperatures: np.ndarray
    """T_alpha(x_k), shape (N+1, thermal_count)."""

    tol_energy: float
    tol_entropy: float

    energy_ok: bool
    entropy_ok: bool

    notes: List[str] = field(default_factory=list)

    @property
    def max_first_law_residual(self) -> float:
        if self.first_law_residuals.size == 0:
            return 0.0
        return float(np.max(np.abs(self.first_law_residuals)))

    @property
    def passed(self) -> bool:
        return self.energy_ok and self.entropy_ok

    def to_dict(self, include_series: bool = True) -> Dict[str, Any]:
        """JSON-serializable form."""
        data: Dict[str, Any] = {
            "passed": self.passed,
            "first_law": {
                "ok": self.energy_ok,
                "max_energy_drift": self.max_energy_drift,
                "tolerance": self.tol_energy,
                "max_residual": self.max_first_law_residual,
            },
            "second_law": {
                "ok": self.entropy_ok,
                "min_entropy_increment": self.min_entropy_increment,
                "tolerance": self.tol_entropy,
            },
            "notes": list(self.notes),
        }
        if include_series:
            data["first_law"]["residuals"] = self.first_law_residuals.tolist()
            data["final_temperatures"] = (
                self.temperatures[-1].tolist() if len(self.temperatures) else []
            )
        return data


def first_law_residuals(traj: Trajectory, model: ModelSpec) -> np.ndarray:
    """
    Per-step discrete first-law residuals.

    Simple systems: r_k = (S_{k+1} - S_k) - p_mid . (q_{k+1} - q_k).
    Composed systems: r_k = (H_{k+1} - H_k) - sum_alpha T_alpha,mid dS_alpha
    minus the mechanical midpoint power. Midpoint quantities are arithmetic
    means of consecutive states.
    """
    states = traj.states
    if len(states) < 2:
        return np.zeros(0)
    layout = model.layout
    delta = np.diff(states, axis=0)

    if not layout.is_composed:
        q_idx, p_idx, s_idx = layout.q_indices, layout.p_indices, layout.s_index(0)
        p_mid = 0.5 * (states[:-1, p_idx] + states[1:, p_idx])
        return delta[:, s_idx] - np.sum(p_mid * delta[:, q_idx], axis=1)

    grads = np.array([model.gradient(x) for x in states])
    grad_mid = 0.5 * (grads[:-1] + grads[1:])
    s_idx = layout.s_indices
    mech_idx = layout.q_indices + layout.p_indices
    heat = np.sum(grad_mid[:, s_idx] * delta[:, s_idx], axis=1)
    power = np.sum(grad_mid[:, mech_idx] * delta[:, mech_idx], axis=1)
    return np.diff(traj.energy) - heat - power


def audit_laws(
    traj: Trajectory,
    model: ModelSpec,
    tol_energy: float = 1e-9,
    tol_entropy: float = 1e-12,
) -> LawReport:
    """
    Check energy conservation and entropy monotonicity of a trajectory.

    Args:
        traj: Non-empty trajectory
        model: Model that produced it
        tol_energy: Allowed max |H_k - H_0|
        tol_entropy: Allowed entropy decrease per step

    Returns:
        LawReport with flags against the given tolerances
    """
    drift = float(np.max(np.abs(traj.energy - traj.energy[0])))
    increments = np.diff(traj.entropy_total)
    min_increment = float(np.min(increments)) if increments.size else 0.0

    report = LawReport(
        max_energy_drift=drift,
        min_entropy_increment=min_increment,
        first_law_residuals=first_law_residuals(traj, model),
        temperatures=traj.temperatures,
        tol_energy=tol_energy,
        tol_entropy=tol_entropy,
        energy_ok=drift <= tol_energy,
        entropy_ok=min_increment >= -tol_entropy,
    )

    if traj.failure is not None:
        report.notes.append(
            f"trajectory stopped at step {traj.failure.step_index}: "
            f"{traj.failure.reason}"
        )
    if not report.energy_ok:
        report.notes.append(f"energy drift {drift:.3e} exceeds {tol_energy:.1e}")
    if not report.entropy_ok:
        worst = int(np.argmin(increments))
        message = (
            f"entropy decreased by {-min_increment:.3e} at step {worst} "
            f"(tolerance {tol_entropy:.1e})"
        )
        report.notes.append(message)
        logger.warning("Second law violated empirically: %s", message)
    return report
