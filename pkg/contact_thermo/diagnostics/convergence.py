"""
Empirical order of accuracy from runs at several step sizes.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from ..core.exceptions import InsufficientDataError, StepFailureError
from ..core.types import State, StepperConfig, Trajectory
from ..integrators.simulate import MethodSpec, parse_method, simulate
from ..systems.base import ModelSpec
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

Oracle = Callable[[float], State]

REFERENCE_REFINEMENT = 100
"""A missing oracle is replaced by a run at min(h_list) / REFERENCE_REFINEMENT."""


class ConvergenceStatus(Enum):
    OK = "ok"
    UNDEFINED = "undefined"


@dataclass
class ConvergenceResult:
    """Errors per step size and the fitted order."""

    h_list: List[float]
    errors: List[float]
    order: Optional[float]
    status: ConvergenceStatus
    method: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "h": list(self.h_list),
            "errors": list(self.errors),
            "order": self.order,
            "status": self.status.value,
        }


def trajectory_error(traj: Trajectory, oracle: Oracle) -> float:
    """max_k |x_k - oracle(t_k)|_inf over the trajectory."""
    worst = 0.0
    for t, x in zip(traj.times, traj.states):
        worst = max(worst, float(np.max(np.abs(x - np.asarray(oracle(float(t)))))))
    return worst


def fit_order(h_list: Sequence[float], errors: Sequence[float]) -> Optional[float]:
    """Least-squares slope of log(error) against log(h); None if any error is 0."""
    errs = np.asarray(errors, dtype=float)
    if np.any(errs <= 0) or not np.all(np.isfinite(errs)):
        return None
    slope, _ = np.polyfit(np.log(np.asarray(h_list, dtype=float)), np.log(errs), 1)
    return float(slope)


def _steps_for(h: float, t_final: float) -> int:
    return int(round(t_final / h))


def _run(
    model: ModelSpec,
    spec: MethodSpec,
    x0: State,
    cfg: StepperConfig,
    t_final: float,
) -> Trajectory:
    traj = simulate(model, spec, x0, cfg, _steps_for(cfg.h, t_final))
    if traj.failure is not None:
        f = traj.failure
        raise StepFailureError(f.reason, f.residual, f.iterations, f.step_index)
    return traj


def reference_oracle(
    model: ModelSpec,
    method: Union[str, MethodSpec],
    x0: State,
    h: float,
    t_final: float,
    cfg: Optional[StepperConfig] = None,
) -> Oracle:
    """
    Oracle backed by a single fine run; valid at multiples of h.
    """
    spec = parse_method(method)
    base = cfg or StepperConfig(h=h)
    ref = _run(model, spec, x0, replace(base, h=h), t_final)

    def oracle(t: float) -> State:
        return ref.states[int(round(t / h))]

    return oracle


def convergence_study(
    model: ModelSpec,
    method: Union[str, MethodSpec],
    x0: State,
    h_list: Sequence[float],
    t_final: float,
    oracle: Optional[Oracle] = None,
    cfg: Optional[StepperConfig] = None,
) -> ConvergenceResult:
    """
    Estimate the order of a method on a model.

    Args:
        model: Model to integrate
        method: Method name
        x0: Initial state
        h_list: Step sizes; t_final should be a multiple of each
        t_final: Length of each run
        oracle: Exact solution t -> x(t); a fine reference run when omitted
        cfg: Solver settings; h is replaced per run

    Returns:
        ConvergenceResult, with status UNDEFINED when an error is exactly zero

    Raises:
        InsufficientDataError: For fewer than 2 step sizes
        StepFailureError: If any run fails
    """
    h_list = [float(h) for h in h_list]
    if len(h_list) < 2:
        raise InsufficientDataError(
            "Convergence needs several step sizes", 2, len(h_list)
        )
    spec = parse_method(method)
    base = cfg or StepperConfig(h=h_list[0])

    if oracle is None:
        h_ref = min(h_list) / REFERENCE_REFINEMENT
        logger.info("No oracle given, building reference run at h=%g", h_ref)
        oracle = reference_oracle(model, spec, x0, h_ref, t_final, base)

    errors = []
    for h in h_list:
        traj = _run(model, spec, x0, replace(base, h=h), t_final)
        errors.append(trajectory_error(traj, oracle))
        logger.debug("h=%g: error %.3e", h, errors[-1])

    order = fit_order(h_list, errors)
    if order is None:
        logger.warning(
            "Order of %s undefined: errors %s contain zeros", spec.name, errors
        )
        return ConvergenceResult(
            h_list, errors, None, ConvergenceStatus.UNDEFINED, spec.name
        )
    logger.info("Observed order of %s on %s: %.3f", spec.name, model.name, order)
    return ConvergenceResult(h_list, errors, order, ConvergenceStatus.OK, spec.name)
