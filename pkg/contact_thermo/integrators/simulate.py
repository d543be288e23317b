"""
Trajectory generation for all integration methods.

Method names: "dg:gonzalez", "dg:avf", "dg:itoh-abe", "herglotz", "rk4",
"dho-closed-form". A failed step stops the run and returns the partial
trajectory with a failure record; no other stepper is substituted.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Union

import numpy as np

from ..core.exceptions import (
    ContractViolationError,
    StepFailureError,
    TemperaturePositivityError,
    UnknownMethodError,
    UnsupportedMethodError,
)
from ..core.types import State, StepFailure, StepperConfig, Trajectory
from ..discrete.gradients import DiscreteGradientKind, DiscreteGradientRule
from ..systems.base import ModelSpec
from ..systems.lagrangian import midpoint_discrete_lagrangian
from ..systems.simple import is_unit_oscillator
from ..utils.logging_config import get_logger
from .discrete_gradient import dg_step_closed_form_dho, dg_step_info
from .herglotz import (
    discrete_momentum,
    entropy_update,
    herglotz_step,
    initial_momentum,
)
from .runge_kutta import rk4_step

logger = get_logger(__name__)


class MethodFamily(Enum):
    """Integration method families."""

    DISCRETE_GRADIENT = "dg"
    HERGLOTZ = "herglotz"
    RK4 = "rk4"
    CLOSED_FORM = "dho-closed-form"


@dataclass(frozen=True)
class MethodSpec:
    """A parsed method name."""

    family: MethodFamily
    rule: Optional[DiscreteGradientRule] = None

    @property
    def name(self) -> str:
        if self.family is MethodFamily.DISCRETE_GRADIENT and self.rule is not None:
            return f"dg:{self.rule.kind.value}"
        return self.family.value


METHOD_NAMES: List[str] = [f"dg:{k.value}" for k in DiscreteGradientKind] + [
    MethodFamily.HERGLOTZ.value,
    MethodFamily.RK4.value,
    MethodFamily.CLOSED_FORM.value,
]


def parse_method(method: Union[str, MethodSpec]) -> MethodSpec:
    """
    Resolve a method name.

    "dg" alone selects the Gonzalez rule.

    Raises:
        UnknownMethodError: For names outside METHOD_NAMES
    """
    if isinstance(method, MethodSpec):
        return method
    name = method.strip()
    if name == "dg":
        name = "dg:gonzalez"
    if name.startswith("dg:"):
        try:
            kind = DiscreteGradientKind(name[3:])
        except ValueError:
            raise UnknownMethodError(name, METHOD_NAMES)
        return MethodSpec(MethodFamily.DISCRETE_GRADIENT, DiscreteGradientRule(kind))
    try:
        family = MethodFamily(name)
    except ValueError:
        raise UnknownMethodError(name, METHOD_NAMES)
    if family is MethodFamily.DISCRETE_GRADIENT:
        raise UnknownMethodError(name, METHOD_NAMES)
    return MethodSpec(family)


def check_method(model: ModelSpec, spec: MethodSpec) -> None:
    """
    Raise UnsupportedMethodError when a method cannot integrate a model.
    """
    if spec.family is MethodFamily.HERGLOTZ and model.lagrangian is None:
        raise UnsupportedMethodError(
            spec.name, model.name, "the model has no mechanical contact Lagrangian"
        )
    if spec.family is MethodFamily.CLOSED_FORM and not is_unit_oscillator(model):
        raise UnsupportedMethodError(
            spec.name,
            model.name,
            "the closed form covers only H = p^2/2 + q^2/2 + gamma S",
        )


class _Recorder:
    """Eager per-state diagnostics."""

    def __init__(self, model: ModelSpec, n_steps: int):
        self.model = model
        dim = model.dim
        self.states = np.empty((n_steps + 1, dim))
        self.energy = np.empty(n_steps + 1)
        self.entropy = np.empty(n_steps + 1)
        self.temperatures = np.empty((n_steps + 1, model.thermal_count))
        self.iterations = np.zeros(n_steps, dtype=int)
        self.count = 0

    def add(self, x: np.ndarray) -> None:
        k = self.count
        self.states[k] = x
        self.energy[k] = self.model.energy(x)
        self.entropy[k] = float(np.sum(self.model.layout.entropies(x)))
        self.temperatures[k] = self.model.temperatures(x)
        self.count += 1

    def build(
        self, h: float, method: str, failure: Optional[StepFailure]
    ) -> Trajectory:
        n = self.count
        return Trajectory(
            layout=self.model.layout,
            times=h * np.arange(n),
            states=self.states[:n].copy(),
            energy=self.energy[:n].copy(),
            entropy_total=self.entropy[:n].copy(),
            temperatures=self.temperatures[:n].copy(),
            iterations=self.iterations[: max(n - 1, 0)].copy(),
            h=h,
            method=method,
            model_name=self.model.name,
            failure=failure,
        )


def _failure_from(exc: Exception, k: int) -> StepFailure:
    if isinstance(exc, StepFailureError):
        return StepFailure(k, exc.reason, exc.residual, exc.iterations)
    return StepFailure(k, str(exc).splitlines()[0])


def simulate(
    model: ModelSpec,
    method: Union[str, MethodSpec],
    x0: State,
    cfg: StepperConfig,
    n_steps: int,
    q1: Optional[Sequence[float]] = None,
) -> Trajectory:
    """
    Integrate a model for n_steps steps of size cfg.h.

    Args:
        model: Model to integrate
        method: Method name or parsed MethodSpec
        x0: Initial state
        cfg: Stepper settings
        n_steps: Number of steps, >= 0
        q1: Second configuration for the Herglotz scheme; defaults to
            q0 + h p0 / m

    Returns:
        Trajectory with n_steps + 1 states, or fewer with ``failure`` set

    Raises:
        UnknownMethodError: For an unknown method name
        UnsupportedMethodError: If the method does not apply to the model
    """
    spec = parse_method(method)
    check_method(model, spec)
    if n_steps < 0:
        raise ContractViolationError("n_steps must be non-negative", ">= 0", n_steps)
    x0 = model.check_state(x0)
    recorder = _Recorder(model, n_steps)
    logger.info(
        "Simulating %s with %s: h=%g, %d steps", model.name, spec.name, cfg.h, n_steps
    )

    if spec.family is MethodFamily.HERGLOTZ:
        failure = _run_herglotz(model, x0, cfg, n_steps, q1, recorder)
    else:
        recorder.add(x0)
        failure = _run_one_step(model, spec, x0, cfg, n_steps, recorder)

    traj = recorder.build(cfg.h, spec.name, failure)
    if failure is not None:
        logger.error(
            "Step %d failed: %s (residual %.3e after %d iterations)",
            failure.step_index,
            failure.reason,
            failure.residual,
            failure.iterations,
        )
    else:
        logger.info(
            "Finished %s: H drift %.3e, entropy change %.6g",
            spec.name,
            float(np.max(np.abs(traj.energy - traj.energy[0]))),
            float(traj.entropy_total[-1] - traj.entropy_total[0]),
        )
    return traj


def _run_one_step(
    model: ModelSpec,
    spec: MethodSpec,
    x0: np.ndarray,
    cfg: StepperConfig,
    n_steps: int,
    recorder: _Recorder,
) -> Optional[StepFailure]:
    x = x0
    gamma = model.parameters.get("gamma", 0.0)
    for k in range(n_steps):
        try:
            if spec.family is MethodFamily.DISCRETE_GRADIENT:
                result = dg_step_info(model, spec.rule, x, cfg, step_index=k)
                x = result.state
                recorder.iterations[k] = result.iterations
                logger.debug(
                    "step %d: %d iterations, residual %.3e",
                    k,
                    result.iterations,
                    result.residual,
                )
            elif spec.family is MethodFamily.RK4:
                x = rk4_step(model, x, cfg.h)
            else:
                x = dg_step_closed_form_dho(gamma, cfg.h, x)
            if not np.all(np.isfinite(x)):
                raise StepFailureError("non-finite state", step_index=k)
            recorder.add(x)
        except (StepFailureError, TemperaturePositivityError) as e:
            return _failure_from(e, k)
    return None


def _run_herglotz(
    model: ModelSpec,
    x0: np.ndarray,
    cfg: StepperConfig,
    n_steps: int,
    q1: Optional[Sequence[float]],
    recorder: _Recorder,
) -> Optional[StepFailure]:
    lagrangian = model.lagrangian
    assert lagrangian is not None
    n = model.n_mech[0]
    ld = midpoint_discrete_lagrangian(lagrangian, cfg.h)

    q_prev = x0[:n].copy()
    s_prev = float(x0[2 * n])
    x_start = x0.copy()
    if q1 is None:
        q_cur = q_prev + cfg.h * x0[n : 2 * n] / lagrangian.mass
    else:
        q_cur = np.atleast_1d(np.asarray(q1, dtype=float))
        x_start[n : 2 * n] = initial_momentum(ld, q_prev, q_cur, s_prev)
    recorder.add(x_start)

    # State k holds (q_k, D2 L_d(q_{k-1}, q_k, S_{k-1}), S_k).
    for k in range(1, n_steps + 1):
        try:
            s_cur = entropy_update(ld, q_prev, q_cur, s_prev)
            p_cur = discrete_momentum(ld, q_prev, q_cur, s_prev)
            state = np.concatenate([q_cur, p_cur, [s_cur]])
            if not np.all(np.isfinite(state)):
                raise StepFailureError("non-finite state", step_index=k - 1)
            recorder.add(state)
            if k == n_steps:
                break
            q_next, _ = herglotz_step(
                ld,
                q_prev,
                q_cur,
                s_prev,
                tol=cfg.tol_solve,
                max_iter=cfg.max_iter,
                step_index=k,
            )
        except StepFailureError as e:
            return _failure_from(e, k - 1 if e.step_index is None else e.step_index)
        q_prev, q_cur, s_prev = q_cur, q_next, s_cur
    return None
