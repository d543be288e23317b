"""
Nonlinear solvers for implicit one-step maps y = Phi(y).

Fixed-point iteration is tried first and hands over to scipy's hybrid Newton
root-finder on the residual F(y) = y - Phi(y) once the increments stop
shrinking.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import root

from ..core.exceptions import StepFailureError
from ..core.types import SolverKind, StepperConfig
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

STALL_LIMIT = 10
"""Non-contracting fixed-point iterations tolerated before switching to Newton."""


@dataclass(frozen=True)
class SolveResult:
    """Converged iterate of an implicit step."""

    state: np.ndarray
    iterations: int
    residual: float
    newton: bool = False


def _within(delta: np.ndarray, y: np.ndarray, tol: float) -> bool:
    """|delta_i| <= tol * max(1, |y_i|) for every component."""
    return bool(np.all(np.abs(delta) <= tol * np.maximum(1.0, np.abs(y))))


def _finite_or_fail(
    y: np.ndarray, residual: float, iterations: int, step_index: Optional[int]
) -> None:
    if not np.all(np.isfinite(y)):
        raise StepFailureError(
            "non-finite iterate in implicit solve", residual, iterations, step_index
        )


def newton_solve(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    tol: float,
    max_iter: int,
    step_index: Optional[int] = None,
    iterations_used: int = 0,
) -> SolveResult:
    """
    Solve F(y) = 0 with scipy.optimize.root (MINPACK hybrid Powell).

    ``max_iter`` caps the Newton-type iterations; MINPACK counts residual
    evaluations, so the cap is passed on as max_iter * (n + 1) of them.

    Raises:
        StepFailureError: When the root-finder reports failure or returns a
            non-finite iterate
    """
    n = y0.size
    sol = root(
        residual_fn,
        y0,
        method="hybr",
        tol=tol,
        options={"maxfev": max(1, max_iter) * (n + 1)},
    )
    iterations = iterations_used + int(sol.nfev)
    residual = (
        float(np.max(np.abs(sol.fun))) if np.all(np.isfinite(sol.fun)) else np.inf
    )
    if not sol.success:
        raise StepFailureError(
            f"implicit solve did not converge: {sol.message}",
            residual,
            iterations,
            step_index,
        )
    _finite_or_fail(sol.x, residual, iterations, step_index)
    logger.debug(
        "newton solve: %d residual evaluations, residual %.3e", sol.nfev, residual
    )
    state = np.asarray(sol.x, dtype=float)
    return SolveResult(state, iterations, residual, newton=True)


def solve_implicit(
    update: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    cfg: StepperConfig,
    step_index: Optional[int] = None,
) -> SolveResult:
    """
    Solve y = update(y).

    Convergence means |y_{m+1,i} - y_{m,i}| <= tol_solve * max(1, |y_i|) for
    every component i;
    the latest iterate is returned.

    Args:
        update: Fixed-point map Phi
        y0: Initial guess
        cfg: Solver selection, tolerance and iteration cap
        step_index: Step number reported in failures

    Raises:
        StepFailureError: When neither solver converges
    """

    def residual_fn(y: np.ndarray) -> np.ndarray:
        return y - update(y)

    if cfg.solver is SolverKind.NEWTON:
        return newton_solve(residual_fn, y0, cfg.tol_solve, cfg.max_iter, step_index)

    y = y0.copy()
    prev_inc = np.inf
    stalls = 0
    for iteration in range(1, cfg.max_iter + 1):
        y_new = update(y)
        inc = float(np.max(np.abs(y_new - y))) if np.all(np.isfinite(y_new)) else np.inf
        _finite_or_fail(y_new, inc, iteration, step_index)
        if _within(y_new - y, y_new, cfg.tol_solve):
            return SolveResult(y_new, iteration, inc)
        stalls = stalls + 1 if inc >= prev_inc else stalls
        prev_inc = inc
        y = y_new
        if stalls >= STALL_LIMIT:
            logger.debug(
                "fixed point stalled after %d iterations (increment %.3e), "
                "switching to Newton",
                iteration,
                inc,
            )
            return newton_solve(
                residual_fn, y, cfg.tol_solve, cfg.max_iter, step_index, iteration
            )

    raise StepFailureError(
        f"fixed-point iteration did not converge in {cfg.max_iter} iterations",
        prev_inc,
        cfg.max_iter,
        step_index,
    )
