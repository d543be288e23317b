"""
Discrete Herglotz integrator.

Given L_d(q0, q1, S0), a step from (q_prev, q_cur, S_prev) first updates the
entropy explicitly,

    S_cur = S_prev + (q_cur - q_prev) . D2 L_d(q_prev, q_cur, S_prev),

and then solves for q_next

    D1 L_d(q_cur, q_next, S_cur)
        + (1 + D_S L_d(q_cur, q_next, S_cur)) D2 L_d(q_prev, q_cur, S_prev) = 0.
"""

from typing import Optional, Tuple

import numpy as np
from scipy.optimize import root

from ..core.exceptions import StepFailureError
from ..systems.lagrangian import DiscreteLagrangian
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


def entropy_update(
    ld: DiscreteLagrangian, q_prev: np.ndarray, q_cur: np.ndarray, s_prev: float
) -> float:
    """S_cur = S_prev + (q_cur - q_prev) . D2 L_d(q_prev, q_cur, S_prev)."""
    return float(s_prev + (q_cur - q_prev) @ ld.d2(q_prev, q_cur, s_prev))


def discrete_momentum(
    ld: DiscreteLagrangian, q_prev: np.ndarray, q_cur: np.ndarray, s_prev: float
) -> np.ndarray:
    """Momentum at q_cur, p = D2 L_d(q_prev, q_cur, S_prev)."""
    return ld.d2(q_prev, q_cur, s_prev)


def initial_momentum(
    ld: DiscreteLagrangian, q0: np.ndarray, q1: np.ndarray, s0: float
) -> np.ndarray:
    """Momentum at q0 read off the first step, -D1 L_d / (1 + D_S L_d)."""
    return -ld.d1(q0, q1, s0) / (1.0 + ld.d_s(q0, q1, s0))


def herglotz_step(
    ld: DiscreteLagrangian,
    q_prev: np.ndarray,
    q_cur: np.ndarray,
    s_prev: float,
    tol: float = 1e-12,
    max_iter: int = 50,
    step_index: Optional[int] = None,
) -> Tuple[np.ndarray, float]:
    """
    Advance the two-step Herglotz scheme.

    The momentum equation is solved with scipy.optimize.root from the guess
    2 q_cur - q_prev, using the analytic Jacobian
    D12 L_d(q_cur, q_next, S_cur) + D2 L_d(q_prev, q_cur, S_prev) (x) grad D_S.

    Args:
        ld: Discrete Lagrangian
        q_prev: q_{k-1}
        q_cur: q_k
        s_prev: S_{k-1}
        tol: Relative tolerance of the root-finder
        max_iter: Cap on Jacobian evaluations
        step_index: Step number reported in failures

    Returns:
        (q_next, S_cur)

    Raises:
        StepFailureError: If the root-finder does not converge
    """
    q_prev = np.atleast_1d(np.asarray(q_prev, dtype=float))
    q_cur = np.atleast_1d(np.asarray(q_cur, dtype=float))

    s_cur = entropy_update(ld, q_prev, q_cur, s_prev)
    p_cur = ld.d2(q_prev, q_cur, s_prev)

    def residual(q_next: np.ndarray) -> np.ndarray:
        damping = 1.0 + ld.d_s(q_cur, q_next, s_cur)
        return ld.d1(q_cur, q_next, s_cur) + damping * p_cur

    def jacobian(q_next: np.ndarray) -> np.ndarray:
        return np.atleast_2d(ld.d12(q_cur, q_next, s_cur)) + np.outer(
            p_cur, ld.d_s_wrt_q1(q_cur, q_next, s_cur)
        )

    if max_iter < 1:
        raise StepFailureError(
            "Herglotz root-finder has no iterations to spend",
            float(np.max(np.abs(residual(2.0 * q_cur - q_prev)))),
            0,
            step_index,
        )
    n = q_cur.size
    sol = root(
        residual,
        2.0 * q_cur - q_prev,
        jac=jacobian,
        method="hybr",
        tol=tol,
        options={"maxfev": max_iter * (n + 1)},
    )
    fun = np.atleast_1d(sol.fun)
    norm = float(np.max(np.abs(fun))) if np.all(np.isfinite(fun)) else np.inf
    iterations = int(getattr(sol, "njev", 0))
    if not sol.success or not np.all(np.isfinite(sol.x)):
        raise StepFailureError(
            f"Herglotz root-finder did not converge: {sol.message}",
            norm,
            iterations,
            step_index,
        )

    logger.debug(
        "herglotz step: %d residual evaluations, %d Jacobian evaluations, "
        "residual %.3e",
        sol.nfev,
        iterations,
        norm,
    )
    return np.atleast_1d(np.asarray(sol.x, dtype=float)), s_cur


def herglotz_closed_form_dho(
    gamma: float, h: float, q0: float, q1: float, s0: float
) -> Tuple[float, float]:
    """
    Explicit Herglotz scheme for L = q'^2/2 - q^2/2 - gamma S.

    q2 = (g h^3 q0 + g h^3 q1 + 4 g h q0 - 4 g h q1
          - h^2 q0 - 2 h^2 q1 - 4 q0 + 8 q1) / (h^2 + 4)
    S1 = S0 + (q1 - q0) [(q1 - q0)/h - h (q0 + q1)/4]
    """
    g = gamma
    q2 = (
        g * h**3 * q0
        + g * h**3 * q1
        + 4 * g * h * q0
        - 4 * g * h * q1
        - h**2 * q0
        - 2 * h**2 * q1
        - 4 * q0
        + 8 * q1
    ) / (h**2 + 4)
    s1 = s0 + (q1 - q0) * ((q1 - q0) / h - h * (q0 + q1) / 4)
    return q2, s1
