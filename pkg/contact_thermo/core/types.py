"""
Data types and structures for contact-thermo.

This module defines the state layout, scalar fields, stepper settings,
trajectories and enumerations used throughout the package.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ContractViolationError

# Flat coordinate vectors. Variance (tangent vs. differential) is carried by
# the name of the argument, the storage is the same.
State = np.ndarray
Tangent = np.ndarray
Covector = np.ndarray


class SolverKind(Enum):
    """Nonlinear solvers for the implicit discrete-gradient equation."""

    FIXED_POINT = "fixed_point"  # Picard iteration, Newton fallback on stall
    NEWTON = "newton"  # Damped Newton from the first iterate


class ProjectionKind(Enum):
    """Contact projectors onto ker(eta) and span(R)."""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


class BracketKind(Enum):
    """Brackets on functions of the contact phase space."""

    JACOBI = "jacobi"
    CARTAN = "cartan"
    POISSON0 = "poisson0"
    DELTA_Q = "deltaQ"


@dataclass(frozen=True)
class StateLayout:
    """
    Partition of a flat state vector into subsystem blocks.

    Every subsystem alpha owns a contiguous block (q_alpha, p_alpha, S_alpha)
    with q_alpha and p_alpha of length n_mech[alpha]. A simple system has a
    single block, so the state reads (q, p, S).
    """

    n_mech: Tuple[int, ...]
    """Mechanical dimension of each subsystem (0 for a pure thermal body)."""

    def __post_init__(self) -> None:
        if len(self.n_mech) not in (1, 2):
            raise ContractViolationError(
                "Layouts hold one or two subsystems", "1 or 2", len(self.n_mech)
            )
        if any(n < 0 for n in self.n_mech):
            raise ContractViolationError(
                "Mechanical dimensions must be non-negative", ">= 0", self.n_mech
            )

    @classmethod
    def simple(cls, n: int) -> "StateLayout":
        """Layout (q, p, S) with n degrees of freedom."""
        return cls((n,))

    @classmethod
    def composed(cls, n_a: int, n_b: int) -> "StateLayout":
        """Layout (q1, p1, S1, q2, p2, S2) of two heat-exchanging subsystems."""
        return cls((n_a, n_b))

    @property
    def thermal_count(self) -> int:
        return len(self.n_mech)

    @property
    def is_composed(self) -> bool:
        return self.thermal_count == 2

    @property
    def dim(self) -> int:
        return sum(2 * n + 1 for n in self.n_mech)

    def _offset(self, alpha: int) -> int:
        if not 0 <= alpha < self.thermal_count:
            raise ContractViolationError(
                "Subsystem index out of range",
                f"0..{self.thermal_count - 1}",
                alpha,
            )
        return sum(2 * n + 1 for n in self.n_mech[:alpha])

    def q_slice(self, alpha: int = 0) -> slice:
        start = self._offset(alpha)
        return slice(start, start + self.n_mech[alpha])

    def p_slice(self, alpha: int = 0) -> slice:
        start = self._offset(alpha) + self.n_mech[alpha]
        return slice(start, start + self.n_mech[alpha])

    def s_index(self, alpha: int = 0) -> int:
        return self._offset(alpha) + 2 * self.n_mech[alpha]

    @property
    def s_indices(self) -> List[int]:
        return [self.s_index(a) for a in range(self.thermal_count)]

    @property
    def q_indices(self) -> List[int]:
        return [i for a in range(self.thermal_count) for i in _range(self.q_slice(a))]

    @property
    def p_indices(self) -> List[int]:
        return [i for a in range(self.thermal_count) for i in _range(self.p_slice(a))]

    def entropies(self, x: State) -> np.ndarray:
        """Entropy coordinates S_alpha of a state."""
        return np.asarray(x)[self.s_indices]

    def check(self, x: State, what: str = "state") -> np.ndarray:
        """
        Validate a vector against this layout.

        Args:
            x: Candidate state, tangent or covector
            what: Name used in the error message

        Returns:
            The vector as a float array

        Raises:
            ContractViolationError: If the length differs or entries are not finite
        """
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dim,):
            raise ContractViolationError(
                f"Dimension mismatch for {what}", (self.dim,), arr.shape
            )
        if not np.all(np.isfinite(arr)):
            raise ContractViolationError(f"Non-finite entries in {what}")
        return arr

    def names(self) -> List[str]:
        """
        Column names of the state components.

        Simple 1-DOF systems use q,p,S; several DOF use q0,q1,...; composed
        systems suffix the subsystem number (q1,p1,S1,q2,... or q1_0 for
        multi-dimensional subsystems).
        """
        names: List[str] = []
        for alpha, n in enumerate(self.n_mech):
            tag = str(alpha + 1) if self.is_composed else ""
            for letter in ("q", "p"):
                if n == 1:
                    names.append(f"{letter}{tag}")
                else:
                    sep = "_" if tag else ""
                    names.extend(f"{letter}{tag}{sep}{i}" for i in range(n))
            names.append(f"S{tag}")
        return names


def _range(s: slice) -> range:
    return range(s.start, s.stop)


def central_difference_gradient(
    func: Callable[[np.ndarray], float], x: np.ndarray
) -> np.ndarray:
    """
    Central finite-difference gradient with step 1e-6 * max(1, |x|_inf).

    Args:
        func: Scalar function of a flat vector
        x: Evaluation point

    Returns:
        Approximate gradient at x
    """
    x = np.asarray(x, dtype=float)
    h_fd = 1e-6 * max(1.0, float(np.max(np.abs(x))) if x.size else 1.0)
    grad = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h_fd
        grad[i] = (func(x + e) - func(x - e)) / (2.0 * h_fd)
    return grad


@dataclass(frozen=True)
class ScalarField:
    """
    A function on phase space together with its gradient.

    When no analytic gradient is supplied the gradient falls back to
    central finite differences.
    """

    value_fn: Callable[[np.ndarray], float]
    """Evaluation callback state -> float."""

    gradient_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    """Analytic gradient callback state -> covector (optional)."""

    name: str = "f"
    """Display name."""

    def __call__(self, x: State) -> float:
        return float(self.value_fn(np.asarray(x, dtype=float)))

    def gradient(self, x: State) -> Covector:
        x = np.asarray(x, dtype=float)
        if self.gradient_fn is not None:
            return np.asarray(self.gradient_fn(x), dtype=float)
        return central_difference_gradient(self.value_fn, x)

    @property
    def has_analytic_gradient(self) -> bool:
        return self.gradient_fn is not None


@dataclass(frozen=True)
class StepperConfig:
    """Settings shared by all time steppers."""

    h: float
    """Time step."""

    solver: SolverKind = SolverKind.FIXED_POINT
    """Nonlinear solver for implicit steps."""

    tol_solve: float = 1e-12
    """Tolerance on the solver increment, per component scaled by max(1, |x_i|)."""

    max_iter: int = 50
    """Iteration cap of the nonlinear solve."""

    def __post_init__(self) -> None:
        if isinstance(self.solver, str):
            try:
                object.__setattr__(self, "solver", SolverKind(self.solver))
            except ValueError:
                raise ContractViolationError(
                    "Unknown solver",
                    [s.value for s in SolverKind],
                    self.solver,
                )
        if not (np.isfinite(self.h) and self.h > 0):
            raise ContractViolationError("Time step must be positive", "h > 0", self.h)
        if not self.tol_solve > 0:
            raise ContractViolationError(
                "Solver tolerance must be positive", "tol_solve > 0", self.tol_solve
            )
        if self.max_iter < 1:
            raise ContractViolationError(
                "Iteration cap must be at least 1", "max_iter >= 1", self.max_iter
            )


@dataclass(frozen=True)
class StepFailure:
    """Record of the step that stopped a simulation."""

    step_index: int
    reason: str
    residual: float = float("nan")
    iterations: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step_index": self.step_index,
            "reason": self.reason,
            "residual": None if np.isnan(self.residual) else float(self.residual),
            "iterations": self.iterations,
        }


@dataclass
class Trajectory:
    """Time-indexed states of one simulation with per-step diagnostics."""

    layout: StateLayout
    """Layout of every state row."""

    times: np.ndarray
    """Uniform time grid t_k = k h, shape (N+1,)."""

    states: np.ndarray
    """States x_k, shape (N+1, dim)."""

    energy: np.ndarray
    """H(x_k)."""

    entropy_total: np.ndarray
    """Sum of the entropy coordinates of x_k."""

    temperatures: np.ndarray
    """T_alpha(x_k) = dH/dS_alpha, shape (N+1, thermal_count)."""

    iterations: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    """Solver iterations spent on each step, shape (N,)."""

    h: float = 0.0
    method: str = ""
    model_name: str = ""

    failure: Optional[StepFailure] = None
    """Set when the run stopped early; states then hold the partial trajectory."""

    def __post_init__(self) -> None:
        n = len(self.times)
        if self.states.shape != (n, self.layout.dim):
            raise ContractViolationError(
                "Trajectory states do not match the time grid",
                (n, self.layout.dim),
                self.states.shape,
            )
        for label, arr in (("energy", self.energy), ("entropy", self.entropy_total)):
            if len(arr) != n:
                raise ContractViolationError(
                    f"Trajectory {label} series has the wrong length", n, len(arr)
                )

    def __len__(self) -> int:
        return len(self.times)

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    @property
    def completed(self) -> bool:
        return self.failure is None

    def column(self, name: str) -> np.ndarray:
        """State column by layout name (e.g. "q", "S2")."""
        names = self.layout.names()
        if name not in names:
            raise ContractViolationError("Unknown state column", names, name)
        return self.states[:, names.index(name)]

    @property
    def q(self) -> np.ndarray:
        return self.states[:, self.layout.q_indices]

    @property
    def p(self) -> np.ndarray:
        return self.states[:, self.layout.p_indices]


def as_state(values: Sequence[float]) -> State:
    """Convert a sequence to a float state vector."""
    return np.asarray(values, dtype=float).reshape(-1)
