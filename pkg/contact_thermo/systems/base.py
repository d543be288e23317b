"""
Model and potential types shared by all thermodynamic systems.
"""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Callable, Dict, Optional, Tuple

import numpy as np

from ..core.exceptions import ContractViolationError, ModelParameterError
from ..core.types import (
    Covector,
    ScalarField,
    State,
    StateLayout,
    central_difference_gradient,
)

if TYPE_CHECKING:
    from .lagrangian import ContactLagrangian


# =============================================================================
# Potentials
# =============================================================================


@dataclass(frozen=True)
class Potential:
    """A mechanical potential V(q) with analytic gradient and Hessian."""

    name: str
    """Kind name ("zero", "quadratic", "coupled", ...)."""

    dim: int
    """Length of the configuration vector q."""

    value_fn: Callable[[np.ndarray], float]
    gradient_fn: Callable[[np.ndarray], np.ndarray]
    hessian_fn: Callable[[np.ndarray], np.ndarray]

    parameters: Dict[str, Any] = field(default_factory=dict)
    """Parameters the potential was built from."""

    def __call__(self, q: np.ndarray) -> float:
        return float(self.value_fn(np.asarray(q, dtype=float)))

    def gradient(self, q: np.ndarray) -> np.ndarray:
        return np.asarray(self.gradient_fn(np.asarray(q, dtype=float)), dtype=float)

    def hessian(self, q: np.ndarray) -> np.ndarray:
        return np.asarray(self.hessian_fn(np.asarray(q, dtype=float)), dtype=float)


@dataclass(frozen=True)
class EntropicPotential:
    """A potential V(q, S) depending on configuration and entropy."""

    name: str
    dim: int
    value_fn: Callable[[np.ndarray, float], float]
    gradient_fn: Callable[[np.ndarray, float], Tuple[np.ndarray, float]]
    """Returns (dV/dq, dV/dS)."""

    parameters: Dict[str, Any] = field(default_factory=dict)

    def __call__(self, q: np.ndarray, s: float) -> float:
        return float(self.value_fn(np.asarray(q, dtype=float), float(s)))

    def gradient(self, q: np.ndarray, s: float) -> Tuple[np.ndarray, float]:
        g_q, g_s = self.gradient_fn(np.asarray(q, dtype=float), float(s))
        return np.asarray(g_q, dtype=float), float(g_s)


def zero_potential(n: int = 1) -> Potential:
    """V = 0 on R^n."""
    return Potential(
        name="zero",
        dim=n,
        value_fn=lambda q: 0.0,
        gradient_fn=lambda q: np.zeros(n),
        hessian_fn=lambda q: np.zeros((n, n)),
    )


def quadratic_potential(stiffness: float = 1.0, n: int = 1) -> Potential:
    """V = stiffness |q|^2 / 2 on R^n."""
    return Potential(
        name="quadratic",
        dim=n,
        value_fn=lambda q: 0.5 * stiffness * float(q @ q),
        gradient_fn=lambda q: stiffness * q,
        hessian_fn=lambda q: stiffness * np.eye(n),
        parameters={"stiffness": stiffness},
    )


def coupled_spring_potential(
    k_a: float = 1.0, k_b: float = 1.0, kappa: float = 1.0, n: int = 1
) -> Potential:
    """
    Two anchored springs joined by a coupling spring.

    V(q_a, q_b) = k_a |q_a|^2/2 + k_b |q_b|^2/2 + kappa |q_a - q_b|^2/2 on the
    concatenated configuration (q_a, q_b) in R^{2n}.
    """
    eye = np.eye(n)
    hess = np.block(
        [[(k_a + kappa) * eye, -kappa * eye], [-kappa * eye, (k_b + kappa) * eye]]
    )

    def value(q: np.ndarray) -> float:
        qa, qb = q[:n], q[n:]
        d = qa - qb
        return 0.5 * (
            k_a * float(qa @ qa) + k_b * float(qb @ qb) + kappa * float(d @ d)
        )

    return Potential(
        name="coupled",
        dim=2 * n,
        value_fn=value,
        gradient_fn=lambda q: hess @ q,
        hessian_fn=lambda q: hess,
        parameters={"k_a": k_a, "k_b": k_b, "kappa": kappa},
    )


def quadratic_linear_potential(
    stiffness: float = 1.0, gamma: float = 0.1, n: int = 1
) -> EntropicPotential:
    """V(q, S) = stiffness |q|^2 / 2 + gamma S."""
    return EntropicPotential(
        name="quadratic_linear",
        dim=n,
        value_fn=lambda q, s: 0.5 * stiffness * float(q @ q) + gamma * s,
        gradient_fn=lambda q, s: (stiffness * q, gamma),
        parameters={"stiffness": stiffness, "gamma": gamma},
    )


# =============================================================================
# Models
# =============================================================================


@dataclass(frozen=True)
class ModelSpec:
    """
    A thermodynamic model: energy, gradient and state layout.

    Instances are immutable; evaluations are pure.
    """

    name: str
    """Model name ("damped", "thermo_particles", ...)."""

    layout: StateLayout
    """Block layout of the state vector."""

    energy: Callable[[np.ndarray], float]
    """Total energy H(x)."""

    gradient: Callable[[np.ndarray], np.ndarray]
    """Analytic dH(x)."""

    conductivity: float = 0.0
    """Heat conductivity k of composed models; 0 for simple ones."""

    parameters: Dict[str, Any] = field(default_factory=dict)
    """Parameter record used to build the model."""

    lagrangian: Optional["ContactLagrangian"] = None
    """Mechanical contact Lagrangian, when the model has one."""

    def __post_init__(self) -> None:
        if self.layout.is_composed and self.conductivity < 0:
            raise ModelParameterError(
                self.name, "k", self.conductivity, "conductivity must be >= 0"
            )

    @property
    def n_mech(self) -> Tuple[int, ...]:
        return self.layout.n_mech

    @property
    def thermal_count(self) -> int:
        return self.layout.thermal_count

    @property
    def dim(self) -> int:
        return self.layout.dim

    def hamiltonian(self) -> ScalarField:
        """The energy as a ScalarField with analytic gradient."""
        return ScalarField(self.energy, self.gradient, name=f"H[{self.name}]")

    def check_state(self, x: State) -> np.ndarray:
        return self.layout.check(x, f"{self.name} state")

    def temperatures(self, x: State) -> np.ndarray:
        """All T_alpha = dH/dS_alpha at x."""
        grad = np.asarray(self.gradient(np.asarray(x, dtype=float)))
        return grad[self.layout.s_indices]


def temperature(model: ModelSpec, x: State, alpha: int = 0) -> float:
    """
    Temperature of subsystem alpha, T_alpha = dH/dS_alpha.

    Raises:
        ContractViolationError: If alpha is not a valid subsystem index
    """
    if not 0 <= alpha < model.thermal_count:
        raise ContractViolationError(
            "Subsystem index out of range", f"0..{model.thermal_count - 1}", alpha
        )
    grad = np.asarray(model.gradient(np.asarray(x, dtype=float)))
    return float(grad[model.layout.s_index(alpha)])


def require_positive(model: str, **values: float) -> None:
    """Raise ModelParameterError for the first non-positive value."""
    for name, value in values.items():
        if not (np.isfinite(value) and value > 0):
            raise ModelParameterError(model, name, value, "must be > 0")


def gradient_check(model: ModelSpec, x: State) -> Covector:
    """Difference between the analytic gradient and central differences."""
    x = np.asarray(x, dtype=float)
    return np.asarray(model.gradient(x)) - central_difference_gradient(model.energy, x)
