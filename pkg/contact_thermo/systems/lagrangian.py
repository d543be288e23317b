"""
Mechanical contact Lagrangians and their midpoint discretization.

The continuous family is L(q, v, S) = m |v|^2 / 2 - V(q) - gamma S with the
Legendre map p = m v. The discrete Lagrangian L_d(q0, q1, S0) evaluates L at
the midpoint configuration with velocity (q1 - q0)/h.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.exceptions import ContractViolationError
from .base import Potential, require_positive


@dataclass(frozen=True)
class ContactLagrangian:
    """L(q, v, S) = m |v|^2 / 2 - V(q) - gamma S."""

    mass: float
    potential: Potential
    gamma: float

    def __post_init__(self) -> None:
        require_positive("contact_lagrangian", mass=self.mass)

    @property
    def dim(self) -> int:
        return self.potential.dim

    def value(self, q: np.ndarray, v: np.ndarray, s: float) -> float:
        v = np.asarray(v, dtype=float)
        return 0.5 * self.mass * float(v @ v) - self.potential(q) - self.gamma * s

    def d_q(self, q: np.ndarray, v: np.ndarray, s: float) -> np.ndarray:
        return -self.potential.gradient(q)

    def d_v(self, q: np.ndarray, v: np.ndarray, s: float) -> np.ndarray:
        return self.mass * np.asarray(v, dtype=float)

    def d_s(self, q: np.ndarray, v: np.ndarray, s: float) -> float:
        return -self.gamma

    def energy(self, q: np.ndarray, v: np.ndarray, s: float) -> float:
        """E_L = v . dL/dv - L."""
        return float(np.asarray(v) @ self.d_v(q, v, s)) - self.value(q, v, s)

    def contact_form_eval(
        self,
        q: np.ndarray,
        v: np.ndarray,
        s: float,
        tangent: Tuple[np.ndarray, np.ndarray, float],
    ) -> float:
        """eta_L = dS - (dL/dv) dq applied to a tangent (dq, dv, dS)."""
        dq, _, ds = tangent
        return float(ds - self.d_v(q, v, s) @ np.asarray(dq, dtype=float))

    def reeb(self, q: np.ndarray, v: np.ndarray, s: float):
        """R_L in (q, v, S) coordinates; d/dS for this family."""
        n = self.dim
        return np.zeros(n), np.zeros(n), 1.0

    def legendre(
        self, q: np.ndarray, v: np.ndarray, s: float
    ) -> Tuple[np.ndarray, np.ndarray, float]:
        """(q, v, S) -> (q, p, S) with p = dL/dv."""
        return np.asarray(q, dtype=float), self.d_v(q, v, s), float(s)

    def inverse_legendre(
        self, q: np.ndarray, p: np.ndarray, s: float
    ) -> Tuple[np.ndarray, np.ndarray, float]:
        return np.asarray(q, dtype=float), np.asarray(p, dtype=float) / self.mass, s

    def liouville_indicator(self, q: np.ndarray, v: np.ndarray, s: float) -> float:
        """Delta(L) = v . dL/dv; the second law holds where it is >= 0."""
        return float(np.asarray(v) @ self.d_v(q, v, s))

    def friction_force(self, v: np.ndarray) -> np.ndarray:
        """Linear damping force F = -gamma m v."""
        return -self.gamma * self.mass * np.asarray(v, dtype=float)

    def friction_power(self, v: np.ndarray) -> float:
        """T dS/dt = -<F, v>, the heat released by friction (T = gamma)."""
        return -float(self.friction_force(v) @ np.asarray(v, dtype=float))

    def herglotz_rhs(
        self, q: np.ndarray, v: np.ndarray, s: float
    ) -> Tuple[np.ndarray, np.ndarray, float]:
        """
        Thermodynamic Herglotz equations solved for (dq, dv, dS)/dt.

        d/dt(dL/dv) - dL/dq = (dL/dv)(dL/dS) and dS/dt = v . dL/dv.
        """
        v = np.asarray(v, dtype=float)
        p = self.d_v(q, v, s)
        accel = (self.d_q(q, v, s) + p * self.d_s(q, v, s)) / self.mass
        return v.copy(), accel, float(v @ p)

    def hamiltonian(self, x: np.ndarray) -> float:
        """Legendre transform H(q, p, S) = |p|^2/(2m) + V(q) + gamma S."""
        n = self.dim
        q, p, s = x[:n], x[n : 2 * n], x[2 * n]
        return float(p @ p) / (2 * self.mass) + self.potential(q) + self.gamma * s


class DiscreteLagrangian(ABC):
    """
    Discrete Lagrangian L_d(q0, q1, S0) with the partials used by the
    discrete Herglotz equations.

    Subclasses provide value, d1, d2, d_s and d12. The default
    d_s_wrt_q1 (gradient of D_S L_d with respect to q1) uses central
    differences.
    """

    dim: int = 1

    @abstractmethod
    def value(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> float:
        """L_d(q0, q1, S0)."""

    @abstractmethod
    def d1(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> np.ndarray:
        """Gradient with respect to q0."""

    @abstractmethod
    def d2(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> np.ndarray:
        """Gradient with respect to q1."""

    @abstractmethod
    def d_s(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> float:
        """Partial derivative with respect to S0."""

    @abstractmethod
    def d12(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> np.ndarray:
        """Mixed second derivative d^2 L_d / dq0 dq1 (n x n)."""

    def d_s_wrt_q1(self, q0: np.ndarray, q1: np.ndarray, s0: float) -> np.ndarray:
        q1 = np.asarray(q1, dtype=float)
        out = np.empty_like(q1)
        step = 1e-6 * max(1.0, float(np.max(np.abs(q1))))
        for i in range(q1.size):
            e = np.zeros_like(q1)
            e[i] = step
            out[i] = (self.d_s(q0, q1 + e, s0) - self.d_s(q0, q1 - e, s0)) / (2 * step)
        return out


class MidpointDiscreteLagrangian(DiscreteLagrangian):
    """
    L_d(q0, q1, S0) = h L((q0 + q1)/2, (q1 - q0)/h, S0) for a ContactLagrangian.

    For m = 1, V = q^2/2 this is (q1-q0)^2/(2h) - h(q1+q0)^2/8 - h gamma S0.
    """

    def __init__(self, lagrangian: ContactLagrangian, h: float):
        if not h > 0:
            raise ContractViolationError("Time step must be positive", "h > 0", h)
        self.lagrangian = lagrangian
        self.h = h
        self.dim = lagrangian.dim

    def _mid(self, q0: np.ndarray, q1: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        q0 = np.asarray(q0, dtype=float)
        q1 = np.asarray(q1, dtype=float)
        return 0.5 * (q0 + q1), (q1 - q0) / self.h

    def value(self, q0, q1, s0) -> float:
        q_mid, v = self._mid(q0, q1)
        return self.h * self.lagrangian.value(q_mid, v, s0)

    def d1(self, q0, q1, s0) -> np.ndarray:
        q_mid, v = self._mid(q0, q1)
        m = self.lagrangian.mass
        return -m * v - 0.5 * self.h * self.lagrangian.potential.gradient(q_mid)

    def d2(self, q0, q1, s0) -> np.ndarray:
        q_mid, v = self._mid(q0, q1)
        m = self.lagrangian.mass
        return m * v - 0.5 * self.h * self.lagrangian.potential.gradient(q_mid)

    def d_s(self, q0, q1, s0) -> float:
        return -self.h * self.lagrangian.gamma

    def d12(self, q0, q1, s0) -> np.ndarray:
        q_mid, _ = self._mid(q0, q1)
        m = self.lagrangian.mass
        return -(m / self.h) * np.eye(self.dim) - 0.25 * self.h * (
            self.lagrangian.potential.hessian(q_mid)
        )

    def d_s_wrt_q1(self, q0, q1, s0) -> np.ndarray:
        return np.zeros(self.dim)


def midpoint_discrete_lagrangian(
    lagrangian: ContactLagrangian, h: float
) -> MidpointDiscreteLagrangian:
    """Midpoint discretization of a mechanical contact Lagrangian."""
    return MidpointDiscreteLagrangian(lagrangian, h)
