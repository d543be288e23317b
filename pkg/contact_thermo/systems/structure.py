"""
Point-dependent structure matrices of simple and composed models.
"""

from dataclasses import dataclass

import numpy as np

from ..core.types import Covector, State, Tangent
from ..geometry.contact import contact_structure_matrix
from .base import ModelSpec
from .composed import fourier_factor


@dataclass(frozen=True)
class StructureMatrix:
    """Skew-symmetric matrix M(x) with x' = M(x) dH for the model flow."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def sharp(self, alpha: Covector) -> Tangent:
        return self.matrix @ np.asarray(alpha, dtype=float)

    def pair(self, alpha: Covector, beta: Covector) -> float:
        """Lambda(alpha, beta) = <beta, sharp(alpha)>."""
        return float(np.asarray(beta, dtype=float) @ self.sharp(alpha))

    def is_skew(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.matrix + self.matrix.T) <= atol))


def structure_matrix(model: ModelSpec, x: State) -> StructureMatrix:
    """
    Structure matrix of a model at x.

    Simple models get the contact bivector. Composed models get canonical
    symplectic blocks per subsystem and the Fourier factor K in the
    (S1, S2) entry, -K in (S2, S1).

    Raises:
        TemperaturePositivityError: If a composed model has T_alpha <= 1e-12 at x
    """
    x = model.check_state(x)
    layout = model.layout
    if not layout.is_composed:
        return StructureMatrix(contact_structure_matrix(x))

    upper = np.zeros((layout.dim, layout.dim))
    for alpha in range(layout.thermal_count):
        q, p = layout.q_slice(alpha), layout.p_slice(alpha)
        idx = np.arange(q.stop - q.start)
        upper[q.start + idx, p.start + idx] = 1.0
    upper[layout.s_index(0), layout.s_index(1)] = fourier_factor(model, x)
    return StructureMatrix(upper - upper.T)


def model_vector_field(model: ModelSpec, x: State) -> Tangent:
    """x' = M(x) dH(x)."""
    x = model.check_state(x)
    return structure_matrix(model, x).sharp(model.gradient(x))
