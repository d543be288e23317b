"""
Discrete gradients.

A discrete gradient of H is a two-point map G(x, x') with

    G(x, x') . (x' - x) = H(x') - H(x)    and    G(x, x) = dH(x).

Three rules are provided: mean value (averaged vector field), midpoint
(Gonzalez) and coordinate increment (Itoh-Abe).
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from ..core.exceptions import ContractViolationError
from ..core.types import Covector, ScalarField, State


class DiscreteGradientKind(Enum):
    """Discrete gradient rules, valued by their configuration names."""

    MEAN_VALUE = "avf"
    MIDPOINT = "gonzalez"
    COORDINATE_INCREMENT = "itoh-abe"


@dataclass(frozen=True)
class DiscreteGradientRule:
    """A discrete gradient kind with its parameters."""

    kind: DiscreteGradientKind = DiscreteGradientKind.MIDPOINT

    quadrature_order: int = 8
    """Gauss-Legendre nodes of the mean-value rule."""

    coincidence_tol: float = 1e-12
    """Relative threshold under which two points are treated as equal."""

    def __post_init__(self) -> None:
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", parse_kind(self.kind))
        if self.quadrature_order < 1:
            raise ContractViolationError(
                "Quadrature order must be positive", ">= 1", self.quadrature_order
            )
        if not self.coincidence_tol > 0:
            raise ContractViolationError(
                "Coincidence threshold must be positive", "> 0", self.coincidence_tol
            )


def parse_kind(name: Union[str, DiscreteGradientKind]) -> DiscreteGradientKind:
    """Resolve "avf", "gonzalez" or "itoh-abe"."""
    try:
        return DiscreteGradientKind(name)
    except ValueError:
        raise ContractViolationError(
            "Unknown discrete gradient",
            [k.value for k in DiscreteGradientKind],
            name,
        )


@lru_cache(maxsize=None)
def _gauss_legendre_unit(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def mean_value_gradient(
    H: ScalarField, x: State, x_new: State, order: int = 8
) -> Covector:
    """Integral of dH along the segment from x to x_new, by Gauss-Legendre."""
    taus, weights = _gauss_legendre_unit(order)
    delta = x_new - x
    out = np.zeros_like(x)
    for tau, w in zip(taus, weights):
        out += w * H.gradient(x + tau * delta)
    return out


def midpoint_gradient(
    H: ScalarField, x: State, x_new: State, coincidence_tol: float = 1e-12
) -> Covector:
    """
    Gonzalez rule: dH at the midpoint plus a rank-one correction along x_new - x.

    Below the coincidence threshold the correction is dropped (its limit).
    """
    mid = 0.5 * (x + x_new)
    grad_mid = H.gradient(mid)
    delta = x_new - x
    norm = float(np.linalg.norm(delta))
    if norm < coincidence_tol * (1.0 + float(np.linalg.norm(x))):
        return grad_mid
    correction = (H(x_new) - H(x) - float(grad_mid @ delta)) / (norm * norm)
    return grad_mid + correction * delta


def coordinate_increment_gradient(
    H: ScalarField, x: State, x_new: State, coincidence_tol: float = 1e-12
) -> Covector:
    """
    Itoh-Abe rule: divided differences along the coordinate path.

    Component i is [H(w_i) - H(w_{i-1})] / (x_new_i - x_i) where w_i takes the
    first i coordinates from x_new. Near-equal components use dH/dx_i at w_{i-1}.
    """
    out = np.empty_like(x)
    prev = x.copy()
    h_prev = H(prev)
    scale = 1.0 + float(np.max(np.abs(x))) if x.size else 1.0
    for i in range(x.size):
        step = x_new[i] - x[i]
        cur = prev.copy()
        cur[i] = x_new[i]
        if abs(step) < coincidence_tol * scale:
            out[i] = H.gradient(prev)[i]
            h_cur = H(cur)
        else:
            h_cur = H(cur)
            out[i] = (h_cur - h_prev) / step
        prev, h_prev = cur, h_cur
    return out


def discrete_gradient(
    kind: Union[DiscreteGradientKind, DiscreteGradientRule, str],
    H: ScalarField,
    x: State,
    x_new: State,
) -> Covector:
    """
    Evaluate a discrete gradient of H between x and x_new.

    Args:
        kind: Rule name, kind or rule with parameters
        H: Scalar field
        x: First point
        x_new: Second point

    Returns:
        Covector satisfying the energy identity and consistency

    Raises:
        ContractViolationError: If the points differ in dimension
    """
    rule = (
        kind if isinstance(kind, DiscreteGradientRule) else DiscreteGradientRule(kind)
    )
    x = np.asarray(x, dtype=float)
    x_new = np.asarray(x_new, dtype=float)
    if x.shape != x_new.shape:
        raise ContractViolationError(
            "Discrete gradient points differ in dimension", x.shape, x_new.shape
        )

    if rule.kind is DiscreteGradientKind.MEAN_VALUE:
        return mean_value_gradient(H, x, x_new, rule.quadrature_order)
    if rule.kind is DiscreteGradientKind.MIDPOINT:
        return midpoint_gradient(H, x, x_new, rule.coincidence_tol)
    return coordinate_increment_gradient(H, x, x_new, rule.coincidence_tol)
