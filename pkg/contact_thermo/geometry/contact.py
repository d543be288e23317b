"""
Canonical contact structure on T*Q x R in Darboux coordinates (q, p, S).

All functions are pure evaluations at a state with a single entropy
coordinate. The phase-space dimension 2n+1 is read from the state.
"""

from typing import Union

import numpy as np

from ..core.exceptions import ContractViolationError
from ..core.types import Covector, ProjectionKind, ScalarField, State, Tangent


def phase_dimension(x: State) -> int:
    """
    Number of mechanical degrees of freedom n of a simple state.

    Raises:
        ContractViolationError: If len(x) is not of the form 2n+1
    """
    size = np.asarray(x).shape[-1]
    if size < 1 or size % 2 != 1:
        raise ContractViolationError(
            "Simple contact states have odd dimension 2n+1", "2n+1", size
        )
    return (size - 1) // 2


def _split(x: State):
    x = np.asarray(x, dtype=float)
    n = phase_dimension(x)
    return x[:n], x[n : 2 * n], x[2 * n], n


def _check_pair(x: State, v: np.ndarray, what: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != np.asarray(x).shape:
        raise ContractViolationError(
            f"Dimension mismatch between state and {what}",
            np.asarray(x).shape,
            v.shape,
        )
    return v


def contact_form_eval(x: State, v: Tangent) -> float:
    """eta_x(v) = v_S - p . v_q for eta = dS - p dq."""
    _, p, _, n = _split(x)
    v = _check_pair(x, v, "tangent")
    return float(v[2 * n] - p @ v[:n])


def contact_form(x: State) -> Covector:
    """Coordinate components of eta at x."""
    _, p, _, n = _split(x)
    eta = np.zeros(2 * n + 1)
    eta[:n] = -p
    eta[2 * n] = 1.0
    return eta


def reeb(x: State) -> Tangent:
    """Reeb vector field R = d/dS."""
    n = phase_dimension(x)
    r = np.zeros(2 * n + 1)
    r[2 * n] = 1.0
    return r


def project(
    x: State, v: Tangent, which: Union[ProjectionKind, str] = ProjectionKind.HORIZONTAL
) -> Tangent:
    """
    Split a tangent vector along ker(eta) and span(R).

    The horizontal projector is Id - R (x) eta, the vertical one R (x) eta.

    Args:
        x: Base point
        v: Tangent vector at x
        which: "horizontal" or "vertical"

    Returns:
        The requested component of v

    Raises:
        ContractViolationError: For an unknown projector kind
    """
    try:
        kind = ProjectionKind(which)
    except ValueError:
        raise ContractViolationError(
            "Unknown projector", [k.value for k in ProjectionKind], which
        )
    v = _check_pair(x, v, "tangent")
    vertical = contact_form_eval(x, v) * reeb(x)
    if kind is ProjectionKind.VERTICAL:
        return vertical
    return v - vertical


def contact_structure_matrix(x: State) -> np.ndarray:
    """
    Coordinate matrix M(x) of the bivector Lambda.

    The evolution field is M(x) dH. The upper triangle holds
    M[q_i, p_i] = 1 and M[p_i, S] = -p_i; the lower triangle is its negative
    transpose, so M is skew-symmetric bitwise.
    """
    _, p, _, n = _split(x)
    upper = np.zeros((2 * n + 1, 2 * n + 1))
    idx = np.arange(n)
    upper[idx, n + idx] = 1.0
    upper[n + idx, 2 * n] = -p
    return upper - upper.T


def bivector_sharp(x: State, alpha: Covector) -> Tangent:
    """Sharp map of Lambda: the tangent vector M(x) alpha."""
    alpha = _check_pair(x, alpha, "covector")
    return contact_structure_matrix(x) @ alpha


def evolution_vf(H: ScalarField, x: State) -> Tangent:
    """
    Evolution vector field of H.

    Components (dH/dp, -dH/dq - p dH/dS, p . dH/dp). Tangent to ker(eta)
    and conserving H.
    """
    q, p, _, n = _split(x)
    grad = H.gradient(x)
    h_q, h_p, h_s = grad[:n], grad[n : 2 * n], grad[2 * n]
    out = np.empty(2 * n + 1)
    out[:n] = h_p
    out[n : 2 * n] = -h_q - p * h_s
    out[2 * n] = p @ h_p
    return out


def hamiltonian_vf(H: ScalarField, x: State) -> Tangent:
    """Contact Hamiltonian vector field X_H = E_H - H R."""
    return evolution_vf(H, x) - H(x) * reeb(x)


def liouville_vf(x: State) -> Tangent:
    """Liouville vector field p . d/dp on the fibres of T*Q."""
    _, p, _, n = _split(x)
    out = np.zeros(2 * n + 1)
    out[n : 2 * n] = p
    return out


def directional_derivative(f: ScalarField, x: State, v: Tangent) -> float:
    """v(f) = df(v) at x."""
    v = _check_pair(x, v, "tangent")
    return float(f.gradient(x) @ v)


__all__ = [
    "phase_dimension",
    "contact_form_eval",
    "contact_form",
    "reeb",
    "project",
    "contact_structure_matrix",
    "bivector_sharp",
    "evolution_vf",
    "hamiltonian_vf",
    "liouville_vf",
    "directional_derivative",
]
