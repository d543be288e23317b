"""
Brackets of functions on the contact phase space.

With subscripts for partial derivatives and p . f_p = sum_i p_i df/dp_i:

    cartan    [f, g]      = f_p g_q - f_q g_p - f_S (p . g_p) + g_S (p . f_p)
    poisson0  {f, g}_L0   = f_p g_q - f_q g_p
    deltaQ    {f, g}_DQ   = g_S (p . f_p) - f_S (p . g_p)
    jacobi    {f, g}      = [f, g] - f g_S + g f_S

cartan = poisson0 + deltaQ holds identically, and [H, g] is the derivative
of g along the evolution field of H.
"""

from typing import Union

import numpy as np

from ..core.exceptions import ContractViolationError
from ..core.types import BracketKind, ScalarField, State
from .contact import phase_dimension


def _parts(f: ScalarField, x: State, n: int):
    grad = f.gradient(x)
    return grad[:n], grad[n : 2 * n], float(grad[2 * n])


def bracket(
    kind: Union[BracketKind, str], f: ScalarField, g: ScalarField, x: State
) -> float:
    """
    Evaluate a bracket of two scalar fields at x.

    Args:
        kind: One of "jacobi", "cartan", "poisson0", "deltaQ"
        f: First argument
        g: Second argument
        x: Simple state (q, p, S)

    Returns:
        Bracket value

    Raises:
        ContractViolationError: For an unknown bracket kind
    """
    try:
        kind = BracketKind(kind)
    except ValueError:
        raise ContractViolationError(
            "Unknown bracket kind", [k.value for k in BracketKind], kind
        )

    x = np.asarray(x, dtype=float)
    n = phase_dimension(x)
    p = x[n : 2 * n]
    f_q, f_p, f_s = _parts(f, x, n)
    g_q, g_p, g_s = _parts(g, x, n)

    poisson0 = float(f_p @ g_q - f_q @ g_p)
    delta_q = g_s * float(p @ f_p) - f_s * float(p @ g_p)

    if kind is BracketKind.POISSON0:
        return poisson0
    if kind is BracketKind.DELTA_Q:
        return delta_q
    cartan = poisson0 + delta_q
    if kind is BracketKind.CARTAN:
        return cartan
    return cartan - f(x) * g_s + g(x) * f_s


def bracket_field(
    kind: Union[BracketKind, str], f: ScalarField, g: ScalarField
) -> ScalarField:
    """The bracket of f and g as a scalar field (finite-difference gradient)."""
    name = f"{{{f.name},{g.name}}}_{BracketKind(kind).value}"
    return ScalarField(lambda x: bracket(kind, f, g, x), name=name)


def single_generator_rate(f: ScalarField, H: ScalarField, x: State) -> float:
    """
    Rate of change of f along the evolution of H.

    Splits as a reversible part {H, f}_L0 plus an irreversible part
    {H, f}_DQ; the sum equals the derivative of f along E_H.
    """
    return bracket(BracketKind.POISSON0, H, f, x) + bracket(
        BracketKind.DELTA_Q, H, f, x
    )


def liouville_derivative(f: ScalarField, x: State) -> float:
    """Delta_Q(f) = p . df/dp."""
    x = np.asarray(x, dtype=float)
    n = phase_dimension(x)
    return float(x[n : 2 * n] @ f.gradient(x)[n : 2 * n])


__all__ = [
    "bracket",
    "bracket_field",
    "single_generator_rate",
    "liouville_derivative",
]
