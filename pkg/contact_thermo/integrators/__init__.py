"""Time steppers and trajectory generation."""

from .discrete_gradient import dg_step, dg_step_closed_form_dho, dg_step_info
from .exact import dho_oracle, exact_dho
from .herglotz import herglotz_closed_form_dho, herglotz_step
from .runge_kutta import rk4_step
from .simulate import METHOD_NAMES, MethodFamily, MethodSpec, parse_method, simulate

__all__ = [
    "dg_step",
    "dg_step_closed_form_dho",
    "dg_step_info",
    "dho_oracle",
    "exact_dho",
    "herglotz_closed_form_dho",
    "herglotz_step",
    "rk4_step",
    "METHOD_NAMES",
    "MethodFamily",
    "MethodSpec",
    "parse_method",
    "simulate",
]
