"""Discrete gradient rules."""

from .gradients import (
    DiscreteGradientKind,
    DiscreteGradientRule,
    coordinate_increment_gradient,
    discrete_gradient,
    mean_value_gradient,
    midpoint_gradient,
    parse_kind,
)

__all__ = [
    "DiscreteGradientKind",
    "DiscreteGradientRule",
    "coordinate_increment_gradient",
    "discrete_gradient",
    "mean_value_gradient",
    "midpoint_gradient",
    "parse_kind",
]
