"""Thermodynamic models: simple friction systems and heat-exchanging pairs."""

from .base import (
    EntropicPotential,
    ModelSpec,
    Potential,
    coupled_spring_potential,
    quadratic_linear_potential,
    quadratic_potential,
    temperature,
    zero_potential,
)
from .composed import (
    T_MIN,
    composed_system,
    entropy_from_temperature,
    entropy_production_rate,
    fourier_factor,
    free_thermo_particles,
    thermo_particles,
    thermo_springs,
)
from .lagrangian import (
    ContactLagrangian,
    DiscreteLagrangian,
    MidpointDiscreteLagrangian,
    midpoint_discrete_lagrangian,
)
from .simple import (
    damped_harmonic_oscillator,
    damped_system,
    entropy_production_indicator,
    quadratic_metric_system,
)
from .structure import StructureMatrix, model_vector_field, structure_matrix

__all__ = [
    "EntropicPotential",
    "ModelSpec",
    "Potential",
    "coupled_spring_potential",
    "quadratic_linear_potential",
    "quadratic_potential",
    "temperature",
    "zero_potential",
    "T_MIN",
    "composed_system",
    "entropy_from_temperature",
    "entropy_production_rate",
    "fourier_factor",
    "free_thermo_particles",
    "thermo_particles",
    "thermo_springs",
    "ContactLagrangian",
    "DiscreteLagrangian",
    "MidpointDiscreteLagrangian",
    "midpoint_discrete_lagrangian",
    "damped_harmonic_oscillator",
    "damped_system",
    "entropy_production_indicator",
    "quadratic_metric_system",
    "StructureMatrix",
    "model_vector_field",
    "structure_matrix",
]
