"""Core types and exceptions for contact-thermo."""

from .exceptions import (
    ConfigurationError,
    ContactThermoError,
    ContractViolationError,
    InsufficientDataError,
    ModelParameterError,
    StepFailureError,
    TemperaturePositivityError,
    UnknownMethodError,
    UnknownModelError,
    UnsupportedMethodError,
)
from .types import (
    BracketKind,
    ProjectionKind,
    ScalarField,
    SolverKind,
    StateLayout,
    StepFailure,
    StepperConfig,
    Trajectory,
)

__all__ = [
    "ConfigurationError",
    "ContactThermoError",
    "ContractViolationError",
    "InsufficientDataError",
    "ModelParameterError",
    "StepFailureError",
    "TemperaturePositivityError",
    "UnknownMethodError",
    "UnknownModelError",
    "UnsupportedMethodError",
    "BracketKind",
    "ProjectionKind",
    "ScalarField",
    "SolverKind",
    "StateLayout",
    "StepFailure",
    "StepperConfig",
    "Trajectory",
]
