"""
Trajectory diagnostics: law audits, Herglotz residuals, convergence and
equilibration.
"""

from .convergence import (
    ConvergenceResult,
    ConvergenceStatus,
    convergence_study,
    fit_order,
    reference_oracle,
    trajectory_error,
)
from .equilibration import (
    EquilibrationMetrics,
    equilibration_metrics,
    predicted_equilibrium,
)
from .laws import LawReport, audit_laws, first_law_residuals
from .residuals import (
    herglotz_entropy_floor,
    herglotz_entropy_margin,
    herglotz_residual,
    herglotz_residual_series,
)

__all__ = [
    "ConvergenceResult",
    "ConvergenceStatus",
    "EquilibrationMetrics",
    "LawReport",
    "audit_laws",
    "convergence_study",
    "equilibration_metrics",
    "first_law_residuals",
    "fit_order",
    "herglotz_entropy_floor",
    "herglotz_entropy_margin",
    "herglotz_residual",
    "herglotz_residual_series",
    "predicted_equilibrium",
    "reference_oracle",
    "trajectory_error",
]
