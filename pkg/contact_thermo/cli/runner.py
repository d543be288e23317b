"""
Runs one configured experiment and writes its artifacts.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from ..core.config import ExperimentConfig
from ..core.exceptions import InsufficientDataError
from ..core.types import Trajectory
from ..diagnostics.equilibration import equilibration_metrics
from ..diagnostics.laws import LawReport, audit_laws
from ..diagnostics.residuals import herglotz_entropy_margin, herglotz_residual
from ..integrators.simulate import MethodFamily, parse_method, simulate
from ..systems.base import ModelSpec
from ..utils.logging_config import get_logger
from .output import write_json_report, write_summary, write_trajectory_csv

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_STEP_FAILURE = 3
EXIT_AUDIT = 4
EXIT_INTERRUPTED = 130


@dataclass
class RunResult:
    """Everything a run produced."""

    config: ExperimentConfig
    model: ModelSpec
    trajectory: Trajectory
    laws: LawReport
    report: Dict[str, Any]
    csv_path: Optional[Path] = None
    json_path: Optional[Path] = None
    summary_path: Optional[Path] = None

    def exit_code(self, strict: bool = False) -> int:
        """3 for a failed step, 4 for a failed audit under strict, else 0."""
        if self.trajectory.failure is not None:
            return EXIT_STEP_FAILURE
        if strict and not self.laws.passed:
            return EXIT_AUDIT
        return EXIT_OK


def _herglotz_block(model: ModelSpec, traj: Trajectory) -> Optional[Dict[str, Any]]:
    lagrangian = model.lagrangian
    if lagrangian is None or len(traj) < 2:
        return None
    block: Dict[str, Any] = {
        "entropy_margin": herglotz_entropy_margin(lagrangian, traj)
    }
    try:
        block["residual"] = herglotz_residual(lagrangian, traj)
    except InsufficientDataError:
        block["residual"] = None
    return block


def build_report(
    config: ExperimentConfig,
    model: ModelSpec,
    traj: Trajectory,
    laws: LawReport,
    seed: int,
) -> Dict[str, Any]:
    """JSON-ready record of a run."""
    report: Dict[str, Any] = {
        "experiment": config.name,
        "description": config.description,
        "model": {"name": model.name, "parameters": dict(model.parameters)},
        "method": traj.method,
        "h": config.h,
        "n_steps": config.n_steps,
        "steps_completed": traj.n_steps,
        "seed": seed,
        "solver": {
            "kind": config.solver.value,
            "tol_solve": config.tol_solve,
            "max_iter": config.max_iter,
            "total_iterations": int(np.sum(traj.iterations)),
            "max_iterations": (
                int(np.max(traj.iterations)) if traj.iterations.size else 0
            ),
        },
        "failure": traj.failure.to_dict() if traj.failure else None,
        "laws": laws.to_dict(),
        "final_state": dict(zip(traj.layout.names(), traj.states[-1].tolist())),
    }
    if model.thermal_count == 2:
        report["equilibration"] = equilibration_metrics(traj, model).to_dict()
    if parse_method(traj.method).family is MethodFamily.HERGLOTZ:
        report["herglotz"] = _herglotz_block(model, traj)
    return report


def run_experiment(
    config: ExperimentConfig,
    out_dir: Optional[Path] = None,
    seed: Optional[int] = None,
) -> RunResult:
    """
    Simulate a configured experiment, audit it and write its artifacts.

    Artifacts are ``<prefix>.csv``, ``<prefix>.json`` and ``<prefix>.txt``
    in ``out_dir``; nothing is written when ``out_dir`` is None.

    Raises:
        ConfigurationError: For invalid initial data
        FileWriteError: If an artifact cannot be written
    """
    model = config.build_model()
    x0 = config.initial_state(model)
    spec = parse_method(config.method)
    q1 = config.q1(model) if spec.family is MethodFamily.HERGLOTZ else None
    seed = config.seed if seed is None else seed

    logger.info("Running experiment '%s'", config.name)
    traj = simulate(model, spec, x0, config.stepper_config(), config.n_steps, q1=q1)
    laws = audit_laws(traj, model, config.tol_energy, config.tol_entropy)
    report = build_report(config, model, traj, laws, seed)
    result = RunResult(config, model, traj, laws, report)

    if out_dir is not None:
        out_dir = Path(out_dir)
        result.csv_path = write_trajectory_csv(traj, out_dir / f"{config.prefix}.csv")
        result.json_path = write_json_report(report, out_dir / f"{config.prefix}.json")
        result.summary_path = write_summary(report, out_dir / f"{config.prefix}.txt")
        logger.info("Wrote artifacts for '%s' to %s", config.name, out_dir)
    return result
