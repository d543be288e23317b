"""
Artifact writers: trajectory CSV, JSON report and text summary.

Floats are written with 17 significant digits so that CSV values round-trip
exactly; nothing time- or locale-dependent is written.
"""

import json
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from ..core.types import Trajectory
from ..utils.file import write_text_file


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def csv_header(traj: Trajectory) -> List[str]:
    """t, state columns by layout name, H, S_total, T_1[, T_2]."""
    temps = [f"T_{alpha + 1}" for alpha in range(traj.layout.thermal_count)]
    return ["t", *traj.layout.names(), "H", "S_total", *temps]


def trajectory_csv(traj: Trajectory) -> str:
    rows = [",".join(csv_header(traj))]
    for k in range(len(traj)):
        values = [
            traj.times[k],
            *traj.states[k],
            traj.energy[k],
            traj.entropy_total[k],
            *traj.temperatures[k],
        ]
        rows.append(",".join(_fmt(v) for v in values))
    return "\n".join(rows) + "\n"


def write_trajectory_csv(traj: Trajectory, path: Path) -> Path:
    return write_text_file(path, trajectory_csv(traj))


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    return str(value)


def write_json_report(report: Dict[str, Any], path: Path) -> Path:
    text = json.dumps(report, indent=2, sort_keys=True, default=_jsonable)
    return write_text_file(path, text + "\n")


def summary_text(report: Dict[str, Any]) -> str:
    """Human-readable summary of a run report."""
    laws = report["laws"]
    first, second = laws["first_law"], laws["second_law"]
    lines = [
        f"Experiment: {report['experiment']}",
        f"Model:      {report['model']['name']}",
        f"Method:     {report['method']}",
        f"Steps:      {report['steps_completed']}/{report['n_steps']}"
        f" (h = {report['h']})",
        "",
        "First law:  {}  max |H - H0| = {:.3e} (tolerance {:.1e})".format(
            "PASS" if first["ok"] else "FAIL",
            first["max_energy_drift"],
            first["tolerance"],
        ),
        "Second law: {}  min dS = {:.3e} (tolerance {:.1e})".format(
            "PASS" if second["ok"] else "FAIL",
            second["min_entropy_increment"],
            second["tolerance"],
        ),
    ]
    equilibration = report.get("equilibration")
    if equilibration:
        lines.append(
            "Equilibration: final |T1 - T2| = {:.6g}".format(equilibration["final_gap"])
        )
        if equilibration["t_infinity"] is not None:
            lines.append(
                "               predicted T = {:.6g}, final deviation {:.3e}".format(
                    equilibration["t_infinity"], equilibration["final_deviation"]
                )
            )
    herglotz = report.get("herglotz")
    if herglotz:
        lines.append(
            "Herglotz entropy margin: {:.3e}".format(herglotz["entropy_margin"])
        )
    failure = report.get("failure")
    if failure:
        lines.append("")
        lines.append(
            f"Step {failure['step_index']} failed: {failure['reason']} "
            f"after {failure['iterations']} iterations"
        )
    for note in laws.get("notes", []):
        lines.append(f"Note: {note}")
    return "\n".join(lines) + "\n"


def write_summary(report: Dict[str, Any], path: Path) -> Path:
    return write_text_file(path, summary_text(report))
