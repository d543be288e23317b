"""
Experiment configuration for contact-thermo.

An experiment file is a YAML mapping with the sections ``experiment``,
``model``, ``method``, ``initial``, ``integration``, ``audit``, ``output``
and ``seed``::

    experiment:
      name: fig1_dho
    model:
      name: damped
      gamma: 0.1
      potential:
        kind: quadratic
    method: dg:gonzalez
    initial:
      q: [0.0]
      p: [10.0]
      S: 0.0
    integration:
      h: 0.1
      n_steps: 500

Syntax errors carry the YAML line number; schema errors carry the dotted
field name and, when it can be located, its line.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

import numpy as np
import yaml

from ..integrators.simulate import MethodFamily, check_method, parse_method
from ..systems.base import (
    ModelSpec,
    Potential,
    coupled_spring_potential,
    quadratic_linear_potential,
    quadratic_potential,
    zero_potential,
)
from ..systems.composed import (
    entropy_from_temperature,
    free_thermo_particles,
    thermo_particles,
    thermo_springs,
)
from ..systems.simple import damped_system, quadratic_metric_system
from ..utils.file import read_file_with_fallback
from ..utils.logging_config import get_logger
from .exceptions import (
    ConfigurationError,
    ContactThermoError,
    TemperaturePositivityError,
    UnknownMethodError,
    UnknownModelError,
    UnsupportedMethodError,
)
from .types import SolverKind, State, StepperConfig

logger = get_logger(__name__)

SECTIONS = (
    "experiment",
    "model",
    "method",
    "initial",
    "integration",
    "audit",
    "output",
    "seed",
)


# =============================================================================
# Line lookup
# =============================================================================


def _collect_lines(node: Any, prefix: str, lines: Dict[str, int]) -> None:
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = f"{prefix}.{key_node.value}" if prefix else str(key_node.value)
            lines[key] = key_node.start_mark.line + 1
            _collect_lines(value_node, key, lines)


def field_lines(text: str) -> Dict[str, int]:
    """Map dotted field names of a YAML document to 1-based line numbers."""
    lines: Dict[str, int] = {}
    node = yaml.compose(text, Loader=yaml.SafeLoader)
    if node is not None:
        _collect_lines(node, "", lines)
    return lines


class _Fields:
    """Typed access to a nested mapping with located errors."""

    def __init__(self, lines: Dict[str, int], path: Optional[Path]):
        self.lines = lines
        self.path = path

    def error(self, dotted: str, message: str) -> ConfigurationError:
        line = self.lines.get(dotted)
        if line is None and "." in dotted:
            line = self.lines.get(dotted.rsplit(".", 1)[0])
        return ConfigurationError(message, field=dotted, line=line, path=self.path)

    def section(self, data: Mapping[str, Any], key: str) -> Dict[str, Any]:
        value = data.get(key, {})
        if value is None:
            return {}
        if not isinstance(value, dict):
            raise self.error(key, f"Section '{key}' must be a mapping")
        return value

    def number(
        self,
        data: Mapping[str, Any],
        dotted: str,
        default: Optional[float] = None,
    ) -> float:
        key = dotted.rsplit(".", 1)[-1]
        if key not in data:
            if default is None:
                raise self.error(dotted, f"Missing required field '{dotted}'")
            return float(default)
        value = data[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise self.error(
                dotted, f"Field '{dotted}' must be a number, got {value!r}"
            )
        return float(value)

    def integer(self, data: Mapping[str, Any], dotted: str, default: int) -> int:
        key = dotted.rsplit(".", 1)[-1]
        value = data.get(key, default)
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error(
                dotted, f"Field '{dotted}' must be an integer, got {value!r}"
            )
        return value

    def vector(
        self,
        data: Mapping[str, Any],
        dotted: str,
        size: int,
        default: Optional[float] = 0.0,
    ) -> np.ndarray:
        key = dotted.rsplit(".", 1)[-1]
        if key not in data:
            if default is None:
                raise self.error(dotted, f"Missing required field '{dotted}'")
            return np.full(size, float(default))
        value = data[key]
        try:
            arr = np.atleast_1d(np.asarray(value, dtype=float)).reshape(-1)
        except (TypeError, ValueError):
            raise self.error(dotted, f"Field '{dotted}' must be numeric, got {value!r}")
        if arr.size != size:
            raise self.error(
                dotted, f"Field '{dotted}' needs {size} values, got {arr.size}"
            )
        return arr

    def check_keys(
        self, data: Mapping[str, Any], prefix: str, allowed: List[str]
    ) -> None:
        for key in data:
            if key not in allowed:
                dotted = f"{prefix}.{key}" if prefix else str(key)
                raise self.error(
                    dotted,
                    f"Unknown field '{dotted}' (expected one of: {', '.join(allowed)})",
                )


# =============================================================================
# Model registry
# =============================================================================


def _build_potential(
    fields: _Fields, data: Mapping[str, Any], prefix: str, default_kind: str
) -> Potential:
    spec = dict(data or {})
    kind = spec.pop("kind", default_kind)
    n = fields.integer(spec, f"{prefix}.n", 1)
    if kind == "zero":
        fields.check_keys(spec, prefix, ["n"])
        return zero_potential(n)
    if kind == "quadratic":
        fields.check_keys(spec, prefix, ["n", "stiffness"])
        return quadratic_potential(fields.number(spec, f"{prefix}.stiffness", 1.0), n)
    if kind == "coupled":
        fields.check_keys(spec, prefix, ["n", "k_a", "k_b", "kappa"])
        return coupled_spring_potential(
            fields.number(spec, f"{prefix}.k_a", 1.0),
            fields.number(spec, f"{prefix}.k_b", 1.0),
            fields.number(spec, f"{prefix}.kappa", 1.0),
            n,
        )
    raise fields.error(
        f"{prefix}.kind",
        f"Unknown potential kind '{kind}' (available: zero, quadratic, coupled)",
    )


def _damped(fields: _Fields, params: Dict[str, Any]) -> ModelSpec:
    fields.check_keys(params, "model", ["mass", "gamma", "potential"])
    potential = _build_potential(
        fields, params.get("potential", {}), "model.potential", "quadratic"
    )
    return damped_system(
        fields.number(params, "model.mass", 1.0),
        fields.number(params, "model.gamma"),
        potential,
    )


def _quadratic_metric(fields: _Fields, params: Dict[str, Any]) -> ModelSpec:
    fields.check_keys(params, "model", ["g_inv", "potential"])
    if "g_inv" not in params:
        raise fields.error("model.g_inv", "Missing required field 'model.g_inv'")
    try:
        g_inv = np.atleast_2d(np.asarray(params["g_inv"], dtype=float))
    except (TypeError, ValueError):
        raise fields.error(
            "model.g_inv", "Field 'model.g_inv' must be a numeric matrix"
        )
    spec = dict(params.get("potential") or {})
    kind = spec.pop("kind", "quadratic_linear")
    if kind != "quadratic_linear":
        raise fields.error(
            "model.potential.kind",
            f"Unknown thermal potential kind '{kind}' (available: quadratic_linear)",
        )
    fields.check_keys(spec, "model.potential", ["stiffness", "gamma"])
    potential = quadratic_linear_potential(
        fields.number(spec, "model.potential.stiffness", 1.0),
        fields.number(spec, "model.potential.gamma", 0.1),
        n=g_inv.shape[0],
    )
    return quadratic_metric_system(g_inv, potential)


def _thermo_particles(fields: _Fields, params: Dict[str, Any]) -> ModelSpec:
    fields.check_keys(params, "model", ["c_a", "c_b", "k"])
    return thermo_particles(
        fields.number(params, "model.c_a", 1.0),
        fields.number(params, "model.c_b", 1.0),
        fields.number(params, "model.k", 1.0),
    )


def _free_thermo_particles(fields: _Fields, params: Dict[str, Any]) -> ModelSpec:
    fields.check_keys(params, "model", ["m_a", "m_b", "c_a", "c_b", "k", "n"])
    return free_thermo_particles(
        fields.number(params, "model.m_a", 1.0),
        fields.number(params, "model.m_b", 1.0),
        fields.number(params, "model.c_a", 1.0),
        fields.number(params, "model.c_b", 1.0),
        fields.number(params, "model.k", 1.0),
        fields.integer(params, "model.n", 1),
    )


def _thermo_springs(fields: _Fields, params: Dict[str, Any]) -> ModelSpec:
    fields.check_keys(
        params, "model", ["m_a", "m_b", "c_a", "c_b", "k", "potential"]
    )
    potential = _build_potential(
        fields, params.get("potential", {}), "model.potential", "coupled"
    )
    return thermo_springs(
        fields.number(params, "model.m_a", 1.0),
        fields.number(params, "model.m_b", 1.0),
        fields.number(params, "model.c_a", 1.0),
        fields.number(params, "model.c_b", 1.0),
        fields.number(params, "model.k", 1.0),
        potential,
    )


MODEL_BUILDERS: Dict[str, Callable[[_Fields, Dict[str, Any]], ModelSpec]] = {
    "damped": _damped,
    "quadratic_metric": _quadratic_metric,
    "thermo_particles": _thermo_particles,
    "free_thermo_particles": _free_thermo_particles,
    "thermo_springs": _thermo_springs,
}


# =============================================================================
# Experiment configuration
# =============================================================================


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment file."""

    name: str
    model_name: str
    model_params: Dict[str, Any]
    method: str
    initial: Dict[str, Any]
    h: float
    n_steps: int
    solver: SolverKind = SolverKind.FIXED_POINT
    tol_solve: float = 1e-12
    max_iter: int = 50
    tol_energy: float = 1e-9
    tol_entropy: float = 1e-12
    output_prefix: str = ""
    seed: int = 0
    description: str = ""
    path: Optional[Path] = None
    lines: Dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    @property
    def prefix(self) -> str:
        return self.output_prefix or self.name

    def _fields(self) -> _Fields:
        return _Fields(self.lines, self.path)

    def stepper_config(self) -> StepperConfig:
        return StepperConfig(
            h=self.h,
            solver=self.solver,
            tol_solve=self.tol_solve,
            max_iter=self.max_iter,
        )

    def build_model(self) -> ModelSpec:
        """
        Construct the configured model.

        Raises:
            ConfigurationError: For malformed model fields
            ModelParameterError: For physically invalid parameter values
        """
        return MODEL_BUILDERS[self.model_name](self._fields(), dict(self.model_params))

    def initial_state(self, model: ModelSpec) -> State:
        """
        Assemble x0 in the model's layout.

        Simple models take ``q``, ``p`` (length n) and ``S``. Composed models take
        ``q`` and ``p`` over (q_a, q_b) and either ``S`` or ``temperatures``
        (two values each); temperatures become S = c ln T.
        """
        fields = self._fields()
        init = dict(self.initial)
        fields.check_keys(init, "initial", ["q", "p", "S", "temperatures", "q1"])
        layout = model.layout
        n_total = sum(layout.n_mech)
        q = fields.vector(init, "initial.q", n_total)
        p = fields.vector(init, "initial.p", n_total)

        if "temperatures" in init:
            if "S" in init:
                raise fields.error(
                    "initial.temperatures",
                    "Give either 'S' or 'temperatures', not both",
                )
            temps = fields.vector(init, "initial.temperatures", layout.thermal_count)
            capacities = [model.parameters.get("c_a"), model.parameters.get("c_b")]
            if not layout.is_composed or None in capacities:
                raise fields.error(
                    "initial.temperatures",
                    f"Model '{model.name}' has no heat capacities; give 'S' instead",
                )
            try:
                s = np.array(
                    [entropy_from_temperature(c, t) for c, t in zip(capacities, temps)]
                )
            except TemperaturePositivityError as e:
                raise fields.error("initial.temperatures", str(e).splitlines()[0])
        else:
            s = fields.vector(init, "initial.S", layout.thermal_count)

        x0 = np.empty(layout.dim)
        offset = 0
        for alpha, n in enumerate(layout.n_mech):
            x0[layout.q_slice(alpha)] = q[offset : offset + n]
            x0[layout.p_slice(alpha)] = p[offset : offset + n]
            x0[layout.s_index(alpha)] = s[alpha]
            offset += n
        return x0

    def q1(self, model: ModelSpec) -> Optional[np.ndarray]:
        """Second configuration for the Herglotz scheme, if configured."""
        if "q1" not in self.initial:
            return None
        return self._fields().vector(self.initial, "initial.q1", sum(model.n_mech))


def _brief(error: ContactThermoError) -> str:
    return f"{error.message} ({error.details})" if error.details else error.message


def parse_experiment(
    data: Any, path: Optional[Path] = None, lines: Optional[Dict[str, int]] = None
) -> ExperimentConfig:
    """
    Validate a loaded YAML document.

    Raises:
        ConfigurationError: For schema errors
        UnknownModelError: For an unknown model name
        UnknownMethodError: For an unknown method name
    """
    fields = _Fields(lines or {}, path)
    if not isinstance(data, dict):
        raise ConfigurationError(
            "Experiment file must contain a YAML mapping", line=1, path=path
        )
    fields.check_keys(data, "", list(SECTIONS))

    experiment = fields.section(data, "experiment")
    fields.check_keys(experiment, "experiment", ["name", "description"])
    default_name = path.stem if path is not None else "experiment"
    name = str(experiment.get("name", default_name))

    model = dict(fields.section(data, "model"))
    model_name = model.pop("name", None)
    if model_name is None:
        raise fields.error("model.name", "Missing required field 'model.name'")
    if model_name not in MODEL_BUILDERS:
        raise UnknownModelError(
            str(model_name),
            sorted(MODEL_BUILDERS),
            fields.lines.get("model.name"),
            path,
        )

    method = str(data.get("method", "dg:gonzalez"))
    try:
        spec = parse_method(method)
    except UnknownMethodError as err:
        raise UnknownMethodError(
            err.name, err.available, fields.lines.get("method"), path
        ) from err

    initial = fields.section(data, "initial")
    if "q1" in initial and spec.family is not MethodFamily.HERGLOTZ:
        logger.warning("initial.q1 is only used by the herglotz method; ignoring it")

    integration = fields.section(data, "integration")
    fields.check_keys(
        integration, "integration", ["h", "n_steps", "solver", "tol_solve", "max_iter"]
    )
    h = fields.number(integration, "integration.h")
    if not h > 0:
        raise fields.error("integration.h", f"Time step must be positive, got {h}")
    n_steps = fields.integer(integration, "integration.n_steps", 100)
    if n_steps < 0:
        raise fields.error("integration.n_steps", "n_steps must be >= 0")
    tol_solve = fields.number(integration, "integration.tol_solve", 1e-12)
    if not tol_solve > 0:
        raise fields.error(
            "integration.tol_solve",
            f"Solver tolerance must be positive, got {tol_solve}",
        )
    max_iter = fields.integer(integration, "integration.max_iter", 50)
    if max_iter < 1:
        raise fields.error(
            "integration.max_iter", f"Iteration cap must be at least 1, got {max_iter}"
        )
    try:
        solver = SolverKind(integration.get("solver", SolverKind.FIXED_POINT.value))
    except ValueError:
        raise fields.error(
            "integration.solver",
            f"Unknown solver (available: {', '.join(s.value for s in SolverKind)})",
        )

    audit = fields.section(data, "audit")
    fields.check_keys(audit, "audit", ["tol_energy", "tol_entropy"])
    output = fields.section(data, "output")
    fields.check_keys(output, "output", ["prefix"])

    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise fields.error("seed", f"Field 'seed' must be an integer, got {seed!r}")

    config = ExperimentConfig(
        name=name,
        description=str(experiment.get("description", "")),
        model_name=str(model_name),
        model_params=model,
        method=spec.name,
        initial=dict(initial),
        h=h,
        n_steps=n_steps,
        solver=solver,
        tol_solve=tol_solve,
        max_iter=max_iter,
        tol_energy=fields.number(audit, "audit.tol_energy", 1e-9),
        tol_entropy=fields.number(audit, "audit.tol_entropy", 1e-12),
        output_prefix=str(output.get("prefix", "")),
        seed=seed,
        path=path,
        lines=dict(fields.lines),
    )
    # Surface bad model parameters and method mismatches at load time.
    try:
        model = config.build_model()
        check_method(model, spec)
    except ConfigurationError:
        raise
    except UnsupportedMethodError as e:
        raise ConfigurationError(
            _brief(e),
            field="method",
            line=fields.lines.get("method"),
            path=path,
        ) from e
    except ContactThermoError as e:
        raise ConfigurationError(
            _brief(e),
            field="model",
            line=fields.lines.get("model"),
            path=path,
        ) from e
    return config


def load_experiment(path: Union[Path, str]) -> ExperimentConfig:
    """
    Load and validate an experiment file.

    Args:
        path: YAML file

    Returns:
        ExperimentConfig

    Raises:
        ConfigurationError: For unreadable files, YAML syntax errors and
            schema errors
    """
    path = Path(path)
    try:
        text = read_file_with_fallback(path)
    except ContactThermoError as e:
        raise ConfigurationError(
            f"Cannot read experiment file: {e.message}", path=path
        ) from e

    try:
        data = yaml.safe_load(text)
        lines = field_lines(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigurationError(
            f"Invalid YAML: {problem}", line=line, path=path
        ) from e

    config = parse_experiment(data, path, lines)
    logger.info("Loaded experiment '%s' from %s", config.name, path)
    return config
