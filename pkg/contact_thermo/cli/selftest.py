"""
Self-test suite: structural identities checked at seeded random samples.

Each check is named, reports its worst scaled error against a tolerance, and
is deterministic given the seed.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from ..core.exceptions import ContractViolationError
from ..core.types import BracketKind, ScalarField, StepperConfig
from ..discrete.gradients import DiscreteGradientKind, discrete_gradient
from ..geometry.brackets import bracket, single_generator_rate
from ..geometry.contact import (
    contact_form_eval,
    directional_derivative,
    evolution_vf,
    hamiltonian_vf,
    reeb,
)
from ..integrators.discrete_gradient import dg_step, dg_step_closed_form_dho
from ..integrators.herglotz import herglotz_closed_form_dho, herglotz_step
from ..systems.base import coupled_spring_potential, quadratic_linear_potential
from ..systems.composed import composed_system, thermo_particles, thermo_springs
from ..systems.lagrangian import midpoint_discrete_lagrangian
from ..systems.simple import damped_harmonic_oscillator, quadratic_metric_system
from ..systems.structure import structure_matrix
from ..utils.logging_config import get_logger

logger = get_logger(__name__)

FAULTS = ("skew",)
"""Faults that can be injected to prove the suite catches them."""


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    samples: int
    detail: str = ""

    def __post_init__(self) -> None:
        # numpy scalars leak in from the checks; the report must stay JSON-safe.
        self.passed = bool(self.passed)
        self.max_error = float(self.max_error)
        self.tolerance = float(self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "detail": self.detail,
        }


@dataclass
class SelftestReport:
    seed: int
    checks: List[CheckResult] = field(default_factory=list)
    faults: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "faults": list(self.faults),
            "checks": [c.to_dict() for c in self.checks],
        }


# =============================================================================
# Sample Hamiltonians
# =============================================================================


def sample_hamiltonians(n: int = 2) -> List[ScalarField]:
    """Test Hamiltonians on simple states of n degrees of freedom."""

    def split(x: np.ndarray):
        return x[:n], x[n : 2 * n], float(x[2 * n])

    def oscillator(x):
        q, p, s = split(x)
        return 0.5 * float(p @ p) + 0.5 * float(q @ q) + 0.1 * s

    def oscillator_grad(x):
        q, p, _ = split(x)
        return np.concatenate([q, p, [0.1]])

    def anharmonic(x):
        q, p, s = split(x)
        return 0.5 * float(p @ p) + 0.25 * float(np.sum(q**4)) + 0.3 * s

    def anharmonic_grad(x):
        q, p, _ = split(x)
        return np.concatenate([q**3, p, [0.3]])

    def entropic(x):
        q, p, s = split(x)
        quadratic = 0.5 * float(p @ p) + 0.5 * float(q @ q)
        return quadratic + 0.5 * s * s + s * float(np.sum(q))

    def entropic_grad(x):
        q, p, s = split(x)
        return np.concatenate([q + s, p, [s + float(np.sum(q))]])

    def mixed(x):
        q, p, s = split(x)
        return float(q @ p) + 0.5 * s * float(p @ p)

    def mixed_grad(x):
        q, p, s = split(x)
        return np.concatenate([p, q + s * p, [0.5 * float(p @ p)]])

    def exponential(x):
        q, p, s = split(x)
        return float(np.exp(0.5 * s)) * (1.0 + 0.5 * float(p @ p)) + float(
            np.sum(np.cos(q))
        )

    def exponential_grad(x):
        q, p, s = split(x)
        e = float(np.exp(0.5 * s))
        return np.concatenate(
            [-np.sin(q), e * p, [0.5 * e * (1.0 + 0.5 * float(p @ p))]]
        )

    return [
        ScalarField(oscillator, oscillator_grad, "oscillator"),
        ScalarField(anharmonic, anharmonic_grad, "anharmonic"),
        ScalarField(entropic, entropic_grad, "entropic"),
        ScalarField(mixed, mixed_grad, "mixed"),
        ScalarField(exponential, exponential_grad, "exponential"),
    ]


def _scale(H: ScalarField, x: np.ndarray) -> float:
    grad = H.gradient(x)
    slope = float(np.max(np.abs(grad))) * (1.0 + float(np.max(np.abs(x))))
    return 1.0 + abs(H(x)) + slope


# =============================================================================
# Checks
# =============================================================================


def check_contact_identities(rng: np.random.Generator, samples: int) -> CheckResult:
    """eta(E_H) = 0, eta(X_H) = -H, E_H(H) = 0, X_H(H) = -H_S H, E_H = X_H + H R."""
    tol = 1e-12
    worst = 0.0
    hamiltonians = sample_hamiltonians(2)
    for _ in range(samples):
        x = rng.uniform(-1.0, 1.0, 5)
        for H in hamiltonians:
            e_h = evolution_vf(H, x)
            x_h = hamiltonian_vf(H, x)
            h_val = H(x)
            h_s = float(H.gradient(x)[-1])
            errors = [
                abs(contact_form_eval(x, e_h)),
                abs(contact_form_eval(x, x_h) + h_val),
                abs(directional_derivative(H, x, e_h)),
                abs(directional_derivative(H, x, x_h) + h_s * h_val),
                float(np.max(np.abs(e_h - x_h - h_val * reeb(x)))),
            ]
            worst = max(worst, max(errors) / _scale(H, x) ** 2)
    return CheckResult("contact-identities", worst <= tol, worst, tol, samples)


def check_bracket_decomposition(rng: np.random.Generator, samples: int) -> CheckResult:
    """[H, f] = {H, f}_L0 + {H, f}_DQ = E_H(f)."""
    tol = 1e-12
    worst = 0.0
    hamiltonians = sample_hamiltonians(2)
    for _ in range(samples):
        x = rng.uniform(-1.0, 1.0, 5)
        for H in hamiltonians:
            for f in hamiltonians:
                cartan = bracket(BracketKind.CARTAN, H, f, x)
                split_rate = single_generator_rate(f, H, x)
                along = directional_derivative(f, x, evolution_vf(H, x))
                scale = _scale(H, x) * _scale(f, x)
                worst = max(
                    worst, abs(cartan - split_rate) / scale, abs(cartan - along) / scale
                )
    return CheckResult("bracket-decomposition", worst <= tol, worst, tol, samples)


def check_structure_skew(
    rng: np.random.Generator, samples: int, faults: Sequence[str] = ()
) -> CheckResult:
    """Structure matrices of built-in models are skew-symmetric bitwise."""
    models = [
        damped_harmonic_oscillator(0.1),
        quadratic_metric_system(
            np.array([[2.0, 0.5], [0.5, 1.0]]),
            quadratic_linear_potential(1.0, 0.2, n=2),
        ),
        thermo_particles(1.0, 2.0, 1.0),
        thermo_springs(1.0, 1.0, 1.0, 1.0, 1.0, coupled_spring_potential()),
    ]
    worst = 0.0
    offender = ""
    for _ in range(samples):
        for model in models:
            x = rng.uniform(-1.0, 1.0, model.dim)
            matrix = structure_matrix(model, x).matrix
            if "skew" in faults:
                matrix = matrix.copy()
                matrix[0, -1] += 1e-3
            err = float(np.max(np.abs(matrix + matrix.T)))
            if err > worst:
                worst, offender = err, model.name
    detail = f"worst model: {offender}" if offender else ""
    return CheckResult(
        "structure-skew-symmetry", worst == 0.0, worst, 0.0, samples, detail
    )


def check_discrete_gradients(rng: np.random.Generator, samples: int) -> CheckResult:
    """G(x, x').(x' - x) = H(x') - H(x) and G(x, x) = dH(x) for every rule."""
    tol = 1e-10
    worst = 0.0
    offender = ""
    hamiltonians = sample_hamiltonians(2)
    for i in range(samples):
        H = hamiltonians[i % len(hamiltonians)]
        x = rng.uniform(-1.0, 1.0, 5)
        x_new = x + 0.1 * rng.standard_normal(5)
        for kind in DiscreteGradientKind:
            g = discrete_gradient(kind, H, x, x_new)
            identity = abs(float(g @ (x_new - x)) - (H(x_new) - H(x)))
            consistency = float(
                np.max(np.abs(discrete_gradient(kind, H, x, x) - H.gradient(x)))
            )
            err = max(identity, consistency) / _scale(H, x)
            if err > worst:
                worst, offender = err, f"{kind.value} on {H.name}"
    detail = f"worst: {offender}" if offender else ""
    return CheckResult(
        "discrete-gradient-identities", worst <= tol, worst, tol, samples, detail
    )


def check_closed_form_oracle(rng: np.random.Generator, samples: int) -> CheckResult:
    """Generic Gonzalez steps on the unit oscillator match the explicit formula."""
    tol = 1e-9
    gamma, h = 0.1, 0.1
    model = damped_harmonic_oscillator(gamma)
    cfg = StepperConfig(h=h)
    worst = 0.0
    for _ in range(samples):
        x = rng.uniform(-2.0, 2.0, 3)
        generic = dg_step(model, DiscreteGradientKind.MIDPOINT, x, cfg)
        closed = dg_step_closed_form_dho(gamma, h, x)
        worst = max(worst, float(np.max(np.abs(generic - closed))))
    return CheckResult("closed-form-oracle", worst <= tol, worst, tol, samples)


def check_lemma_identity(rng: np.random.Generator, samples: int) -> CheckResult:
    """
    For H = S1^2/2 + S2^2/2 a Gonzalez step produces exactly
    h k (T2 - T1)^2 / (T1 T2) of entropy at the midpoint temperatures.
    """
    tol = 1e-10
    h, k = 0.1, 1.0
    model = composed_system(
        "quadratic_pair",
        0,
        0,
        lambda x: 0.5 * float(x @ x),
        lambda x: np.array(x, dtype=float),
        k,
    )
    cfg = StepperConfig(h=h)
    worst = 0.0
    for _ in range(samples):
        x = rng.uniform(1.0, 3.0, 2)
        x_new = dg_step(model, DiscreteGradientKind.MIDPOINT, x, cfg)
        t1, t2 = (float(t) for t in 0.5 * (x + x_new))
        predicted = h * k * (t2 - t1) ** 2 / (t1 * t2)
        worst = max(worst, abs(float(np.sum(x_new - x)) - predicted))
    return CheckResult("lemma-identity", worst <= tol, worst, tol, samples)


def check_herglotz_closed_form(rng: np.random.Generator, samples: int) -> CheckResult:
    """Generic Herglotz steps on the unit oscillator match the explicit scheme."""
    tol = 1e-10
    gamma, h = 0.1, 0.1
    model = damped_harmonic_oscillator(gamma)
    ld = midpoint_discrete_lagrangian(model.lagrangian, h)
    worst = 0.0
    for _ in range(samples):
        q0, q1, s0 = rng.uniform(-1.0, 1.0, 3)
        q2, s1 = herglotz_step(ld, np.array([q0]), np.array([q1]), s0)
        q2_ref, s1_ref = herglotz_closed_form_dho(gamma, h, q0, q1, s0)
        worst = max(worst, abs(float(q2[0]) - q2_ref), abs(s1 - s1_ref))
    return CheckResult("herglotz-closed-form", worst <= tol, worst, tol, samples)


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "contact-identities": check_contact_identities,
    "bracket-decomposition": check_bracket_decomposition,
    "structure-skew-symmetry": check_structure_skew,
    "discrete-gradient-identities": check_discrete_gradients,
    "closed-form-oracle": check_closed_form_oracle,
    "lemma-identity": check_lemma_identity,
    "herglotz-closed-form": check_herglotz_closed_form,
}


def run_selftest(
    seed: int = 0, samples: int = 1000, faults: Optional[Sequence[str]] = None
) -> SelftestReport:
    """
    Run every check with a generator seeded by ``seed``.

    Args:
        seed: Random seed
        samples: Random samples per check
        faults: Faults to inject (see FAULTS)

    Raises:
        ContractViolationError: For an unknown fault or non-positive sample count
    """
    faults = list(faults or [])
    for fault in faults:
        if fault not in FAULTS:
            raise ContractViolationError("Unknown fault", list(FAULTS), fault)
    if samples < 1:
        raise ContractViolationError("Sample count must be positive", ">= 1", samples)

    report = SelftestReport(seed=seed, faults=faults)
    for name, check in CHECKS.items():
        rng = np.random.default_rng([seed, len(report.checks)])
        if name == "structure-skew-symmetry":
            result = check(rng, samples, faults)
        else:
            result = check(rng, samples)
        level = "debug" if result.passed else "error"
        getattr(logger, level)(
            "%s: max error %.3e (tolerance %.1e)",
            name,
            result.max_error,
            result.tolerance,
        )
        report.checks.append(result)
    return report
