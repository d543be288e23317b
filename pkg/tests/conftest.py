"""
Shared pytest fixtures for contact-thermo tests.
"""

import logging
import textwrap

import numpy as np
import pytest
from click.testing import CliRunner

from contact_thermo.core.types import ScalarField, StepperConfig
from contact_thermo.systems import (
    coupled_spring_potential,
    damped_harmonic_oscillator,
    thermo_particles,
    thermo_springs,
)

GAMMA = 0.1


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Undo handlers installed by setup_logging so caplog keeps working."""
    yield
    logger = logging.getLogger("contact_thermo")
    for handler in list(logger.handlers):
        handler.close()
        logger.removeHandler(handler)
    logger.propagate = True
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def dho():
    """Unit damped oscillator H = p^2/2 + q^2/2 + 0.1 S."""
    return damped_harmonic_oscillator(GAMMA)


@pytest.fixture
def dho_state():
    """Initial state of the damped oscillator experiment, H = 50."""
    return np.array([0.0, 10.0, 0.0])


@pytest.fixture
def particles():
    """Two thermal particles with unit capacities and conductivity."""
    return thermo_particles(1.0, 1.0, 1.0)


@pytest.fixture
def particles_state():
    """Particles at 273.15 K and 300 K."""
    return np.log(np.array([273.15, 300.0]))


@pytest.fixture
def springs():
    """Coupled springs carrying heat."""
    return thermo_springs(
        1.0, 1.0, 1.0, 1.0, 1.0, coupled_spring_potential(1.0, 1.0, 0.5)
    )


@pytest.fixture
def springs_state():
    return np.array([1.0, 0.0, np.log(273.15), 0.0, 0.0, np.log(300.0)])


@pytest.fixture
def cfg():
    """Default stepper settings at h = 0.1."""
    return StepperConfig(h=0.1)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def oscillator_field():
    """The damped oscillator energy as a ScalarField."""

    def value(x):
        return 0.5 * x[1] ** 2 + 0.5 * x[0] ** 2 + GAMMA * x[2]

    def gradient(x):
        return np.array([x[0], x[1], GAMMA])

    return ScalarField(value, gradient, "H")


@pytest.fixture
def entropy_field():
    """f(q, p, S) = S."""
    return ScalarField(lambda x: x[2], lambda x: np.array([0.0, 0.0, 1.0]), "S")


@pytest.fixture
def cli_runner():
    """Click CLI test runner."""
    return CliRunner()


TINY_EXPERIMENT = """\
experiment:
  name: tiny
model:
  name: damped
  gamma: 0.1
method: dg:gonzalez
initial:
  q: [0.0]
  p: [1.0]
  S: 0.0
integration:
  h: 0.1
  n_steps: 10
"""


@pytest.fixture
def tiny_experiment():
    """A small valid experiment; line 4 holds model.name, line 6 the method."""
    return TINY_EXPERIMENT


@pytest.fixture
def write_config(tmp_path):
    """Write experiment YAML text to a file and return its path."""

    def _write(text, name="experiment.yaml"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding="utf-8")
        return path

    return _write
