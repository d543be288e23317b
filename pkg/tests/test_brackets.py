"""Tests for brackets on the contact phase space."""

import numpy as np
import pytest

from contact_thermo.cli.selftest import sample_hamiltonians
from contact_thermo.core.exceptions import ContractViolationError
from contact_thermo.core.types import BracketKind, ScalarField
from contact_thermo.geometry import (
    bracket,
    bracket_field,
    directional_derivative,
    evolution_vf,
    liouville_derivative,
    single_generator_rate,
)

X = np.array([1.0, 2.0, 0.0])


class TestBracketValues:
    """Brackets of the oscillator energy with the entropy S at (1, 2, 0)."""

    def test_cartan_is_entropy_production(self, oscillator_field, entropy_field):
        value = bracket("cartan", oscillator_field, entropy_field, X)
        assert value == pytest.approx(4.0)

    def test_poisson_part_vanishes(self, oscillator_field, entropy_field):
        assert bracket("poisson0", oscillator_field, entropy_field, X) == 0.0

    def test_delta_q_part(self, oscillator_field, entropy_field):
        assert bracket(
            BracketKind.DELTA_Q, oscillator_field, entropy_field, X
        ) == pytest.approx(4.0)

    def test_jacobi(self, oscillator_field, entropy_field):
        # 4 - H * 1 + S * 0.1 with H = 2.5, S = 0
        value = bracket("jacobi", oscillator_field, entropy_field, X)
        assert value == pytest.approx(1.5)

    def test_unknown_kind(self, oscillator_field, entropy_field):
        with pytest.raises(ContractViolationError):
            bracket("lie", oscillator_field, entropy_field, X)


class TestBracketIdentities:
    """Identities at random points for the sample Hamiltonians."""

    @pytest.mark.parametrize("kind", list(BracketKind))
    def test_antisymmetry(self, kind, rng):
        fields = sample_hamiltonians(2)
        for _ in range(10):
            x = rng.uniform(-1, 1, 5)
            for f in fields:
                for g in fields:
                    assert bracket(kind, f, g, x) == pytest.approx(
                        -bracket(kind, g, f, x), abs=1e-12
                    )

    def test_cartan_splits_into_parts(self, rng):
        fields = sample_hamiltonians(2)
        for _ in range(10):
            x = rng.uniform(-1, 1, 5)
            for f in fields:
                for g in fields:
                    total = bracket("poisson0", f, g, x) + bracket("deltaQ", f, g, x)
                    assert bracket("cartan", f, g, x) == pytest.approx(total, abs=1e-12)

    def test_cartan_is_derivative_along_evolution(self, rng):
        fields = sample_hamiltonians(2)
        for _ in range(10):
            x = rng.uniform(-1, 1, 5)
            for H in fields:
                for f in fields:
                    along = directional_derivative(f, x, evolution_vf(H, x))
                    assert bracket("cartan", H, f, x) == pytest.approx(along, abs=1e-12)

    def test_single_generator_rate(self, oscillator_field, entropy_field):
        rate = single_generator_rate(entropy_field, oscillator_field, X)
        assert rate == pytest.approx(4.0)

    def test_energy_is_conserved_by_its_own_evolution(self, rng):
        for H in sample_hamiltonians(2):
            x = rng.uniform(-1, 1, 5)
            assert single_generator_rate(H, H, x) == pytest.approx(0.0, abs=1e-12)


class TestBracketHelpers:
    def test_liouville_derivative(self, oscillator_field):
        assert liouville_derivative(oscillator_field, X) == pytest.approx(4.0)

    def test_bracket_field(self, oscillator_field, entropy_field):
        field = bracket_field("jacobi", oscillator_field, entropy_field)
        assert isinstance(field, ScalarField)
        assert "jacobi" in field.name
        assert field(X) == pytest.approx(1.5)
        assert not field.has_analytic_gradient

    def test_bracket_field_gradient_by_finite_differences(
        self, oscillator_field, entropy_field
    ):
        # [H, S] = p^2, so the gradient is (0, 2p, 0)
        field = bracket_field("cartan", oscillator_field, entropy_field)
        np.testing.assert_allclose(field.gradient(X), [0.0, 4.0, 0.0], atol=1e-6)


N = 2
DIM = 2 * N + 1
Q, P, S = slice(0, N), slice(N, 2 * N), 2 * N


class Quadratic:
    """f(x) = c + b . x + x . A x / 2 with symmetric A."""

    def __init__(self, rng):
        a = rng.normal(size=(DIM, DIM))
        self.A = 0.5 * (a + a.T)
        self.b = rng.normal(size=DIM)
        self.c = rng.normal()
        self.field = ScalarField(self.value, self.gradient)

    def value(self, x):
        return self.c + self.b @ x + 0.5 * x @ self.A @ x

    def gradient(self, x):
        return self.b + self.A @ x


def exact_bracket_field(kind, g, h):
    """{g, h} of two quadratics with its exact gradient."""

    def gradient(x):
        dg, dh = g.gradient(x), h.gradient(x)
        out = (
            g.A[P].T @ dh[Q]
            + h.A[Q].T @ dg[P]
            - g.A[Q].T @ dh[P]
            - h.A[P].T @ dg[Q]
        )
        if kind is BracketKind.POISSON0:
            return out
        p = x[P]
        # D(f) = p . f_p - f and its gradient A[P]^T p + f_p on P - grad f
        d_g = p @ dg[P] - g.value(x)
        d_h = p @ dh[P] - h.value(x)
        grad_d_g = g.A[P].T @ p - dg
        grad_d_g[P] += dg[P]
        grad_d_h = h.A[P].T @ p - dh
        grad_d_h[P] += dh[P]
        return out + h.A[S] * d_g + dh[S] * grad_d_g - g.A[S] * d_h - dg[S] * grad_d_h

    return ScalarField(lambda x: bracket(kind, g.field, h.field, x), gradient)


LIE_KINDS = [BracketKind.JACOBI, BracketKind.POISSON0]


class TestJacobiIdentity:
    """The Jacobi and canonical Poisson brackets on random quadratic polynomials."""

    @pytest.mark.parametrize("kind", LIE_KINDS)
    def test_exact_gradient_matches_finite_differences(self, kind, rng):
        g, h = Quadratic(rng), Quadratic(rng)
        field = exact_bracket_field(kind, g, h)
        x = rng.uniform(-1, 1, DIM)
        fd = bracket_field(kind, g.field, h.field).gradient(x)
        np.testing.assert_allclose(field.gradient(x), fd, rtol=1e-6, atol=1e-6)

    @pytest.mark.parametrize("kind", LIE_KINDS)
    def test_cyclic_sum_vanishes(self, kind, rng):
        for _ in range(20):
            f, g, h = Quadratic(rng), Quadratic(rng), Quadratic(rng)
            x = rng.uniform(-1, 1, DIM)
            terms = [
                bracket(kind, f.field, exact_bracket_field(kind, g, h), x),
                bracket(kind, g.field, exact_bracket_field(kind, h, f), x),
                bracket(kind, h.field, exact_bracket_field(kind, f, g), x),
            ]
            scale = max(1.0, sum(abs(t) for t in terms))
            assert sum(terms) == pytest.approx(0.0, abs=1e-12 * scale)


class TestBilinearity:
    @pytest.mark.parametrize("kind", list(BracketKind))
    def test_linear_in_each_argument(self, kind, rng):
        for _ in range(10):
            f, g, h = (Quadratic(rng).field for _ in range(3))
            a, b = rng.normal(size=2)
            combo = ScalarField(
                lambda x: a * f(x) + b * g(x),
                lambda x: a * f.gradient(x) + b * g.gradient(x),
            )
            x = rng.uniform(-1, 1, DIM)
            left = a * bracket(kind, f, h, x) + b * bracket(kind, g, h, x)
            right = a * bracket(kind, h, f, x) + b * bracket(kind, h, g, x)
            tol = 1e-12 * max(1.0, abs(left), abs(right))
            assert bracket(kind, combo, h, x) == pytest.approx(left, abs=tol)
            assert bracket(kind, h, combo, x) == pytest.approx(right, abs=tol)
