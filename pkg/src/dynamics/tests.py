import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DomainException, ParameterValidationException
from dynamics import (
    ControlSwitches,
    ControlValue,
    ModelParams,
    State,
    SWITCHES_ALL,
    SWITCHES_OFF,
    denormalize,
    in_invariant_region,
    normalize,
    rhs_controlled,
    rhs_uncontrolled,
    state_jacobian,
    total_population_analytic,
)

FIG3 = ModelParams(
    pi=10, mu=0.5, beta=0.007, b=0.00539, rho=0.21431,
    eps=0.06, p=0.09767, l=0.005234, delta=0.05, lam=0.0084231,
)


def random_params(rng):
    return ModelParams(
        pi=rng.uniform(0.0, 50.0),
        mu=rng.uniform(0.05, 1.0),
        beta=rng.uniform(0.0, 0.1),
        b=rng.uniform(0.0, 0.01),
        rho=rng.uniform(0.0, 0.5),
        eps=rng.uniform(0.0, 0.5),
        p=rng.uniform(0.0, 1.0),
        l=rng.uniform(0.0, 1.0),
        delta=rng.uniform(0.0, 0.5),
        lam=rng.uniform(0.0, 0.05),
    )


class ModelParamsTests(SimpleTestCase):
    def test_values_are_coerced_to_float(self):
        theta = ModelParams(**{**FIG3.to_dict(), 'pi': '50'})
        self.assertEqual(theta.pi, 50.0)
        self.assertEqual(theta.carrying_capacity, 100.0)

    def test_mu_must_be_positive(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ModelParams(**{**FIG3.to_dict(), 'mu': 0})
        self.assertEqual(ctx.exception.field, 'mu')

    def test_probabilities_are_bounded(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ModelParams(**{**FIG3.to_dict(), 'p': 1.5})
        self.assertIn('p ∈ [0,1]', str(ctx.exception))
        with self.assertRaises(ParameterValidationException):
            ModelParams(**{**FIG3.to_dict(), 'l': -0.1})

    def test_rates_are_nonnegative(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ModelParams(**{**FIG3.to_dict(), 'beta': -0.01})
        self.assertEqual(ctx.exception.field, 'beta')

    def test_switches_and_controls(self):
        self.assertEqual(ControlSwitches.validated(1, '0', 1.0), ControlSwitches(1, 0, 1))
        self.assertTrue(SWITCHES_ALL.any_active)
        self.assertFalse(SWITCHES_OFF.any_active)
        with self.assertRaises(ParameterValidationException):
            ControlSwitches.validated(0.5, 0, 0)
        with self.assertRaises(ParameterValidationException):
            ControlValue.validated(0.2, 1.2, 0.0)


class NormalizeTests(SimpleTestCase):
    def test_identity_scaling(self):
        self.assertEqual(normalize(20, 0, 0, 0, 20), State(1.0, 0.0, 0.0, 0.0))

    def test_zero_case(self):
        self.assertEqual(normalize(0, 0, 0, 0, 5), State(0.0, 0.0, 0.0, 0.0))

    def test_direct_division(self):
        self.assertEqual(normalize(10, 2, 3, 5, 20), State(0.5, 0.1, 0.15, 0.25))

    def test_denormalize_inverts(self):
        self.assertEqual(denormalize(State(0.5, 0.1, 0.15, 0.25), 20), State(10.0, 2.0, 3.0, 5.0))

    def test_domain_errors(self):
        with self.assertRaises(DomainException):
            normalize(1, 0, 0, 0, 0)
        with self.assertRaises(DomainException):
            normalize(-1, 0, 0, 0, 10)
        with self.assertRaises(DomainException):
            denormalize(State(1, 0, 0, 0), -2)


class UncontrolledRhsTests(SimpleTestCase):
    def test_rumor_free_equilibrium_is_exact_fixed_point(self):
        rng = np.random.default_rng(20240101)
        for _ in range(1000):
            theta = random_params(rng)
            rfe = State(theta.pi / theta.mu, 0.0, 0.0, 0.0)
            self.assertEqual(float(np.max(np.abs(rhs_uncontrolled(rfe, theta)))), 0.0)

    def test_only_recruitment_survives_at_zero(self):
        dx = rhs_uncontrolled(State(0, 0, 0, 0), FIG3)
        self.assertAlmostEqual(dx[0], 10.0, places=12)
        self.assertEqual(list(dx[1:]), [0.0, 0.0, 0.0])

    def test_hand_evaluation_fig3(self):
        dx = rhs_uncontrolled(State(10, 1, 1, 1), FIG3)
        expected = [4.8761, -0.6575290126, -0.2772762, -0.4412947874]
        for got, want in zip(dx, expected):
            self.assertAlmostEqual(got, want, places=10)

    def test_cancellation(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            theta = random_params(rng)
            x = rng.uniform(0.0, 2.0 * max(theta.carrying_capacity, 1.0), size=4)
            total = float(np.sum(rhs_uncontrolled(x, theta)))
            expected = theta.pi - theta.mu * float(np.sum(x))
            self.assertLessEqual(abs(total - expected), 1e-12 * max(1.0, abs(theta.pi), float(np.sum(np.abs(x)))))

    def test_positivity_of_flow(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            theta = random_params(rng)
            x = rng.uniform(0.0, 10.0, size=4)
            for k in range(4):
                boundary = x.copy()
                boundary[k] = 0.0
                self.assertGreaterEqual(rhs_uncontrolled(boundary, theta)[k], -1e-12)


class ControlledRhsTests(SimpleTestCase):
    def test_zero_controls_match_uncontrolled_bitwise(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            theta = random_params(rng)
            x = rng.uniform(0.0, 20.0, size=4)
            uncontrolled = rhs_uncontrolled(x, theta)
            self.assertTrue(np.array_equal(rhs_controlled(x, theta, ControlValue(0, 0, 0), SWITCHES_ALL), uncontrolled))
            c = ControlValue(*rng.uniform(0.0, 1.0, size=3))
            self.assertTrue(np.array_equal(rhs_controlled(x, theta, c, SWITCHES_OFF), uncontrolled))

    def test_u_moves_mass_from_s_to_z(self):
        theta = ModelParams(pi=1, mu=1, beta=0, b=0, rho=0, eps=0, p=0, l=0, delta=0, lam=0)
        dx = rhs_controlled(State(1, 0, 0, 0), theta, ControlValue(1, 0, 0), SWITCHES_ALL)
        self.assertEqual(dx[0], -1.0)
        self.assertEqual(dx[3], 1.0)

    def test_hand_evaluation_fig3_controlled(self):
        dx = rhs_controlled(State(10, 1, 1, 1), FIG3, ControlValue(0.5, 0.5, 0.5), SWITCHES_ALL)
        expected = [-0.1239, -1.1575290126, -0.7772762, 4.5587052126]
        for got, want in zip(dx, expected):
            self.assertAlmostEqual(got, want, places=10)

    def test_control_mass_accounting(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            theta = random_params(rng)
            x = rng.uniform(0.0, 20.0, size=4)
            c = ControlValue(*rng.uniform(0.0, 1.0, size=3))
            sw = ControlSwitches(*rng.integers(0, 2, size=3))
            total = float(np.sum(rhs_controlled(x, theta, c, sw)))
            expected = theta.pi - theta.mu * float(np.sum(x)) - sw[1] * c.v * x[1] - sw[2] * c.w * x[2]
            self.assertLessEqual(abs(total - expected), 1e-11 * max(1.0, theta.pi, float(np.sum(x))))


class StateJacobianTests(SimpleTestCase):
    def assertMatchesFiniteDifferences(self, x, theta, c, sw):
        analytic = state_jacobian(x, theta, c, sw)
        for k in range(4):
            step = 1e-6 * max(1.0, abs(x[k]))
            plus, minus = np.array(x, dtype=float), np.array(x, dtype=float)
            plus[k] += step
            minus[k] -= step
            column = (rhs_controlled(plus, theta, c, sw) - rhs_controlled(minus, theta, c, sw)) / (2.0 * step)
            np.testing.assert_allclose(analytic[:, k], column, rtol=1e-6, atol=1e-6)

    def test_matches_finite_differences_at_random_states(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            theta = random_params(rng)
            x = rng.uniform(0.0, 20.0, size=4)
            c = ControlValue(*rng.uniform(0.0, 1.0, size=3))
            sw = ControlSwitches(*rng.integers(0, 2, size=3))
            self.assertMatchesFiniteDifferences(x, theta, c, sw)

    def test_matches_finite_differences_at_rfe(self):
        rfe = State(FIG3.carrying_capacity, 0.0, 0.0, 0.0)
        self.assertMatchesFiniteDifferences(rfe, FIG3, ControlValue(0, 0, 0), SWITCHES_OFF)


class TotalPopulationTests(SimpleTestCase):
    def test_fixed_point(self):
        for t in (0.0, 1.0, 50.0):
            self.assertAlmostEqual(float(total_population_analytic(20.0, t, FIG3)), 20.0, places=12)

    def test_initial_condition(self):
        self.assertEqual(float(total_population_analytic(7.5, 0.0, FIG3)), 7.5)

    def test_closed_form_value(self):
        value = float(total_population_analytic(0.0, 2.0, FIG3))
        self.assertAlmostEqual(value, 20.0 * (1.0 - math.exp(-1.0)), places=12)
        self.assertAlmostEqual(value, 12.6424, places=4)

    def test_invariant_region(self):
        self.assertTrue(in_invariant_region(State(20.0, 0.0, 0.0, 0.0), FIG3))
        self.assertTrue(in_invariant_region(State(10.0, 2.0, 3.0, 5.0), FIG3))
        self.assertFalse(in_invariant_region(State(15.0, 2.0, 3.0, 5.0), FIG3))
        self.assertFalse(in_invariant_region(State(10.0, -1e-6, 0.0, 0.0), FIG3))
