import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import (
    DomainException,
    GridMismatchException,
    IntegrationBlowupException,
    ParameterValidationException,
    PositivityViolationException,
)
from dynamics import ModelParams, State, rhs_uncontrolled, total_population_analytic
from integrator import (
    ControlSignal,
    Grid,
    Trajectory,
    integrate_adjoint_backward,
    integrate_forward,
    rk4_step,
)

FIG3 = ModelParams(
    pi=10, mu=0.5, beta=0.007, b=0.00539, rho=0.21431,
    eps=0.06, p=0.09767, l=0.005234, delta=0.05, lam=0.0084231,
)


def fig3_rhs(t, x):
    return rhs_uncontrolled(x, FIG3)


class GridTests(SimpleTestCase):
    def test_from_step(self):
        grid = Grid.from_step(0.0, 100.0, 0.01)
        self.assertEqual(grid.n_steps, 10000)
        self.assertEqual(grid.size, 10001)
        self.assertAlmostEqual(grid.h, 0.01, places=15)

    def test_nodes(self):
        grid = Grid(1.0, 2.0, 4)
        np.testing.assert_array_equal(grid.nodes(), [1.0, 1.25, 1.5, 1.75, 2.0])

    def test_invalid_grids(self):
        with self.assertRaises(DomainException):
            Grid(1.0, 1.0, 10)
        with self.assertRaises(DomainException):
            Grid(0.0, 1.0, 0)
        with self.assertRaises(DomainException):
            Grid.from_step(0.0, 1.0, 0.0)


class TrajectoryTests(SimpleTestCase):
    def test_row_count_must_match_grid(self):
        with self.assertRaises(GridMismatchException):
            Trajectory(Grid(0.0, 1.0, 4), np.zeros((4, 4)))

    def test_frame_columns(self):
        grid = Grid(0.0, 1.0, 2)
        traj = Trajectory(grid, np.ones((3, 4)), controls=np.zeros((3, 3)), adjoints=np.zeros((3, 4)))
        self.assertEqual(
            list(traj.to_frame().columns),
            ['t', 's', 'e', 'i', 'z', 'u', 'v', 'w', 'p1', 'p2', 'p3', 'p4'],
        )
        self.assertEqual(list(Trajectory(grid, np.ones((3, 4))).to_frame().columns), ['t', 's', 'e', 'i', 'z'])

    def test_peak_and_interpolation(self):
        grid = Grid(0.0, 2.0, 2)
        states = np.array([[1.0, 0.0, 0.0, 0.0], [0.5, 0.0, 2.0, 1.0], [0.0, 0.0, 1.0, 3.0]])
        traj = Trajectory(grid, states)
        self.assertEqual(traj.peak('i'), (2.0, 1.0))
        self.assertEqual(traj.peak('z'), (3.0, 2.0))
        np.testing.assert_allclose(traj.state_at(0.5), [0.75, 0.0, 1.0, 0.5])
        self.assertEqual(traj.state(2), State(0.0, 0.0, 1.0, 3.0))


class ControlSignalTests(SimpleTestCase):
    def test_values_must_be_admissible(self):
        grid = Grid(0.0, 1.0, 1)
        with self.assertRaises(ParameterValidationException):
            ControlSignal(grid, np.array([[0.0, 0.0, 0.0], [1.5, 0.0, 0.0]]))
        with self.assertRaises(GridMismatchException):
            ControlSignal(grid, np.zeros((3, 3)))

    def test_interpolates_between_nodes(self):
        signal = ControlSignal(Grid(0.0, 1.0, 1), np.array([[0.0, 1.0, 0.2], [1.0, 0.0, 0.2]]))
        np.testing.assert_allclose(signal.at(0.25), [0.25, 0.75, 0.2])
        np.testing.assert_array_equal(signal.component('w'), [0.2, 0.2])


class Rk4StepTests(SimpleTestCase):
    def test_zero_field_leaves_state_unchanged(self):
        x = np.array([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(rk4_step(lambda t, y: np.zeros(4), 0.0, x, 0.1), x)

    def test_exponential_decay_error_is_fifth_order(self):
        mu, h = 0.5, 0.1
        x = rk4_step(lambda t, y: -mu * y, 0.0, np.array([1.0]), h)
        self.assertLess(abs(x[0] - math.exp(-mu * h)), (mu * h) ** 5 / 100.0)

    def test_rfe_is_preserved_exactly(self):
        rfe = np.array([20.0, 0.0, 0.0, 0.0])
        np.testing.assert_array_equal(rk4_step(fig3_rhs, 0.0, rfe, 0.01), rfe)

    def test_zero_step_rejected(self):
        with self.assertRaises(DomainException):
            rk4_step(fig3_rhs, 0.0, np.ones(4), 0.0)

    def test_blowup_carries_time(self):
        with self.assertRaises(IntegrationBlowupException) as ctx:
            rk4_step(lambda t, y: np.full(4, np.inf), 1.0, np.ones(4), 0.5)
        self.assertEqual(ctx.exception.t, 1.5)


class IntegrateForwardTests(SimpleTestCase):
    def test_rfe_gives_constant_trajectory(self):
        traj = integrate_forward(fig3_rhs, Grid(0.0, 10.0, 1000), State(20.0, 0.0, 0.0, 0.0))
        self.assertTrue(np.all(traj.states == np.array([20.0, 0.0, 0.0, 0.0])))

    def test_conservation_against_closed_form(self):
        for x0 in (State(19.99, 0.0, 0.01, 0.0), State(5.0, 1.0, 2.0, 0.5)):
            grid = Grid.from_step(0.0, 100.0, 0.01)
            traj = integrate_forward(fig3_rhs, grid, x0)
            analytic = total_population_analytic(sum(x0), traj.times, FIG3)
            self.assertLessEqual(float(np.max(np.abs(traj.totals - analytic))), 1e-8)

    def test_fig3_spreaders_die_out_and_skeptics_rise_then_decay(self):
        traj = integrate_forward(fig3_rhs, Grid.from_step(0.0, 100.0, 0.01), State(19.99, 0.0, 0.01, 0.0))
        self.assertLess(traj.states[-1, 2], 1e-3)
        self.assertLess(traj.states[-1, 1], 1e-3)
        z_peak, z_peak_time = traj.peak('z')
        self.assertGreater(z_peak, 0.0)
        self.assertGreater(z_peak_time, 0.0)
        self.assertLess(traj.states[-1, 3], z_peak)

    def test_rk4_order_under_step_halving(self):
        x0 = State(5.0, 1.0, 2.0, 0.5)
        n0 = sum(x0)
        errors = []
        for h in (0.2, 0.1):
            traj = integrate_forward(fig3_rhs, Grid.from_step(0.0, 4.0, h), x0)
            errors.append(abs(traj.totals[-1] - float(total_population_analytic(n0, 4.0, FIG3))))
        ratio = errors[0] / errors[1]
        self.assertGreaterEqual(ratio, 12.0)
        self.assertLessEqual(ratio, 20.0)

    def test_rk4_order_against_fine_reference(self):
        x0 = State(5.0, 1.0, 2.0, 0.5)
        reference = integrate_forward(fig3_rhs, Grid(0.0, 10.0, 64 * 50), x0).states[-1]
        coarse = integrate_forward(fig3_rhs, Grid(0.0, 10.0, 50), x0).states[-1]
        fine = integrate_forward(fig3_rhs, Grid(0.0, 10.0, 100), x0).states[-1]
        ratio = np.max(np.abs(coarse - reference)) / np.max(np.abs(fine - reference))
        self.assertGreaterEqual(ratio, 12.0)
        self.assertLessEqual(ratio, 20.0)

    def test_determinism(self):
        grid = Grid.from_step(0.0, 20.0, 0.01)
        first = integrate_forward(fig3_rhs, grid, State(19.99, 0.0, 0.01, 0.0))
        second = integrate_forward(fig3_rhs, grid, State(19.99, 0.0, 0.01, 0.0))
        self.assertTrue(np.array_equal(first.states, second.states))

    def test_small_negative_is_clamped(self):
        traj = integrate_forward(
            lambda t, x: np.array([-(1.0 + 1e-13), 0.0, 0.0, 0.0]),
            Grid(0.0, 1.0, 1),
            State(1.0, 0.0, 0.0, 0.0),
        )
        self.assertEqual(traj.states[-1, 0], 0.0)

    def test_positivity_violation_reports_component(self):
        with self.assertRaises(PositivityViolationException) as ctx:
            integrate_forward(lambda t, x: np.array([-1.0, 0.0, 0.0, 0.0]), Grid(0.0, 1.0, 1), State(0.5, 0, 0, 0))
        self.assertEqual(ctx.exception.component, 's')
        self.assertEqual(ctx.exception.t, 1.0)
        self.assertAlmostEqual(ctx.exception.value, -0.5)


class IntegrateAdjointBackwardTests(SimpleTestCase):
    def setUp(self):
        self.grid = Grid(0.0, 5.0, 500)
        self.states = Trajectory(self.grid, np.zeros((self.grid.size, 4)))

    def test_constant_source_gives_time_to_go(self):
        traj = integrate_adjoint_backward(lambda t, p, x, c: np.array([0.0, 0.0, -1.0, 0.0]), self.grid, self.states)
        np.testing.assert_allclose(traj.adjoints[:, 2], 5.0 - self.grid.nodes(), atol=1e-12)
        np.testing.assert_array_equal(traj.adjoints[:, [0, 1, 3]], 0.0)

    def test_zero_field_gives_zero_adjoints(self):
        traj = integrate_adjoint_backward(lambda t, p, x, c: np.zeros(4), self.grid, self.states)
        np.testing.assert_array_equal(traj.adjoints, 0.0)

    def test_transversality(self):
        traj = integrate_adjoint_backward(lambda t, p, x, c: np.array([1.0, -2.0, 3.0, 0.5]), self.grid, self.states)
        np.testing.assert_array_equal(traj.adjoints[-1], [0.0, 0.0, 0.0, 0.0])

    def test_grid_mismatch(self):
        with self.assertRaises(GridMismatchException):
            integrate_adjoint_backward(lambda t, p, x, c: np.zeros(4), Grid(0.0, 5.0, 100), self.states)
        with self.assertRaises(GridMismatchException):
            integrate_adjoint_backward(
                lambda t, p, x, c: np.zeros(4), self.grid, self.states, ControlSignal.zeros(Grid(0.0, 5.0, 100)),
            )
