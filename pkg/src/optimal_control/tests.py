import numpy as np
from django.test import SimpleTestCase

from core.exceptions import GridMismatchException, ParameterValidationException
from dynamics import (
    ControlSwitches,
    ControlValue,
    ModelParams,
    State,
    SWITCHES_ALL,
    SWITCHES_OFF,
    rhs_controlled,
    rhs_uncontrolled,
)
from integrator import Grid, Trajectory, integrate_forward
from optimal_control import (
    ControlSignal,
    ControlWeights,
    FbsConfig,
    adjoint_rhs,
    characterize_control_nodes,
    characterize_controls,
    control_gradient,
    control_targets,
    forward_backward_sweep,
    hamiltonian,
    objective,
    running_cost,
    solve_adjoints,
    solve_states,
    stationarity_residual,
)

FIG3 = ModelParams(
    pi=10, mu=0.5, beta=0.007, b=0.00539, rho=0.21431,
    eps=0.06, p=0.09767, l=0.005234, delta=0.05, lam=0.0084231,
)
FIG12 = ModelParams(**{**FIG3.to_dict(), 'pi': 50, 'beta': 0.07})
FIG12_SEED = State(99.99, 0.0, 0.01, 0.0)
CONTROL_GRID = Grid.from_step(0.0, 25.0, 0.01)
COARSE_GRID = Grid(0.0, 25.0, 1000)


def random_params(rng):
    return ModelParams(
        pi=rng.uniform(0.1, 50.0),
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


def integrate_i(traj):
    i = traj.states[:, 2]
    return float(traj.grid.h * (i.sum() - 0.5 * (i[0] + i[-1])))


class WeightsAndConfigTests(SimpleTestCase):
    def test_defaults(self):
        self.assertEqual(ControlWeights(), ControlWeights(1.0, 1.0, 1.0))
        self.assertEqual(FbsConfig(), FbsConfig(0.5, 1e-3, 200))

    def test_invalid_values(self):
        with self.assertRaises(ParameterValidationException):
            ControlWeights(a=0)
        with self.assertRaises(ParameterValidationException):
            FbsConfig(relaxation=0)
        with self.assertRaises(ParameterValidationException):
            FbsConfig(max_iter=0)


class ObjectiveTests(SimpleTestCase):
    def trajectory(self, i_value, grid):
        states = np.zeros((grid.size, 4))
        states[:, 2] = i_value
        return Trajectory(grid, states)

    def test_zero_everything(self):
        grid = Grid(0.0, 10.0, 100)
        self.assertEqual(objective(self.trajectory(0.0, grid), ControlSignal.zeros(grid), ControlWeights()), 0.0)

    def test_constant_spreaders(self):
        grid = Grid(0.0, 10.0, 100)
        self.assertAlmostEqual(
            objective(self.trajectory(1.0, grid), ControlSignal.zeros(grid), ControlWeights()), 10.0, places=12,
        )

    def test_constant_control_cost(self):
        grid = Grid(0.0, 4.0, 40)
        values = np.zeros((grid.size, 3))
        values[:, 0] = 1.0
        value = objective(self.trajectory(0.0, grid), ControlSignal(grid, values), ControlWeights(a=2.0))
        self.assertAlmostEqual(value, 4.0, places=12)

    def test_grid_mismatch(self):
        with self.assertRaises(GridMismatchException):
            objective(self.trajectory(0.0, Grid(0.0, 1.0, 10)), ControlSignal.zeros(Grid(0.0, 1.0, 20)), ControlWeights())


class HamiltonianTests(SimpleTestCase):
    def test_zero_costate_zero_control(self):
        x = State(3.0, 1.0, 0.7, 2.0)
        self.assertEqual(hamiltonian(x, np.zeros(4), ControlValue(), FIG3, ControlWeights(), SWITCHES_ALL), 0.7)

    def test_rfe(self):
        rfe = State(20.0, 0.0, 0.0, 0.0)
        self.assertEqual(hamiltonian(rfe, np.array([1.0, 0, 0, 0]), ControlValue(), FIG3, ControlWeights(), SWITCHES_ALL), 0.0)

    def test_compositional(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            theta = random_params(rng)
            x, p = rng.uniform(0, 10, size=4), rng.uniform(-5, 5, size=4)
            c = ControlValue(*rng.uniform(0, 1, size=3))
            wts = ControlWeights(*rng.uniform(0.1, 5, size=3))
            expected = running_cost(x[2], c, wts) + float(np.dot(p, rhs_controlled(x, theta, c, SWITCHES_ALL)))
            self.assertAlmostEqual(hamiltonian(x, p, c, theta, wts, SWITCHES_ALL), expected, places=9)


class AdjointRhsTests(SimpleTestCase):
    def test_zero_costate(self):
        x = State(3.0, 1.0, 0.7, 2.0)
        dp = adjoint_rhs(x, np.zeros(4), ControlValue(0.3, 0.2, 0.1), FIG3, ControlWeights(), SWITCHES_ALL)
        np.testing.assert_array_equal(dp, [0.0, 0.0, -1.0, 0.0])

    def test_decoupled_when_contact_rates_vanish(self):
        theta = ModelParams(**{**FIG3.to_dict(), 'beta': 0, 'b': 0, 'rho': 0, 'lam': 0})
        mu, eps, delta = theta.mu, theta.eps, theta.delta
        p = np.array([0.3, -1.2, 2.0, 0.7])
        dp = adjoint_rhs(State(5.0, 1.0, 2.0, 3.0), p, ControlValue(), theta, ControlWeights(), SWITCHES_OFF)
        expected = [
            mu * p[0],
            (eps + mu) * p[1] - eps * p[2],
            -1.0 + (delta + mu) * p[2] - delta * p[3],
            mu * p[3],
        ]
        np.testing.assert_allclose(dp, expected, rtol=1e-14, atol=1e-14)

    def test_matches_finite_differences_of_hamiltonian(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            theta = random_params(rng)
            x, p = rng.uniform(0, 10, size=4), rng.uniform(-5, 5, size=4)
            c = ControlValue(*rng.uniform(0, 1, size=3))
            wts = ControlWeights(*rng.uniform(0.1, 5, size=3))
            sw = ControlSwitches(*rng.integers(0, 2, size=3))
            analytic = adjoint_rhs(x, p, c, theta, wts, sw)
            for k in range(4):
                step = 1e-6 * max(1.0, abs(x[k]))
                plus, minus = x.copy(), x.copy()
                plus[k] += step
                minus[k] -= step
                derivative = (hamiltonian(plus, p, c, theta, wts, sw) - hamiltonian(minus, p, c, theta, wts, sw)) / (2 * step)
                self.assertLessEqual(abs(analytic[k] + derivative), 1e-5 * max(1.0, abs(analytic[k])))

    def test_control_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            theta = random_params(rng)
            x, p = rng.uniform(0, 10, size=4), rng.uniform(-5, 5, size=4)
            c = rng.uniform(0, 1, size=3)
            wts = ControlWeights(*rng.uniform(0.1, 5, size=3))
            sw = ControlSwitches(*rng.integers(0, 2, size=3))
            analytic = control_gradient(x, p, c, wts, sw)
            for k in range(3):
                plus, minus = c.copy(), c.copy()
                plus[k] += 1e-6
                minus[k] -= 1e-6
                derivative = (hamiltonian(x, p, plus, theta, wts, sw) - hamiltonian(x, p, minus, theta, wts, sw)) / 2e-6
                self.assertLessEqual(abs(analytic[k] - derivative), 1e-5 * max(1.0, abs(analytic[k])))


class CharacterizationTests(SimpleTestCase):
    def test_equal_costates_give_zero_u(self):
        c = characterize_controls(State(5.0, 1.0, 1.0, 0.0), np.array([0.4, 0.0, 0.0, 0.4]), ControlWeights(), SWITCHES_ALL)
        self.assertEqual(c.u, 0.0)

    def test_upper_clamp(self):
        c = characterize_controls(State(1.0, 5.0, 0.0, 0.0), np.array([0.0, 1.0, 0.0, 0.0]), ControlWeights(), SWITCHES_ALL)
        self.assertEqual(c.v, 1.0)

    def test_direct_substitution(self):
        c = characterize_controls(State(2.0, 0.0, 0.0, 0.0), np.array([0.5, 0.0, 0.0, 0.2]), ControlWeights(), SWITCHES_ALL)
        self.assertAlmostEqual(c.u, 0.6, places=15)

    def test_switches_zero_out_controls(self):
        c = characterize_controls(State(2.0, 1.0, 1.0, 0.0), np.array([0.5, 0.5, 0.5, 0.0]), ControlWeights(), SWITCHES_OFF)
        self.assertEqual(c, ControlValue(0.0, 0.0, 0.0))

    def test_interior_values_are_stationary(self):
        x, p = State(2.0, 1.0, 1.5, 0.0), np.array([0.3, 0.4, 0.2, 0.1])
        c = characterize_controls(x, p, ControlWeights(), SWITCHES_ALL)
        self.assertTrue(all(0.0 < value < 1.0 for value in c))
        np.testing.assert_allclose(stationarity_residual(x, p, c, ControlWeights(), SWITCHES_ALL), 0.0, atol=1e-15)

    def test_node_map_agrees_with_scalar_map(self):
        rng = np.random.default_rng(24)
        states, adjoints = rng.uniform(0, 3, size=(50, 4)), rng.uniform(-2, 2, size=(50, 4))
        wts = ControlWeights(1.0, 2.0, 0.5)
        nodes = characterize_control_nodes(states, adjoints, wts, SWITCHES_ALL)
        for k in range(50):
            np.testing.assert_allclose(nodes[k], characterize_controls(states[k], adjoints[k], wts, SWITCHES_ALL), rtol=1e-15)


class ForwardBackwardSweepTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.baseline = integrate_forward(lambda t, x: rhs_uncontrolled(x, FIG12), CONTROL_GRID, FIG12_SEED)
        cls.result = forward_backward_sweep(FIG12, FIG12_SEED, CONTROL_GRID, ControlWeights(), SWITCHES_ALL, FbsConfig())

    def test_converges_within_budget(self):
        self.assertTrue(self.result.converged)
        self.assertLessEqual(self.result.iterations, 200)
        self.assertEqual(len(self.result.objective_history), self.result.iterations)
        self.assertEqual(len(self.result.change_history), self.result.iterations)
        self.assertLessEqual(self.result.last_change, 1e-3)

    def test_objective_never_increases(self):
        self.assertTrue(self.result.descent_ok)
        history = np.array(self.result.objective_history)
        self.assertTrue(np.all(np.diff(history) <= 0.0))

    def test_controls_are_admissible(self):
        values = self.result.controls.values
        self.assertGreaterEqual(values.min(), 0.0)
        self.assertLessEqual(values.max(), 1.0)

    def test_transversality(self):
        np.testing.assert_array_equal(self.result.adjoints.adjoints[-1], [0.0, 0.0, 0.0, 0.0])

    def test_result_matches_returned_controls(self):
        controls = self.result.controls
        states = solve_states(FIG12, FIG12_SEED, CONTROL_GRID, controls, SWITCHES_ALL)
        adjoints = solve_adjoints(FIG12, CONTROL_GRID, states, controls, ControlWeights(), SWITCHES_ALL)
        np.testing.assert_array_equal(states.states, self.result.states.states)
        np.testing.assert_array_equal(adjoints.adjoints, self.result.adjoints.adjoints)
        np.testing.assert_array_equal(self.result.adjoints.controls, controls.values)
        self.assertEqual(objective(states, controls, ControlWeights()), self.result.objective)

    def test_controls_lower_the_objective(self):
        j_uncontrolled = objective(self.baseline, ControlSignal.zeros(CONTROL_GRID), ControlWeights())
        self.assertAlmostEqual(self.result.objective_history[0], j_uncontrolled, places=9)
        self.assertLess(self.result.objective, j_uncontrolled)
        self.assertLess(integrate_i(self.result.states), integrate_i(self.baseline))

    def test_spreaders_stay_below_baseline_after_transient(self):
        after = CONTROL_GRID.nodes() >= 1.0
        controlled = self.result.states.column('i')[after]
        uncontrolled = self.baseline.column('i')[after]
        self.assertTrue(np.all(controlled <= uncontrolled + 1e-9))

    def test_summary(self):
        summary = self.result.summary()
        self.assertEqual(summary['iterations'], self.result.iterations)
        self.assertEqual(summary['objective'], self.result.objective)
        self.assertTrue(summary['converged'])
        self.assertTrue(summary['descent_ok'])


class SweepStationarityTests(SimpleTestCase):
    def test_stationarity_at_interior_nodes(self):
        result = forward_backward_sweep(
            FIG12, FIG12_SEED, CONTROL_GRID, ControlWeights(), SWITCHES_ALL, FbsConfig(tol=1e-5),
        )
        self.assertTrue(result.converged)
        self.assertLessEqual(result.iterations, 200)
        states, adjoints = result.states.states, result.adjoints.adjoints
        for x, p, c in zip(states, adjoints, result.controls.values):
            gradient = np.abs(control_gradient(x, p, c, ControlWeights(), SWITCHES_ALL))
            interior = (c > 0.0) & (c < 1.0)
            self.assertTrue(np.all(gradient[interior] <= 1e-4))

    def test_targets_clamp_to_characterized_controls(self):
        rng = np.random.default_rng(11)
        states, adjoints = rng.uniform(0, 3, size=(40, 4)), rng.uniform(-2, 2, size=(40, 4))
        wts = ControlWeights(0.5, 1.0, 2.0)
        targets = control_targets(states, adjoints, wts, SWITCHES_ALL)
        nodes = characterize_control_nodes(states, adjoints, wts, SWITCHES_ALL)
        np.testing.assert_array_equal(np.clip(targets, 0.0, 1.0) + 0.0, nodes)
        self.assertGreater(np.abs(targets).max(), 1.0)


class SweepScenarioTests(SimpleTestCase):
    def run_case(self, switches, grid=COARSE_GRID, cfg=None):
        return forward_backward_sweep(FIG12, FIG12_SEED, grid, ControlWeights(), switches, cfg or FbsConfig())

    def baseline(self, grid=COARSE_GRID):
        return integrate_forward(lambda t, x: rhs_uncontrolled(x, FIG12), grid, FIG12_SEED)

    def test_switches_off_is_trivial(self):
        result = self.run_case(SWITCHES_OFF, grid=CONTROL_GRID)
        self.assertTrue(result.converged)
        self.assertEqual(result.iterations, 1)
        np.testing.assert_array_equal(result.controls.values, 0.0)
        self.assertEqual(result.objective, integrate_i(self.baseline(CONTROL_GRID)))

    def test_w_only_converges_at_defaults(self):
        result = self.run_case(ControlSwitches(0, 0, 1), grid=CONTROL_GRID)
        self.assertTrue(result.converged)
        self.assertLessEqual(result.iterations, 200)
        self.assertTrue(result.descent_ok)
        np.testing.assert_array_equal(result.controls.component('u'), 0.0)
        np.testing.assert_array_equal(result.controls.component('v'), 0.0)
        self.assertLess(result.objective, integrate_i(self.baseline(CONTROL_GRID)))

    def test_small_relaxation_converges(self):
        result = self.run_case(SWITCHES_ALL, cfg=FbsConfig(relaxation=0.2))
        self.assertTrue(result.converged)
        self.assertTrue(result.descent_ok)

    def test_max_iter_reports_last_iterate(self):
        result = self.run_case(SWITCHES_ALL, cfg=FbsConfig(max_iter=3))
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 3)
        states = solve_states(FIG12, FIG12_SEED, COARSE_GRID, result.controls, SWITCHES_ALL)
        np.testing.assert_array_equal(states.states, result.states.states)
        self.assertEqual(objective(states, result.controls, ControlWeights()), result.objective)
        self.assertEqual(result.objective, result.objective_history[-1])

    def test_u_only_raises_skeptic_peak(self):
        result = self.run_case(ControlSwitches(1, 0, 0))
        self.assertTrue(result.converged)
        self.assertGreater(result.states.peak('z')[0], self.baseline().peak('z')[0])

    def test_v_only_lowers_spreaders(self):
        result = self.run_case(ControlSwitches(0, 1, 0))
        self.assertTrue(result.converged)
        self.assertLess(integrate_i(result.states), integrate_i(self.baseline()))

    def test_determinism(self):
        first = self.run_case(ControlSwitches(0, 0, 1))
        second = self.run_case(ControlSwitches(0, 0, 1))
        self.assertTrue(np.array_equal(first.controls.values, second.controls.values))
        self.assertEqual(first.objective, second.objective)
        self.assertEqual(first.iterations, second.iterations)
