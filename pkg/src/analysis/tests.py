import numpy as np
from django.test import SimpleTestCase

from analysis import (
    Verdict,
    a2_closed_form,
    cubic_coefficients,
    endemic_cubic,
    endemic_equilibrium,
    jacobian_rfe,
    newton_steady_state,
    next_generation,
    r0,
    rfe_eigenvalues,
    routh_hurwitz,
    rumor_free_equilibrium,
    solve_cubic,
    spreader_decay_check,
    stability_report,
)
from core.exceptions import DomainException, ParameterValidationException
from dynamics import ModelParams, State, rhs_uncontrolled
from integrator import Grid, integrate_forward

FIG3 = ModelParams(
    pi=10, mu=0.5, beta=0.007, b=0.00539, rho=0.21431,
    eps=0.06, p=0.09767, l=0.005234, delta=0.05, lam=0.0084231,
)
FIG12 = ModelParams(**{**FIG3.to_dict(), 'pi': 50, 'beta': 0.07})


def with_params(theta, **changes):
    return ModelParams(**{**theta.to_dict(), **changes})


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


class RumorFreeEquilibriumTests(SimpleTestCase):
    def test_preset_sets(self):
        self.assertEqual(rumor_free_equilibrium(FIG3), State(20.0, 0.0, 0.0, 0.0))
        self.assertEqual(rumor_free_equilibrium(FIG12), State(100.0, 0.0, 0.0, 0.0))

    def test_no_recruitment(self):
        self.assertEqual(rumor_free_equilibrium(with_params(FIG3, pi=0)), State(0.0, 0.0, 0.0, 0.0))


class NextGenerationTests(SimpleTestCase):
    def test_det_v(self):
        V = next_generation(FIG3).V
        self.assertAlmostEqual(V[0, 0] * V[1, 1] - V[0, 1] * V[1, 0], 0.308, places=12)
        self.assertEqual(V[0, 1], 0.0)
        self.assertGreater(V[0, 0], 0.0)
        self.assertGreater(V[1, 1], 0.0)

    def test_full_infection_probability_zeroes_first_row(self):
        K = next_generation(with_params(FIG3, p=1.0)).K
        np.testing.assert_array_equal(K[0], [0.0, 0.0])

    def test_k_matches_closed_forms(self):
        theta = FIG3
        s0 = theta.pi / theta.mu
        em, dm = theta.eps + theta.mu, theta.delta + theta.mu
        expected = np.array([
            [(1 - theta.p) * theta.beta * s0 * theta.eps / (em * dm), (1 - theta.p) * theta.beta * s0 / dm],
            [theta.p * theta.beta * s0 * theta.eps / (em * dm), theta.p * theta.beta * s0 / dm],
        ])
        ngm = next_generation(theta)
        np.testing.assert_allclose(ngm.K, expected, rtol=1e-12)
        self.assertTrue(np.all(ngm.F >= 0.0))


class R0Tests(SimpleTestCase):
    def test_preset_values(self):
        self.assertAlmostEqual(r0(FIG3), 0.0494704, delta=1e-6)
        self.assertAlmostEqual(r0(FIG12), 2.4735227, delta=1e-6)
        self.assertAlmostEqual(next_generation(FIG3).spectral_radius, 0.0494704, delta=1e-6)
        self.assertAlmostEqual(next_generation(FIG12).spectral_radius, 2.4735227, delta=1e-6)

    def test_no_transmission(self):
        self.assertEqual(r0(with_params(FIG3, beta=0)), 0.0)

    def test_closed_form_matches_spectral_radius(self):
        rng = np.random.default_rng(42)
        for _ in range(1000):
            theta = random_params(rng)
            value = r0(theta)
            self.assertLessEqual(abs(value - next_generation(theta).spectral_radius), 1e-10 * max(1.0, value))


class JacobianTests(SimpleTestCase):
    def test_structure(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            theta = random_params(rng)
            J = jacobian_rfe(theta)
            self.assertEqual(J[0, 0], -theta.mu)
            np.testing.assert_array_equal(J[1:, 0], 0.0)

    def test_finite_differences_at_rfe(self):
        x = np.array(rumor_free_equilibrium(FIG3), dtype=float)
        J = jacobian_rfe(FIG3)
        for k in range(4):
            step = 1e-6 * max(1.0, abs(x[k]))
            plus, minus = x.copy(), x.copy()
            plus[k] += step
            minus[k] -= step
            column = (rhs_uncontrolled(plus, FIG3) - rhs_uncontrolled(minus, FIG3)) / (2.0 * step)
            np.testing.assert_allclose(J[:, k], column, rtol=1e-6, atol=1e-6)

    def test_minus_mu_is_always_an_eigenvalue(self):
        rng = np.random.default_rng(2)
        e1 = np.array([1.0, 0.0, 0.0, 0.0])
        for _ in range(1000):
            theta = random_params(rng)
            J = jacobian_rfe(theta)
            np.testing.assert_array_equal(J @ e1, -theta.mu * e1)
            self.assertLessEqual(abs(rfe_eigenvalues(theta)[0] + theta.mu), 1e-8)


class CubicTests(SimpleTestCase):
    def test_a2_fig3(self):
        a2, _, _ = cubic_coefficients(FIG3)
        M = jacobian_rfe(FIG3)[1:, 1:]
        self.assertAlmostEqual(a2, -np.trace(M), places=14)
        self.assertAlmostEqual(a2, 1.5957619748, places=9)
        self.assertAlmostEqual(a2_closed_form(FIG3), a2, places=12)

    def test_zero_contact_rates_give_triangular_block(self):
        theta = with_params(FIG3, beta=0, b=0, rho=0, lam=0)
        eps, delta, mu = theta.eps, theta.delta, theta.mu
        a2, a1, a0 = cubic_coefficients(theta)
        self.assertAlmostEqual(a2, eps + delta + 3 * mu, places=12)
        self.assertAlmostEqual(a1, (eps + mu) * (delta + mu) + (eps + mu) * mu + (delta + mu) * mu, places=12)
        self.assertAlmostEqual(a0, (eps + mu) * (delta + mu) * mu, places=12)

    def test_solve_cubic_known_roots(self):
        roots = np.sort_complex(solve_cubic(6.0, 11.0, 6.0))
        np.testing.assert_allclose(roots, [-3.0, -2.0, -1.0], atol=1e-12)
        roots = solve_cubic(3.0, 3.0, 1.0)
        np.testing.assert_allclose(roots, [-1.0, -1.0, -1.0], atol=1e-5)
        roots = np.sort_complex(solve_cubic(0.0, 1.0, 0.0))
        np.testing.assert_allclose(roots, [-1j, 0.0, 1j], atol=1e-12)

    def test_roots_match_dense_eigenvalues(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            theta = random_params(rng)
            a2, a1, a0 = cubic_coefficients(theta)
            ours = solve_cubic(a2, a1, a0)
            dense = np.linalg.eigvals(jacobian_rfe(theta)[1:, 1:])
            for value in dense:
                nearest = np.min(np.abs(ours - value))
                self.assertLessEqual(nearest, 1e-6 * max(1.0, abs(value)))


class RouthHurwitzTests(SimpleTestCase):
    def test_examples(self):
        self.assertTrue(routh_hurwitz(3, 3, 1))
        self.assertFalse(routh_hurwitz(1, 1, 2))

    def test_preset_sets(self):
        self.assertTrue(routh_hurwitz(*cubic_coefficients(FIG3)))
        self.assertFalse(routh_hurwitz(*cubic_coefficients(FIG12)))

    def test_agrees_with_eigenvalue_signs_under_side_conditions(self):
        rng = np.random.default_rng(4)
        checked = 0
        while checked < 1000:
            theta = random_params(rng)
            value = r0(theta)
            if abs(value - 1.0) <= 1e-3 or theta.l * theta.b * theta.carrying_capacity >= theta.mu:
                continue
            coefficients = cubic_coefficients(theta)
            max_re = float(np.max(solve_cubic(*coefficients).real))
            if abs(max_re) <= 1e-9:
                continue
            checked += 1
            self.assertEqual(routh_hurwitz(*coefficients), max_re < 0.0, msg=f"{theta}")

    def test_subthreshold_is_stable_without_skeptic_feedback(self):
        rng = np.random.default_rng(5)
        checked = 0
        while checked < 1000:
            theta = with_params(random_params(rng), b=0.0)
            if r0(theta) >= 1.0 - 1e-3:
                continue
            checked += 1
            self.assertLess(float(np.max(rfe_eigenvalues(theta).real)), 0.0)

    def test_skeptic_feedback_can_destabilize_below_threshold(self):
        # beta = 0 gives R0 = 0, but the z -> e -> i -> z loop alone makes a0 < 0
        theta = ModelParams(pi=10, mu=0.1, beta=0, b=0.01, rho=0, eps=0.5, p=0.5, l=0, delta=0.5, lam=0.01)
        a2, a1, a0 = cubic_coefficients(theta)
        self.assertLess(a0, 0.0)
        report = stability_report(theta)
        self.assertEqual(report.r0, 0.0)
        self.assertFalse(report.routh_hurwitz_pass)
        self.assertGreater(report.max_real_part, 0.0)
        self.assertFalse(report.threshold_consistent)
        self.assertEqual(report.verdict, Verdict.MARGINAL)


class StabilityReportTests(SimpleTestCase):
    def test_fig3_locally_stable(self):
        report = stability_report(FIG3)
        self.assertEqual(report.verdict, Verdict.LOCALLY_STABLE)
        self.assertAlmostEqual(report.r0, 0.0495, places=4)
        self.assertTrue(report.routh_hurwitz_pass)
        self.assertLess(report.max_real_part, 0.0)
        self.assertTrue(report.threshold_consistent)
        self.assertFalse(report.a2_mismatch)

    def test_fig12_unstable(self):
        report = stability_report(FIG12)
        self.assertEqual(report.verdict, Verdict.UNSTABLE)
        self.assertAlmostEqual(report.r0, 2.4735, places=4)
        self.assertGreater(report.max_real_part, 0.0)

    def test_minus_mu_in_both_sets(self):
        for theta in (FIG3, FIG12):
            eigenvalues = stability_report(theta).eigenvalues
            self.assertLessEqual(float(np.min(np.abs(eigenvalues + 0.5))), 1e-8)

    def test_report_is_serializable(self):
        data = stability_report(FIG3).to_dict()
        self.assertEqual(data['verdict'], 'LocallyStable')
        self.assertEqual(len(data['eigenvalues']), 4)
        self.assertEqual(data['rfe'], {'s': 20.0, 'e': 0.0, 'i': 0.0, 'z': 0.0})


class EndemicTests(SimpleTestCase):
    def test_fig3_has_no_endemic_point(self):
        self.assertIsNone(endemic_equilibrium(FIG3))

    def test_fig12_endemic_point(self):
        solution = endemic_equilibrium(FIG12)
        self.assertIsNotNone(solution)
        self.assertGreater(solution.i_star, 0.0)
        self.assertLessEqual(solution.residual, 1e-8)
        self.assertTrue(all(value >= 0.0 for value in solution.state))
        self.assertLessEqual(float(np.max(np.abs(rhs_uncontrolled(solution.state, FIG12)))), 1e-8)

    def test_fig12_trajectory_settles_on_endemic_point(self):
        solution = endemic_equilibrium(FIG12)
        traj = integrate_forward(
            lambda t, x: rhs_uncontrolled(x, FIG12),
            Grid.from_step(0.0, 100.0, 0.01),
            State(99.99, 0.0, 0.01, 0.0),
        )
        self.assertLessEqual(abs(traj.states[-1, 2] - solution.i_star), 1e-4)

    def test_lambda_zero_rejected(self):
        with self.assertRaises(DomainException):
            endemic_equilibrium(with_params(FIG12, lam=0))

    def test_cubic_coefficients_are_finite(self):
        self.assertTrue(np.all(np.isfinite(endemic_cubic(FIG12))))

    def test_newton_returns_rfe_from_nearby_start(self):
        x, residual = newton_steady_state(FIG3, np.array([19.0, 0.1, 0.1, 0.1]))
        np.testing.assert_allclose(x, [20.0, 0.0, 0.0, 0.0], atol=1e-8)
        self.assertLessEqual(residual, 1e-10)

    def test_returned_points_have_small_residual(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            theta = random_params(rng)
            if theta.beta <= 0 or theta.lam <= 0:
                continue
            solution = endemic_equilibrium(theta)
            if solution is not None:
                self.assertLessEqual(float(np.max(np.abs(rhs_uncontrolled(solution.state, theta)))), 1e-8)
                self.assertGreater(solution.i_star, 0.0)


class SpreaderDecayTests(SimpleTestCase):
    def test_fig3_spreaders_decay(self):
        check = spreader_decay_check(FIG3)
        self.assertTrue(check.decayed)
        self.assertLess(check.i_final, check.i_initial)

    def test_fig12_spreaders_persist(self):
        self.assertFalse(spreader_decay_check(FIG12).decayed)

    def test_mu_zero_is_rejected_at_construction(self):
        with self.assertRaises(ParameterValidationException):
            with_params(FIG3, mu=0)
