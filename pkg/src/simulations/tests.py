import json
import tempfile
from io import StringIO
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from core.exceptions import ConfigParseException, ParameterValidationException
from dynamics import ControlSwitches, State
from optimal_control import ControlSignal, objective, solve_states
from seiz_lab.celery import app as celery_app
from .models import ScenarioRun
from .presets import FIG3_PARAMS, FIG12_PARAMS, PRESETS, PRESET_NAMES
from .repositories import ScenarioRunRepository
from .services import (
    ReportService,
    RunLogService,
    ScenarioConfigService,
    ScenarioService,
    SWEEP_COLUMNS,
    read_trajectory_csv,
)
from .tasks import simulate_sweep_value

FIG3_R0 = 0.0494704
FIG12_R0 = 2.4735227


class TempDirMixin:
    def setUp(self):
        super().setUp()
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()
        super().tearDown()


class EagerCeleryMixin:
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls._was_eager = celery_app.conf.task_always_eager
        celery_app.conf.task_always_eager = True

    @classmethod
    def tearDownClass(cls):
        celery_app.conf.task_always_eager = cls._was_eager
        super().tearDownClass()


class PresetTests(SimpleTestCase):
    def test_preset_values(self):
        self.assertEqual(FIG3_PARAMS['beta'], '0.007')
        self.assertEqual(FIG3_PARAMS['lam'], '0.0084231')
        self.assertEqual(FIG12_PARAMS['pi'], '50')
        self.assertEqual(FIG12_PARAMS['beta'], '0.07')
        self.assertEqual(FIG12_PARAMS['rho'], FIG3_PARAMS['rho'])

    def test_every_preset_loads(self):
        for name in PRESET_NAMES:
            cfg = ScenarioConfigService.load_config(preset=name)
            self.assertEqual(cfg.label, name)
            self.assertEqual(cfg.base, name)
            self.assertTrue(cfg.init_defaulted)

    def test_case_presets_select_controls(self):
        self.assertEqual(ScenarioConfigService.load_config(preset='case-u').switches, ControlSwitches(1, 0, 0))
        self.assertEqual(ScenarioConfigService.load_config(preset='case-w').switches, ControlSwitches(0, 0, 1))
        cfg = ScenarioConfigService.load_config(preset='case-uvw')
        self.assertEqual(cfg.switches, ControlSwitches(1, 1, 1))
        self.assertEqual(cfg.grid.tf, 25.0)
        self.assertEqual(cfg.params.pi, 50.0)

    def test_presets_are_not_mutated_by_loading(self):
        ScenarioConfigService.load_config(preset='fig3', overrides=['params.beta=0.5'])
        self.assertEqual(PRESETS['fig3']['params']['beta'], '0.007')
        self.assertNotIn('base', PRESETS['fig3']['scenario'])


class ConfigParsingTests(TempDirMixin, SimpleTestCase):
    def write(self, text, name='scenario.ini'):
        path = self.tmp / name
        path.write_text(text, encoding='utf-8')
        return path

    def test_defaults(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        self.assertEqual((cfg.grid.t0, cfg.grid.tf, cfg.grid.n_steps), (0.0, 100.0, 10000))
        self.assertEqual(cfg.init, State(19.99, 0.0, 0.01, 0.0))
        self.assertEqual(cfg.switches, ControlSwitches(0, 0, 0))
        self.assertEqual((cfg.fbs.relaxation, cfg.fbs.tol, cfg.fbs.max_iter), (0.5, 1e-3, 200))

    def test_controlled_defaults(self):
        cfg = ScenarioConfigService.load_config(preset='fig12', controlled=True)
        self.assertEqual(cfg.switches, ControlSwitches(1, 1, 1))
        self.assertEqual(cfg.grid.tf, 25.0)
        self.assertEqual(cfg.init, State(99.99, 0.0, 0.01, 0.0))

    def test_steps_and_horizon(self):
        cfg = ScenarioConfigService.load_config(preset='fig3', steps=500, horizon=10)
        self.assertEqual((cfg.grid.tf, cfg.grid.n_steps), (10.0, 500))

    def test_grid_rejects_step_and_step_count(self):
        path = self.write('[scenario]\nbase = fig3\n\n[grid]\nh = 0.1\nn_steps = 50\n')
        with self.assertRaises(ParameterValidationException) as ctx:
            ScenarioConfigService.load_config(path=path)
        self.assertEqual(ctx.exception.field, 'grid')

    def test_steps_flag_replaces_file_step(self):
        path = self.write('[scenario]\nbase = fig3\n\n[grid]\ntf = 10\nh = 0.1\n')
        self.assertEqual(ScenarioConfigService.load_config(path=path).grid.n_steps, 100)
        cfg = ScenarioConfigService.load_config(path=path, steps=40)
        self.assertEqual((cfg.grid.tf, cfg.grid.n_steps), (10.0, 40))

    def test_file_with_base_and_override(self):
        path = self.write('[scenario]\nbase = fig12\nlabel = mine\n\n[params]\nbeta = 0.05\n')
        cfg = ScenarioConfigService.load_config(path=path, overrides=['params.rho=0.1'])
        self.assertEqual(cfg.label, 'mine')
        self.assertEqual(cfg.base, 'fig12')
        self.assertEqual(cfg.params.pi, 50.0)
        self.assertEqual(cfg.params.beta, 0.05)
        self.assertEqual(cfg.params.rho, 0.1)

    def test_label_falls_back_to_file_name(self):
        params = '\n'.join(f"{k} = {v}" for k, v in FIG3_PARAMS.items())
        path = self.write(f"[params]\n{params}\n\n[init]\ns = 10\ne = 0\ni = 1\nz = 0\n", name='rumor.ini')
        cfg = ScenarioConfigService.load_config(path=path)
        self.assertEqual(cfg.label, 'rumor')
        self.assertEqual(cfg.init, State(10.0, 0.0, 1.0, 0.0))
        self.assertFalse(cfg.init_defaulted)

    def test_unknown_key_reports_line(self):
        path = self.write('[scenario]\nbase = fig3\n\n[params]\npi = 10\ngamma = 1\n')
        with self.assertRaises(ConfigParseException) as ctx:
            ScenarioConfigService.load_config(path=path)
        self.assertEqual(ctx.exception.lineno, 6)
        self.assertIn('params.gamma', str(ctx.exception))
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_unknown_section_reports_line(self):
        path = self.write('[scenario]\nbase = fig3\n[extra]\nfoo = 1\n')
        with self.assertRaises(ConfigParseException) as ctx:
            ScenarioConfigService.load_config(path=path)
        self.assertEqual(ctx.exception.lineno, 3)

    def test_malformed_file(self):
        path = self.write('pi = 10\n')
        with self.assertRaises(ConfigParseException) as ctx:
            ScenarioConfigService.load_config(path=path)
        self.assertEqual(ctx.exception.lineno, 1)

    def test_missing_file(self):
        with self.assertRaises(ConfigParseException):
            ScenarioConfigService.load_config(path=self.tmp / 'absent.ini')

    def test_missing_rate_constant(self):
        path = self.write('[params]\npi = 10\n')
        with self.assertRaises(ParameterValidationException) as ctx:
            ScenarioConfigService.load_config(path=path)
        self.assertEqual(ctx.exception.field, 'params')

    def test_probability_out_of_range(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ScenarioConfigService.load_config(preset='fig3', overrides=['params.p=1.5'])
        self.assertEqual(ctx.exception.field, 'p')
        self.assertIn('p ∈ [0,1]', str(ctx.exception))

    def test_zero_mu_names_the_field(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ScenarioConfigService.load_config(preset='fig3', overrides=['params.mu=0'])
        self.assertEqual(ctx.exception.field, 'mu')

    def test_bad_overrides(self):
        for text in ('params.p', 'p=0.1', 'params.gamma=1', 'extra.x=1'):
            with self.assertRaises(ParameterValidationException):
                ScenarioConfigService.load_config(preset='fig3', overrides=[text])

    def test_label_must_be_a_plain_name(self):
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.load_config(preset='fig3', overrides=['scenario.label=a/b'])

    def test_negative_initial_state(self):
        with self.assertRaises(ParameterValidationException) as ctx:
            ScenarioConfigService.load_config(preset='fig3', overrides=['init.e=-1'])
        self.assertEqual(ctx.exception.field, 'init.e')

    def test_file_and_preset_are_exclusive(self):
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.load_config()
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.load_config(path=self.tmp / 'x.ini', preset='fig3')

    def test_sweep_section_and_flags(self):
        path = self.write('[scenario]\nbase = fig12\n\n[sweep]\nparameter = beta\nvalues = 0.01, 0.03 0.05\n')
        cfg = ScenarioConfigService.load_config(path=path)
        self.assertEqual(cfg.sweep, ('beta', (0.01, 0.03, 0.05)))

        spec = ScenarioConfigService.build_sweep_spec(cfg)
        self.assertEqual((spec.parameter, spec.values), ('beta', (0.01, 0.03, 0.05)))

        spec = ScenarioConfigService.build_sweep_spec(cfg, 'rho', '0.1,0.2')
        self.assertEqual((spec.parameter, spec.values), ('rho', (0.1, 0.2)))

    def test_sweep_requires_rate_constant(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.build_sweep_spec(cfg)
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.build_sweep_spec(cfg, 'gamma', '1')
        with self.assertRaises(ParameterValidationException):
            ScenarioConfigService.build_sweep_spec(cfg, 'beta', '')

    def test_swept_pi_moves_default_seed(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        swept = cfg.with_param('pi', 50)
        self.assertEqual(swept.init, State(99.99, 0.0, 0.01, 0.0))
        fixed = ScenarioConfigService.load_config(preset='fig3', overrides=['init.s=5'])
        self.assertEqual(fixed.with_param('pi', 50).init, fixed.init)

    def test_dict_round_trip(self):
        cfg = ScenarioConfigService.load_config(preset='case-uvw', steps=100)
        restored = type(cfg).from_dict(json.loads(json.dumps(cfg.to_dict())))
        self.assertEqual(restored.params, cfg.params)
        self.assertEqual(restored.init, cfg.init)
        self.assertEqual(restored.grid, cfg.grid)
        self.assertEqual(restored.switches, cfg.switches)


class ScenarioServiceTests(TempDirMixin, SimpleTestCase):
    def test_fig3_simulation_dies_out(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        summary = ScenarioService.run_simulate(cfg).summary
        self.assertAlmostEqual(summary['r0'], FIG3_R0, places=6)
        self.assertEqual(summary['verdict'], 'LocallyStable')
        self.assertLess(summary['final_i'], 1e-3)
        self.assertLessEqual(summary['conservation_error'], 1e-8)
        self.assertTrue(summary['in_invariant_region'])

    def test_fig12_simulation_approaches_endemic_point(self):
        cfg = ScenarioConfigService.load_config(preset='fig12')
        summary = ScenarioService.run_simulate(cfg).summary
        endemic = ScenarioService.run_analyze(cfg).endemic
        self.assertAlmostEqual(summary['r0'], FIG12_R0, places=6)
        self.assertIsNotNone(endemic)
        self.assertLessEqual(abs(summary['final_i'] - endemic.i_star), 1e-3)

    def test_simulation_outputs(self):
        cfg = ScenarioConfigService.load_config(preset='fig3', steps=1000)
        outcome = ScenarioService.run_simulate(cfg, out_dir=self.tmp)
        frame = read_trajectory_csv(self.tmp / 'trajectory.csv')
        self.assertEqual(list(frame.columns), ['t', 's', 'e', 'i', 'z'])
        self.assertEqual(len(frame), 1001)
        self.assertTrue(np.array_equal(frame[['s', 'e', 'i', 'z']].to_numpy(), outcome.trajectory.states))
        self.assertTrue(np.array_equal(frame['t'].to_numpy(), outcome.trajectory.times))

        report = json.loads((self.tmp / 'report.json').read_text())
        self.assertEqual(report['label'], 'fig3')
        self.assertEqual(report['peak_z'], outcome.summary['peak_z'])
        self.assertTrue((self.tmp / 'report.txt').read_text().startswith('simulate fig3\n'))

    def test_rfe_start_stays_put(self):
        cfg = ScenarioConfigService.load_config(
            preset='fig3', steps=500, overrides=['init.s=20', 'init.e=0', 'init.i=0', 'init.z=0'],
        )
        ScenarioService.run_simulate(cfg, out_dir=self.tmp)
        frame = ReportService.read_trajectory_csv(self.tmp / 'trajectory.csv')
        self.assertTrue((frame['s'] == 20.0).all())
        for column in ('e', 'i', 'z'):
            self.assertTrue((frame[column] == 0.0).all())

    def test_outputs_are_deterministic(self):
        cfg = ScenarioConfigService.load_config(preset='fig12', steps=2000)
        ScenarioService.run_simulate(cfg, out_dir=self.tmp / 'first')
        ScenarioService.run_simulate(cfg, out_dir=self.tmp / 'second')
        self.assertEqual(
            (self.tmp / 'first' / 'trajectory.csv').read_bytes(),
            (self.tmp / 'second' / 'trajectory.csv').read_bytes(),
        )

    def test_analyze_fig3(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        outcome = ScenarioService.run_analyze(cfg, out_dir=self.tmp)
        self.assertEqual(outcome.summary['verdict'], 'LocallyStable')
        self.assertIsNone(outcome.summary['endemic'])
        self.assertTrue(outcome.summary['spreader_decay']['decayed'])
        self.assertTrue(outcome.summary['routh_hurwitz_pass'])
        self.assertTrue((self.tmp / 'report.json').exists())

    def test_analyze_fig12(self):
        cfg = ScenarioConfigService.load_config(preset='fig12')
        summary = ScenarioService.run_analyze(cfg).summary
        self.assertEqual(summary['verdict'], 'Unstable')
        self.assertFalse(summary['routh_hurwitz_pass'])
        self.assertGreater(summary['endemic']['i_star'], 0.0)
        self.assertNotIn('spreader_decay', summary)
        json.dumps(summary)

    def test_optimize_without_controls_matches_baseline(self):
        cfg = ScenarioConfigService.load_config(
            preset='fig12', controlled=True, steps=500,
            overrides=['control.pi1=0', 'control.pi2=0', 'control.pi3=0'],
        )
        summary = ScenarioService.run_optimize(cfg, out_dir=self.tmp).summary
        self.assertTrue(summary['converged'])
        self.assertEqual(summary['iterations'], 1)
        self.assertAlmostEqual(summary['j_controlled'], summary['j_uncontrolled'], places=12)
        self.assertEqual(summary['max_stationarity_residual'], 0.0)

        controls = read_trajectory_csv(self.tmp / 'controls.csv')
        self.assertEqual(
            list(controls.columns),
            ['t', 's', 'e', 'i', 'z', 'u', 'v', 'w', 'p1', 'p2', 'p3', 'p4'],
        )
        self.assertEqual(float(controls[['u', 'v', 'w']].abs().to_numpy().max()), 0.0)
        self.assertTrue((self.tmp / 'baseline.csv').exists())

    def test_optimize_with_all_controls(self):
        cfg = ScenarioConfigService.load_config(preset='case-uvw', steps=1000, overrides=['control.tol=1e-5'])
        summary = ScenarioService.run_optimize(cfg, out_dir=self.tmp).summary
        self.assertTrue(summary['converged'])
        self.assertTrue(summary['descent_ok'])
        self.assertLess(summary['j_controlled'], summary['j_uncontrolled'])
        self.assertLess(summary['spreaders_integral_controlled'], summary['spreaders_integral_uncontrolled'])
        self.assertLessEqual(summary['max_stationarity_residual'], 1e-4)
        self.assertEqual(len(summary['objective_history']), summary['iterations'])

    def test_optimize_objective_matches_written_controls(self):
        cfg = ScenarioConfigService.load_config(preset='case-w')
        summary = ScenarioService.run_optimize(cfg, out_dir=self.tmp).summary
        self.assertTrue(summary['converged'])
        self.assertLessEqual(summary['iterations'], 200)

        frame = read_trajectory_csv(self.tmp / 'controls.csv')
        controls = ControlSignal(cfg.grid, frame[['u', 'v', 'w']].to_numpy())
        states = solve_states(cfg.params, cfg.init, cfg.grid, controls, cfg.switches)
        np.testing.assert_allclose(states.states, frame[['s', 'e', 'i', 'z']].to_numpy(), rtol=0, atol=1e-12)
        self.assertAlmostEqual(objective(states, controls, cfg.weights), summary['j_controlled'], places=10)


class SweepTests(EagerCeleryMixin, TempDirMixin, SimpleTestCase):
    def test_beta_sweep_crosses_threshold(self):
        cfg = ScenarioConfigService.load_config(preset='fig12', steps=2000)
        spec = ScenarioConfigService.build_sweep_spec(cfg, 'beta', '0.01,0.03,0.05,0.07')
        outcome = ScenarioService.run_sweep(spec, out_dir=self.tmp)
        frame = outcome.frame

        self.assertEqual(list(frame.columns), SWEEP_COLUMNS)
        self.assertEqual(list(frame['status']), ['success'] * 4)
        self.assertTrue(np.all(np.diff(frame['peak_z'].to_numpy()) >= 0.0))
        self.assertLess(frame['r0'].iloc[0], 1.0)
        self.assertGreater(frame['r0'].iloc[-1], 1.0)
        self.assertAlmostEqual(frame['r0'].iloc[-1], FIG12_R0, places=6)

        self.assertTrue((self.tmp / 'sweep.csv').exists())
        self.assertTrue((self.tmp / 'values' / 'beta=0.03' / 'trajectory.csv').exists())
        self.assertEqual(outcome.summary['succeeded'], 4)

    def test_single_value_matches_simulation(self):
        cfg = ScenarioConfigService.load_config(preset='fig12', steps=2000)
        spec = ScenarioConfigService.build_sweep_spec(cfg, 'beta', '0.07')
        row = ScenarioService.run_sweep(spec).summary['rows'][0]
        summary = ScenarioService.run_simulate(cfg).summary
        for key in ('r0', 'peak_i', 'final_i', 'peak_z', 'final_z'):
            self.assertAlmostEqual(row[key], summary[key], places=12)

    def test_failed_value_becomes_error_row(self):
        cfg = ScenarioConfigService.load_config(preset='fig3', steps=500)
        spec = ScenarioConfigService.build_sweep_spec(cfg, 'p', '0.1,1.5')
        outcome = ScenarioService.run_sweep(spec)
        self.assertEqual(list(outcome.frame['status']), ['success', 'error'])
        self.assertIn('p ∈ [0,1]', outcome.frame['error'].iloc[1])
        self.assertTrue(np.isnan(outcome.frame['r0'].iloc[1]))
        self.assertEqual(outcome.summary['failed'], 1)

    def test_task_returns_error_dict(self):
        cfg = ScenarioConfigService.load_config(preset='fig3', steps=100)
        row = simulate_sweep_value(cfg.to_dict(), 'mu', 0.0)
        self.assertEqual(row['status'], 'error')
        self.assertEqual(row['exit_code'], 2)


class ScenarioRunModelTests(TestCase):
    def test_lifecycle(self):
        run = ScenarioRunRepository.create_run('simulate', 'fig3', {'label': 'fig3'})
        self.assertEqual(run.status, 'pending')
        run.mark_as_started()
        run.mark_as_completed({'r0': 0.05})
        run.refresh_from_db()
        self.assertEqual(run.status, 'success')
        self.assertEqual(run.exit_code, 0)
        self.assertEqual(run.summary, {'r0': 0.05})
        self.assertIsNotNone(run.duration)

    def test_failure(self):
        run = ScenarioRunRepository.create_run('optimize', 'case-u', {})
        run.mark_as_started()
        run.mark_as_failed('no convergence', 4)
        self.assertEqual(list(ScenarioRunRepository.get_failed_runs()), [run])
        self.assertEqual(ScenarioRunRepository.get_run_by_id(run.id).exit_code, 4)
        self.assertIsNone(ScenarioRunRepository.get_run_by_id(run.id + 1000))

    def test_recent_runs_filters(self):
        for command, label in (('simulate', 'a'), ('analyze', 'a'), ('simulate', 'b')):
            ScenarioRunRepository.create_run(command, label, {})
        self.assertEqual(len(ScenarioRunRepository.get_recent_runs(command='simulate')), 2)
        self.assertEqual(len(ScenarioRunRepository.get_recent_runs(label='a')), 2)
        self.assertEqual(len(ScenarioRunRepository.get_recent_runs(limit=1)), 1)
        self.assertEqual(ScenarioRunRepository.get_runs_by_label('b').count(), 1)

    @override_settings(SEIZ_RECORD_RUNS=False)
    def test_recording_can_be_disabled(self):
        cfg = ScenarioConfigService.load_config(preset='fig3')
        self.assertIsNone(RunLogService.start('simulate', cfg))
        RunLogService.complete(None, {})
        self.assertFalse(ScenarioRun.objects.exists())


class CommandTests(TempDirMixin, TestCase):
    def call(self, *args, **options):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err, **options)
        return out.getvalue(), err.getvalue()

    def test_simulate_records_run(self):
        out, _ = self.call('simulate', preset='fig3', out=str(self.tmp), steps=1000)
        self.assertIn('R0 = 0.04947', out)
        self.assertTrue((self.tmp / 'trajectory.csv').exists())
        run = ScenarioRun.objects.get()
        self.assertEqual((run.command, run.label, run.status, run.exit_code), ('simulate', 'fig3', 'success', 0))
        self.assertEqual(run.output_dir, str(self.tmp))
        self.assertEqual(run.config['params']['beta'], 0.007)

    def test_default_output_dir(self):
        with override_settings(SEIZ_OUTPUT_DIR=str(self.tmp)):
            self.call('analyze', preset='fig12')
        self.assertTrue((self.tmp / 'fig12' / 'analyze' / 'report.json').exists())

    def test_config_file_and_overrides(self):
        path = self.tmp / 'run.ini'
        path.write_text('[scenario]\nbase = fig3\nlabel = tuned\n', encoding='utf-8')
        out, _ = self.call('analyze', config=str(path), out=str(self.tmp / 'out'), overrides=['params.beta=0.07'])
        self.assertIn('verdict: LocallyStable', out)
        report = json.loads((self.tmp / 'out' / 'report.json').read_text())
        self.assertEqual(report['label'], 'tuned')

    def test_invalid_parameter_exits_2(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('simulate', preset='fig3', out=str(self.tmp), overrides=['params.p=1.5'])
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertFalse(ScenarioRun.objects.exists())

    def test_numerical_failure_exits_3(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('simulate', preset='fig3', out=str(self.tmp), horizon=1000, steps=100)
        self.assertEqual(ctx.exception.returncode, 3)
        run = ScenarioRun.objects.get()
        self.assertEqual((run.status, run.exit_code), ('failed', 3))

    def test_non_convergence_exits_4_after_writing_outputs(self):
        with self.assertRaises(CommandError) as ctx:
            self.call('optimize', preset='case-uvw', out=str(self.tmp), steps=500, overrides=['control.max_iter=1'])
        self.assertEqual(ctx.exception.returncode, 4)
        self.assertTrue((self.tmp / 'controls.csv').exists())
        run = ScenarioRun.objects.get()
        self.assertEqual((run.status, run.exit_code), ('failed', 4))
        self.assertFalse(run.summary['converged'])

    def test_sweep_command(self):
        celery_app.conf.task_always_eager, was_eager = True, celery_app.conf.task_always_eager
        try:
            out, err = self.call('sweep', preset='fig3', out=str(self.tmp), steps=500, param='mu', values='0.5,0')
        finally:
            celery_app.conf.task_always_eager = was_eager
        self.assertIn('mu=0.5: R0=', out)
        self.assertIn('mu=0:', err)
        self.assertEqual(ScenarioRun.objects.get().status, 'success')

    def test_runs_listing(self):
        self.call('simulate', preset='fig3', out=str(self.tmp), steps=100)
        out, _ = self.call('runs', run_command='simulate')
        self.assertIn('simulate', out)
        self.assertIn('1 run(s)', out)
        out, _ = self.call('runs', status='failed')
        self.assertIn('No runs recorded.', out)
