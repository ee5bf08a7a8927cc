import logging
from typing import NamedTuple, Optional

import numpy as np
import pandas as pd
from celery import group
from celery.exceptions import TimeoutError as CeleryTimeoutError
from django.conf import settings

from analysis import endemic_equilibrium, spreader_decay_check, stability_report
from dynamics import rhs_uncontrolled, total_population_analytic, in_invariant_region
from integrator import ControlSignal, integrate_forward
from optimal_control import control_gradient, forward_backward_sweep, objective
from .report_service import ReportService, jsonable

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ['value', 'r0', 'peak_i', 'final_i', 'peak_z', 'final_z', 'status', 'error']


class SimulationOutcome(NamedTuple):
    trajectory: object
    summary: dict


class AnalysisOutcome(NamedTuple):
    report: object
    endemic: Optional[object]
    summary: dict


class OptimizationOutcome(NamedTuple):
    result: object
    baseline: object
    summary: dict


class SweepOutcome(NamedTuple):
    frame: pd.DataFrame
    summary: dict


def _integral(values, grid):
    return float(grid.h * (values.sum() - 0.5 * (values[0] + values[-1])))


def _state_dict(x):
    return {'s': float(x[0]), 'e': float(x[1]), 'i': float(x[2]), 'z': float(x[3])}


class ScenarioService:
    @classmethod
    def integrate_uncontrolled(cls, cfg):
        theta = cfg.params
        return integrate_forward(
            lambda t, x: rhs_uncontrolled(x, theta),
            cfg.grid,
            cfg.init,
            clamp_threshold=settings.SEIZ_DEFAULTS['clamp_threshold'],
        )

    @classmethod
    def trajectory_summary(cls, cfg, trajectory):
        theta = cfg.params
        report = stability_report(theta, tol=settings.SEIZ_DEFAULTS['stability_tol'])
        peak_i, peak_i_time = trajectory.peak('i')
        peak_z, peak_z_time = trajectory.peak('z')
        n0 = float(np.sum(cfg.init))
        analytic = total_population_analytic(n0, trajectory.times - cfg.grid.t0, theta)
        final = trajectory.states[-1]
        return {
            'label': cfg.label,
            'r0': report.r0,
            'verdict': str(report.verdict),
            'final_state': _state_dict(final),
            'final_i': float(final[2]),
            'final_z': float(final[3]),
            'peak_i': peak_i,
            'peak_i_time': peak_i_time,
            'peak_z': peak_z,
            'peak_z_time': peak_z_time,
            'conservation_error': float(np.max(np.abs(trajectory.totals - analytic))),
            'in_invariant_region': bool(all(in_invariant_region(x, theta) for x in trajectory.states)),
            'grid': {'t0': cfg.grid.t0, 'tf': cfg.grid.tf, 'n_steps': cfg.grid.n_steps},
        }

    @classmethod
    def run_simulate(cls, cfg, out_dir=None):
        trajectory = cls.integrate_uncontrolled(cfg)
        summary = cls.trajectory_summary(cfg, trajectory)
        if out_dir is not None:
            path = ReportService.ensure_dir(out_dir)
            ReportService.write_trajectory(trajectory, path / 'trajectory.csv')
            ReportService.write_reports(path, f"simulate {cfg.label}", summary)
        logger.info(
            f"simulated {cfg.label}: R0={summary['r0']:.6g}, peak i={summary['peak_i']:.6g} "
            f"at t={summary['peak_i_time']:.4g}"
        )
        return SimulationOutcome(trajectory, jsonable(summary))

    @classmethod
    def run_analyze(cls, cfg, out_dir=None):
        theta = cfg.params
        defaults = settings.SEIZ_DEFAULTS
        report = stability_report(theta, tol=defaults['stability_tol'])
        endemic = endemic_equilibrium(theta, tol=defaults['endemic_tol'])
        summary = {'label': cfg.label, **report.to_dict()}
        summary['endemic'] = endemic.to_dict() if endemic is not None else None
        if report.r0 <= 1.0:
            decay = spreader_decay_check(theta, x0=cfg.init, grid=cfg.grid)
            summary['spreader_decay'] = dict(decay._asdict())

        if out_dir is not None:
            ReportService.write_reports(out_dir, f"analyze {cfg.label}", summary)
        logger.info(
            f"analyzed {cfg.label}: R0={report.r0:.6g}, verdict={report.verdict}, "
            f"endemic={'yes' if endemic is not None else 'no'}"
        )
        return AnalysisOutcome(report, endemic, jsonable(summary))

    @classmethod
    def max_stationarity_residual(cls, result, cfg):
        """Largest |dH/dc| over nodes where the control is strictly inside (0, 1)."""
        states = result.states.states
        adjoints = result.adjoints.adjoints
        controls = result.controls.values
        worst = 0.0
        for x, p, c in zip(states, adjoints, controls):
            gradient = control_gradient(x, p, c, cfg.weights, cfg.switches)
            interior = (c > 0.0) & (c < 1.0)
            if interior.any():
                worst = max(worst, float(np.max(np.abs(gradient[interior]))))
        return worst

    @classmethod
    def run_optimize(cls, cfg, out_dir=None):
        baseline = cls.integrate_uncontrolled(cfg)
        result = forward_backward_sweep(cfg.params, cfg.init, cfg.grid, cfg.weights, cfg.switches, cfg.fbs)
        j_uncontrolled = objective(baseline, ControlSignal.zeros(cfg.grid), cfg.weights)

        controlled_i = result.states.column('i')
        summary = {
            'label': cfg.label,
            'switches': dict(cfg.switches._asdict()),
            'j_controlled': result.objective,
            'j_uncontrolled': j_uncontrolled,
            'iterations': result.iterations,
            'converged': result.converged,
            'last_change': result.last_change,
            'descent_ok': result.descent_ok,
            'spreaders_integral_controlled': _integral(controlled_i, cfg.grid),
            'spreaders_integral_uncontrolled': _integral(baseline.column('i'), cfg.grid),
            'peak_z_controlled': result.states.peak('z')[0],
            'peak_z_uncontrolled': baseline.peak('z')[0],
            'max_stationarity_residual': cls.max_stationarity_residual(result, cfg),
            'objective_history': list(result.objective_history),
        }

        if out_dir is not None:
            path = ReportService.ensure_dir(out_dir)
            ReportService.write_trajectory(result.adjoints, path / 'controls.csv')
            ReportService.write_trajectory(baseline, path / 'baseline.csv')
            ReportService.write_reports(path, f"optimize {cfg.label}", summary)
        logger.info(
            f"optimized {cfg.label}: J={result.objective:.8g} (uncontrolled {j_uncontrolled:.8g}), "
            f"{result.iterations} iterations, converged={result.converged}"
        )
        return OptimizationOutcome(result, baseline, jsonable(summary))

    @classmethod
    def sweep_row(cls, cfg, value, out_dir=None):
        outcome = cls.run_simulate(cfg, out_dir=out_dir)
        summary = outcome.summary
        return {
            'value': float(value),
            'r0': summary['r0'],
            'peak_i': summary['peak_i'],
            'final_i': summary['final_i'],
            'peak_z': summary['peak_z'],
            'final_z': summary['final_z'],
            'status': 'success',
            'error': '',
        }

    @classmethod
    def run_sweep(cls, spec, out_dir=None):
        from ..tasks import simulate_sweep_value

        values_dir = None
        if out_dir is not None:
            values_dir = str(ReportService.ensure_dir(out_dir) / 'values')
        base = spec.base.to_dict()
        job = group([
            simulate_sweep_value.s(base, spec.parameter, value, values_dir)
            for value in spec.values
        ])
        group_result = job.apply_async()

        rows = []
        for value, async_result in zip(spec.values, group_result.results):
            try:
                row = async_result.get(timeout=settings.SEIZ_SWEEP_TIMEOUT, propagate=False)
            except CeleryTimeoutError:
                row = None
            if not isinstance(row, dict):
                row = {'value': float(value), 'status': 'error', 'error': f"no result within {settings.SEIZ_SWEEP_TIMEOUT}s"}
            rows.append(row)

        frame = pd.DataFrame(
            [{column: row.get(column, np.nan if column not in ('status', 'error') else '') for column in SWEEP_COLUMNS}
             for row in rows],
            columns=SWEEP_COLUMNS,
        )
        failed = [row for row in rows if row.get('status') != 'success']
        summary = {
            'label': spec.base.label,
            'parameter': spec.parameter,
            'values': [float(v) for v in spec.values],
            'succeeded': len(rows) - len(failed),
            'failed': len(failed),
            'rows': rows,
        }

        if out_dir is not None:
            path = ReportService.ensure_dir(out_dir)
            ReportService.write_frame(frame, path / 'sweep.csv')
            ReportService.write_reports(path, f"sweep {spec.base.label} over {spec.parameter}", summary)
        for row in failed:
            logger.error(f"sweep {spec.base.label}: {spec.parameter}={row['value']} failed: {row.get('error')}")
        logger.info(f"swept {spec.parameter} over {len(rows)} values for {spec.base.label}, {len(failed)} failed")
        return SweepOutcome(frame, jsonable(summary))
