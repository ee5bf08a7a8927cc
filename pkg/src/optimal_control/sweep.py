"""
Forward-backward sweep for the controlled SEIZ model.

Each iteration integrates the adjoints backward under the current controls and
characterizes the pointwise minimizers of H. The next iterate blends the
current controls toward the unclamped minimizers and clamps the blend to
[0, 1]; the blend factor starts at ``relaxation``, is re-estimated from the
last two iterates and is halved until the objective decreases. Iteration stops
when a full step would move no control by more than
``tol * max(1, max|candidate|)``.

States, adjoints, controls and objective in the result all come from one
integration of the returned controls.
"""

import logging

import numpy as np

from dynamics import SWITCHES_ALL, rhs_controlled
from integrator import ControlSignal, Trajectory, integrate_forward, integrate_adjoint_backward
from .hamiltonian import adjoint_rhs, control_targets, objective
from .types import ControlWeights, FbsConfig, FbsResult

logger = logging.getLogger(__name__)

DESCENT_WINDOW = 5
MIN_STEP = 1e-6
MAX_STEP = 1.0
ARMIJO = 1e-4


def solve_states(theta, x0, grid, controls, sw):
    def f(t, x):
        return rhs_controlled(x, theta, controls.at(t), sw)

    trajectory = integrate_forward(f, grid, x0)
    return Trajectory(grid, trajectory.states, controls=controls.values)


def solve_adjoints(theta, grid, states, controls, wts, sw):
    def g(t, p, x, c):
        return adjoint_rhs(x, p, c, theta, wts, sw)

    return integrate_adjoint_backward(g, grid, states, controls)


def _descent_ok(history, tol):
    window = history[-DESCENT_WINDOW:]
    return all(b - a <= tol * max(1.0, abs(a)) for a, b in zip(window, window[1:]))


def _quadrature_weights(grid):
    weights = np.full(grid.size, grid.h)
    weights[[0, -1]] *= 0.5
    return weights


def _spectral_step(moved, gradient_change):
    """Barzilai-Borwein estimate of the blend factor, kept in [MIN_STEP, MAX_STEP]."""
    curvature = float(np.sum(moved * gradient_change))
    if curvature <= 0.0:
        return MAX_STEP
    return min(max(float(np.sum(moved * moved)) / curvature, MIN_STEP), MAX_STEP)


def _blend(values, targets, step):
    return np.clip(values + step * (targets - values), 0.0, 1.0) + 0.0


def _line_search(theta, x0, grid, wts, sw, controls, targets, value, step, metric):
    """
    Halve ``step`` until the blended controls lower J by an Armijo margin.

    ``metric`` holds the quadrature weight times the control weight of every
    node, so ``metric * (controls - targets)`` is dJ/d(controls).
    Returns (controls, states, objective, step) or None when the step falls
    below MIN_STEP.
    """
    gradient = metric * (controls.values - targets)
    while step >= MIN_STEP:
        trial = ControlSignal(grid, _blend(controls.values, targets, step))
        states = solve_states(theta, x0, grid, trial, sw)
        trial_value = objective(states, trial, wts)
        slope = float(np.sum(gradient * (trial.values - controls.values)))
        if trial_value <= value + ARMIJO * min(slope, 0.0):
            return trial, states, trial_value, step
        logger.debug(f"sweep step {step:.3e} rejected: J={trial_value:.10g} > {value:.10g}")
        step *= 0.5
    return None


def _settle_bounds(values, candidate):
    """Move nodes whose candidate sits on a bound onto that bound."""
    on_bound = ((candidate == 0.0) | (candidate == 1.0)) & (values != candidate)
    if not on_bound.any():
        return None
    return np.where(on_bound, candidate, values)


def forward_backward_sweep(theta, x0, grid, wts=None, sw=SWITCHES_ALL, cfg=None):
    wts = wts or ControlWeights()
    cfg = cfg or FbsConfig()
    metric = _quadrature_weights(grid)[:, None] * np.array([wts.a, wts.b_w, wts.c_w])

    controls = ControlSignal.zeros(grid)
    states = solve_states(theta, x0, grid, controls, sw)
    value = objective(states, controls, wts)
    step = cfg.relaxation
    previous = None
    objective_history = []
    change_history = []
    converged = False

    for iteration in range(1, cfg.max_iter + 1):
        adjoints = solve_adjoints(theta, grid, states, controls, wts, sw)
        targets = control_targets(states.states, adjoints.adjoints, wts, sw)
        candidate = np.clip(targets, 0.0, 1.0) + 0.0
        change = float(np.max(np.abs(candidate - controls.values)))
        objective_history.append(value)
        change_history.append(change)
        logger.debug(f"sweep iteration {iteration}: J={value:.10g} change={change:.3e} step={step:.3e}")

        if change <= cfg.tol * max(1.0, float(np.max(candidate))):
            converged = True
            break
        if iteration == cfg.max_iter:
            break

        scaled_gradient = controls.values - targets
        if previous is not None:
            step = _spectral_step(controls.values - previous[0], scaled_gradient - previous[1])
        previous = (controls.values, scaled_gradient)

        accepted = _line_search(theta, x0, grid, wts, sw, controls, targets, value, step, metric)
        if accepted is None:
            logger.warning(f"sweep line search stalled at iteration {iteration}, change {change:.3e}")
            break
        controls, states, value, step = accepted

    if converged:
        settled = _settle_bounds(controls.values, candidate)
        if settled is not None:
            controls = ControlSignal(grid, settled)
            states = solve_states(theta, x0, grid, controls, sw)
            adjoints = solve_adjoints(theta, grid, states, controls, wts, sw)
            value = objective(states, controls, wts)

    descent_ok = _descent_ok(objective_history, cfg.tol)
    if not descent_ok:
        logger.warning(f"objective increased during the last {DESCENT_WINDOW} sweep iterations")
    if converged:
        logger.info(f"forward-backward sweep converged in {iteration} iterations, J={value:.8g}")
    else:
        logger.warning(f"forward-backward sweep stopped after {iteration} iterations, last change {change:.3e}")

    return FbsResult(
        controls=controls,
        states=states,
        adjoints=adjoints,
        objective=value,
        iterations=iteration,
        converged=converged,
        last_change=change,
        objective_history=objective_history,
        change_history=change_history,
        descent_ok=descent_ok,
    )
