"""
Fixed-step classical Runge-Kutta integration.

States are integrated forward on a Grid; adjoints are integrated backward
from a zero terminal value, reading states and controls at half steps by
linear interpolation between neighbouring nodes.
"""

import logging

import numpy as np

from core.exceptions import (
    DomainException,
    GridMismatchException,
    IntegrationBlowupException,
    PositivityViolationException,
)
from dynamics import COMPARTMENTS
from .trajectory import ControlSignal, Trajectory

logger = logging.getLogger(__name__)

CLAMP_THRESHOLD = 1e-12


def rk4_step(f, t, x, h):
    if h == 0:
        raise DomainException("rk4_step requires h != 0")
    half = 0.5 * h
    k1 = f(t, x)
    k2 = f(t + half, x + half * k1)
    k3 = f(t + half, x + half * k2)
    k4 = f(t + h, x + h * k3)
    out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise IntegrationBlowupException(t + h)
    return out


def _clamp_negatives(x, t, threshold):
    negative = x < 0.0
    if not negative.any():
        return x
    k = int(np.argmin(x))
    if x[k] <= -threshold:
        raise PositivityViolationException(t, COMPARTMENTS[k], float(x[k]))
    x = x.copy()
    x[negative] = 0.0
    return x


def integrate_forward(f, grid, x0, clamp_threshold=CLAMP_THRESHOLD):
    x = np.array(x0, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainException(f"initial state must be finite, got {x0!r}")
    states = np.empty((grid.size, x.size))
    states[0] = x
    h = grid.h
    for k in range(grid.n_steps):
        t = grid.t0 + k * h
        x = rk4_step(f, t, x, h)
        x = _clamp_negatives(x, t + h, clamp_threshold)
        states[k + 1] = x
    return Trajectory(grid, states)


def integrate_adjoint_backward(g, grid, state_traj, controls=None):
    """
    Integrate g(t, p, x, c) backward from p(tf) = 0.

    Returns a Trajectory carrying the given states and controls with the
    adjoint rows filled for every node.
    """
    if state_traj.grid != grid:
        raise GridMismatchException()
    if controls is None:
        controls = ControlSignal.zeros(grid)
    elif controls.grid != grid:
        raise GridMismatchException()

    def f(t, p):
        return np.asarray(g(t, p, state_traj.state_at(t), controls.at(t)), dtype=float)

    adjoints = np.zeros((grid.size, 4))
    p = adjoints[-1].copy()
    h = grid.h
    for k in range(grid.n_steps, 0, -1):
        t = grid.t0 + k * h
        p = rk4_step(f, t, p, -h)
        adjoints[k - 1] = p
    return Trajectory(grid, state_traj.states, controls=controls.values, adjoints=adjoints)
