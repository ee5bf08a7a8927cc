"""
Pontryagin optimality system for the controlled SEIZ model.

    H = i + A u^2/2 + B v^2/2 + C w^2/2 + p . g(x, u, v, w)

where g is the controlled right-hand side. The adjoint system is the exact
-dH/dx of this Hamiltonian.
"""

import numpy as np

from core.exceptions import GridMismatchException
from dynamics import ControlValue, rhs_controlled


def running_cost(i, c, wts):
    u, v, w = c
    return i + 0.5 * (wts.a * u * u + wts.b_w * v * v + wts.c_w * w * w)


def hamiltonian(x, p, c, theta, wts, sw):
    return float(running_cost(x[2], c, wts) + np.dot(p, rhs_controlled(x, theta, c, sw)))


def adjoint_rhs(x, p, c, theta, wts, sw):
    s, e, i, z = x
    p1, p2, p3, p4 = p
    u, v, w = c
    us, ve, wi = sw[0] * u, sw[1] * v, sw[2] * w
    beta, b, rho, lam = theta.beta, theta.b, theta.rho, theta.lam
    pp, l, mu, eps, delta = theta.p, theta.l, theta.mu, theta.eps, theta.delta
    return np.array([
        -(p1 * (-mu - beta * i - b * z - us)
          + p2 * ((1 - pp) * beta * i + (1 - l) * b * z)
          + p3 * pp * beta * i
          + p4 * (l * b * z + us)),
        -(p2 * (-rho * i - eps - mu - ve)
          + p3 * (rho * i + eps)),
        -(1.0
          - p1 * beta * s
          + p2 * ((1 - pp) * beta * s - rho * e)
          + p3 * (pp * beta * s + rho * e - delta - lam * z - mu - wi)
          + p4 * (delta + lam * z)),
        -(-p1 * b * s
          + p2 * (1 - l) * b * s
          - p3 * lam * i
          + p4 * (l * b * s + lam * i - mu)),
    ])


def control_gradient(x, p, c, wts, sw):
    """dH/d(u, v, w)."""
    s, e, i, _ = x
    p1, p2, p3, p4 = p
    u, v, w = c
    return np.array([
        wts.a * u - sw[0] * s * (p1 - p4),
        wts.b_w * v - sw[1] * p2 * e,
        wts.c_w * w - sw[2] * p3 * i,
    ])


def stationarity_residual(x, p, c, wts, sw):
    return np.abs(control_gradient(x, p, c, wts, sw))


def characterize_controls(x, p, wts, sw):
    s, e, i, _ = x
    p1, p2, p3, p4 = p
    return ControlValue(
        min(max(0.0, sw[0] * s * (p1 - p4) / wts.a), 1.0),
        min(max(0.0, sw[1] * p2 * e / wts.b_w), 1.0),
        min(max(0.0, sw[2] * p3 * i / wts.c_w), 1.0),
    )


def control_targets(states, adjoints, wts, sw):
    """Unclamped minimizers of H over aligned (n+1, 4) arrays; switched-off columns are 0."""
    s, e, i = states[:, 0], states[:, 1], states[:, 2]
    return np.column_stack([
        sw[0] * s * (adjoints[:, 0] - adjoints[:, 3]) / wts.a,
        sw[1] * adjoints[:, 1] * e / wts.b_w,
        sw[2] * adjoints[:, 2] * i / wts.c_w,
    ])


def characterize_control_nodes(states, adjoints, wts, sw):
    """Node-wise characterize_controls over aligned (n+1, 4) arrays."""
    # + 0.0 turns -0.0 into 0.0
    return np.clip(control_targets(states, adjoints, wts, sw), 0.0, 1.0) + 0.0


def objective(traj, ctrl, wts):
    """Composite trapezoid of i + A u^2/2 + B v^2/2 + C w^2/2 over the grid."""
    if traj.grid != ctrl.grid:
        raise GridMismatchException()
    c = ctrl.values
    integrand = traj.states[:, 2] + 0.5 * (
        wts.a * c[:, 0] ** 2 + wts.b_w * c[:, 1] ** 2 + wts.c_w * c[:, 2] ** 2
    )
    return float(traj.grid.h * (integrand.sum() - 0.5 * (integrand[0] + integrand[-1])))
