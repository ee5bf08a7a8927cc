"""
Right-hand sides of the normalized SEIZ rumor model.

    ds/dt = pi - mu s - beta s i - b s z                          - pi1 u s
    de/dt = (1-p) beta s i + (1-l) b s z - rho e i - (eps+mu) e   - pi2 v e
    di/dt = p beta s i + rho e i + eps e - (delta+mu) i - lam i z - pi3 w i
    dz/dt = l b s z + delta i + lam i z - mu z                    + pi1 u s

pi stays an absolute inflow after normalization, so states are fractions of
the reference population N and may exceed 1 (pi/mu is the carrying capacity).
Controls v and w remove mass from the system; it re-enters nowhere.
"""

import numpy as np

from core.exceptions import DomainException
from .types import State, NO_CONTROL, SWITCHES_OFF


def normalize(S, E, I, Z, N):
    if N <= 0:
        raise DomainException(f"total population N must be > 0, got {N!r}")
    counts = (S, E, I, Z)
    if any(c < 0 for c in counts):
        raise DomainException(f"compartment counts must be ≥ 0, got {counts!r}")
    return State(S / N, E / N, I / N, Z / N)


def denormalize(x, N):
    if N <= 0:
        raise DomainException(f"total population N must be > 0, got {N!r}")
    s, e, i, z = x
    return State(s * N, e * N, i * N, z * N)


def rhs_uncontrolled(x, theta):
    s, e, i, z = x
    bsi = theta.beta * s * i
    bsz = theta.b * s * z
    rei = theta.rho * e * i
    liz = theta.lam * i * z
    # mu (pi/mu - s) rather than pi - mu s: the RFE is then an exact fixed point
    recruitment = theta.mu * (theta.pi / theta.mu - s)
    return np.array([
        recruitment - bsi - bsz,
        (1.0 - theta.p) * bsi + (1.0 - theta.l) * bsz - rei - (theta.eps + theta.mu) * e,
        theta.p * bsi + rei + theta.eps * e - (theta.delta + theta.mu) * i - liz,
        theta.l * bsz + theta.delta * i + liz - theta.mu * z,
    ])


def rhs_controlled(x, theta, c=NO_CONTROL, sw=SWITCHES_OFF):
    s, e, i, _ = x
    u, v, w = c
    moved = sw[0] * u * s
    return rhs_uncontrolled(x, theta) + np.array([
        -moved,
        -(sw[1] * v * e),
        -(sw[2] * w * i),
        moved,
    ])


def state_jacobian(x, theta, c=NO_CONTROL, sw=SWITCHES_OFF):
    """Jacobian d(rhs_controlled)/dx at an arbitrary state."""
    s, e, i, z = x
    u, v, w = c
    beta, b, rho, lam = theta.beta, theta.b, theta.rho, theta.lam
    p, l, mu, eps, delta = theta.p, theta.l, theta.mu, theta.eps, theta.delta
    us, ve, wi = sw[0] * u, sw[1] * v, sw[2] * w
    return np.array([
        [-mu - beta * i - b * z - us, 0.0, -beta * s, -b * s],
        [(1 - p) * beta * i + (1 - l) * b * z, -rho * i - eps - mu - ve, (1 - p) * beta * s - rho * e, (1 - l) * b * s],
        [p * beta * i, rho * i + eps, p * beta * s + rho * e - delta - lam * z - mu - wi, -lam * i],
        [l * b * z + us, 0.0, delta + lam * z, l * b * s + lam * i - mu],
    ])


def total_population_analytic(n0, t, theta):
    """Exact solution of dn/dt = pi - mu n, which the uncontrolled sum obeys."""
    capacity = theta.pi / theta.mu
    return capacity + (n0 - capacity) * np.exp(-theta.mu * np.asarray(t, dtype=float))


def in_invariant_region(x, theta, tol=1e-9):
    values = np.asarray(x, dtype=float)
    return bool(np.all(values >= -tol) and values.sum() <= theta.pi / theta.mu + tol)
