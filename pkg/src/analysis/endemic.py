"""
Endemic (rumor-persisting) equilibrium.

Two routes are evaluated. The closed-form route assumes e* = 0, solves the
cubic A S^3 + B S^2 + C S + D = 0 for S* and reads I*, Z* off the explicit
formulas. That ansatz is only consistent with de/dt = 0 in degenerate cases,
so a damped Newton solve of the full right-hand side (e unconstrained) from
spread starting points is authoritative; cubic roots are kept for comparison.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from core.exceptions import DomainException
from dynamics import rhs_uncontrolled, state_jacobian

logger = logging.getLogger(__name__)

ENDEMIC_TOL = 1e-8
MIN_SPREADERS = 1e-8

# fractions of the carrying capacity pi/mu
NEWTON_STARTS = (
    (0.90, 0.01, 0.05, 0.01),
    (0.50, 0.05, 0.30, 0.05),
    (0.20, 0.05, 0.60, 0.10),
    (0.10, 0.10, 0.70, 0.10),
    (0.70, 0.10, 0.10, 0.10),
    (0.30, 0.20, 0.30, 0.20),
    (0.05, 0.05, 0.40, 0.50),
    (0.40, 0.00, 0.50, 0.10),
)


@dataclass(frozen=True)
class EndemicSolution:
    s_star: float
    e_star: float
    i_star: float
    z_star: float
    residual: float
    source: str
    cubic_roots: list = field(default_factory=list)

    @property
    def state(self):
        return (self.s_star, self.e_star, self.i_star, self.z_star)

    def to_dict(self):
        return {
            's_star': self.s_star,
            'e_star': self.e_star,
            'i_star': self.i_star,
            'z_star': self.z_star,
            'residual': self.residual,
            'source': self.source,
            'cubic_roots': list(self.cubic_roots),
        }


def endemic_cubic(theta):
    """Coefficients (A, B, C, D) of the susceptible cubic under the e* = 0 ansatz."""
    p, l, b, beta, lam = theta.p, theta.l, theta.b, theta.beta, theta.lam
    mu, delta, pi = theta.mu, theta.delta, theta.pi
    A = p * b * beta / lam * (l - p)
    B = -(l * b * beta + l * b * mu + delta * p + p * mu - p * b * mu + p * beta * mu + p * lam * mu) / lam
    C = p * beta * pi + mu ** 2 * (beta + lam + 1.0) / (lam * beta) + delta * mu / lam
    D = -mu * pi / beta
    return A, B, C, D


def _real_roots(coefficients):
    roots = np.roots(coefficients)
    real = [float(r.real) for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]
    return sorted(real)


def _residual(x, theta):
    return float(np.max(np.abs(rhs_uncontrolled(x, theta))))


def _cubic_candidates(theta, roots):
    capacity = theta.pi / theta.mu
    p, b, beta, lam = theta.p, theta.b, theta.beta, theta.lam
    mu, delta, pi = theta.mu, theta.delta, theta.pi
    candidates = []
    for s in roots:
        if not 0.0 < s <= capacity:
            continue
        i = pi / (beta * s) - mu / beta - p * b / lam * s - delta / (lam * beta) - mu / (lam * beta)
        z = p * beta * s / lam - delta / lam - mu / lam
        if i < 0.0 or z < 0.0:
            continue
        x = np.array([s, 0.0, i, z])
        candidates.append((x, _residual(x, theta), 'cubic'))
    return candidates


def newton_steady_state(theta, x0, max_iter=100, tol=1e-13):
    """Damped Newton on rhs_uncontrolled(x) = 0; returns (x, residual) or None."""
    x = np.array(x0, dtype=float)
    F = rhs_uncontrolled(x, theta)
    norm = np.max(np.abs(F))
    scale = max(1.0, theta.pi)
    for _ in range(max_iter):
        if norm <= tol * scale:
            break
        try:
            step = np.linalg.solve(state_jacobian(x, theta), -F)
        except np.linalg.LinAlgError:
            return None
        alpha = 1.0
        while alpha > 1e-8:
            trial = x + alpha * step
            F_trial = rhs_uncontrolled(trial, theta)
            norm_trial = np.max(np.abs(F_trial))
            if norm_trial <= (1.0 - 1e-4 * alpha) * norm:
                break
            alpha *= 0.5
        else:
            break
        x, F, norm = trial, F_trial, norm_trial
    if not np.all(np.isfinite(x)):
        return None
    return x, float(norm)


def endemic_equilibrium(theta, tol=ENDEMIC_TOL) -> Optional[EndemicSolution]:
    for name in ('mu', 'beta', 'lam'):
        if getattr(theta, name) <= 0:
            raise DomainException(f"{name} must be > 0 for the endemic equilibrium", code=name)

    roots = _real_roots(endemic_cubic(theta))
    candidates = _cubic_candidates(theta, roots)

    capacity = theta.pi / theta.mu
    for start in NEWTON_STARTS:
        solved = newton_steady_state(theta, np.array(start) * capacity)
        if solved is None:
            continue
        x, _ = solved
        if np.min(x) < -1e-10 or x[2] <= MIN_SPREADERS:
            continue
        x = np.maximum(x, 0.0)
        candidates.append((x, _residual(x, theta), 'newton'))

    accepted = [c for c in candidates if c[1] <= tol and c[0][2] > MIN_SPREADERS]
    if not accepted:
        logger.info(f"no admissible endemic equilibrium (checked {len(candidates)} candidates)")
        return None

    x, residual, source = min(accepted, key=lambda c: (c[1], tuple(c[0])))
    return EndemicSolution(
        s_star=float(x[0]),
        e_star=float(x[1]),
        i_star=float(x[2]),
        z_star=float(x[3]),
        residual=residual,
        source=source,
        cubic_roots=roots,
    )
