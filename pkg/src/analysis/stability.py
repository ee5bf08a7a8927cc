"""
Threshold and local stability analysis at the rumor-free equilibrium (RFE).

The RFE Jacobian always factors as (-lambda - mu) times a cubic in the
(e, i, z) block, so its eigenvalues are -mu plus the three cubic roots. The
cubic is solved in closed form (trigonometric / Cardano) instead of with a
general eigensolver.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from django.db import models

from core.exceptions import DomainException
from dynamics import State

logger = logging.getLogger(__name__)

STABILITY_TOL = 1e-9


class Verdict(models.TextChoices):
    LOCALLY_STABLE = 'LocallyStable', 'Locally stable'
    UNSTABLE = 'Unstable', 'Unstable'
    MARGINAL = 'Marginal', 'Marginal'


@dataclass(frozen=True, eq=False)
class NextGenMatrices:
    F: np.ndarray
    V: np.ndarray
    K: np.ndarray

    @property
    def spectral_radius(self):
        # K = F V^-1 is 2x2: eigenvalues from trace and determinant
        trace = self.K[0, 0] + self.K[1, 1]
        det = self.K[0, 0] * self.K[1, 1] - self.K[0, 1] * self.K[1, 0]
        disc = trace * trace / 4.0 - det
        if disc >= 0:
            root = math.sqrt(disc)
            return max(abs(trace / 2.0 + root), abs(trace / 2.0 - root))
        return math.sqrt(det)


@dataclass(frozen=True, eq=False)
class StabilityReport:
    r0: float
    rfe: State
    jacobian: np.ndarray
    eigenvalues: np.ndarray
    a2: float
    a1: float
    a0: float
    routh_hurwitz_pass: bool
    verdict: str
    max_real_part: float
    a2_closed_form: float
    a2_mismatch: bool = False
    threshold_consistent: bool = True
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            'r0': self.r0,
            'rfe': dict(self.rfe._asdict()),
            'jacobian': self.jacobian.tolist(),
            'eigenvalues': [[float(ev.real), float(ev.imag)] for ev in self.eigenvalues],
            'a2': self.a2,
            'a1': self.a1,
            'a0': self.a0,
            'a2_closed_form': self.a2_closed_form,
            'a2_mismatch': self.a2_mismatch,
            'routh_hurwitz_pass': self.routh_hurwitz_pass,
            'threshold_consistent': self.threshold_consistent,
            'max_real_part': self.max_real_part,
            'verdict': str(self.verdict),
            'notes': list(self.notes),
        }


def _require_mu(theta):
    if theta.mu <= 0:
        raise DomainException(f"mu must be > 0, got {theta.mu!r}", code='mu')


def rumor_free_equilibrium(theta):
    _require_mu(theta)
    return State(theta.pi / theta.mu, 0.0, 0.0, 0.0)


def next_generation(theta):
    _require_mu(theta)
    s0 = theta.pi / theta.mu
    F = np.array([
        [0.0, (1.0 - theta.p) * theta.beta * s0],
        [0.0, theta.p * theta.beta * s0],
    ])
    V = np.array([
        [theta.eps + theta.mu, 0.0],
        [-theta.eps, theta.delta + theta.mu],
    ])
    det_v = V[0, 0] * V[1, 1]
    V_inv = np.array([
        [V[1, 1] / det_v, 0.0],
        [-V[1, 0] / det_v, V[0, 0] / det_v],
    ])
    return NextGenMatrices(F=F, V=V, K=F @ V_inv)


def r0(theta):
    _require_mu(theta)
    return (theta.beta * theta.pi * (theta.eps + theta.p * theta.mu)
            / (theta.mu * (theta.eps + theta.mu) * (theta.delta + theta.mu)))


def jacobian_rfe(theta):
    _require_mu(theta)
    s0 = theta.pi / theta.mu
    beta_s, b_s = theta.beta * s0, theta.b * s0
    mu = theta.mu
    return np.array([
        [-mu, 0.0, -beta_s, -b_s],
        [0.0, -theta.eps - mu, (1.0 - theta.p) * beta_s, (1.0 - theta.l) * b_s],
        [0.0, theta.eps, theta.p * beta_s - theta.delta - mu, 0.0],
        [0.0, 0.0, theta.delta, theta.l * b_s - mu],
    ])


def a2_closed_form(theta):
    s0 = theta.pi / theta.mu
    return (theta.eps + theta.delta + 3.0 * theta.mu
            - theta.p * theta.beta * s0 - theta.l * theta.b * s0)


def cubic_coefficients(theta):
    """(a2, a1, a0) of det(lambda I - M) for the (e, i, z) block M of the RFE Jacobian."""
    M = jacobian_rfe(theta)[1:, 1:]
    a2 = -float(np.trace(M))
    a1 = float(
        M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        + M[0, 0] * M[2, 2] - M[0, 2] * M[2, 0]
        + M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1]
    )
    a0 = -float(
        M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
        - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
        + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0])
    )
    return a2, a1, a0


def solve_cubic(a2, a1, a0):
    """All three roots of lambda^3 + a2 lambda^2 + a1 lambda + a0, as complex numbers."""
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc > 0:
        root = math.sqrt(disc)
        A = float(np.cbrt(-q / 2.0 + root))
        B = float(np.cbrt(-q / 2.0 - root))
        real = -(A + B) / 2.0
        imag = math.sqrt(3.0) / 2.0 * (A - B)
        ys = [complex(A + B, 0.0), complex(real, imag), complex(real, -imag)]
    elif p == 0.0:
        ys = [0j, 0j, 0j]
    else:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
        phi = math.acos(min(1.0, max(-1.0, arg)))
        ys = [complex(r * math.cos(phi / 3.0 - 2.0 * math.pi * k / 3.0), 0.0) for k in range(3)]
    roots = np.array([y - shift for y in ys], dtype=complex)
    return _polish_roots(roots, a2, a1, a0)


def _polish_roots(roots, a2, a1, a0, iterations=2):
    for _ in range(iterations):
        value = ((roots + a2) * roots + a1) * roots + a0
        slope = (3.0 * roots + 2.0 * a2) * roots + a1
        safe = np.abs(slope) > 1e-14
        roots = np.where(safe, roots - value / np.where(safe, slope, 1.0), roots)
    return roots


def routh_hurwitz(a2, a1, a0):
    return bool(a2 > 0 and a0 > 0 and a2 * a1 > a0)


def rfe_eigenvalues(theta):
    a2, a1, a0 = cubic_coefficients(theta)
    return np.concatenate(([complex(-theta.mu, 0.0)], solve_cubic(a2, a1, a0)))


def stability_report(theta, tol=STABILITY_TOL):
    _require_mu(theta)
    value = r0(theta)
    a2, a1, a0 = cubic_coefficients(theta)
    eigenvalues = np.concatenate(([complex(-theta.mu, 0.0)], solve_cubic(a2, a1, a0)))
    max_re = float(np.max(eigenvalues.real))
    rh_pass = routh_hurwitz(a2, a1, a0)
    notes = []

    closed = a2_closed_form(theta)
    a2_mismatch = abs(closed - a2) > 1e-9 * max(1.0, abs(a2))
    if a2_mismatch:
        logger.warning(f"a2 from the block trace ({a2:.12g}) differs from the closed form ({closed:.12g})")
        notes.append('a2 closed form disagrees with -trace of the (e,i,z) block')

    if max_re < -tol:
        verdict = Verdict.LOCALLY_STABLE
    elif max_re > tol:
        verdict = Verdict.UNSTABLE
    else:
        verdict = Verdict.MARGINAL

    threshold_consistent = (value < 1.0) == rh_pass
    if not threshold_consistent:
        logger.warning(
            f"R0={value:.6g} and Routh-Hurwitz ({'pass' if rh_pass else 'fail'}) disagree; "
            f"reporting Marginal"
        )
        notes.append('R0 threshold and Routh-Hurwitz disagree; skeptic feedback (1-l) b s0 through z -> e -> i -> z shifts a0')
        verdict = Verdict.MARGINAL

    return StabilityReport(
        r0=value,
        rfe=State(theta.pi / theta.mu, 0.0, 0.0, 0.0),
        jacobian=jacobian_rfe(theta),
        eigenvalues=eigenvalues,
        a2=a2,
        a1=a1,
        a0=a0,
        routh_hurwitz_pass=rh_pass,
        verdict=verdict,
        max_real_part=max_re,
        a2_closed_form=closed,
        a2_mismatch=a2_mismatch,
        threshold_consistent=threshold_consistent,
        notes=notes,
    )
