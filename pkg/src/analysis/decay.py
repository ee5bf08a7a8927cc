from typing import NamedTuple

from dynamics import State, rhs_uncontrolled
from integrator import Grid, integrate_forward

DECAY_THRESHOLD = 1e-3


class DecayCheck(NamedTuple):
    decayed: bool
    i_initial: float
    i_final: float


def spreader_decay_check(theta, x0=None, grid=None, threshold=DECAY_THRESHOLD):
    """
    Empirical probe of global stability of the RFE when R0 <= 1: with the
    Lyapunov function L = w i, spreaders must die out from any seed.
    """
    if x0 is None:
        x0 = State(theta.pi / theta.mu - 0.01, 0.0, 0.01, 0.0)
    if grid is None:
        grid = Grid(0.0, 100.0, 10000)
    trajectory = integrate_forward(lambda t, x: rhs_uncontrolled(x, theta), grid, x0)
    i_initial = float(x0[2])
    i_final = float(trajectory.states[-1, 2])
    decayed = i_final < threshold and (i_initial == 0.0 or i_final < i_initial)
    return DecayCheck(decayed, i_initial, i_final)
