from .trajectory import (
    Grid,
    ControlSignal,
    Trajectory,
    interpolate_nodes,
    CONTROL_NAMES,
    ADJOINT_NAMES,
)
from .rk4 import rk4_step, integrate_forward, integrate_adjoint_backward, CLAMP_THRESHOLD

__all__ = [
    'Grid',
    'ControlSignal',
    'Trajectory',
    'interpolate_nodes',
    'CONTROL_NAMES',
    'ADJOINT_NAMES',
    'rk4_step',
    'integrate_forward',
    'integrate_adjoint_backward',
    'CLAMP_THRESHOLD',
]
