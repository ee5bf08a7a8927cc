from integrator import ControlSignal
from .types import Adjoint, ControlWeights, FbsConfig, FbsResult
from .hamiltonian import (
    running_cost,
    hamiltonian,
    adjoint_rhs,
    control_gradient,
    stationarity_residual,
    characterize_controls,
    control_targets,
    characterize_control_nodes,
    objective,
)
from .sweep import solve_states, solve_adjoints, forward_backward_sweep

__all__ = [
    'ControlSignal',
    'Adjoint',
    'ControlWeights',
    'FbsConfig',
    'FbsResult',
    'running_cost',
    'hamiltonian',
    'adjoint_rhs',
    'control_gradient',
    'stationarity_residual',
    'characterize_controls',
    'control_targets',
    'characterize_control_nodes',
    'objective',
    'solve_states',
    'solve_adjoints',
    'forward_backward_sweep',
]
