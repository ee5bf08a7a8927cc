from .stability import (
    Verdict,
    NextGenMatrices,
    StabilityReport,
    rumor_free_equilibrium,
    next_generation,
    r0,
    jacobian_rfe,
    a2_closed_form,
    cubic_coefficients,
    solve_cubic,
    routh_hurwitz,
    rfe_eigenvalues,
    stability_report,
)
from .endemic import EndemicSolution, endemic_cubic, newton_steady_state, endemic_equilibrium
from .decay import DecayCheck, spreader_decay_check

__all__ = [
    'Verdict',
    'NextGenMatrices',
    'StabilityReport',
    'rumor_free_equilibrium',
    'next_generation',
    'r0',
    'jacobian_rfe',
    'a2_closed_form',
    'cubic_coefficients',
    'solve_cubic',
    'routh_hurwitz',
    'rfe_eigenvalues',
    'stability_report',
    'EndemicSolution',
    'endemic_cubic',
    'newton_steady_state',
    'endemic_equilibrium',
    'DecayCheck',
    'spreader_decay_check',
]
