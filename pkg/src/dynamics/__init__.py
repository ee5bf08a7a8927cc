from .types import (
    PARAM_NAMES,
    COMPARTMENTS,
    ModelParams,
    State,
    ControlValue,
    ControlSwitches,
    NO_CONTROL,
    SWITCHES_OFF,
    SWITCHES_ALL,
)
from .equations import (
    normalize,
    denormalize,
    rhs_uncontrolled,
    rhs_controlled,
    state_jacobian,
    total_population_analytic,
    in_invariant_region,
)

__all__ = [
    'PARAM_NAMES',
    'COMPARTMENTS',
    'ModelParams',
    'State',
    'ControlValue',
    'ControlSwitches',
    'NO_CONTROL',
    'SWITCHES_OFF',
    'SWITCHES_ALL',
    'normalize',
    'denormalize',
    'rhs_uncontrolled',
    'rhs_controlled',
    'state_jacobian',
    'total_population_analytic',
    'in_invariant_region',
]
