from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError

from core.exceptions import ParameterValidationException
from dynamics import ControlSwitches, ModelParams, State
from integrator import Grid
from optimal_control import ControlWeights, FbsConfig
from .validators import validate_label, validate_sweep_parameter, validate_sweep_values


def default_init(params):
    """Rumor-free state with a small spreader seed moved out of s."""
    seed = settings.SEIZ_DEFAULTS['spreader_seed']
    return State(params.carrying_capacity - seed, 0.0, seed, 0.0)


@dataclass(frozen=True)
class ScenarioConfig:
    label: str
    params: ModelParams
    init: State
    grid: Grid
    switches: ControlSwitches = ControlSwitches(0, 0, 0)
    weights: ControlWeights = field(default_factory=ControlWeights)
    fbs: FbsConfig = field(default_factory=FbsConfig)
    base: Optional[str] = None
    init_defaulted: bool = False
    sweep: Optional[Tuple[str, Tuple[float, ...]]] = None

    def __post_init__(self):
        try:
            validate_label(self.label)
        except ValidationError as e:
            raise ParameterValidationException('; '.join(str(m) for m in e.messages), field='scenario.label')
        if any(value < 0 for value in self.init):
            raise ParameterValidationException(f"initial state must be nonnegative, got {tuple(self.init)}", field='init')

    def with_param(self, name, value):
        """Copy with one rate constant replaced; a defaulted seed follows the new pi/mu."""
        params = ModelParams(**{**self.params.to_dict(), name: value})
        init = default_init(params) if self.init_defaulted else self.init
        return replace(self, params=params, init=init, sweep=None)

    def to_dict(self):
        return {
            'label': self.label,
            'base': self.base,
            'params': self.params.to_dict(),
            'init': dict(self.init._asdict()),
            'init_defaulted': self.init_defaulted,
            'grid': {'t0': self.grid.t0, 'tf': self.grid.tf, 'n_steps': self.grid.n_steps},
            'control': {
                **self.switches._asdict(),
                'a': self.weights.a,
                'b_w': self.weights.b_w,
                'c_w': self.weights.c_w,
                'relaxation': self.fbs.relaxation,
                'tol': self.fbs.tol,
                'max_iter': self.fbs.max_iter,
            },
        }

    @classmethod
    def from_dict(cls, data):
        control = data['control']
        return cls(
            label=data['label'],
            base=data.get('base'),
            params=ModelParams(**data['params']),
            init=State(**data['init']),
            init_defaulted=data.get('init_defaulted', False),
            grid=Grid(**data['grid']),
            switches=ControlSwitches.validated(control['pi1'], control['pi2'], control['pi3']),
            weights=ControlWeights(control['a'], control['b_w'], control['c_w']),
            fbs=FbsConfig(control['relaxation'], control['tol'], control['max_iter']),
        )


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: Tuple[float, ...]
    base: ScenarioConfig

    def __post_init__(self):
        try:
            validate_sweep_parameter(self.parameter)
            validate_sweep_values(self.values)
        except ValidationError as e:
            raise ParameterValidationException('; '.join(str(m) for m in e.messages), field='sweep')

    def configs(self):
        return [self.base.with_param(self.parameter, value) for value in self.values]
