from dataclasses import dataclass, fields, asdict
from typing import NamedTuple

from django.core.exceptions import ValidationError

from core.exceptions import ParameterValidationException
from core.validators import (
    validate_nonnegative,
    validate_positive,
    validate_probability,
    validate_switch,
)

PARAM_NAMES = ('pi', 'mu', 'beta', 'b', 'rho', 'eps', 'p', 'l', 'delta', 'lam')
COMPARTMENTS = ('s', 'e', 'i', 'z')


def _check(validator, value, field_name):
    try:
        return validator(value, field_name)
    except ValidationError as e:
        raise ParameterValidationException('; '.join(str(m) for m in e.messages), field=field_name)


@dataclass(frozen=True)
class ModelParams:
    """Rate constants of the SEIZ system, all per unit time except p and l."""

    pi: float
    mu: float
    beta: float
    b: float
    rho: float
    eps: float
    p: float
    l: float
    delta: float
    lam: float

    def __post_init__(self):
        for f in fields(self):
            if f.name == 'mu':
                validator = validate_positive
            elif f.name in ('p', 'l'):
                validator = validate_probability
            else:
                validator = validate_nonnegative
            object.__setattr__(self, f.name, _check(validator, getattr(self, f.name), f.name))

    @property
    def carrying_capacity(self):
        return self.pi / self.mu

    def to_dict(self):
        return asdict(self)


class State(NamedTuple):
    s: float
    e: float
    i: float
    z: float

    @property
    def total(self):
        return self.s + self.e + self.i + self.z


class ControlValue(NamedTuple):
    u: float = 0.0
    v: float = 0.0
    w: float = 0.0

    @classmethod
    def validated(cls, u, v, w):
        return cls(*(_check(validate_probability, value, name) for name, value in zip(cls._fields, (u, v, w))))


class ControlSwitches(NamedTuple):
    pi1: int = 0
    pi2: int = 0
    pi3: int = 0

    @classmethod
    def validated(cls, pi1, pi2, pi3):
        return cls(*(_check(validate_switch, value, name) for name, value in zip(cls._fields, (pi1, pi2, pi3))))

    @property
    def any_active(self):
        return bool(self.pi1 or self.pi2 or self.pi3)


NO_CONTROL = ControlValue(0.0, 0.0, 0.0)
SWITCHES_OFF = ControlSwitches(0, 0, 0)
SWITCHES_ALL = ControlSwitches(1, 1, 1)
