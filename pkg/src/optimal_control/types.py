from dataclasses import dataclass, field
from typing import NamedTuple

from django.core.exceptions import ValidationError

from core.exceptions import ParameterValidationException
from core.validators import validate_positive, validate_positive_int, validate_relaxation


class Adjoint(NamedTuple):
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0
    p4: float = 0.0


def _validated(instance, rules):
    for name, validator in rules.items():
        try:
            value = validator(getattr(instance, name), name)
        except ValidationError as e:
            raise ParameterValidationException('; '.join(str(m) for m in e.messages), field=name)
        object.__setattr__(instance, name, value)


@dataclass(frozen=True)
class ControlWeights:
    """Cost coefficients A, B, C of u^2, v^2, w^2 in the objective."""

    a: float = 1.0
    b_w: float = 1.0
    c_w: float = 1.0

    def __post_init__(self):
        _validated(self, {'a': validate_positive, 'b_w': validate_positive, 'c_w': validate_positive})


@dataclass(frozen=True)
class FbsConfig:
    relaxation: float = 0.5
    tol: float = 1e-3
    max_iter: int = 200

    def __post_init__(self):
        _validated(self, {
            'relaxation': validate_relaxation,
            'tol': validate_positive,
            'max_iter': validate_positive_int,
        })


@dataclass(frozen=True, eq=False)
class FbsResult:
    """
    Outcome of a forward-backward sweep.

    ``states``, ``adjoints`` and ``objective`` come from integrating the
    returned ``controls``. ``last_change`` is the largest move a full step
    toward the characterized controls would have made at the last iteration.
    """

    controls: object
    states: object
    adjoints: object
    objective: float
    iterations: int
    converged: bool
    last_change: float
    objective_history: list = field(default_factory=list)
    change_history: list = field(default_factory=list)
    descent_ok: bool = True

    def summary(self):
        return {
            'objective': self.objective,
            'iterations': self.iterations,
            'converged': self.converged,
            'last_change': self.last_change,
            'descent_ok': self.descent_ok,
        }
