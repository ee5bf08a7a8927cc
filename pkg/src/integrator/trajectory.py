from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from core.exceptions import DomainException, GridMismatchException, ParameterValidationException
from dynamics import COMPARTMENTS, State, ControlValue

CONTROL_NAMES = ('u', 'v', 'w')
ADJOINT_NAMES = ('p1', 'p2', 'p3', 'p4')


@dataclass(frozen=True)
class Grid:
    t0: float
    tf: float
    n_steps: int

    def __post_init__(self):
        if not self.tf > self.t0:
            raise DomainException(f"grid requires tf > t0, got t0={self.t0!r}, tf={self.tf!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise DomainException(f"grid requires n_steps ≥ 1, got {self.n_steps!r}")
        object.__setattr__(self, 'n_steps', int(self.n_steps))

    @classmethod
    def from_step(cls, t0, tf, h):
        if h <= 0:
            raise DomainException(f"step h must be > 0, got {h!r}")
        return cls(float(t0), float(tf), max(1, int(round((tf - t0) / h))))

    @property
    def h(self):
        return (self.tf - self.t0) / self.n_steps

    @property
    def size(self):
        return self.n_steps + 1

    def nodes(self):
        return self.t0 + np.arange(self.size) * self.h


def interpolate_nodes(values, grid, t):
    """Linear interpolation of node-aligned rows at time t."""
    position = (t - grid.t0) / grid.h
    k = min(max(int(np.floor(position)), 0), grid.n_steps - 1)
    weight = position - k
    return values[k] + weight * (values[k + 1] - values[k])


@dataclass(frozen=True, eq=False)
class ControlSignal:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.size, 3):
            raise GridMismatchException(
                f"control signal shape {values.shape} does not match grid size {self.grid.size}"
            )
        if values.size and (values.min() < 0.0 or values.max() > 1.0):
            raise ParameterValidationException('control values ∈ [0,1] violated', field='controls')
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros((grid.size, 3)))

    def at(self, t):
        return interpolate_nodes(self.values, self.grid, t)

    def node(self, k):
        return ControlValue(*self.values[k])

    def component(self, name):
        return self.values[:, CONTROL_NAMES.index(name)]


@dataclass(frozen=True, eq=False)
class Trajectory:
    grid: Grid
    states: np.ndarray
    controls: Optional[np.ndarray] = None
    adjoints: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ('states', 'controls', 'adjoints'):
            array = getattr(self, name)
            if array is None:
                continue
            array = np.asarray(array, dtype=float)
            if array.shape[0] != self.grid.size:
                raise GridMismatchException(
                    f"{name} has {array.shape[0]} rows, grid has {self.grid.size} nodes"
                )
            object.__setattr__(self, name, array)

    @property
    def times(self):
        return self.grid.nodes()

    @property
    def totals(self):
        return self.states.sum(axis=1)

    def state(self, k):
        return State(*self.states[k])

    def state_at(self, t):
        return interpolate_nodes(self.states, self.grid, t)

    def column(self, name):
        if name in COMPARTMENTS:
            return self.states[:, COMPARTMENTS.index(name)]
        if name in CONTROL_NAMES and self.controls is not None:
            return self.controls[:, CONTROL_NAMES.index(name)]
        if name in ADJOINT_NAMES and self.adjoints is not None:
            return self.adjoints[:, ADJOINT_NAMES.index(name)]
        raise KeyError(name)

    def peak(self, name):
        values = self.column(name)
        k = int(np.argmax(values))
        return float(values[k]), float(self.times[k])

    def to_frame(self):
        frame = pd.DataFrame(self.states, columns=list(COMPARTMENTS))
        frame.insert(0, 't', self.times)
        if self.controls is not None:
            for j, name in enumerate(CONTROL_NAMES):
                frame[name] = self.controls[:, j]
        if self.adjoints is not None:
            for j, name in enumerate(ADJOINT_NAMES):
                frame[name] = self.adjoints[:, j]
        return frame
