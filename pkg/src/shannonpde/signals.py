"""Signals and points of the scale-shift plane."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

from .errors import InvalidScaleError, MalformedInputError


class ScaleShiftPoint(NamedTuple):
    a: float
    b: float


def as_point(p) -> ScaleShiftPoint:
    a, b = float(p[0]), float(p[1])
    if not (np.isfinite(a) and np.isfinite(b)):
        raise InvalidScaleError(f"non-finite point ({a}, {b})")
    if a <= 0:
        raise InvalidScaleError(f"scale must be positive, got a={a}")
    return ScaleShiftPoint(a, b)


@dataclass(frozen=True)
class Harmonic:
    """Pure tone ``exp(1j*omega*t)``."""

    omega: float

    def __call__(self, t):
        return np.exp(1j * self.omega * np.asarray(t, dtype=float))

    @property
    def support(self) -> tuple[float, float]:
        return (-np.inf, np.inf)


@dataclass(frozen=True, eq=False)
class Sampled:
    """Uniformly sampled complex data, zero outside the sampled range.

    Between samples the signal is linearly interpolated.
    """

    t0: float
    dt: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).ravel()
        if values.size == 0:
            raise MalformedInputError("sampled signal needs at least one value")
        if not np.all(np.isfinite(values)):
            raise MalformedInputError("sampled signal contains NaN or Inf")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise MalformedInputError(f"sample step must be positive, got {self.dt}")
        if not np.isfinite(self.t0):
            raise MalformedInputError("non-finite time origin")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def support(self) -> tuple[float, float]:
        return (self.t0, self.t0 + self.dt * (self.values.size - 1))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        x = (t - self.t0) / self.dt
        n = self.values.size
        if n == 1:
            return np.where(np.abs(x) < 1e-12, self.values[0], 0.0 + 0.0j)
        # a sample time recomputed as t0 + j*dt may round just past the ends
        slack = 1e-9 * (n - 1)
        inside = (x >= -slack) & (x <= n - 1 + slack)
        xc = np.clip(x, 0, n - 1)
        j = np.minimum(np.floor(xc).astype(np.intp), n - 2)
        frac = xc - j
        out = (1.0 - frac) * self.values[j] + frac * self.values[j + 1]
        return np.where(inside, out, 0.0 + 0.0j)

    def __eq__(self, other):
        if not isinstance(other, Sampled):
            return NotImplemented
        return (
            self.t0 == other.t0
            and self.dt == other.dt
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.t0, self.dt, self.values.tobytes()))


Signal = Union[Harmonic, Sampled]


def sample(signal, t0: float, dt: float, n: int) -> Sampled:
    """Sample any callable signal on ``t0 + dt*arange(n)``."""
    t = t0 + dt * np.arange(n)
    return Sampled(t0, dt, np.asarray(signal(t), dtype=complex))
