"""
Core value types for the decomposition library.

TimeSeries carries the samples, Extremum is a detected (or synthesized) peak or
trough, and PiecewiseLinear is the breakpoint representation used for the
sawtooth, the envelopes, the residue and the IMF.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple, Union

import numpy as np

from series_tool.errors import EmptyInputError, OrderingError, OutOfRangeError

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]


def _frozen_array(values: ArrayLike) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Strictly time-ordered samples (t, x)."""
    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = _frozen_array(self.times)
        values = _frozen_array(self.values)
        if times.ndim != 1 or values.ndim != 1:
            raise ValueError("times and values must be one-dimensional")
        if len(times) != len(values):
            raise ValueError(f"length mismatch: {len(times)} times, {len(values)} values")
        if len(times) == 0:
            raise EmptyInputError("a time series needs at least one sample")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise ValueError("times and values must be finite")
        steps = np.diff(times)
        if np.any(steps <= 0):
            row = int(np.argmax(steps <= 0)) + 1
            raise OrderingError(f"times must be strictly increasing (sample {row})", row=row)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def first_sample(self) -> Tuple[float, float]:
        return float(self.times[0]), float(self.values[0])

    @property
    def last_sample(self) -> Tuple[float, float]:
        return float(self.times[-1]), float(self.values[-1])

    def with_values(self, values: ArrayLike) -> "TimeSeries":
        """Same timestamps, new values (used to feed a residue into the next mode)."""
        return TimeSeries(self.times, values)


class ExtremumKind(Enum):
    MAXIMUM = "max"
    MINIMUM = "min"

    @property
    def opposite(self) -> "ExtremumKind":
        return ExtremumKind.MINIMUM if self is ExtremumKind.MAXIMUM else ExtremumKind.MAXIMUM


@dataclass(frozen=True)
class Extremum:
    """
    A maximum or minimum. A plateau extremum has t_start < t_end and a constant
    value over its span; a point extremum has t_start == t_end.
    """
    kind: ExtremumKind
    t_start: float
    t_end: float
    value: float
    synthetic: bool = False

    def __post_init__(self):
        if self.t_end < self.t_start:
            raise ValueError(f"extremum span is reversed: {self.t_start} > {self.t_end}")

    @classmethod
    def point(cls, kind: ExtremumKind, t: float, value: float, synthetic: bool = False) -> "Extremum":
        return cls(kind, float(t), float(t), float(value), synthetic)

    @property
    def is_plateau(self) -> bool:
        return self.t_end > self.t_start

    @property
    def t_mid(self) -> float:
        if not self.is_plateau:
            return self.t_start
        return 0.5 * (self.t_start + self.t_end)

    @property
    def is_maximum(self) -> bool:
        return self.kind is ExtremumKind.MAXIMUM


@dataclass(frozen=True, eq=False)
class PiecewiseLinear:
    """Function given by breakpoints (coordinate, value) with linear pieces in between."""
    coords: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        coords = _frozen_array(self.coords)
        values = _frozen_array(self.values)
        if len(coords) != len(values):
            raise ValueError("coords and values must have the same length")
        if len(coords) == 0:
            raise ValueError("a piecewise-linear function needs at least one breakpoint")
        if np.any(np.diff(coords) <= 0):
            raise ValueError("breakpoint coordinates must be strictly increasing")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "values", values)

    @property
    def breakpoints(self) -> List[Tuple[float, float]]:
        return list(zip(self.coords.tolist(), self.values.tolist()))

    @property
    def support(self) -> Tuple[float, float]:
        return float(self.coords[0]), float(self.coords[-1])

    def covers(self, lo: float, hi: float) -> bool:
        return self.coords[0] <= lo and hi <= self.coords[-1]

    def evaluate(self, coordinate: Union[float, ArrayLike]) -> Union[float, np.ndarray]:
        """
        Linear interpolation between the bracketing breakpoints.

        Exact breakpoint coordinates return the stored value. Coordinates outside
        [first, last] raise OutOfRangeError.
        """
        u = np.asarray(coordinate, dtype=float)
        if u.size:
            lo, hi = np.min(u), np.max(u)
            if lo < self.coords[0] or hi > self.coords[-1]:
                raise OutOfRangeError(
                    f"coordinate range [{lo}, {hi}] outside support "
                    f"[{self.coords[0]}, {self.coords[-1]}]"
                )
        if len(self.coords) == 1:
            result = np.full(u.shape, self.values[0])
        else:
            result = np.interp(u, self.coords, self.values)
        if u.ndim == 0:
            return float(result)
        return result

    __call__ = evaluate

    def restrict(self, lo: float, hi: float) -> "PiecewiseLinear":
        """The same function cut down to [lo, hi]; new end breakpoints are interpolated."""
        if lo > hi or lo < self.coords[0] or hi > self.coords[-1]:
            raise OutOfRangeError(f"cannot restrict support {self.support} to [{lo}, {hi}]")
        inner = (self.coords > lo) & (self.coords < hi)
        coords = np.concatenate(([lo], self.coords[inner], [hi])) if hi > lo else np.array([lo])
        return PiecewiseLinear(coords, self.evaluate(coords))


def evaluate(pl: PiecewiseLinear, coordinate: Union[float, ArrayLike]) -> Union[float, np.ndarray]:
    """Evaluate a piecewise-linear function (see PiecewiseLinear.evaluate)."""
    return pl.evaluate(coordinate)


def extrema_breakpoints(extrema: Sequence[Extremum]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Breakpoints connecting the given extrema with straight segments.

    A plateau contributes both ends of its span at the plateau value.
    """
    coords: List[float] = []
    values: List[float] = []
    for extremum in extrema:
        coords.append(extremum.t_start)
        values.append(extremum.value)
        if extremum.is_plateau:
            coords.append(extremum.t_end)
            values.append(extremum.value)
    return np.array(coords), np.array(values)


def extremum_at(times: np.ndarray, extrema: Sequence[Extremum]) -> np.ndarray:
    """Index of the extremum whose span holds each time, -1 where none does."""
    if not extrema:
        return np.full(len(times), -1)
    starts = np.array([e.t_start for e in extrema])
    ends = np.array([e.t_end for e in extrema])
    k = np.searchsorted(starts, times, side="right") - 1
    inside = (k >= 0) & (times <= ends[np.maximum(k, 0)])
    return np.where(inside, k, -1)


def find_extrema(series: TimeSeries) -> List[Extremum]:
    """
    Detect the interior maxima and minima of a series.

    Runs of equal consecutive values are compressed first; a run whose value is
    above (below) both neighbouring runs is a maximum (minimum) and keeps the
    whole run as its span. The first and last runs are never extrema. Kinds
    alternate by construction because neighbouring runs always differ.
    """
    x = series.values
    t = series.times
    if len(x) < 3:
        return []

    starts = np.concatenate(([0], np.flatnonzero(np.diff(x) != 0) + 1))
    ends = np.concatenate((starts[1:] - 1, [len(x) - 1]))
    run_values = x[starts]
    if len(run_values) < 3:
        return []

    left, mid, right = run_values[:-2], run_values[1:-1], run_values[2:]
    is_max = (mid > left) & (mid > right)
    is_min = (mid < left) & (mid < right)
    runs = np.flatnonzero(is_max | is_min) + 1

    extrema = [
        Extremum(
            ExtremumKind.MAXIMUM if is_max[r - 1] else ExtremumKind.MINIMUM,
            float(t[starts[r]]),
            float(t[ends[r]]),
            float(run_values[r]),
        )
        for r in runs
    ]
    logger.debug(f"found {len(extrema)} extrema in {len(x)} samples")
    return extrema
