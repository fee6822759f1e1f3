"""
Forward sawtooth transform of a series and the inverse mapping of u-space
results back onto the original samples.

The transform keeps every value and only moves samples horizontally: on each
segment between consecutive extrema a sample with value x is placed where the
straight line between the two extrema reaches x.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from series_tool.errors import ConsistencyError, CoverageError
from series_tool.series import Extremum, PiecewiseLinear, TimeSeries, extrema_breakpoints

logger = logging.getLogger(__name__)

# Relative slack on the segment fraction before a sample counts as non-monotone.
FRACTION_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class SawtoothMap:
    """Segment data of the transform plus the u coordinate of every sample."""
    coords: np.ndarray
    values: np.ndarray
    sample_u: np.ndarray
    sample_segment: np.ndarray

    @property
    def segments(self) -> List[Tuple[float, float, float, float]]:
        """(t_i, t_next, E_i, E_next) for each sawtooth segment."""
        return list(zip(self.coords[:-1].tolist(), self.coords[1:].tolist(),
                        self.values[:-1].tolist(), self.values[1:].tolist()))


@dataclass(frozen=True, eq=False)
class SawtoothView:
    sawtooth: PiecewiseLinear
    map: SawtoothMap
    samples_s: np.ndarray


def forward_transform(series: TimeSeries, extended_extrema: Sequence[Extremum]) -> SawtoothView:
    """
    Move every sample onto the sawtooth through the extended extrema.

    Args:
        series: Input samples.
        extended_extrema: Alternating extrema whose span covers all samples.

    Returns:
        SawtoothView with the sawtooth, the per-sample u coordinates and the
        (unchanged) sample values.

    Raises:
        CoverageError: a sample lies outside the extended extrema span.
        ConsistencyError: a sample value is outside its segment's value range.
    """
    coords, values = extrema_breakpoints(extended_extrema)
    if len(coords) < 2:
        raise CoverageError("the sawtooth needs at least two breakpoints")
    t = series.times
    x = series.values
    if t[0] < coords[0] or t[-1] > coords[-1]:
        raise CoverageError(
            f"samples span [{t[0]}, {t[-1]}] but extrema only cover [{coords[0]}, {coords[-1]}]"
        )

    segment = np.clip(np.searchsorted(coords, t, side="right") - 1, 0, len(coords) - 2)
    c0, c1 = coords[segment], coords[segment + 1]
    e0, e1 = values[segment], values[segment + 1]
    flat = e1 == e0

    with np.errstate(divide="ignore", invalid="ignore"):
        fraction = np.where(flat, 0.0, (x - e0) / np.where(flat, 1.0, e1 - e0))

    bad = (~flat & ((fraction < -FRACTION_TOLERANCE) | (fraction > 1.0 + FRACTION_TOLERANCE))) \
        | (flat & (x != e0))
    if np.any(bad):
        j = int(np.argmax(bad))
        raise ConsistencyError(
            f"sample t={t[j]} x={x[j]} is not monotone between extrema "
            f"({c0[j]}, {e0[j]}) and ({c1[j]}, {e1[j]})"
        )
    clipped = (fraction < 0.0) | (fraction > 1.0)
    if np.any(clipped):
        logger.warning(f"clipped {int(np.sum(clipped))} segment fractions within tolerance")
        fraction = np.clip(fraction, 0.0, 1.0)

    u = c0 + fraction * (c1 - c0)
    u = np.where(fraction >= 1.0, c1, u)
    u = np.where(flat, t, np.minimum(np.maximum(u, c0), c1))
    u.setflags(write=False)

    sawtooth = PiecewiseLinear(coords, values)
    mapping = SawtoothMap(sawtooth.coords, sawtooth.values, u, segment)
    return SawtoothView(sawtooth, mapping, series.values)


def map_back(results_in_u: PiecewiseLinear, mapping: SawtoothMap) -> np.ndarray:
    """Evaluate a u-space function at every sample's u (c_data(t) = c(u(t)) and friends)."""
    return results_in_u.evaluate(mapping.sample_u)
