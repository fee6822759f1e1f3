"""
One mode of the sawtooth decomposition: envelopes, residue and IMF computed in
sawtooth space and mapped back onto the samples.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Sequence

import numpy as np

from series_tool.errors import InsufficientDataError, NoMoreModes, OutOfRangeError
from series_tool.extension import ExtensionPolicy, anchor_endpoints, extend_extrema
from series_tool.series import (
    Extremum,
    PiecewiseLinear,
    TimeSeries,
    extrema_breakpoints,
    extremum_at,
    find_extrema,
)
from sawtooth_tool.transform import SawtoothView, forward_transform, map_back

logger = logging.getLogger(__name__)


class ResidueStrategy(Enum):
    MEAN = "mean"
    MIDPOINT = "midpoint"
    CENTROID = "centroid"

    @property
    def label(self) -> str:
        return {
            ResidueStrategy.MEAN: "EnvelopeMean",
            ResidueStrategy.MIDPOINT: "SegmentMidpoints",
            ResidueStrategy.CENTROID: "TriangleCentroids",
        }[self]

    @classmethod
    def from_name(cls, name: str) -> "ResidueStrategy":
        key = name.strip().lower()
        for strategy in cls:
            if key in (strategy.value, strategy.label.lower()):
                return strategy
        choices = ", ".join(s.value for s in cls)
        raise ValueError(f"unknown residue strategy '{name}' (choose from {choices})")


@dataclass(frozen=True, eq=False)
class SawtoothArtifacts:
    """The u-space functions behind one mode."""
    view: SawtoothView
    upper: PiecewiseLinear
    lower: PiecewiseLinear
    residue: PiecewiseLinear
    imf: PiecewiseLinear

    def symmetry_error(self) -> float:
        """Largest |(U - r) + (L - r)| over the residue's breakpoints."""
        u = self.residue.coords
        r = self.residue.values
        return float(np.max(np.abs((self.upper(u) - r) + (self.lower(u) - r))))


@dataclass(frozen=True, eq=False)
class ModeResult:
    imf: np.ndarray
    residue: np.ndarray
    upper_env: np.ndarray
    lower_env: np.ndarray
    extrema_count: int
    sawtooth_artifacts: Optional[SawtoothArtifacts] = None
    envelope_passes: int = 1
    zero_crossings: int = 0
    imf_extrema: int = 0
    symmetry_error: float = 0.0

    def to_dict(self) -> Dict:
        """Scalar diagnostics of the mode (arrays are written separately)."""
        return {
            "extrema_count": self.extrema_count,
            "envelope_passes": self.envelope_passes,
            "zero_crossings": self.zero_crossings,
            "imf_extrema": self.imf_extrema,
            "symmetry_error": self.symmetry_error,
        }


def build_envelope(rail_extrema: Sequence[Extremum]) -> PiecewiseLinear:
    """
    Connect extrema of one kind with straight lines.

    Plateaus contribute both ends of their span.

    Raises:
        InsufficientDataError: fewer than two rail extrema.
    """
    if len(rail_extrema) < 2:
        raise InsufficientDataError(f"an envelope needs at least 2 rail points, got {len(rail_extrema)}")
    coords, values = extrema_breakpoints(rail_extrema)
    return PiecewiseLinear(coords, values)


def residue_u(upper: PiecewiseLinear, lower: PiecewiseLinear, sawtooth: PiecewiseLinear,
              strategy: ResidueStrategy = ResidueStrategy.MEAN) -> PiecewiseLinear:
    """
    Residue r(u) on the common support of the envelopes and the sawtooth.

    Args:
        upper: Upper envelope U(u).
        lower: Lower envelope L(u).
        sawtooth: Sawtooth s(u).
        strategy: MEAN averages the envelopes on the union of their
            breakpoints, MIDPOINT connects the midpoints of the sloped
            sawtooth segments, CENTROID connects the centroids of
            consecutive breakpoint triples.

    Raises:
        OutOfRangeError: the three supports do not overlap.
        InsufficientDataError: no midpoint or centroid could be formed.
    """
    lo = max(upper.coords[0], lower.coords[0], sawtooth.coords[0])
    hi = min(upper.coords[-1], lower.coords[-1], sawtooth.coords[-1])
    if lo >= hi:
        raise OutOfRangeError(f"envelopes and sawtooth share no support (lo={lo}, hi={hi})")

    if strategy is ResidueStrategy.MEAN:
        coords = np.union1d(upper.coords, lower.coords)
        coords = np.concatenate(([lo], coords[(coords > lo) & (coords < hi)], [hi]))
        return PiecewiseLinear(coords, 0.5 * (upper(coords) + lower(coords)))

    c, v = sawtooth.coords, sawtooth.values
    if strategy is ResidueStrategy.MIDPOINT:
        sloped = v[1:] != v[:-1]
        points_c = 0.5 * (c[:-1] + c[1:])[sloped]
        points_v = 0.5 * (v[:-1] + v[1:])[sloped]
    else:
        points_c = (c[:-2] + c[1:-1] + c[2:]) / 3.0
        points_v = (v[:-2] + v[1:-1] + v[2:]) / 3.0
    if len(points_c) == 0:
        raise InsufficientDataError(f"no {strategy.label} points on a sawtooth of {len(c)} breakpoints")
    return _through_points(points_c, points_v, lo, hi)


def _through_points(points_c: np.ndarray, points_v: np.ndarray, lo: float, hi: float) -> PiecewiseLinear:
    """Polyline through the points, cut or linearly extended to exactly [lo, hi]."""
    inner = (points_c > lo) & (points_c < hi)
    coords = np.concatenate(([lo], points_c[inner], [hi]))
    values = np.concatenate(([_line_value(points_c, points_v, lo)], points_v[inner],
                             [_line_value(points_c, points_v, hi)]))
    return PiecewiseLinear(coords, values)


def _line_value(points_c: np.ndarray, points_v: np.ndarray, x: float) -> float:
    if len(points_c) == 1:
        return float(points_v[0])
    if points_c[0] <= x <= points_c[-1]:
        return float(np.interp(x, points_c, points_v))
    i = 0 if x < points_c[0] else len(points_c) - 2
    slope = (points_v[i + 1] - points_v[i]) / (points_c[i + 1] - points_c[i])
    return float(points_v[i] + slope * (x - points_c[i]))


def imf_u(sawtooth: PiecewiseLinear, residue: PiecewiseLinear) -> PiecewiseLinear:
    """c(u) = s(u) - r(u) on the union of both breakpoint sets."""
    if not residue.covers(*sawtooth.support):
        raise OutOfRangeError(
            f"residue support {residue.support} does not cover sawtooth support {sawtooth.support}"
        )
    coords = np.union1d(sawtooth.coords, residue.coords)
    coords = coords[(coords >= sawtooth.coords[0]) & (coords <= sawtooth.coords[-1])]
    return PiecewiseLinear(coords, sawtooth(coords) - residue(coords))


def count_zero_crossings(values: np.ndarray) -> int:
    """Sign changes between consecutive nonzero samples."""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def envelope_symmetry(times: np.ndarray, extrema: Sequence[Extremum], upper: np.ndarray,
                      lower: np.ndarray, residue: np.ndarray) -> float:
    """
    Largest |(upper - residue) + (lower - residue)| over the samples lying on an extremum.

    Zero whenever the residue is the envelope mean, even where the envelopes cross.
    """
    at = extremum_at(times, extrema) >= 0
    if not np.any(at):
        return 0.0
    return float(np.max(np.abs((upper[at] - residue[at]) + (lower[at] - residue[at]))))


def mode_from_extended(series: TimeSeries, extended: Sequence[Extremum],
                       strategy: ResidueStrategy, extrema_count: int) -> ModeResult:
    """
    Compute one mode from an already extended extrema list.

    Batch extraction and the streaming decomposer both go through here, which
    keeps their per-sample values identical.
    """
    view = forward_transform(series, extended)
    upper = build_envelope([e for e in extended if e.is_maximum])
    lower = build_envelope([e for e in extended if not e.is_maximum])
    residue = residue_u(upper, lower, view.sawtooth, strategy)
    imf = imf_u(view.sawtooth.restrict(*residue.support), residue)

    residue_data = map_back(residue, view.map)
    imf_data = map_back(imf, view.map)
    upper_data = map_back(upper, view.map)
    lower_data = map_back(lower, view.map)

    real = [e for e in extended if not e.synthetic]
    symmetry = envelope_symmetry(series.times, real, upper_data, lower_data, residue_data)

    for array in (imf_data, residue_data, upper_data, lower_data):
        array.setflags(write=False)
    return ModeResult(
        imf=imf_data,
        residue=residue_data,
        upper_env=upper_data,
        lower_env=lower_data,
        extrema_count=extrema_count,
        sawtooth_artifacts=SawtoothArtifacts(view, upper, lower, residue, imf),
        envelope_passes=1,
        zero_crossings=count_zero_crossings(imf_data),
        imf_extrema=len(find_extrema(series.with_values(imf_data))) if len(series) > 2 else 0,
        symmetry_error=symmetry,
    )


def extract_mode(series: TimeSeries, policy: ExtensionPolicy = ExtensionPolicy.EVEN,
                 strategy: ResidueStrategy = ResidueStrategy.MEAN,
                 printed_cyclic: bool = False) -> ModeResult:
    """
    Extract the next intrinsic mode of a series in a single envelope pass.

    Args:
        series: Input samples.
        policy: Boundary extension policy.
        strategy: How the residue is formed from envelopes or sawtooth.
        printed_cyclic: See extend_extrema.

    Returns:
        ModeResult with imf + residue equal to the input per sample.

    Raises:
        NoMoreModes: fewer than two interior extrema.
    """
    extrema = find_extrema(series)
    if len(extrema) < 2:
        raise NoMoreModes(len(extrema))
    anchored = anchor_endpoints(series, extrema, policy)
    extended = extend_extrema(anchored, policy, series.first_sample, series.last_sample, printed_cyclic)
    logger.debug(f"extracting mode from {len(extrema)} extrema ({policy.value}, {strategy.value})")
    return mode_from_extended(series, extended, strategy, len(extrema))
