"""
Envelope interpolation for the EMD baseline.
"""

from enum import Enum

import numpy as np
from scipy.interpolate import CubicSpline

from series_tool.errors import InsufficientDataError


class EnvelopeKind(Enum):
    SPLINE = "spline"
    LINEAR = "linear"

    @classmethod
    def from_name(cls, name: str) -> "EnvelopeKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown envelope kind '{name}' (choose from spline, linear)")


def natural_spline(knots_t: np.ndarray, knots_v: np.ndarray) -> CubicSpline:
    """Cubic spline with zero second derivative at both end knots."""
    knots_t = np.asarray(knots_t, dtype=float)
    knots_v = np.asarray(knots_v, dtype=float)
    if len(knots_t) < 2:
        raise InsufficientDataError(f"a spline needs at least 2 knots, got {len(knots_t)}")
    return CubicSpline(knots_t, knots_v, bc_type="natural")


def envelope_values(knots_t: np.ndarray, knots_v: np.ndarray, times: np.ndarray,
                    kind: EnvelopeKind = EnvelopeKind.SPLINE) -> np.ndarray:
    """Evaluate the envelope through the knots at the sample times."""
    if kind is EnvelopeKind.LINEAR:
        if len(knots_t) < 2:
            raise InsufficientDataError(f"an envelope needs at least 2 knots, got {len(knots_t)}")
        return np.interp(times, knots_t, knots_v)
    return natural_spline(knots_t, knots_v)(times)
