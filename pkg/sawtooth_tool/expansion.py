"""
Sawtooth expansion: write a series as a sum of sawtooth functions, each one the
sawtooth of what the previous ones left over. Every component is already
piecewise linear in t, so its envelopes and mean need no inverse transform.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from series_tool.errors import ConfigError
from series_tool.extension import ExtensionPolicy, anchor_endpoints, extend_extrema
from series_tool.series import PiecewiseLinear, TimeSeries, extrema_breakpoints, find_extrema
from sawtooth_tool.mode import ResidueStrategy, build_envelope, residue_u
from utilities.config import MAX_COMPONENTS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SawtoothExpansion:
    components: List[PiecewiseLinear]
    epsilon: float
    achieved_error: float
    converged: bool
    series: TimeSeries

    def component_values(self) -> np.ndarray:
        """Components sampled at the series times, shape (components, samples)."""
        return np.vstack([c(self.series.times) for c in self.components])

    def reconstruct(self) -> np.ndarray:
        return self.component_values().sum(axis=0)


def sawtooth_of(series: TimeSeries) -> PiecewiseLinear:
    """Polyline through the first sample, every interior extremum and the last sample."""
    extrema = find_extrema(series)
    coords, values = extrema_breakpoints(extrema)
    t_s, x_s = series.first_sample
    t_e, x_e = series.last_sample
    if len(series) == 1:
        return PiecewiseLinear([t_s], [x_s])
    return PiecewiseLinear(np.concatenate(([t_s], coords, [t_e])), np.concatenate(([x_s], values, [x_e])))


def expand_sawtooth(series: TimeSeries, epsilon: float,
                    max_components: int = MAX_COMPONENTS) -> SawtoothExpansion:
    """
    Expand a series into sawtooth components until the leftover is below epsilon.

    Args:
        series: Input samples.
        epsilon: Stop once max |input - sum of components| < epsilon.
        max_components: Hard cap; hitting it returns with converged=False.

    Raises:
        ConfigError: epsilon <= 0 or max_components < 1.
    """
    if not epsilon > 0:
        raise ConfigError(f"epsilon must be positive, got {epsilon}")
    if max_components < 1:
        raise ConfigError(f"max_components must be at least 1, got {max_components}")

    components: List[PiecewiseLinear] = []
    difference = series
    while True:
        component = sawtooth_of(difference)
        components.append(component)
        remaining = difference.values - component(series.times)
        error = float(np.max(np.abs(remaining)))
        logger.debug(f"component {len(components)}: {len(component.coords)} breakpoints, error {error:.3e}")
        if error < epsilon or len(components) >= max_components:
            break
        difference = difference.with_values(remaining)

    total = np.sum([c(series.times) for c in components], axis=0)
    achieved = float(np.max(np.abs(series.values - total)))
    converged = achieved < epsilon
    if not converged:
        logger.warning(f"expansion stopped at {len(components)} components with error {achieved:.3e} >= {epsilon}")
    else:
        logger.info(f"expansion converged with {len(components)} components, error {achieved:.3e}")
    return SawtoothExpansion(components, float(epsilon), achieved, converged, series)


def _component_mode(component: PiecewiseLinear, times: np.ndarray, policy: ExtensionPolicy,
                    strategy: ResidueStrategy) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(upper, lower, residue, imf) of one component at the sample times."""
    values = component(times)
    if len(component.coords) < 3:
        return values, values, values, np.zeros_like(values)
    corners = TimeSeries(component.coords, component.values)
    extrema = find_extrema(corners)
    if len(extrema) < 2:
        return values, values, values, np.zeros_like(values)

    anchored = anchor_endpoints(corners, extrema, policy)
    extended = extend_extrema(anchored, policy, corners.first_sample, corners.last_sample)
    coords, rail_values = extrema_breakpoints(extended)
    sawtooth = PiecewiseLinear(coords, rail_values)
    upper = build_envelope([e for e in extended if e.is_maximum])
    lower = build_envelope([e for e in extended if not e.is_maximum])
    residue = residue_u(upper, lower, sawtooth, strategy)(times)
    return upper(times), lower(times), residue, values - residue


def expansion_decompose(expansion: SawtoothExpansion,
                        strategy: ResidueStrategy = ResidueStrategy.MEAN,
                        policy: ExtensionPolicy = ExtensionPolicy.EVEN) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sum the per-component IMFs and residues.

    A component with fewer than two interior extrema is all residue.

    Returns:
        (imf, residue) at the series times; imf + residue equals the
        sum of components, so it is within achieved_error of the input.
    """
    times = expansion.series.times
    imf = np.zeros_like(times)
    residue = np.zeros_like(times)
    for component in expansion.components:
        _, _, r, c = _component_mode(component, times, policy, strategy)
        imf += c
        residue += r
    return imf, residue


def expansion_envelopes(expansion: SawtoothExpansion,
                        policy: ExtensionPolicy = ExtensionPolicy.EVEN) -> Tuple[np.ndarray, np.ndarray]:
    """Summed upper and lower envelopes of all components at the series times."""
    times = expansion.series.times
    upper = np.zeros_like(times)
    lower = np.zeros_like(times)
    for component in expansion.components:
        u, l, _, _ = _component_mode(component, times, policy, ResidueStrategy.MEAN)
        upper += u
        lower += l
    return upper, lower
