"""
Classical empirical mode decomposition by repeated sifting.

Used as the baseline the sawtooth method is compared against: every sift
builds a new pair of envelopes, so the envelope pass count per mode is the
sift count.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from series_tool.errors import ConfigError, InsufficientDataError, NoMoreModes, PolicyViolationError
from series_tool.extension import ExtensionPolicy, anchor_endpoints, extend_extrema
from series_tool.series import TimeSeries, extrema_breakpoints, find_extrema
from emd_tool.spline import EnvelopeKind, envelope_values
from sawtooth_tool.decomposer import Decomposition
from sawtooth_tool.mode import ModeResult, count_zero_crossings, envelope_symmetry
from utilities.config import EMD_MAX_SIFTS, MAX_MODES

logger = logging.getLogger(__name__)


class StopMode(Enum):
    MEAN_AMPLITUDE = "mean-amplitude"
    SD = "sd"
    MAX_SIFTS = "max-sifts"

    @classmethod
    def from_name(cls, name: str) -> "StopMode":
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown stop mode '{name}' (choose from {choices})")


@dataclass(frozen=True)
class SiftConfig:
    """
    When to stop sifting and how to build envelopes.

    stop_value is the threshold for MEAN_AMPLITUDE and SD and the sift count
    for MAX_SIFTS. Every rule is also capped at max_sifts.
    """
    stop_mode: StopMode = StopMode.MEAN_AMPLITUDE
    stop_value: float = 0.05
    envelope_kind: EnvelopeKind = EnvelopeKind.SPLINE
    extension_policy: ExtensionPolicy = ExtensionPolicy.EVEN
    max_sifts: int = EMD_MAX_SIFTS

    def __post_init__(self):
        if not self.stop_value > 0:
            raise ConfigError(f"stop value must be positive, got {self.stop_value}")
        if self.stop_mode is StopMode.MAX_SIFTS and int(self.stop_value) != self.stop_value:
            raise ConfigError(f"sift count must be an integer, got {self.stop_value}")
        if self.max_sifts < 1:
            raise ConfigError(f"max_sifts must be at least 1, got {self.max_sifts}")

    def to_dict(self) -> Dict:
        return {
            "stop_mode": self.stop_mode.value,
            "stop_value": self.stop_value,
            "envelope_kind": self.envelope_kind.value,
            "policy": self.extension_policy.value,
            "max_sifts": self.max_sifts,
        }


def _envelopes(series: TimeSeries, config: SiftConfig) -> Optional[Tuple[np.ndarray, np.ndarray, int]]:
    """Upper and lower envelope at the samples plus the interior extrema count, or None."""
    extrema = find_extrema(series)
    if len(extrema) < 2:
        return None
    policy = config.extension_policy
    try:
        anchored = anchor_endpoints(series, extrema, policy)
        extended = extend_extrema(anchored, policy, series.first_sample, series.last_sample)
    except (InsufficientDataError, PolicyViolationError) as e:
        logger.debug(f"no envelopes: {e}")
        return None
    upper_t, upper_v = extrema_breakpoints([e for e in extended if e.is_maximum])
    lower_t, lower_v = extrema_breakpoints([e for e in extended if not e.is_maximum])
    upper = envelope_values(upper_t, upper_v, series.times, config.envelope_kind)
    lower = envelope_values(lower_t, lower_v, series.times, config.envelope_kind)
    return upper, lower, len(extrema)


def _sift_done(config: SiftConfig, sifts: int, h_prev: np.ndarray, h: np.ndarray,
               mean: np.ndarray, half_range: np.ndarray) -> bool:
    if config.stop_mode is StopMode.MAX_SIFTS:
        return sifts >= int(config.stop_value)
    if config.stop_mode is StopMode.SD:
        energy = float(np.sum(h_prev ** 2))
        if energy == 0.0:
            return True
        sd = float(np.sum((h_prev - h) ** 2)) / energy
        logger.debug(f"sift {sifts}: SD {sd:.4g}")
        return sd < config.stop_value
    return float(np.max(np.abs(mean))) <= config.stop_value * float(np.max(np.abs(half_range)))


def sift_mode(series: TimeSeries, config: SiftConfig) -> ModeResult:
    """
    Sift one IMF out of a series.

    Raises:
        NoMoreModes: the series has fewer than two interior extrema.
    """
    first = _envelopes(series, config)
    if first is None:
        raise NoMoreModes(len(find_extrema(series)))
    upper, lower, extrema_count = first

    h = series.values.copy()
    sifts = 0
    while True:
        mean = 0.5 * (upper + lower)
        h_prev, h = h, h - mean
        sifts += 1
        if _sift_done(config, sifts, h_prev, h, mean, 0.5 * (upper - lower)):
            break
        if sifts >= config.max_sifts:
            logger.warning(f"sifting stopped at the cap of {config.max_sifts} sifts")
            break
        envelopes = _envelopes(series.with_values(h), config)
        if envelopes is None:
            break
        upper, lower, _ = envelopes

    imf = h
    residue = series.values - imf
    imf_series = series.with_values(imf)
    imf_extrema = find_extrema(imf_series)
    symmetry = 0.0
    own = _envelopes(imf_series, config)
    if own is not None:
        imf_upper, imf_lower, _ = own
        # an IMF has zero mean, so its own envelopes are measured against 0
        symmetry = envelope_symmetry(series.times, imf_extrema, imf_upper, imf_lower, np.zeros_like(imf))

    for array in (imf, residue, upper, lower):
        array.setflags(write=False)
    return ModeResult(
        imf=imf,
        residue=residue,
        upper_env=upper,
        lower_env=lower,
        extrema_count=extrema_count,
        envelope_passes=sifts,
        zero_crossings=count_zero_crossings(imf),
        imf_extrema=len(imf_extrema),
        symmetry_error=symmetry,
    )


def emd_decompose(series: TimeSeries, config: SiftConfig = SiftConfig(),
                  max_modes: int = MAX_MODES) -> Decomposition:
    """
    Decompose a series with classical sifting.

    Args:
        series: Input samples.
        config: Stop rule, envelope kind and boundary extension.
        max_modes: Upper bound on the number of IMFs.

    Returns:
        Decomposition with method "emd"; each mode's envelope_passes is its
        sift count.
    """
    if max_modes < 1:
        raise ConfigError(f"max_modes must be at least 1, got {max_modes}")
    modes: List[ModeResult] = []
    diagnostics: List[str] = []
    current = series
    while len(modes) < max_modes:
        try:
            mode = sift_mode(current, config)
        except NoMoreModes:
            break
        if mode.envelope_passes >= config.max_sifts:
            diagnostics.append(f"mode {len(modes) + 1} hit the sift cap of {config.max_sifts}")
        modes.append(mode)
        logger.info(f"EMD mode {len(modes)}: {mode.extrema_count} extrema, {mode.envelope_passes} sifts")
        current = current.with_values(mode.residue)

    return Decomposition(
        modes=modes,
        final_residue=current.values,
        input=series,
        config=config,
        method="emd",
        diagnostics=diagnostics,
    )
