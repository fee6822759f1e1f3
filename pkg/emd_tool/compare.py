"""
Side-by-side run of the sawtooth method and the EMD baseline on one series.
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from series_tool.extension import ExtensionPolicy
from series_tool.series import TimeSeries
from emd_tool.emd import SiftConfig, StopMode, emd_decompose
from sawtooth_tool.decomposer import Decomposition, decompose
from sawtooth_tool.mode import ResidueStrategy
from utilities.config import MAX_MODES

logger = logging.getLogger(__name__)

SENSITIVITY_THRESHOLDS = (0.3, 0.05)


@dataclass
class ComparisonReport:
    size: int
    sawtooth_seconds: float
    sawtooth_envelope_passes: int
    sawtooth_modes: int
    sawtooth_extrema: List[int]
    sawtooth_imf_deltas: List[int]
    sawtooth_symmetry: List[float]
    sawtooth_deterministic: bool
    emd_seconds: Optional[float] = None
    emd_envelope_passes: Optional[int] = None
    emd_modes: Optional[int] = None
    emd_imf_deltas: List[int] = field(default_factory=list)
    emd_symmetry: List[float] = field(default_factory=list)
    emd_threshold_sensitivity: Optional[float] = None

    def to_dict(self) -> Dict:
        """Convert the report to a JSON-ready dictionary."""
        return asdict(self)


def _timed(fn, *args, **kwargs) -> Tuple[Decomposition, float]:
    start_time = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start_time


def _imf_deltas(result: Decomposition) -> List[int]:
    return [mode.zero_crossings - mode.imf_extrema for mode in result.modes]


def _padded_stack(result: Decomposition, rows: int) -> np.ndarray:
    stack = np.zeros((rows, len(result.input)))
    if result.modes:
        stack[:len(result.modes)] = result.imfs
    return stack


def threshold_sensitivity(series: TimeSeries, sift: SiftConfig, max_modes: int = MAX_MODES,
                          thresholds: Tuple[float, float] = SENSITIVITY_THRESHOLDS) -> float:
    """Frobenius norm between the IMF stacks of two SD-threshold EMD runs."""
    runs = [
        emd_decompose(series, SiftConfig(StopMode.SD, value, sift.envelope_kind,
                                         sift.extension_policy, sift.max_sifts), max_modes)
        for value in thresholds
    ]
    rows = max(len(run.modes) for run in runs)
    return float(np.linalg.norm(_padded_stack(runs[0], rows) - _padded_stack(runs[1], rows)))


def compare_methods(series: TimeSeries, sift: SiftConfig = SiftConfig(),
                    policy: ExtensionPolicy = ExtensionPolicy.EVEN,
                    strategy: ResidueStrategy = ResidueStrategy.MEAN,
                    max_modes: int = MAX_MODES, include_emd: bool = True) -> ComparisonReport:
    """
    Time both methods on the same series and collect what distinguishes them.

    Args:
        series: Input samples.
        sift: EMD configuration.
        policy: Extension policy of the sawtooth run.
        strategy: Residue strategy of the sawtooth run.
        max_modes: Mode cap for both methods.
        include_emd: Skip the (slow) EMD side when False; its fields stay None.

    Returns:
        ComparisonReport
    """
    sawtooth, sawtooth_seconds = _timed(decompose, series, policy, strategy, max_modes)
    repeat = decompose(series, policy, strategy, max_modes)
    deterministic = (np.array_equal(sawtooth.imfs, repeat.imfs)
                     and np.array_equal(sawtooth.final_residue, repeat.final_residue))
    logger.info(f"sawtooth: {len(sawtooth.modes)} modes in {sawtooth_seconds:.4f} s ({len(series)} samples)")

    report = ComparisonReport(
        size=len(series),
        sawtooth_seconds=sawtooth_seconds,
        sawtooth_envelope_passes=sum(mode.envelope_passes for mode in sawtooth.modes),
        sawtooth_modes=len(sawtooth.modes),
        sawtooth_extrema=[mode.extrema_count for mode in sawtooth.modes],
        sawtooth_imf_deltas=_imf_deltas(sawtooth),
        sawtooth_symmetry=[mode.symmetry_error for mode in sawtooth.modes],
        sawtooth_deterministic=deterministic,
    )
    if not include_emd:
        return report

    emd, emd_seconds = _timed(emd_decompose, series, sift, max_modes)
    logger.info(f"emd: {len(emd.modes)} modes in {emd_seconds:.4f} s ({len(series)} samples)")
    report.emd_seconds = emd_seconds
    report.emd_envelope_passes = sum(mode.envelope_passes for mode in emd.modes)
    report.emd_modes = len(emd.modes)
    report.emd_imf_deltas = _imf_deltas(emd)
    report.emd_symmetry = [mode.symmetry_error for mode in emd.modes]
    report.emd_threshold_sensitivity = threshold_sensitivity(series, sift, max_modes)
    return report
