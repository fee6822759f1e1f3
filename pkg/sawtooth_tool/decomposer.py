"""
Multi-mode sawtooth decomposition: extract a mode, feed its residue back in,
repeat until the residue has fewer than two extrema.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from series_tool.errors import ConfigError, InsufficientDataError, NoMoreModes, PolicyViolationError
from series_tool.extension import ExtensionPolicy
from series_tool.series import TimeSeries
from sawtooth_tool.mode import ModeResult, ResidueStrategy, extract_mode
from utilities.config import MAX_MODES

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecomposeConfig:
    policy: ExtensionPolicy = ExtensionPolicy.EVEN
    strategy: ResidueStrategy = ResidueStrategy.MEAN
    max_modes: int = MAX_MODES

    def to_dict(self) -> Dict:
        return {"policy": self.policy.value, "strategy": self.strategy.value, "max_modes": self.max_modes}


@dataclass(eq=False)
class Decomposition:
    modes: List[ModeResult]
    final_residue: np.ndarray
    input: TimeSeries
    config: Any  # DecomposeConfig, or SiftConfig for the EMD baseline
    method: str = "sawtooth"
    diagnostics: List[str] = field(default_factory=list)

    @property
    def imfs(self) -> np.ndarray:
        """Modes stacked as rows, shape (len(modes), len(input))."""
        if not self.modes:
            return np.zeros((0, len(self.input)))
        return np.vstack([mode.imf for mode in self.modes])

    def reconstruct(self) -> np.ndarray:
        return self.imfs.sum(axis=0) + self.final_residue

    def reconstruction_error(self) -> float:
        return float(np.max(np.abs(self.reconstruct() - self.input.values)))

    def to_dict(self) -> Dict:
        return {
            "method": self.method,
            "samples": len(self.input),
            "config": self.config.to_dict(),
            "modes": [dict(index=k + 1, **mode.to_dict()) for k, mode in enumerate(self.modes)],
            "reconstruction_error": self.reconstruction_error(),
            "diagnostics": list(self.diagnostics),
        }


def decompose(series: TimeSeries, policy: ExtensionPolicy = ExtensionPolicy.EVEN,
              strategy: ResidueStrategy = ResidueStrategy.MEAN,
              max_modes: int = MAX_MODES, printed_cyclic: bool = False) -> Decomposition:
    """
    Decompose a series into intrinsic modes plus a final residue.

    Each mode costs one envelope pass. The loop ends when the running residue
    has fewer than two interior extrema, when max_modes is reached, or when a
    mode fails to reduce the extrema count (that mode is then dropped and a
    diagnostic recorded).

    Args:
        series: Input samples.
        policy: Boundary extension policy.
        strategy: Residue strategy.
        max_modes: Upper bound on the number of modes.
        printed_cyclic: See extend_extrema.

    Returns:
        Decomposition whose modes and final residue sum back to the input.

    Raises:
        ConfigError: max_modes < 1.
    """
    if max_modes < 1:
        raise ConfigError(f"max_modes must be at least 1, got {max_modes}")
    config = DecomposeConfig(policy, strategy, max_modes)
    modes: List[ModeResult] = []
    diagnostics: List[str] = []
    current = series

    while len(modes) < max_modes:
        try:
            mode = extract_mode(current, policy, strategy, printed_cyclic)
        except NoMoreModes as signal:
            logger.debug(f"stopping after {len(modes)} modes: {signal}")
            break
        except (PolicyViolationError, InsufficientDataError) as e:
            if not modes:
                raise
            # the residue of a later mode no longer fits the policy
            message = f"mode {len(modes) + 1} not extracted: {e}"
            logger.warning(message)
            diagnostics.append(message)
            break
        if modes and mode.extrema_count >= modes[-1].extrema_count:
            message = (f"mode {len(modes) + 1} kept {mode.extrema_count} extrema "
                       f"(previous mode had {modes[-1].extrema_count}); stopping")
            logger.warning(message)
            diagnostics.append(message)
            break
        modes.append(mode)
        logger.info(f"mode {len(modes)}: {mode.extrema_count} extrema")
        current = current.with_values(mode.residue)

    if len(modes) == max_modes:
        logger.debug(f"reached max_modes={max_modes}")
    return Decomposition(
        modes=modes,
        final_residue=current.values,
        input=series,
        config=config,
        method="sawtooth",
        diagnostics=diagnostics,
    )
