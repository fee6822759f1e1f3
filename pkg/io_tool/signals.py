"""
Seeded test signals for the CLI and the benchmark.
"""

import numpy as np

from series_tool.errors import ConfigError
from series_tool.series import TimeSeries

KINDS = ("sine", "two-tone", "randomwalk", "mixed")


def generate(kind: str, n: int, seed: int = 0) -> TimeSeries:
    """
    Build a deterministic signal of n samples.

    sine: sin(t) over 10 periods. two-tone: sin(10t) + sin(t) over 4 slow
    periods. randomwalk: cumulative standard normal steps. mixed: two
    sinusoids plus a scaled random walk.
    """
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    if kind == "sine":
        t = np.linspace(0.0, 20.0 * np.pi, n)
        return TimeSeries(t, np.sin(t))
    if kind == "two-tone":
        t = np.linspace(0.0, 8.0 * np.pi, n)
        return TimeSeries(t, np.sin(10.0 * t) + np.sin(t))
    t = np.arange(n, dtype=float)
    walk = np.cumsum(rng.standard_normal(n))
    if kind == "randomwalk":
        return TimeSeries(t, walk)
    if kind == "mixed":
        phase = 2.0 * np.pi * t / max(n, 2)
        slow = np.sin(40.0 * phase) + 0.5 * np.sin(290.0 * phase)
        return TimeSeries(t, slow + 0.05 * walk)
    raise ConfigError(f"unknown signal kind '{kind}' (choose from {', '.join(KINDS)})")
