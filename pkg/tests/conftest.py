import os

import numpy as np
import pytest

from series_tool.series import TimeSeries

RUN_SLOW = os.environ.get("SAWTOOTH_RUN_SLOW", "0") == "1"

slow = pytest.mark.skipif(not RUN_SLOW, reason="set SAWTOOTH_RUN_SLOW=1")


def triangle(period: float = 4.0, end: float = 40.0, step: float = 0.25) -> TimeSeries:
    """Triangle wave between -1 and 1 with minima at multiples of the period."""
    t = np.arange(0.0, end + step, step)
    x = 1.0 - np.abs(np.mod(t, period) - period / 2.0)
    return TimeSeries(t, x)


def random_series(rng: np.random.Generator, n: int, periodic: bool = False) -> TimeSeries:
    t = np.cumsum(rng.uniform(0.5, 1.5, n))
    x = rng.standard_normal(n)
    if periodic:
        x[-1] = x[0]
    return TimeSeries(t, x)


def interior(t: np.ndarray, start: float, stop: float) -> np.ndarray:
    return (t >= start) & (t <= stop)


@pytest.fixture
def triangle_wave() -> TimeSeries:
    return triangle()


@pytest.fixture
def sine() -> TimeSeries:
    """sin(t), 2000 samples over 10 periods."""
    t = np.linspace(0.0, 20.0 * np.pi, 2000)
    return TimeSeries(t, np.sin(t))


@pytest.fixture
def two_tone() -> TimeSeries:
    """sin(10t) + sin(t) over 4 slow periods."""
    t = np.linspace(0.0, 8.0 * np.pi, 8000)
    return TimeSeries(t, np.sin(10.0 * t) + np.sin(t))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(42)
