"""Property runs over many seeded random series; enable with SAWTOOTH_RUN_SLOW=1."""

import numpy as np
import pytest

from series_tool.extension import ExtensionPolicy
from sawtooth_tool.decomposer import decompose
from sawtooth_tool.mode import ResidueStrategy
from sawtooth_tool.streaming import StreamDecomposer

from conftest import random_series, slow

SERIES_COUNT = 200


def seeded_series(periodic=False):
    rng = np.random.default_rng(2024)
    for _ in range(SERIES_COUNT):
        yield random_series(rng, int(rng.integers(10, 10001)), periodic)


@slow
@pytest.mark.parametrize("strategy", list(ResidueStrategy))
@pytest.mark.parametrize("policy", list(ExtensionPolicy))
def test_reconstruction_and_decay(policy, strategy):
    for series in seeded_series(periodic=policy is ExtensionPolicy.CYCLIC):
        result = decompose(series, policy, strategy)
        assert result.reconstruction_error() <= 1e-9 * np.max(np.abs(series.values))
        counts = [mode.extrema_count for mode in result.modes]
        assert all(a > b for a, b in zip(counts, counts[1:]))


@slow
@pytest.mark.parametrize("policy", [ExtensionPolicy.EVEN, ExtensionPolicy.ODD, ExtensionPolicy.TREND])
def test_every_mean_mode_is_admissible(policy):
    for series in seeded_series():
        for mode in decompose(series, policy).modes:
            assert abs(mode.zero_crossings - mode.imf_extrema) <= 1
            assert mode.sawtooth_artifacts.symmetry_error() <= 1e-12


@slow
def test_streaming_matches_batch_on_long_series():
    for series in list(seeded_series())[:20]:
        batch = decompose(series, max_modes=1)
        dec = StreamDecomposer()
        points = []
        for t, x in zip(series.times, series.values):
            points.extend(dec.push(t, x))
        points.extend(dec.finish())
        expected = batch.modes[0].imf if batch.modes else np.zeros(len(series))
        np.testing.assert_allclose([p.imfs[0] for p in points], expected, rtol=0, atol=1e-12)
