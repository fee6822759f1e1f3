import numpy as np
import pytest

from series_tool.errors import ConfigError, DecompositionError, EmptyInputError, OrderingError
from series_tool.extension import ExtensionPolicy
from sawtooth_tool.decomposer import decompose
from sawtooth_tool.mode import ResidueStrategy
from sawtooth_tool.streaming import StreamDecomposer, stream_finish, stream_push

from conftest import random_series


def run_stream(series, **kwargs):
    dec = StreamDecomposer(**kwargs)
    points = []
    for sample in zip(series.times, series.values):
        points.extend(stream_push(dec, sample))
    points.extend(stream_finish(dec))
    return points


@pytest.mark.parametrize("strategy", list(ResidueStrategy))
@pytest.mark.parametrize("policy", [ExtensionPolicy.EVEN, ExtensionPolicy.ODD, ExtensionPolicy.TREND])
def test_stream_matches_batch(policy, strategy, rng):
    for _ in range(5):
        series = random_series(rng, 400)
        batch = decompose(series, policy, strategy, max_modes=1)
        points = run_stream(series, policy=policy, strategy=strategy)
        assert [p.t for p in points] == series.times.tolist()
        imf = np.array([p.imfs[0] for p in points])
        residue = np.array([p.residue for p in points])
        np.testing.assert_allclose(imf, batch.modes[0].imf, rtol=0, atol=1e-12)
        np.testing.assert_allclose(residue, batch.final_residue, rtol=0, atol=1e-12)


@pytest.mark.parametrize("policy", [ExtensionPolicy.EVEN, ExtensionPolicy.ODD, ExtensionPolicy.TREND])
@pytest.mark.parametrize("fixture", ["sine", "two_tone", "triangle_wave"])
def test_stream_matches_batch_on_analytic_signals(fixture, policy, request):
    series = request.getfixturevalue(fixture)
    batch = decompose(series, policy, max_modes=1)
    points = run_stream(series, policy=policy)
    assert [p.t for p in points] == series.times.tolist()
    np.testing.assert_allclose([p.imfs[0] for p in points], batch.modes[0].imf, rtol=0, atol=1e-12)
    np.testing.assert_allclose([p.residue for p in points], batch.final_residue, rtol=0, atol=1e-12)


def test_mean_stream_is_bitwise_batch(rng):
    series = random_series(rng, 500)
    batch = decompose(series, max_modes=1)
    points = run_stream(series)
    assert [p.imfs[0] for p in points] == batch.modes[0].imf.tolist()


def test_two_stage_cascade(rng):
    series = random_series(rng, 1000)
    batch = decompose(series, max_modes=2)
    assert len(batch.modes) == 2
    points = run_stream(series, modes=2)
    assert len(points) == len(series)
    for k in range(2):
        np.testing.assert_allclose([p.imfs[k] for p in points], batch.modes[k].imf, rtol=0, atol=1e-10)
    np.testing.assert_allclose([p.residue for p in points], batch.final_residue, rtol=0, atol=1e-10)


def test_sine_buffer_stays_bounded(sine):
    dec = StreamDecomposer()
    largest = 0
    emitted = 0
    for sample in zip(sine.times, sine.values):
        emitted += len(dec.push(*sample))
        largest = max(largest, dec.buffered_count[0])
    emitted += len(dec.finish())
    assert emitted == len(sine)
    # 200 samples per period
    assert largest <= 400


def test_monotone_stream_is_all_residue():
    dec = StreamDecomposer()
    for t in range(3):
        assert dec.push(t, 2.0 * t) == []
    points = dec.finish()
    assert [(p.imfs, p.residue) for p in points] == [((0.0,), 0.0), ((0.0,), 2.0), ((0.0,), 4.0)]


def test_two_samples():
    dec = StreamDecomposer()
    dec.push(0.0, 1.0)
    dec.push(1.0, -1.0)
    points = dec.finish()
    assert [p.residue for p in points] == [1.0, -1.0]
    assert all(p.imfs == (0.0,) for p in points)


def test_rejects_out_of_order_samples():
    dec = StreamDecomposer()
    dec.push(1.0, 0.0)
    with pytest.raises(OrderingError):
        dec.push(1.0, 2.0)


def test_finish_rules():
    dec = StreamDecomposer()
    with pytest.raises(EmptyInputError):
        dec.finish()
    dec.push(0.0, 0.0)
    dec.finish()
    assert dec.finish() == []
    with pytest.raises(DecompositionError):
        dec.push(1.0, 0.0)


def test_configuration_checks():
    with pytest.raises(ConfigError):
        StreamDecomposer(ExtensionPolicy.CYCLIC)
    with pytest.raises(ConfigError):
        StreamDecomposer(modes=0)
