import numpy as np
import pytest

from series_tool.errors import ConfigError, InsufficientDataError
from series_tool.series import TimeSeries
from emd_tool.emd import SiftConfig, StopMode, emd_decompose, sift_mode
from emd_tool.spline import EnvelopeKind, envelope_values, natural_spline

from conftest import interior, random_series


def thomas_spline(knots_t, knots_v, x):
    """Natural cubic spline via the tridiagonal second-derivative system."""
    n = len(knots_t)
    h = np.diff(knots_t)
    m = np.zeros(n)
    if n > 2:
        sub = h[:-1].copy()
        diag = 2.0 * (h[:-1] + h[1:])
        sup = h[1:].copy()
        rhs = 6.0 * (np.diff(knots_v)[1:] / h[1:] - np.diff(knots_v)[:-1] / h[:-1])
        for i in range(1, n - 2):
            w = sub[i] / diag[i - 1]
            diag[i] -= w * sup[i - 1]
            rhs[i] -= w * rhs[i - 1]
        inner = np.zeros(n - 2)
        inner[-1] = rhs[-1] / diag[-1]
        for i in range(n - 4, -1, -1):
            inner[i] = (rhs[i] - sup[i] * inner[i + 1]) / diag[i]
        m[1:-1] = inner
    i = np.clip(np.searchsorted(knots_t, x, side="right") - 1, 0, n - 2)
    t0, t1, hi = knots_t[i], knots_t[i + 1], h[i]
    return (m[i] * (t1 - x) ** 3 / (6 * hi) + m[i + 1] * (x - t0) ** 3 / (6 * hi)
            + (knots_v[i] / hi - m[i] * hi / 6) * (t1 - x)
            + (knots_v[i + 1] / hi - m[i + 1] * hi / 6) * (x - t0))


class TestSpline:
    def test_passes_through_knots(self, rng):
        t = np.sort(rng.uniform(0, 10, 12))
        v = rng.standard_normal(12)
        np.testing.assert_allclose(natural_spline(t, v)(t), v, atol=1e-12)

    def test_matches_tridiagonal_solution(self, rng):
        t = np.cumsum(rng.uniform(0.5, 2.0, 15))
        v = rng.standard_normal(15)
        x = np.linspace(t[0], t[-1], 100)
        np.testing.assert_allclose(natural_spline(t, v)(x), thomas_spline(t, v, x), atol=1e-10)

    def test_two_knots_is_a_line(self):
        values = envelope_values(np.array([0.0, 2.0]), np.array([1.0, 3.0]), np.array([1.0]))
        assert values[0] == pytest.approx(2.0)

    def test_linear_kind(self):
        values = envelope_values(np.array([0.0, 2.0, 4.0]), np.array([0.0, 2.0, 0.0]),
                                 np.array([1.0, 3.0]), EnvelopeKind.LINEAR)
        assert values.tolist() == [1.0, 1.0]

    def test_needs_two_knots(self):
        with pytest.raises(InsufficientDataError):
            natural_spline(np.array([0.0]), np.array([1.0]))


def test_sine_first_imf_is_the_sine(sine):
    result = emd_decompose(sine)
    assert len(result.modes) >= 1
    inside = interior(sine.times, 2.0 * np.pi, 18.0 * np.pi)
    error = result.modes[0].imf[inside] - sine.values[inside]
    assert np.sqrt(np.mean(error ** 2)) <= 0.05
    assert result.method == "emd"


def test_monotone_input_has_no_imfs():
    assert emd_decompose(TimeSeries([0, 1, 2, 3], [0, 1, 2, 3])).modes == []


@pytest.mark.parametrize("kind", list(EnvelopeKind))
def test_imfs_sum_to_input(kind, rng):
    series = random_series(rng, 500)
    result = emd_decompose(series, SiftConfig(envelope_kind=kind))
    assert result.reconstruction_error() <= 1e-9


def test_runs_are_repeatable(rng):
    series = random_series(rng, 500)
    first = emd_decompose(series)
    second = emd_decompose(series)
    np.testing.assert_array_equal(first.imfs, second.imfs)


def test_sift_cap_is_reported(rng):
    series = random_series(rng, 300)
    config = SiftConfig(stop_mode=StopMode.SD, stop_value=1e-30, max_sifts=3)
    result = emd_decompose(series, config, max_modes=1)
    assert result.modes[0].envelope_passes == 3
    assert any("sift cap" in line for line in result.diagnostics)


def test_fixed_sift_count(rng):
    mode = sift_mode(random_series(rng, 300), SiftConfig(stop_mode=StopMode.MAX_SIFTS, stop_value=2))
    assert mode.envelope_passes == 2


class TestSiftConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ConfigError):
            SiftConfig(stop_value=0.0)
        with pytest.raises(ConfigError):
            SiftConfig(stop_mode=StopMode.MAX_SIFTS, stop_value=2.5)
        with pytest.raises(ConfigError):
            SiftConfig(max_sifts=0)

    def test_names(self):
        assert StopMode.from_name("SD") is StopMode.SD
        assert EnvelopeKind.from_name("Linear") is EnvelopeKind.LINEAR
        assert SiftConfig().to_dict()["stop_mode"] == "mean-amplitude"
