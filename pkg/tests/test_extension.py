import numpy as np
import pytest

from series_tool.errors import InsufficientDataError, PolicyViolationError
from series_tool.extension import (
    LEFT_CONTEXT,
    ExtensionPolicy,
    anchor_endpoints,
    extend_extrema,
    extend_left,
)
from series_tool.series import Extremum, ExtremumKind, TimeSeries, find_extrema

MAX, MIN = ExtremumKind.MAXIMUM, ExtremumKind.MINIMUM


def points(*specs):
    return [Extremum.point(kind, t, v) for kind, t, v in specs]


def test_even_mirrors_about_first_and_last_extremum():
    extrema = points((MAX, 1, 5), (MIN, 2, -1), (MAX, 4, 3))
    extended = extend_extrema(extrema, ExtensionPolicy.EVEN, (1, 5), (4, 3))
    assert len(extended) == 7
    assert [(e.t_start, e.value) for e in extended[:2]] == [(-2, 3), (0, -1)]
    assert [(e.t_start, e.value) for e in extended[-2:]] == [(6, -1), (7, 5)]
    assert all(e.synthetic for e in extended[:2] + extended[-2:])


def test_odd_reflects_through_endpoint():
    extrema = points((MAX, 1, 5), (MIN, 2, -1))
    extended = extend_extrema(extrema, ExtensionPolicy.ODD, (0, 0), (3, 0))
    near = extended[1]
    assert near.value == -5
    assert near.kind is MIN
    assert near.t_start == -1
    # right end: reflection of (2, -1) through (3, 0)
    assert (extended[4].t_start, extended[4].value) == (4, 1)


def test_cyclic_reproduces_periodic_pattern():
    t = np.linspace(0.0, 6.0 * np.pi, 3001)
    series = TimeSeries(t, np.sin(t))
    extrema = find_extrema(series)
    anchored = anchor_endpoints(series, extrema, ExtensionPolicy.CYCLIC)
    assert anchored == extrema
    extended = extend_extrema(anchored, ExtensionPolicy.CYCLIC, series.first_sample, series.last_sample)
    period = t[-1] - t[0]
    appended = extended[-2]
    assert appended.value == extrema[0].value
    assert appended.t_start == pytest.approx(extrema[0].t_start + period)
    assert extended[1].value == extrema[-1].value
    assert extended[1].t_start == pytest.approx(extrema[-1].t_start - period)


def test_cyclic_requires_equal_end_values():
    extrema = points((MAX, 1, 5), (MIN, 2, -1))
    with pytest.raises(PolicyViolationError):
        extend_extrema(extrema, ExtensionPolicy.CYCLIC, (0, 0), (3, 1))


def test_cyclic_printed_offset_only_moves_the_far_right_time():
    series = TimeSeries([0, 1, 2, 3, 4, 5, 7], [0, 2, 0, 3, 0, 2, 0])
    anchored = anchor_endpoints(series, find_extrema(series), ExtensionPolicy.CYCLIC)
    assert anchored[0].t_start == 0 and anchored[-1].t_start == 7
    corrected = extend_extrema(anchored, ExtensionPolicy.CYCLIC, series.first_sample, series.last_sample)
    printed = extend_extrema(anchored, ExtensionPolicy.CYCLIC, series.first_sample, series.last_sample,
                             printed_cyclic=True)
    assert corrected[:-1] == printed[:-1]
    assert corrected[-1].t_start == 2 + 7
    assert printed[-1].t_start == 7 + (7 - 4)
    assert printed[-1].value == corrected[-1].value == anchored[2].value


def test_trend_extrapolates_rails():
    series = TimeSeries([0, 1, 2, 3, 4, 5, 6], [0, 2, 1, 3, 2, 4, 3.5])
    anchored = anchor_endpoints(series, find_extrema(series), ExtensionPolicy.TREND)
    extended = extend_extrema(anchored, ExtensionPolicy.TREND, series.first_sample, series.last_sample)
    # maxima at t=1,3,5 rise by 1 per 2; the mirrored maximum sits at t=-1
    near = extended[1]
    assert near.kind is MAX
    assert (near.t_start, near.value) == (-1, 1)
    far = extended[0]
    assert far.kind is MIN
    assert far.t_start == -2


@pytest.mark.parametrize("policy", [ExtensionPolicy.EVEN, ExtensionPolicy.ODD, ExtensionPolicy.TREND])
def test_length_and_alternation_on_random_data(policy, rng):
    for _ in range(30):
        x = rng.standard_normal(60)
        series = TimeSeries(np.arange(60.0), x)
        anchored = anchor_endpoints(series, find_extrema(series), policy)
        extended = extend_extrema(anchored, policy, series.first_sample, series.last_sample)
        assert len(extended) == len(anchored) + 4
        assert all(a.kind is not b.kind for a, b in zip(extended, extended[1:]))
        assert extended[0].t_start < extended[1].t_start < series.times[0] + 1e-12


def test_even_synthetic_values_are_bitwise_copies(rng):
    x = rng.standard_normal(40)
    series = TimeSeries(np.arange(40.0), x)
    anchored = anchor_endpoints(series, find_extrema(series), ExtensionPolicy.EVEN)
    extended = extend_extrema(anchored, ExtensionPolicy.EVEN, series.first_sample, series.last_sample)
    assert extended[0].value == anchored[2].value
    assert extended[1].value == anchored[1].value
    assert extended[-2].value == anchored[-2].value
    assert extended[-1].value == anchored[-3].value


def test_insufficient_extrema():
    with pytest.raises(InsufficientDataError):
        extend_extrema(points((MAX, 1, 5)), ExtensionPolicy.ODD, (0, 0), (2, 0))


def test_left_context_is_enough_for_the_left_side(rng):
    x = rng.standard_normal(80)
    series = TimeSeries(np.arange(80.0), x)
    for policy, needed in LEFT_CONTEXT.items():
        anchored = anchor_endpoints(series, find_extrema(series), policy)
        full = extend_extrema(anchored, policy, series.first_sample, series.last_sample)
        assert extend_left(anchored[:needed], policy, series.first_sample) == full[:2]
