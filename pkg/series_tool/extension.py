"""
Boundary extension: two synthetic extrema beyond each end of the extrema list
so that the upper and lower envelopes are defined at the series boundaries.
"""

import logging
from enum import Enum
from typing import List, Sequence, Tuple

from series_tool.errors import ConsistencyError, InsufficientDataError, PolicyViolationError
from series_tool.series import Extremum, ExtremumKind, TimeSeries

logger = logging.getLogger(__name__)

Sample = Tuple[float, float]

CYCLIC_TOLERANCE = 1e-9


class ExtensionPolicy(Enum):
    EVEN = "even"
    ODD = "odd"
    CYCLIC = "cyclic"
    TREND = "trend"

    @classmethod
    def from_name(cls, name: str) -> "ExtensionPolicy":
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown extension policy '{name}' (choose from {choices})")


# Minimum list length extend_extrema needs per policy.
MIN_EXTREMA = {
    ExtensionPolicy.EVEN: 3,
    ExtensionPolicy.ODD: 2,
    ExtensionPolicy.CYCLIC: 2,
    ExtensionPolicy.TREND: 3,
}

# Leading elements of the anchored list the left extension reads. A streaming
# consumer can compute the left side as soon as this many are known.
LEFT_CONTEXT = {
    ExtensionPolicy.EVEN: 3,
    ExtensionPolicy.ODD: 2,
    ExtensionPolicy.TREND: 4,
}


def anchor_endpoints(series: TimeSeries, extrema: Sequence[Extremum],
                     policy: ExtensionPolicy) -> List[Extremum]:
    """
    Promote the series endpoints to extrema where the policy treats them as such.

    Even and Trend always anchor both ends. Cyclic anchors only when both ends
    get the same kind, i.e. when the endpoint is an extremum of the periodic
    continuation; otherwise the endpoints are pass-through points and the wrap
    works on interior extrema. Odd reflects through the endpoint samples and
    never anchors.
    """
    extrema = list(extrema)
    if not extrema or policy is ExtensionPolicy.ODD:
        return extrema

    t_s, x_s = series.first_sample
    t_e, x_e = series.last_sample
    start = Extremum.point(extrema[0].kind.opposite, t_s, x_s)
    end = Extremum.point(extrema[-1].kind.opposite, t_e, x_e)

    if policy is ExtensionPolicy.CYCLIC and start.kind is not end.kind:
        logger.debug("cyclic endpoints are pass-through points, wrapping interior extrema")
        return extrema
    return [start] + extrema + [end]


def extend_extrema(extrema: Sequence[Extremum], policy: ExtensionPolicy,
                   first_sample: Sample, last_sample: Sample,
                   printed_cyclic: bool = False) -> List[Extremum]:
    """
    Return the extrema with exactly two synthetic extrema prepended and two appended.

    Args:
        extrema: Alternating extrema, already anchored for Even/Trend/Cyclic
            (see anchor_endpoints).
        policy: Extension variant.
        first_sample: (t, x) of the first series sample.
        last_sample: (t, x) of the last series sample.
        printed_cyclic: Use the printed right-hand time offset of the cyclic
            wrap, t_{m-1} + (t_{m-1} - t_{m-3}), instead of the period shift.

    Returns:
        List of len(extrema) + 4 extrema, kinds alternating.
    """
    extrema = list(extrema)
    _require(extrema, policy)

    if policy is ExtensionPolicy.CYCLIC:
        left, right = _cyclic(extrema, first_sample, last_sample, printed_cyclic)
    else:
        left = extend_left(extrema, policy, first_sample)
        right = extend_right(extrema, policy, last_sample)

    extended = left + extrema + right
    _check_order(extended)
    return extended


def extend_left(extrema: Sequence[Extremum], policy: ExtensionPolicy,
                first_sample: Sample) -> List[Extremum]:
    """The two synthetic extrema before the list, outermost first."""
    if policy is ExtensionPolicy.CYCLIC:
        raise PolicyViolationError("cyclic extension needs both ends of the series")
    _require(extrema, policy)
    t_s, x_s = first_sample

    if policy is ExtensionPolicy.ODD:
        first, second = extrema[0], extrema[1]
        return [
            _reflected(second, t_s, x_s),
            _reflected(first, t_s, x_s),
        ]

    anchor, first, second = extrema[0], extrema[1], extrema[2]
    t_near = 2.0 * anchor.t_mid - first.t_mid
    t_far = 2.0 * anchor.t_mid - second.t_mid
    if policy is ExtensionPolicy.EVEN:
        return [
            Extremum.point(second.kind, t_far, second.value, synthetic=True),
            Extremum.point(first.kind, t_near, first.value, synthetic=True),
        ]
    return [
        Extremum.point(second.kind, t_far, _rail_value(extrema, second.kind, t_far), synthetic=True),
        Extremum.point(first.kind, t_near, _rail_value(extrema, first.kind, t_near), synthetic=True),
    ]


def extend_right(extrema: Sequence[Extremum], policy: ExtensionPolicy,
                 last_sample: Sample) -> List[Extremum]:
    """The two synthetic extrema after the list, innermost first."""
    if policy is ExtensionPolicy.CYCLIC:
        raise PolicyViolationError("cyclic extension needs both ends of the series")
    _require(extrema, policy)
    t_e, x_e = last_sample

    if policy is ExtensionPolicy.ODD:
        last, before = extrema[-1], extrema[-2]
        return [
            _reflected(last, t_e, x_e),
            _reflected(before, t_e, x_e),
        ]

    anchor, last, before = extrema[-1], extrema[-2], extrema[-3]
    t_near = 2.0 * anchor.t_mid - last.t_mid
    t_far = 2.0 * anchor.t_mid - before.t_mid
    if policy is ExtensionPolicy.EVEN:
        return [
            Extremum.point(last.kind, t_near, last.value, synthetic=True),
            Extremum.point(before.kind, t_far, before.value, synthetic=True),
        ]
    tail = list(reversed(extrema))
    return [
        Extremum.point(last.kind, t_near, _rail_value(tail, last.kind, t_near), synthetic=True),
        Extremum.point(before.kind, t_far, _rail_value(tail, before.kind, t_far), synthetic=True),
    ]


def _require(extrema: Sequence[Extremum], policy: ExtensionPolicy):
    needed = MIN_EXTREMA[policy]
    if len(extrema) < needed:
        raise InsufficientDataError(
            f"{policy.value} extension needs at least {needed} extrema, got {len(extrema)}"
        )


def _reflected(extremum: Extremum, t_pivot: float, x_pivot: float) -> Extremum:
    """Point reflection of an extremum through the endpoint sample."""
    return Extremum.point(
        extremum.kind.opposite,
        t_pivot - (extremum.t_mid - t_pivot),
        x_pivot - (extremum.value - x_pivot),
        synthetic=True,
    )


def _rail_value(ordered: Sequence[Extremum], kind: ExtremumKind, t: float) -> float:
    """Extrapolate the line through the first two extrema of a kind (flat if only one)."""
    rail = [e for e in ordered[:5] if e.kind is kind][:2]
    if len(rail) == 1:
        return rail[0].value
    (t_a, v_a), (t_b, v_b) = (rail[0].t_mid, rail[0].value), (rail[1].t_mid, rail[1].value)
    return v_a + (v_b - v_a) * (t - t_a) / (t_b - t_a)


def _cyclic(extrema: List[Extremum], first_sample: Sample, last_sample: Sample,
            printed: bool) -> Tuple[List[Extremum], List[Extremum]]:
    t_s, x_s = first_sample
    t_e, x_e = last_sample
    amplitude = max([abs(x_s), abs(x_e)] + [abs(e.value) for e in extrema]) or 1.0
    if abs(x_s - x_e) > CYCLIC_TOLERANCE * amplitude:
        raise PolicyViolationError(
            f"cyclic extension needs equal end values, got {x_s!r} and {x_e!r}"
        )
    period = t_e - t_s

    anchored = (not extrema[0].is_plateau and extrema[0].t_start == t_s
                and not extrema[-1].is_plateau and extrema[-1].t_end == t_e)
    if anchored:
        if len(extrema) < 4:
            raise InsufficientDataError(f"cyclic extension needs 4 anchored extrema, got {len(extrema)}")
        if extrema[0].kind is not extrema[-1].kind:
            raise PolicyViolationError("anchored cyclic endpoints must be extrema of the same kind")
        wrap_left = [extrema[-3], extrema[-2]]
        wrap_right = [extrema[1], extrema[2]]
    else:
        if extrema[0].kind is extrema[-1].kind:
            raise PolicyViolationError("cyclic wrap would join two extrema of the same kind")
        wrap_left = [extrema[-2], extrema[-1]]
        wrap_right = [extrema[0], extrema[1]]

    left = [Extremum.point(e.kind, e.t_mid - period, e.value, synthetic=True) for e in wrap_left]
    right = [Extremum.point(e.kind, e.t_mid + period, e.value, synthetic=True) for e in wrap_right]
    if printed and anchored:
        far = extrema[-1].t_mid + (extrema[-1].t_mid - extrema[-3].t_mid)
        right[1] = Extremum.point(right[1].kind, far, right[1].value, synthetic=True)
    return left, right


def _check_order(extended: Sequence[Extremum]):
    for previous, current in zip(extended, extended[1:]):
        if current.kind is previous.kind:
            raise ConsistencyError(f"extrema kinds do not alternate at t={current.t_start}")
        if current.t_start <= previous.t_end:
            raise PolicyViolationError(
                f"extended extrema overlap at t={current.t_start} (previous ends at {previous.t_end})"
            )
