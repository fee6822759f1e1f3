"""
Streaming sawtooth decomposition.

Each stage extracts one mode from the samples it is fed and emits a sample as
soon as the extrema around it are confirmed; its residue is fed to the next
stage. A stage only holds the samples spanned by a handful of consecutive
extrema, and every emitted value equals what the batch decomposition computes
for the same data.
"""

import logging
from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from typing import Deque, List, Optional, Sequence, Tuple

import numpy as np

from series_tool.errors import ConfigError, DecompositionError, EmptyInputError, NoMoreModes, OrderingError
from series_tool.extension import LEFT_CONTEXT, ExtensionPolicy, extend_left, extend_right
from series_tool.series import Extremum, ExtremumKind, TimeSeries
from sawtooth_tool.mode import ResidueStrategy, extract_mode, mode_from_extended

logger = logging.getLogger(__name__)

# Extrema needed on each side of a segment before its samples are final.
SEGMENT_CONTEXT = {
    ResidueStrategy.MEAN: 1,
    ResidueStrategy.MIDPOINT: 1,
    ResidueStrategy.CENTROID: 2,
}

Emitted = Tuple[float, float, float]


@dataclass(frozen=True)
class StreamPoint:
    t: float
    imfs: Tuple[float, ...]
    residue: float


class _Stage:
    """One mode of the cascade."""

    def __init__(self, policy: ExtensionPolicy, strategy: ResidueStrategy):
        self.policy = policy
        self.strategy = strategy
        self.context = SEGMENT_CONTEXT[strategy]
        self.samples: Deque[Tuple[float, float]] = deque()
        self.first_sample: Optional[Tuple[float, float]] = None
        self.last_sample: Optional[Tuple[float, float]] = None
        self.extrema_seen = 0
        # run tracking: the run before the open one, and the open one [t_start, t_end, value]
        self._closed_run: Optional[List[float]] = None
        self._open_run: Optional[List[float]] = None
        # anchored extrema until the left extension is known, then the extended list
        self._anchored: List[Extremum] = []
        self._extended: Optional[List[Extremum]] = None
        self._offset = 0

    def push(self, t: float, x: float) -> List[Emitted]:
        self.samples.append((t, x))
        if self.first_sample is None:
            self.first_sample = (t, x)
        self.last_sample = (t, x)

        if self._open_run is None:
            self._open_run = [t, t, x]
            return []
        if x == self._open_run[2]:
            self._open_run[1] = t
            return []

        extremum = self._classify(self._closed_run, self._open_run, x)
        self._closed_run, self._open_run = self._open_run, [t, t, x]
        if extremum is None:
            return []
        self._confirm(extremum)
        return self._emit_ready()

    @staticmethod
    def _classify(before: Optional[List[float]], run: List[float], after: float) -> Optional[Extremum]:
        if before is None:
            return None
        if run[2] > before[2] and run[2] > after:
            return Extremum(ExtremumKind.MAXIMUM, run[0], run[1], run[2])
        if run[2] < before[2] and run[2] < after:
            return Extremum(ExtremumKind.MINIMUM, run[0], run[1], run[2])
        return None

    def _confirm(self, extremum: Extremum):
        self.extrema_seen += 1
        if self._extended is not None:
            self._extended.append(extremum)
            return
        if not self._anchored and self.policy is not ExtensionPolicy.ODD:
            t_s, x_s = self.first_sample
            self._anchored.append(Extremum.point(extremum.kind.opposite, t_s, x_s))
        self._anchored.append(extremum)
        needed = LEFT_CONTEXT[self.policy]
        if len(self._anchored) >= needed:
            left = extend_left(self._anchored[:needed], self.policy, self.first_sample)
            self._extended = left + self._anchored
            logger.debug(f"left extension ready after {self.extrema_seen} extrema")

    def _emit_ready(self) -> List[Emitted]:
        if self._extended is None:
            return []
        total = self._offset + len(self._extended)
        cutoff = total - 1 - self.context
        if cutoff < self._offset:
            return []
        cutoff_t = self._extended[cutoff - self._offset].t_start
        count = 0
        for t, _ in self.samples:
            if t >= cutoff_t:
                break
            count += 1
        if count == 0:
            return []

        emitted = self._compute(count, self._extended)
        # the next unemitted sample sits at or after element `cutoff`
        keep_from = max(self._offset, cutoff - self.context)
        del self._extended[:keep_from - self._offset]
        self._offset = keep_from
        return emitted

    def _compute(self, count: int, extended: Sequence[Extremum]) -> List[Emitted]:
        """Mode values of the oldest `count` buffered samples from a window of the extended list."""
        chunk = [self.samples.popleft() for _ in range(count)]
        times = np.array([t for t, _ in chunk])
        values = np.array([x for _, x in chunk])
        starts = [e.t_start for e in extended]
        element = bisect_right(starts, times[0]) - 1
        window = list(extended[max(0, element - self.context):])
        mode = mode_from_extended(TimeSeries(times, values), window, self.strategy, self.extrema_seen)
        return list(zip(times.tolist(), mode.imf.tolist(), mode.residue.tolist()))

    def finish(self) -> List[Emitted]:
        if self.first_sample is None:
            return []
        if self._extended is None:
            return self._finish_batch()

        retained = [e for e in self._extended if not e.synthetic]
        if self.policy is not ExtensionPolicy.ODD:
            t_e, x_e = self.last_sample
            end = Extremum.point(retained[-1].kind.opposite, t_e, x_e)
            retained.append(end)
            self._extended.append(end)
        right = extend_right(retained, self.policy, self.last_sample)
        if not self.samples:
            return []
        return self._compute(len(self.samples), self._extended + right)

    def _finish_batch(self) -> List[Emitted]:
        """Too few extrema for a window: decompose everything buffered in one go."""
        times = np.array([t for t, _ in self.samples])
        values = np.array([x for _, x in self.samples])
        self.samples.clear()
        try:
            mode = extract_mode(TimeSeries(times, values), self.policy, self.strategy)
        except NoMoreModes:
            return list(zip(times.tolist(), [0.0] * len(times), values.tolist()))
        return list(zip(times.tolist(), mode.imf.tolist(), mode.residue.tolist()))


class StreamDecomposer:
    """
    Push samples one at a time, receive finalized decomposition points.

    Owned by one caller at a time; not safe for concurrent use.
    """

    def __init__(self, policy: ExtensionPolicy = ExtensionPolicy.EVEN,
                 strategy: ResidueStrategy = ResidueStrategy.MEAN, modes: int = 1):
        if policy is ExtensionPolicy.CYCLIC:
            raise ConfigError("cyclic extension needs the end of the series and cannot stream")
        if modes < 1:
            raise ConfigError(f"modes must be at least 1, got {modes}")
        self.policy = policy
        self.strategy = strategy
        self.modes = modes
        self._stages = [_Stage(policy, strategy) for _ in range(modes)]
        self._pending: Deque[Tuple[float, List[float]]] = deque()
        self._emitted = [0] * modes
        self._completed = 0
        self._last_t: Optional[float] = None
        self._finished = False

    @property
    def buffered_count(self) -> List[int]:
        """Samples currently held by each stage."""
        return [len(stage.samples) for stage in self._stages]

    def push(self, t: float, x: float) -> List[StreamPoint]:
        if self._finished:
            raise DecompositionError("the stream has already been finished")
        t, x = float(t), float(x)
        if not (np.isfinite(t) and np.isfinite(x)):
            raise ValueError(f"sample ({t}, {x}) is not finite")
        if self._last_t is not None and t <= self._last_t:
            raise OrderingError(f"t={t} does not follow the previous t={self._last_t}")
        self._last_t = t
        return self._cascade(0, self._stages[0].push(t, x))

    def finish(self) -> List[StreamPoint]:
        if self._finished:
            return []
        if self._last_t is None:
            raise EmptyInputError("no samples were pushed")
        self._finished = True
        points: List[StreamPoint] = []
        for level, stage in enumerate(self._stages):
            points.extend(self._cascade(level, stage.finish()))
        if self._pending:
            raise DecompositionError(f"{len(self._pending)} points left unfinished")
        return points

    def _cascade(self, level: int, emitted: List[Emitted]) -> List[StreamPoint]:
        points: List[StreamPoint] = []
        last = self.modes - 1
        for t, imf, residue in emitted:
            if level == 0:
                self._pending.append((t, []))
            entry = self._pending[self._emitted[level] - self._completed]
            self._emitted[level] += 1
            entry[1].append(imf)
            if level == last:
                self._pending.popleft()
                self._completed += 1
                points.append(StreamPoint(t, tuple(entry[1]), residue))
            else:
                points.extend(self._cascade(level + 1, self._stages[level + 1].push(t, residue)))
        return points


def stream_push(dec: StreamDecomposer, sample: Tuple[float, float]) -> List[StreamPoint]:
    """Push one (t, x) sample; returns the points finalized by it."""
    t, x = sample
    return dec.push(t, x)


def stream_finish(dec: StreamDecomposer) -> List[StreamPoint]:
    """Flush the buffered tail through the configured boundary extension."""
    return dec.finish()
