"""
Static SVG 1.1 line charts of time series.
"""

from typing import List, Sequence, Tuple

import numpy as np

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN"
"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">

<svg
    width="%(width)d"
    height="%(height)d"
    viewBox="0 0 %(width)d %(height)d"
    version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

COLORS = ["#1f4e79", "#c0392b", "#27ae60", "#8e44ad", "#d35400"]

# Polylines longer than this are thinned by keeping each bucket's min and max.
MAX_POINTS = 4000


def thin(times: np.ndarray, values: np.ndarray, max_points: int = MAX_POINTS) -> Tuple[np.ndarray, np.ndarray]:
    if len(times) <= max_points:
        return times, values
    buckets = np.array_split(np.arange(len(times)), max_points // 2)
    keep = []
    for bucket in buckets:
        lo = bucket[np.argmin(values[bucket])]
        hi = bucket[np.argmax(values[bucket])]
        keep.extend(sorted({lo, hi}))
    keep = np.array(keep)
    return times[keep], values[keep]


class SvgChart:
    """One chart: a frame, axis labels and any number of polylines."""

    def __init__(self, title: str, width: int = 900, height: int = 320, margin: int = 50):
        self.title = title
        self.width = width
        self.height = height
        self.margin = margin
        self.min_x = None
        self.max_x = None
        self.min_y = None
        self.max_y = None
        self.series: List[Tuple[str, np.ndarray, np.ndarray, str]] = []

    def require(self, x: float, y: float):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    def line(self, label: str, times: Sequence[float], values: Sequence[float], color: str = None):
        times, values = thin(np.asarray(times, dtype=float), np.asarray(values, dtype=float))
        self.require(float(np.min(times)), float(np.min(values)))
        self.require(float(np.max(times)), float(np.max(values)))
        self.series.append((label, times, values, color or COLORS[len(self.series) % len(COLORS)]))

    def _scale(self, times: np.ndarray, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        span_x = (self.max_x - self.min_x) or 1.0
        span_y = (self.max_y - self.min_y) or 1.0
        inner_w = self.width - 2 * self.margin
        inner_h = self.height - 2 * self.margin
        x = self.margin + (times - self.min_x) / span_x * inner_w
        y = self.height - self.margin - (values - self.min_y) / span_y * inner_h
        return x, y

    def render(self) -> str:
        width, height = self.width, self.height
        commands = [PREAMBLE % locals()]
        m = self.margin
        commands.append(
            '<rect x="%d" y="%d" width="%d" height="%d" style="fill:none;stroke:#999999;stroke-width:1"/>'
            % (m, m, width - 2 * m, height - 2 * m)
        )
        commands.append(
            '<text x="%d" y="%d" fill="#333333" font-size="14" font-family="monospace">%s</text>'
            % (m, m - 20, _escape(self.title))
        )
        if self.series:
            commands.append(
                '<text x="%d" y="%d" fill="#666666" font-size="10" font-family="monospace">'
                't: %.6g .. %.6g   value: %.6g .. %.6g</text>'
                % (m, height - m + 20, self.min_x, self.max_x, self.min_y, self.max_y)
            )
        for k, (label, times, values, color) in enumerate(self.series):
            x, y = self._scale(times, values)
            commands.append(
                '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:1" />'
                % (" ".join("%.2f,%.2f" % p for p in zip(x, y)), color)
            )
            commands.append(
                '<text x="%d" y="%d" fill="%s" font-size="10" font-family="monospace">%s</text>'
                % (width - m - 160, m + 14 * (k + 1), color, _escape(label))
            )
        commands.append(POSTAMBLE)
        return "\n".join(commands)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def line_chart(title: str, lines: Sequence[Tuple[str, Sequence[float], Sequence[float]]]) -> str:
    """Render (label, times, values) lines into one SVG document."""
    chart = SvgChart(title)
    for label, times, values in lines:
        chart.line(label, times, values)
    return chart.render()
