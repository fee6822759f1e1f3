"""
CSV reading and writing for time series and decomposition outputs.

Floats are written in their shortest round-trip form, so a written series
reads back bit for bit.
"""

import io
import logging
from typing import List, Tuple

import numpy as np
import pandas as pd

from series_tool.errors import CsvParseError, EmptyInputError, OrderingError
from series_tool.series import TimeSeries

logger = logging.getLogger(__name__)


def _data_lines(text: str) -> Tuple[List[int], List[str]]:
    """Non-blank lines with their 1-based line numbers."""
    numbers, lines = [], []
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            numbers.append(number)
            lines.append(line)
    return numbers, lines


def parse_csv(data: bytes) -> TimeSeries:
    """
    Read "t,value" rows into a TimeSeries.

    Blank lines are skipped and a single leading header row (non-numeric
    first cell) is allowed. Row numbers in errors are 1-based file lines.

    Raises:
        EmptyInputError: no data rows.
        CsvParseError: a cell is not a finite number or a row does not have two cells.
        OrderingError: t does not strictly increase.
    """
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        raise CsvParseError(f"input is not UTF-8 text: {e}") from e

    numbers, lines = _data_lines(text)
    if not lines:
        raise EmptyInputError("the CSV input holds no rows")

    try:
        frame = pd.read_csv(io.StringIO("\n".join(lines)), header=None, dtype=str,
                            skipinitialspace=True, keep_default_na=False)
    except pd.errors.ParserError as e:
        raise CsvParseError(f"malformed CSV: {e}") from e
    if frame.shape[1] != 2:
        raise CsvParseError(f"expected 2 columns (t, value), found {frame.shape[1]}", row=numbers[0])

    first_t = pd.to_numeric(frame.iloc[:1, 0].str.strip(), errors="coerce")
    if first_t.isna().all():
        logger.debug(f"treating line {numbers[0]} as header: {lines[0]!r}")
        frame = frame.iloc[1:]
        numbers, lines = numbers[1:], lines[1:]
    if frame.empty:
        raise EmptyInputError("the CSV input holds a header but no data rows")

    cells = frame.apply(lambda column: column.astype(str).str.strip())
    parsed = cells.apply(pd.to_numeric, errors="coerce")
    bad = ~np.isfinite(parsed.to_numpy(dtype=float)).all(axis=1)
    if bad.any():
        j = int(np.argmax(bad))
        raise CsvParseError(f"line {numbers[j]}: non-numeric cell in {lines[j]!r}",
                            row=numbers[j])

    times = cells.iloc[:, 0].astype(float).to_numpy()
    values = cells.iloc[:, 1].astype(float).to_numpy()
    steps = np.diff(times)
    if np.any(steps <= 0):
        j = int(np.argmax(steps <= 0)) + 1
        raise OrderingError(f"line {numbers[j]}: t={times[j]!r} does not follow t={times[j - 1]!r}",
                            row=numbers[j])
    return TimeSeries(times, values)


def read_csv(path: str) -> TimeSeries:
    with open(path, "rb") as f:
        return parse_csv(f.read())


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, lineterminator="\n")


def write_csv(series: TimeSeries) -> str:
    """The series as "t,x" CSV text."""
    return frame_to_csv(pd.DataFrame({"t": series.times, "x": series.values}))


def mode_frame(times: np.ndarray, imf: np.ndarray, residue: np.ndarray,
               upper: np.ndarray, lower: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"t": times, "imf": imf, "residue": residue, "upper": upper, "lower": lower})


def residue_frame(times: np.ndarray, residue: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"t": times, "residue": residue})
