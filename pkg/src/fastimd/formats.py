"""File formats: series CSVs, portable gray/pixel maps, modes CSV.

Readers are strict and name the offending line; writers go through a
temp file in the target directory and rename into place, so a failed
run never leaves a half-written output behind.

Timestamps may be plain reals or ISO dates. Dates become day offsets
from the earliest row, so a trading-day series keeps its weekend gaps
as wider steps instead of pretending to be uniform.
"""

import csv
import os
import tempfile
from datetime import date

import numpy as np

from .eef import Series
from .exceptions import (
    CorruptHeader,
    DuplicateTimestamp,
    EmptyFile,
    ParseError,
    TruncatedPixelData,
    UnsupportedFormat,
)
from .image import GrayImage

__all__ = [
    "read_series_csv",
    "write_modes_csv",
    "read_image",
    "write_image",
    "shift_fluctuation",
    "atomic_write_bytes",
    "LAYOUTS",
]

LAYOUTS = ("generic", "yahoo")

_LUMA = (0.299, 0.587, 0.114)


def atomic_write_bytes(path, data):
    """Write bytes to ``path`` through a temp file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fastimd-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_time_cell(cell, lineno):
    cell = cell.strip()
    try:
        return float(cell), None
    except ValueError:
        pass
    try:
        return None, date.fromisoformat(cell)
    except ValueError:
        raise ParseError(lineno, f"cannot parse time {cell!r}") from None


def _parse_value_cell(cell, lineno):
    try:
        value = float(cell.strip())
    except ValueError:
        raise ParseError(lineno, f"cannot parse value {cell!r}") from None
    if not np.isfinite(value):
        raise ParseError(lineno, f"non-finite value {cell!r}")
    return value


def _finish(times, values, dates, lineno_of):
    if dates:
        earliest = min(dates)
        times = [float((d - earliest).days) for d in dates]
    order = np.argsort(np.asarray(times), kind="stable")
    times = np.asarray(times, dtype=float)[order]
    values = np.asarray(values, dtype=float)[order]
    dup = np.nonzero(np.diff(times) == 0)[0]
    if dup.size:
        raise DuplicateTimestamp(
            lineno_of[int(order[dup[0] + 1])], f"timestamp {times[dup[0]]} repeats"
        )
    if times.size < 2:
        raise EmptyFile("need at least two data rows")
    return Series(times, values)


def _read_generic(rows):
    times, values, dates, lineno_of = [], [], [], []
    ncols = None
    time_mode = None
    for lineno, row in rows:
        if ncols is None:
            ncols = len(row)
            if ncols not in (1, 2):
                raise ParseError(lineno, f"expected 1 or 2 columns, found {ncols}")
        elif len(row) != ncols:
            raise ParseError(lineno, f"expected {ncols} columns, found {len(row)}")
        if ncols == 1:
            times.append(float(len(values)))
            values.append(_parse_value_cell(row[0], lineno))
        else:
            number, day = _parse_time_cell(row[0], lineno)
            mode = "number" if day is None else "date"
            if time_mode is None:
                time_mode = mode
            elif mode != time_mode:
                raise ParseError(lineno, f"mixed {time_mode} and {mode} timestamps")
            if day is None:
                times.append(number)
            else:
                dates.append(day)
            values.append(_parse_value_cell(row[1], lineno))
        lineno_of.append(lineno)
    if not values:
        raise EmptyFile("no data rows")
    return _finish(times, values, dates, lineno_of)


def _read_yahoo(rows, value_column):
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise EmptyFile("no rows at all") from None
    names = [cell.strip() for cell in header]
    if "Date" not in names:
        raise ParseError(header_line, "missing Date column")
    if value_column not in names:
        raise ParseError(header_line, f"missing {value_column!r} column")
    date_at = names.index("Date")
    value_at = names.index(value_column)

    values, dates, lineno_of = [], [], []
    for lineno, row in rows:
        if len(row) != len(names):
            raise ParseError(lineno, f"expected {len(names)} columns, found {len(row)}")
        try:
            day = date.fromisoformat(row[date_at].strip())
        except ValueError:
            raise ParseError(lineno, f"cannot parse date {row[date_at]!r}") from None
        dates.append(day)
        values.append(_parse_value_cell(row[value_at], lineno))
        lineno_of.append(lineno)
    if not values:
        raise EmptyFile("no data rows")
    return _finish(None, values, dates, lineno_of)


def read_series_csv(path, layout="generic", value_column="Close"):
    """Read a time series from a CSV file.

    ``generic`` accepts one column of values (times become row
    positions) or time,value pairs; a non-numeric first row is taken
    as a header. ``yahoo`` expects a daily-history header and pulls
    ``value_column`` (Close unless told otherwise) against the Date
    column. Rows come back sorted by time.
    """
    if layout not in LAYOUTS:
        raise ValueError(f"layout must be one of {LAYOUTS}")
    with open(path, newline="", encoding="utf-8") as handle:
        reader = ((lineno, row) for lineno, row in enumerate(csv.reader(handle), 1)
                  if any(cell.strip() for cell in row))
        if layout == "yahoo":
            return _read_yahoo(reader, value_column)
        rows = list(reader)
        if rows and not _looks_numeric(rows[0][1][0]):
            rows = rows[1:]
        return _read_generic(iter(rows))


def _looks_numeric(cell):
    cell = cell.strip()
    try:
        float(cell)
        return True
    except ValueError:
        pass
    try:
        date.fromisoformat(cell)
        return True
    except ValueError:
        return False


def write_modes_csv(stack, path):
    """Write a decomposition as delimited text.

    Columns: Time, Original, then Trend n, Fluctuation n, Difference n
    per mode. Values are written with shortest round-trip formatting,
    so reading them back loses nothing.
    """
    header = ["Time", "Original"]
    columns = [stack.original.times, stack.original.values]
    for mode in stack.modes:
        header += [
            f"Trend {mode.index}",
            f"Fluctuation {mode.index}",
            f"Difference {mode.index}",
        ]
        columns += [mode.trend.values, mode.fluctuation.values, mode.difference.values]
    lines = [",".join(header)]
    for row in zip(*columns):
        lines.append(",".join(repr(float(v)) for v in row))
    atomic_write_bytes(path, ("\n".join(lines) + "\n").encode("ascii"))


class _PnmTokens:
    """Whitespace/comment-aware tokenizer over a PNM header."""

    def __init__(self, data):
        self.data = data
        self.pos = 0

    def next_token(self):
        data, i = self.data, self.pos
        while i < len(data):
            if data[i : i + 1].isspace():
                i += 1
            elif data[i : i + 1] == b"#":
                while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                    i += 1
            else:
                break
        start = i
        while i < len(data) and not data[i : i + 1].isspace() and data[i : i + 1] != b"#":
            i += 1
        self.pos = i
        if start == i:
            raise CorruptHeader("header ends early")
        return data[start:i]

    def next_int(self, what):
        token = self.next_token()
        try:
            value = int(token)
        except ValueError:
            raise CorruptHeader(f"{what} is not an integer: {token!r}") from None
        return value


def read_image(path):
    """Read a PGM (P2/P5) or PPM (P3/P6) file as grayscale.

    Values are rescaled to the 0..255 range whatever the file's
    maxval; color inputs collapse to Rec. 601 luma after rescaling.
    """
    with open(path, "rb") as handle:
        blob = handle.read()
    magic = blob[:2]
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise UnsupportedFormat(f"magic {magic!r} is not P2/P3/P5/P6")
    tokens = _PnmTokens(blob)
    tokens.next_token()
    width = tokens.next_int("width")
    height = tokens.next_int("height")
    maxval = tokens.next_int("maxval")
    if width <= 0 or height <= 0:
        raise CorruptHeader(f"bad dimensions {width}x{height}")
    if not 0 < maxval <= 65535:
        raise CorruptHeader(f"maxval {maxval} outside 1..65535")
    channels = 3 if magic in (b"P3", b"P6") else 1
    count = width * height * channels

    if magic in (b"P2", b"P3"):
        raw = []
        for _ in range(count):
            try:
                token = tokens.next_token()
            except CorruptHeader:
                raise TruncatedPixelData(
                    f"expected {count} samples, found {len(raw)}"
                ) from None
            try:
                raw.append(int(token))
            except ValueError:
                raise CorruptHeader(f"sample is not an integer: {token!r}") from None
        samples = np.array(raw, dtype=float)
    else:
        payload = blob[tokens.pos + 1 :]
        wide = maxval > 255
        need = count * (2 if wide else 1)
        if len(payload) < need:
            raise TruncatedPixelData(f"expected {need} payload bytes, found {len(payload)}")
        raw = np.frombuffer(payload[:need], dtype=">u2" if wide else np.uint8)
        samples = raw.astype(float)
    if np.any(samples < 0) or np.any(samples > maxval):
        raise CorruptHeader("sample value outside 0..maxval")

    samples *= 255.0 / maxval
    if channels == 3:
        rgb = samples.reshape(height, width, 3)
        samples = _LUMA[0] * rgb[:, :, 0] + _LUMA[1] * rgb[:, :, 1] + _LUMA[2] * rgb[:, :, 2]
    return GrayImage(samples.reshape(height, width))


def write_image(image, path):
    """Write a GrayImage as binary PGM, maxval 255.

    Values are rounded half-to-even and clamped into 0..255; signed
    data (fluctuations) should go through :func:`shift_fluctuation`
    first.
    """
    quantized = np.clip(np.rint(image.pixels), 0, 255).astype(np.uint8)
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    atomic_write_bytes(path, header + quantized.tobytes())


def shift_fluctuation(image, midpoint=128.0):
    """Recenter signed fluctuation data on a display midpoint."""
    return GrayImage(image.pixels + midpoint)
