"""Exception types raised by the fastimd package.

Everything derives from :class:`FastimdError` so callers can catch one
base class. Plain I/O failures are left to the builtin ``OSError``.
"""


class FastimdError(Exception):
    """Base class for all errors raised by this package."""


class NonIncreasingAbscissa(FastimdError):
    """Sample abscissae are not strictly increasing."""


class TooFewPoints(FastimdError):
    """Not enough points to build the requested spline."""


class SingularSystem(FastimdError):
    """The assembled linear system is numerically singular."""


class OutOfDomain(FastimdError):
    """Evaluation point lies outside the spline's breakpoint range."""


class TooFewControlPoints(FastimdError):
    """Control point selection is too small to build an EEF."""


class NonAbuttingSegments(FastimdError):
    """Chained series segments do not share their join times."""


class DegenerateSeries(FastimdError):
    """Series is too short to decompose."""


class ImageTooSmall(FastimdError):
    """Image has fewer than 4 pixels along a scan direction."""


class StrideTooLarge(FastimdError):
    """Sampling selector keeps fewer indices than the spline needs."""


class ParseError(FastimdError):
    """A text input file could not be parsed.

    Carries the 1-based line number and a short reason.
    """

    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateTimestamp(ParseError):
    """Two rows carry the same timestamp."""


class EmptyFile(FastimdError):
    """Input file contains no data rows."""


class UnsupportedFormat(FastimdError):
    """File is not in a format this package reads."""


class CorruptHeader(FastimdError):
    """Image header is malformed."""


class TruncatedPixelData(FastimdError):
    """Image payload ends before width * height samples."""
