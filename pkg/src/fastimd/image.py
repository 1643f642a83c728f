"""Mode decomposition of grayscale images, one scan line at a time.

Each scan line is a 1-D series over its pixel coordinate. Running the
1-D step on every line independently leaves visible seams between
neighbouring lines, because each line picks its own trend estimate.
Chaining fixes that: the first line estimates its own trend, every
later line reuses its neighbour's trend as the estimate, so control
points shift gradually from line to line. A full mode runs one
chained pass across rows and one across columns; the fluctuation is
taken only after both directions are done. Repeating on the trend
image yields further modes.
"""

from dataclasses import dataclass

import numpy as np

from .decompose import imd_step
from .eef import Series
from .exceptions import ImageTooSmall

__all__ = [
    "GrayImage",
    "ImageMode",
    "HORIZONTAL",
    "VERTICAL",
    "decompose_direction",
    "decompose_image",
    "inter_slice_smoothness",
]

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

_CONVERGED_RMS = 1e-6


@dataclass(frozen=True)
class GrayImage:
    """A grayscale raster; nominal range 0..255 but values are free reals."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels, dtype=float)
        if px.ndim != 2 or px.size == 0:
            raise ValueError("pixels must be a non-empty 2-D array")
        if not np.all(np.isfinite(px)):
            raise ValueError("pixel values must be finite")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def height(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]


@dataclass(frozen=True)
class ImageMode:
    index: int
    trend: GrayImage
    fluctuation: GrayImage


def _check_direction(direction):
    if direction not in (HORIZONTAL, VERTICAL):
        raise ValueError(f"direction must be {HORIZONTAL!r} or {VERTICAL!r}")


def decompose_direction(image, direction, degree=5, alpha=0.5):
    """One chained trend pass along rows (horizontal) or columns.

    The first slice estimates its own trend; slice k then uses slice
    k-1's actual trend as its estimate, whether or not that slice was
    degenerate. Constant slices pass through unchanged.
    """
    _check_direction(direction)
    data = image.pixels if direction == HORIZONTAL else image.pixels.T
    n_slices, length = data.shape
    if length < 4:
        raise ImageTooSmall(f"slices of length {length} along {direction}, need at least 4")

    coords = np.arange(length, dtype=float)
    out = np.empty_like(data)
    previous = None
    for k in range(n_slices):
        line = Series(coords, data[k])
        mode = imd_step(line, degree=degree, estimate=previous, alpha=alpha)
        out[k] = mode.trend.values
        previous = mode.trend
    return GrayImage(out if direction == HORIZONTAL else out.T)


def decompose_image(image, degree=5, max_modes=16, scan=(HORIZONTAL, VERTICAL), alpha=0.5):
    """Extract trend/fluctuation modes from an image.

    Every mode runs one chained pass per scan direction, in the given
    order, then splits input = trend + fluctuation. Stops after
    ``max_modes`` modes or once a trend changes its input by less
    than 1e-6 RMS.
    """
    if max_modes < 1:
        raise ValueError("max_modes must be at least 1")
    for direction in scan:
        _check_direction(direction)
    if image.width < 4 or image.height < 4:
        raise ImageTooSmall(f"{image.width}x{image.height} image, need at least 4x4")

    current = image
    modes = []
    for index in range(1, max_modes + 1):
        trend = current
        for direction in scan:
            trend = decompose_direction(trend, direction, degree=degree, alpha=alpha)
        fluct = GrayImage(current.pixels - trend.pixels)
        modes.append(ImageMode(index, trend, fluct))
        rms_change = float(np.sqrt(np.mean(fluct.pixels**2)))
        current = trend
        if rms_change < _CONVERGED_RMS:
            break
    return modes


def inter_slice_smoothness(image, direction):
    """RMS of the jump between neighbouring slices of a trend image.

    Horizontal slices are rows, so this measures vertical jumps, and
    vice versa. A single slice has no neighbours and scores 0.
    """
    _check_direction(direction)
    data = image.pixels if direction == HORIZONTAL else image.pixels.T
    if data.shape[0] < 2:
        return 0.0
    return float(np.sqrt(np.mean(np.diff(data, axis=0) ** 2)))
