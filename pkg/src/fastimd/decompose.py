"""Fast intrinsic mode decomposition of 1-D series.

One extraction step works on the shape of the data alone: take the
discrete first derivative, find its extrema (the inflexion points of
the signal), run a piecewise straight line through those samples as a
rough trend estimate, and collect the extrema of the detrended
difference. Those extrema are the control points of an equivalent
effect function, whose sampled values form the trend of this mode;
the fluctuation is what the trend leaves behind. Repeating the step
on each successive trend peels off slower and slower modes until the
trend has at most two extrema left.
"""

from dataclasses import dataclass, replace

import numpy as np

from .eef import ControlPoints, Series, build_eef
from .exceptions import DegenerateSeries

__all__ = [
    "Mode",
    "ModeStack",
    "EXTREMA_COUNT_REACHED",
    "MAX_MODES_REACHED",
    "discrete_derivative",
    "find_extrema",
    "find_inflexions",
    "estimate_trend",
    "imd_step",
    "decompose",
]

EXTREMA_COUNT_REACHED = "extrema_count"
MAX_MODES_REACHED = "max_modes"


@dataclass(frozen=True)
class Mode:
    """One extracted mode.

    ``fluctuation`` is the input of this step minus its trend;
    ``difference`` is the decomposition's original series minus this
    trend, so it accumulates every fluctuation up to this mode.
    """

    index: int
    trend: Series
    fluctuation: Series
    difference: Series
    control: ControlPoints


@dataclass(frozen=True)
class ModeStack:
    """All modes of one decomposition plus why it stopped."""

    original: Series
    modes: tuple
    terminated_reason: str

    def __len__(self):
        return len(self.modes)

    @property
    def final_trend(self):
        return self.modes[-1].trend if self.modes else self.original


def discrete_derivative(series):
    """Derivative estimate at each sample.

    Central differences over the two neighbouring samples in the
    interior, one-sided differences at the ends; spacing does not
    have to be uniform.
    """
    t, v = series.times, series.values
    d = np.empty_like(v)
    d[0] = (v[1] - v[0]) / (t[1] - t[0])
    d[-1] = (v[-1] - v[-2]) / (t[-1] - t[-2])
    if len(v) > 2:
        d[1:-1] = (v[2:] - v[:-2]) / (t[2:] - t[:-2])
    return Series(t, d)


def find_extrema(series):
    """Indices of strict local extrema, plateau-aware.

    A value counts when it beats its nearest unequal neighbours on
    both sides. A plateau of equal values contributes its middle
    index, rounding toward the lower one. Endpoints never count, and
    neither does a plateau that touches an endpoint.
    """
    v = series.values
    if v.size < 3:
        raise ValueError("need at least three samples to find extrema")
    jumps = np.nonzero(np.diff(v) != 0)[0]
    starts = np.concatenate([[0], jumps + 1])
    ends = np.concatenate([jumps, [v.size - 1]])
    out = []
    for r in range(1, starts.size - 1):
        prev_v = v[ends[r - 1]]
        cur = v[starts[r]]
        next_v = v[starts[r + 1]]
        if (cur > prev_v) == (cur > next_v):
            out.append((starts[r] + ends[r]) // 2)
    return np.asarray(out, dtype=np.intp)


def find_inflexions(series):
    """Extrema of the discrete derivative; needs at least 4 samples."""
    if len(series) < 4:
        raise ValueError("need at least four samples to find inflexions")
    return find_extrema(discrete_derivative(series))


def estimate_trend(series, inflexions):
    """Piecewise straight line through the inflexion samples.

    The first and last line segments extend to the series ends. With
    fewer than two inflexions there is nothing to join, so the chord
    between the series endpoints stands in.
    """
    t, v = series.times, series.values
    idx = np.asarray(inflexions, dtype=np.intp)
    if idx.size < 2:
        slope = (v[-1] - v[0]) / (t[-1] - t[0])
        return Series(t, v[0] + slope * (t - t[0]))
    tx, ty = t[idx], v[idx]
    est = np.interp(t, tx, ty)
    left = t < tx[0]
    if np.any(left):
        s0 = (ty[1] - ty[0]) / (tx[1] - tx[0])
        est[left] = ty[0] + s0 * (t[left] - tx[0])
    right = t > tx[-1]
    if np.any(right):
        s1 = (ty[-1] - ty[-2]) / (tx[-1] - tx[-2])
        est[right] = ty[-1] + s1 * (t[right] - tx[-1])
    return Series(t, est)


def imd_step(series, degree=5, estimate=None, alpha=0.5):
    """Extract a single trend/fluctuation pair.

    ``estimate`` substitutes the inflexion-line trend estimate when a
    neighbouring slice already knows a good one (the 2-D path uses
    this); it must share the series' sample times. When the detrended
    difference has no extrema there is nothing left to separate: the
    series is its own trend and the fluctuation is zero.
    """
    if len(series) < 4:
        raise DegenerateSeries(f"cannot decompose {len(series)} samples, need at least 4")
    if estimate is None:
        estimate = estimate_trend(series, find_inflexions(series))
    elif not np.array_equal(estimate.times, series.times):
        raise ValueError("estimate must share the series' sample times")

    detrended = Series(series.times, series.values - estimate.values)
    extrema = find_extrema(detrended)
    control = ControlPoints.spanning(extrema, len(series))
    if len(control) < 3:
        trend = Series(series.times, series.values.copy())
        zero = Series(series.times, np.zeros_like(series.values))
        return Mode(1, trend, zero, zero, control)

    result = build_eef(series, control, degree=degree, alpha=alpha)
    trend = Series(series.times, result.eef_samples)
    fluct = Series(series.times, series.values - result.eef_samples)
    return Mode(1, trend, fluct, fluct, control)


def decompose(series, degree=5, max_modes=16, alpha=0.5):
    """Peel modes off a series until its trend stops oscillating.

    Stops before extracting from a signal with at most two extrema,
    or once ``max_modes`` modes exist. Degenerate steps pass the
    signal through unchanged, so ``max_modes`` bounds the run even if
    the extrema count stalls.
    """
    if max_modes < 1:
        raise ValueError("max_modes must be at least 1")
    if len(series) < 4:
        raise DegenerateSeries(f"cannot decompose {len(series)} samples, need at least 4")
    original = series
    current = series
    modes = []
    while True:
        if find_extrema(current).size <= 2:
            reason = EXTREMA_COUNT_REACHED
            break
        if len(modes) >= max_modes:
            reason = MAX_MODES_REACHED
            break
        step = imd_step(current, degree=degree, alpha=alpha)
        fluct = Series(original.times, current.values - step.trend.values)
        diff = Series(original.times, original.values - step.trend.values)
        modes.append(
            replace(step, index=len(modes) + 1, fluctuation=fluct, difference=diff)
        )
        current = step.trend
    return ModeStack(original, tuple(modes), reason)
