"""Equivalent effect functions for sampled series.

A function e(t) is an equivalent effect of f(t) over a set of control
times when both accumulate the same integral at every control time.
On sampled data the running integral F is taken as the trapezoidal
sum, which is the exact integral of the linear interpolant of the
samples. The construction is: interpolate (t_i, F_i) at the control
points with a spline E, then differentiate; ``eef = E'`` matches the
series' accumulated effect at every control point by construction,
while smoothing out everything between them.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    NonAbuttingSegments,
    NonIncreasingAbscissa,
    TooFewControlPoints,
)
from .splines import BoundaryCondition, build_even_spline, build_odd_spline

__all__ = [
    "Series",
    "ControlPoints",
    "EefResult",
    "cumulative_integral",
    "build_eef",
    "difference_partition_sums",
    "chain_eef",
]


@dataclass(frozen=True)
class Series:
    """A sampled signal: strictly increasing times and finite values."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValueError("times and values must be 1-D arrays of equal length")
        if t.size < 2:
            raise ValueError("a series needs at least two samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("times and values must be finite")
        if np.any(np.diff(t) <= 0):
            raise NonIncreasingAbscissa("times must be strictly increasing")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.times.size


@dataclass(frozen=True)
class ControlPoints:
    """Strictly increasing sample indices, spanning a series end to end."""

    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp)
        if idx.ndim != 1 or idx.size == 0:
            raise ValueError("control points need at least one index")
        if np.any(np.diff(idx) <= 0):
            raise ValueError("control point indices must be strictly increasing")
        if idx[0] < 0:
            raise ValueError("control point indices must be non-negative")
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return self.indices.size

    @classmethod
    def spanning(cls, indices, length):
        """Sorted unique indices with both series endpoints included."""
        idx = np.unique(np.concatenate([[0, length - 1], np.asarray(indices, dtype=np.intp)]))
        return cls(idx)

    def validate_against(self, series):
        idx = self.indices
        if idx[0] != 0 or idx[-1] != len(series) - 1:
            raise ValueError("control points must include both series endpoints")
        if idx[-1] >= len(series):
            raise ValueError("control point index beyond series length")


@dataclass(frozen=True)
class EefResult:
    """Outcome of an EEF build.

    ``integral_spline`` interpolates the running integral at the
    control times, ``eef`` is its derivative, ``eef_samples`` holds
    eef evaluated back on the source sample grid, and ``difference``
    is ``values - eef_samples``.
    """

    source: Series
    control: ControlPoints
    integral_spline: object
    eef: object
    eef_samples: np.ndarray
    difference: np.ndarray


def cumulative_integral(series):
    """Trapezoidal running integral; F[0] = 0 at the first sample."""
    t, v = series.times, series.values
    steps = 0.5 * (v[1:] + v[:-1]) * np.diff(t)
    return np.concatenate([[0.0], np.cumsum(steps)])


def _natural():
    return BoundaryCondition.natural()


def _two_point_bc(bc, end_value):
    # A cubic end slope pin; E' at the ends is the eef value there.
    if bc.kind == "natural":
        return BoundaryCondition.first_deriv(end_value)
    return BoundaryCondition.first_deriv(bc.first)


def build_eef(series, control, degree=5, bc_left=None, bc_right=None, alpha=0.5):
    """Build the equivalent effect function of a series.

    The control points pick which accumulated-integral values the eef
    must honor. With only two control points no interior information
    survives, so the integral spline degrades to a cubic whose end
    slopes are pinned (the end slope of the integral is the eef value
    at that end); the pin defaults to the series' own end values.
    """
    if degree not in (2, 3, 4, 5):
        raise ValueError("degree must be one of 2, 3, 4, 5")
    bc_left = bc_left or _natural()
    bc_right = bc_right or _natural()
    if len(control) < 2:
        raise TooFewControlPoints("need at least two control points")
    control.validate_against(series)

    F = cumulative_integral(series)
    idx = control.indices
    tc = series.times[idx]
    Fc = F[idx]

    if len(idx) == 2 and degree != 3:
        spline = build_odd_spline(
            tc,
            Fc,
            degree=3,
            bc_left=_two_point_bc(bc_left, series.values[0]),
            bc_right=_two_point_bc(bc_right, series.values[-1]),
        )
    elif degree in (3, 5):
        spline = build_odd_spline(tc, Fc, degree=degree, bc_left=bc_left, bc_right=bc_right)
    else:
        spline = build_even_spline(
            tc, Fc, degree=degree, alpha=alpha, bc_left=bc_left, bc_right=bc_right
        )

    eef = spline.derivative()
    eef_samples = eef(series.times)
    difference = series.values - eef_samples
    return EefResult(series, control, spline, eef, eef_samples, difference)


def difference_partition_sums(result):
    """Trapezoidal sums of the difference between consecutive control points.

    Each entry integrates ``values - eef_samples`` over one control
    interval. The continuous-time zero-integral property shows up here
    only to quadrature accuracy; the exact identity is that the
    antiderivative of the eef reproduces the running integral at the
    control times.
    """
    t = result.source.times
    d = result.difference
    steps = 0.5 * (d[1:] + d[:-1]) * np.diff(t)
    running = np.concatenate([[0.0], np.cumsum(steps)])
    idx = result.control.indices
    return running[idx[1:]] - running[idx[:-1]]


def chain_eef(segments, degree=5):
    """Build eefs over consecutive series segments with smooth joins.

    Segments must abut: each series starts at the exact time its
    predecessor ends. The first segment gets natural ends; every
    later segment pins the first and second derivative of its
    integral spline to the previous eef's end value and end slope,
    which carries the eef across the join with C1 continuity. Only
    degree 5 leaves room for both pins.
    """
    if degree != 5:
        raise ValueError("chaining needs two end conditions per side; degree must be 5")
    segments = list(segments)
    if not segments:
        raise ValueError("nothing to chain")
    for (s_prev, _), (s_next, _) in zip(segments, segments[1:]):
        if s_prev.times[-1] != s_next.times[0]:
            raise NonAbuttingSegments(
                f"segment ending at {s_prev.times[-1]} does not meet one starting at {s_next.times[0]}"
            )
    for _, control in segments:
        if len(control) < 3:
            raise TooFewControlPoints("chained segments need at least three control points")

    results = []
    bc_left = _natural()
    for series, control in segments:
        res = build_eef(series, control, degree=degree, bc_left=bc_left, bc_right=_natural())
        join = series.times[-1]
        bc_left = BoundaryCondition.first_and_second_deriv(
            res.eef(join), res.eef.derivative()(join)
        )
        results.append(res)
    return results
