"""Curve fitting and resampling through equivalent effect functions.

Fitting keeps only the samples where the signal changes character,
the extrema of the absolute first derivative: extrema of the data and
its inflexions both land there. Sampling keeps a periodic or explicit
subset instead. Either way the kept indices become control points of
an eef, so the result preserves the accumulated integral at every
kept sample, which plain decimation does not.
"""

from dataclasses import dataclass

import numpy as np

from .decompose import discrete_derivative, find_extrema
from .eef import ControlPoints, Series, build_eef
from .exceptions import StrideTooLarge

__all__ = [
    "FitResult",
    "fit_control_points",
    "fit_curve",
    "sample_eef",
]

_MIN_CONTROL = {3: 2, 5: 3}


@dataclass(frozen=True)
class FitResult:
    """A fitted eef plus how well and how compactly it fits."""

    control: ControlPoints
    fitted: object
    rms_error: float
    compression_ratio: float


def fit_control_points(series):
    """Extrema of |derivative|, endpoints included."""
    deriv = discrete_derivative(series)
    magnitude = Series(series.times, np.abs(deriv.values))
    return ControlPoints.spanning(find_extrema(magnitude), len(series))


def fit_curve(series, degree=5):
    """Fit an eef through the control points of the series.

    ``fitted`` is the eef itself, a piecewise polynomial ready to be
    evaluated anywhere inside the time range.
    """
    if degree not in (3, 5):
        raise ValueError("fit degree must be 3 or 5")
    control = fit_control_points(series)
    result = build_eef(series, control, degree=degree)
    rms = float(np.sqrt(np.mean(result.difference**2)))
    return FitResult(control, result.eef, rms, len(control) / len(series))


def sample_eef(series, stride=None, indices=None, degree=5):
    """Equivalent-effect resampling over a subset of samples.

    Exactly one of ``stride`` (periodic selection anchored at index 0,
    final index always kept) and ``indices`` (explicit selection,
    endpoints enforced) must be given. The kept samples become eef
    control points, so the result acts as a low-pass version of the
    series that still accumulates the same integral at every kept
    sample.
    """
    if (stride is None) == (indices is None):
        raise ValueError("give exactly one of stride and indices")
    if degree not in _MIN_CONTROL:
        raise ValueError("sampling degree must be 3 or 5")
    n = len(series)
    if stride is not None:
        if stride < 2:
            raise ValueError("stride must be at least 2")
        selected = np.arange(0, n, stride)
    else:
        selected = np.asarray(indices, dtype=np.intp)
        if selected.size and (selected.min() < 0 or selected.max() > n - 1):
            raise ValueError("explicit indices out of range")
    control = ControlPoints.spanning(selected, n)
    if len(control) < _MIN_CONTROL[degree]:
        raise StrideTooLarge(
            f"{len(control)} control points survive, degree {degree} needs {_MIN_CONTROL[degree]}"
        )
    return build_eef(series, control, degree=degree)
