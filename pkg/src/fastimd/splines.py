"""Polynomial spline interpolation of degree 2 through 5.

Splines are stored segment by segment: each segment carries its own
coefficient row in ascending powers of the local coordinate
``x - segment_start``, which keeps the assembled systems well
conditioned regardless of where the data lives on the axis.

Odd degrees (3, 5) place segment joins on the sample points. Even
degrees (2, 4) place joins between samples at ``u_j = alpha * x_j +
(1 - alpha) * x_{j+1}``, so every sample falls strictly inside a
segment; with n samples this yields n segments and a square system of
exactly ``3n`` (quadratic) or ``5n`` (quartic) equations.

All builders assemble interpolation rows, derivative continuity rows
and boundary rows into one banded matrix and solve it with banded LU
(partial pivoting), so construction cost stays linear in the number
of samples.
"""

from dataclasses import dataclass
from math import perm

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import solve_banded

from .exceptions import (
    NonIncreasingAbscissa,
    OutOfDomain,
    SingularSystem,
    TooFewPoints,
)

__all__ = [
    "BoundaryCondition",
    "PiecewisePoly",
    "build_odd_spline",
    "build_even_spline",
]

_MIN_POINTS = {2: 3, 3: 2, 4: 3, 5: 3}


@dataclass(frozen=True)
class BoundaryCondition:
    """End condition for a spline build.

    ``natural()`` closes the system with data-independent rows: zero
    second derivative for cubics, zero third and fourth derivatives
    for quintics, a one-sided secant slope for quadratics, and for
    quartics fourth-derivative continuity across the outermost knot
    plus a vanishing fourth derivative at the end.

    ``first_deriv(v)`` pins the first derivative at the end.
    ``first_and_second_deriv(v1, v2)`` pins the first two derivatives;
    only degrees 4 and 5 have room for both.
    """

    kind: str
    first: float = 0.0
    second: float = 0.0

    @classmethod
    def natural(cls):
        return cls("natural")

    @classmethod
    def first_deriv(cls, value):
        return cls("first", float(value))

    @classmethod
    def first_and_second_deriv(cls, value, slope):
        return cls("first_second", float(value), float(slope))


@dataclass(frozen=True)
class PiecewisePoly:
    """A piecewise polynomial over contiguous segments.

    Parameters
    ----------
    breakpoints : ndarray, shape (m + 1,)
        Strictly increasing segment boundaries.
    coefficients : ndarray, shape (m, degree + 1)
        Row i holds the coefficients of segment i in ascending powers
        of ``x - breakpoints[i]``.
    """

    breakpoints: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        cf = np.asarray(self.coefficients, dtype=float)
        if bp.ndim != 1 or bp.size < 2:
            raise ValueError("need at least two breakpoints")
        if np.any(np.diff(bp) <= 0):
            raise NonIncreasingAbscissa("breakpoints must be strictly increasing")
        if cf.ndim != 2 or cf.shape[0] != bp.size - 1:
            raise ValueError("coefficient rows must match segment count")
        if not (np.all(np.isfinite(bp)) and np.all(np.isfinite(cf))):
            raise ValueError("breakpoints and coefficients must be finite")
        bp.flags.writeable = False
        cf.flags.writeable = False
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "coefficients", cf)

    @property
    def degree(self):
        return self.coefficients.shape[1] - 1

    @property
    def domain(self):
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    def _segments_for(self, x):
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.clip(idx, 0, len(self.breakpoints) - 2)

    def __call__(self, x):
        """Evaluate at a scalar or array of points inside the domain."""
        xa = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if np.any(xa < lo) or np.any(xa > hi):
            raise OutOfDomain(f"evaluation outside [{lo}, {hi}]")
        idx = self._segments_for(xa)
        xi = xa - self.breakpoints[idx]
        coefs = self.coefficients[idx]
        out = coefs[..., -1]
        for k in range(self.coefficients.shape[1] - 2, -1, -1):
            out = out * xi + coefs[..., k]
        if np.isscalar(x) or xa.ndim == 0:
            return float(out)
        return out

    def derivative(self):
        """Differentiate once; a degree-0 input yields the zero poly."""
        k = self.coefficients.shape[1]
        if k == 1:
            cf = np.zeros_like(self.coefficients)
        else:
            cf = self.coefficients[:, 1:] * np.arange(1, k)
        return PiecewisePoly(self.breakpoints.copy(), cf)

    def antiderivative(self, value_at_left=0.0):
        """Integrate once, anchored at ``value_at_left`` on the left end.

        The running constant of each segment continues the previous
        one, so the result is continuous. Only degrees up to 4 are
        accepted; the result would otherwise exceed degree 5.
        """
        if self.degree > 4:
            raise ValueError("antiderivative only supported up to degree 4")
        m, k = self.coefficients.shape
        cf = np.zeros((m, k + 1))
        cf[:, 1:] = self.coefficients / np.arange(1, k + 1)
        widths = np.diff(self.breakpoints)
        running = float(value_at_left)
        for i in range(m):
            cf[i, 0] = running
            running = _polyval_local(cf[i], widths[i])
        return PiecewisePoly(self.breakpoints.copy(), cf)


def _polyval_local(coefs, xi):
    out = 0.0
    for c in coefs[::-1]:
        out = out * xi + c
    return float(out)


class _BandedSystem:
    """Sparse row collector solved through LAPACK's banded LU."""

    def __init__(self, n_unknowns):
        self.n = n_unknowns
        self.cols = []
        self.vals = []
        self.rhs = []

    def add(self, cols, vals, b):
        self.cols.append(np.asarray(cols, dtype=np.intp))
        self.vals.append(np.asarray(vals, dtype=float))
        self.rhs.append(float(b))

    @property
    def shape(self):
        return (len(self.rhs), self.n)

    def solve(self):
        rows, cols = self.shape
        if rows != cols:
            raise SingularSystem(f"system is {rows}x{cols}, not square")
        lo = hi = 0
        for r, cidx in enumerate(self.cols):
            lo = max(lo, int(np.max(r - cidx)))
            hi = max(hi, int(np.max(cidx - r)))
        ab = np.zeros((lo + hi + 1, self.n))
        for r, (cidx, v) in enumerate(zip(self.cols, self.vals)):
            ab[hi + r - cidx, cidx] += v
        try:
            sol = solve_banded((lo, hi), ab, np.array(self.rhs), check_finite=False)
        except LinAlgError as exc:
            raise SingularSystem(str(exc)) from exc
        if not np.all(np.isfinite(sol)):
            raise SingularSystem("banded solve produced non-finite values")
        return sol


def _deriv_row(degree, xi, order):
    """Row of d^order/dx^order [(x - s)^k] at local coordinate xi."""
    vals = np.zeros(degree + 1)
    for k in range(order, degree + 1):
        vals[k] = perm(k, order) * xi ** (k - order)
    return vals


def _check_input(x, y, degree):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("x and y must be 1-D arrays of equal length")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("x and y must be finite")
    if np.any(np.diff(x) <= 0):
        raise NonIncreasingAbscissa("sample abscissae must be strictly increasing")
    if x.size < _MIN_POINTS[degree]:
        raise TooFewPoints(
            f"degree {degree} needs at least {_MIN_POINTS[degree]} points, got {x.size}"
        )
    return x, y


def _end_rows_odd(bc, degree, value_slope_orders=(1, 2)):
    """Derivative pin orders and values for one end of an odd spline."""
    if bc.kind == "natural":
        if degree == 3:
            return [(2, 0.0)]
        return [(3, 0.0), (4, 0.0)]
    if bc.kind == "first":
        if degree == 3:
            return [(1, bc.first)]
        return [(1, bc.first), (4, 0.0)]
    if bc.kind == "first_second":
        if degree == 3:
            raise ValueError("degree 3 has room for one end condition, not two")
        return [(1, bc.first), (2, bc.second)]
    raise ValueError(f"unknown boundary condition kind {bc.kind!r}")


def build_odd_spline(x, y, degree=5, bc_left=None, bc_right=None):
    """Interpolate (x, y) with a cubic or quintic spline.

    Segments join at the sample points with continuity of derivatives
    up to ``degree - 1``. Cubics need one end condition per side,
    quintics two; see :class:`BoundaryCondition` for the choices.
    """
    if degree not in (3, 5):
        raise ValueError("odd spline degree must be 3 or 5")
    bc_left = bc_left or BoundaryCondition.natural()
    bc_right = bc_right or BoundaryCondition.natural()
    x, y = _check_input(x, y, degree)

    n = x.size
    m = n - 1
    k = degree + 1
    h = np.diff(x)
    sys = _BandedSystem(m * k)
    base = np.arange(k)

    def block(i):
        return i * k + base

    sys.add([0], [1.0], y[0])
    for order, val in _end_rows_odd(bc_left, degree):
        sys.add(block(0), _deriv_row(degree, 0.0, order), val)
    for i in range(m - 1):
        sys.add(block(i), _deriv_row(degree, h[i], 0), y[i + 1])
        for order in range(1, degree):
            row_l = _deriv_row(degree, h[i], order)
            row_r = -_deriv_row(degree, 0.0, order)
            sys.add(
                np.concatenate([block(i), block(i + 1)]),
                np.concatenate([row_l, row_r]),
                0.0,
            )
        sys.add([(i + 1) * k], [1.0], y[i + 1])
    sys.add(block(m - 1), _deriv_row(degree, h[m - 1], 0), y[n - 1])
    for order, val in _end_rows_odd(bc_right, degree):
        sys.add(block(m - 1), _deriv_row(degree, h[m - 1], order), val)

    sol = sys.solve()
    return PiecewisePoly(x.copy(), sol.reshape(m, k))


def _assemble_even(x, y, degree, alpha, bc_left, bc_right):
    """Build the banded system for an even-degree spline.

    Returns the system plus the breakpoint vector; exposed separately
    so the equation count can be inspected without solving.
    """
    n = x.size
    m = n
    k = degree + 1
    knots = alpha * x[:-1] + (1.0 - alpha) * x[1:]
    breaks = np.concatenate([[x[0]], knots, [x[-1]]])
    widths = np.diff(breaks)
    sys = _BandedSystem(m * k)
    base = np.arange(k)

    def block(i):
        return i * k + base

    def end_rows(bc, side):
        seg = 0 if side == "left" else m - 1
        xi = 0.0 if side == "left" else widths[-1]
        secant = (
            (y[1] - y[0]) / (x[1] - x[0])
            if side == "left"
            else (y[-1] - y[-2]) / (x[-1] - x[-2])
        )
        rows = []
        if bc.kind == "natural":
            if degree == 2:
                rows.append((block(seg), _deriv_row(degree, xi, 1), secant))
            else:
                knot = 0 if side == "left" else m - 2
                nak_cols = np.array([knot * k + degree, (knot + 1) * k + degree])
                rows.append((nak_cols, np.array([1.0, -1.0]), 0.0))
                rows.append((np.array([seg * k + degree]), np.array([1.0]), 0.0))
        elif bc.kind == "first":
            rows.append((block(seg), _deriv_row(degree, xi, 1), bc.first))
            if degree == 4:
                rows.append((np.array([seg * k + degree]), np.array([1.0]), 0.0))
        elif bc.kind == "first_second":
            if degree == 2:
                raise ValueError("degree 2 has room for one end condition, not two")
            rows.append((block(seg), _deriv_row(degree, xi, 1), bc.first))
            rows.append((block(seg), _deriv_row(degree, xi, 2), bc.second))
        else:
            raise ValueError(f"unknown boundary condition kind {bc.kind!r}")
        return rows

    both_natural = bc_left.kind == "natural" and bc_right.kind == "natural"
    if degree == 4 and n == 3 and both_natural:
        # The generic quartic closure repeats a row when only three
        # segments exist; merge all segments and zero the third
        # derivative at both ends instead, which picks the parabola.
        left_rows = [
            (np.array([0 * k + 4, 1 * k + 4]), np.array([1.0, -1.0]), 0.0),
            (block(0), _deriv_row(degree, 0.0, 3), 0.0),
        ]
        right_rows = [
            (np.array([1 * k + 4, 2 * k + 4]), np.array([1.0, -1.0]), 0.0),
            (block(m - 1), _deriv_row(degree, widths[-1], 3), 0.0),
        ]
    else:
        left_rows = end_rows(bc_left, "left")
        right_rows = end_rows(bc_right, "right")

    sys.add([0], [1.0], y[0])
    for cols, vals, b in left_rows:
        sys.add(cols, vals, b)
    for j in range(n - 1):
        xi_l = widths[j]
        for order in range(degree):
            row_l = _deriv_row(degree, xi_l, order)
            row_r = -_deriv_row(degree, 0.0, order)
            sys.add(
                np.concatenate([block(j), block(j + 1)]),
                np.concatenate([row_l, row_r]),
                0.0,
            )
        sys.add(block(j + 1), _deriv_row(degree, x[j + 1] - breaks[j + 1], 0), y[j + 1])
    for cols, vals, b in right_rows:
        sys.add(cols, vals, b)
    return sys, breaks


def build_even_spline(x, y, degree=2, alpha=0.5, bc_left=None, bc_right=None):
    """Interpolate (x, y) with a quadratic or quartic spline.

    Knots sit between samples at ``alpha * x_j + (1 - alpha) *
    x_{j+1}``; alpha must lie strictly inside (0, 1). Quadratics take
    one end condition per side, quartics two.
    """
    if degree not in (2, 4):
        raise ValueError("even spline degree must be 2 or 4")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie strictly between 0 and 1")
    bc_left = bc_left or BoundaryCondition.natural()
    bc_right = bc_right or BoundaryCondition.natural()
    x, y = _check_input(x, y, degree)
    sys, breaks = _assemble_even(x, y, degree, alpha, bc_left, bc_right)
    sol = sys.solve()
    return PiecewisePoly(breaks, sol.reshape(x.size, degree + 1))
