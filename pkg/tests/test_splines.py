"""Spline construction, evaluation and calculus."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastimd.exceptions import NonIncreasingAbscissa, OutOfDomain, TooFewPoints
from fastimd.splines import (
    BoundaryCondition,
    PiecewisePoly,
    _assemble_even,
    build_even_spline,
    build_odd_spline,
)

NAT = BoundaryCondition.natural()


def dense(lo, hi, n=500):
    return np.linspace(lo, hi, n)


class TestPiecewisePoly:
    def test_constant_evaluates_everywhere(self):
        p = PiecewisePoly(np.array([0.0, 1.0, 2.0]), np.array([[5.0], [5.0]]))
        assert p(0.3) == 5.0
        assert p(2.0) == 5.0
        assert np.all(p(dense(0, 2)) == 5.0)

    def test_linear_midpoint(self):
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[0.0, 1.0]]))
        assert p(0.5) == pytest.approx(0.5)

    def test_out_of_domain(self):
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[0.0, 1.0]]))
        with pytest.raises(OutOfDomain):
            p(-0.1)
        with pytest.raises(OutOfDomain):
            p(np.array([0.5, 1.2]))

    def test_interior_breakpoint_belongs_to_right_segment(self):
        # segments agree at the joint for real splines; here they are
        # made to disagree so the ownership rule is observable
        p = PiecewisePoly(np.array([0.0, 1.0, 2.0]), np.array([[0.0], [9.0]]))
        assert p(1.0) == 9.0

    def test_validation(self):
        with pytest.raises(NonIncreasingAbscissa):
            PiecewisePoly(np.array([0.0, 0.0, 1.0]), np.array([[1.0], [1.0]]))
        with pytest.raises(ValueError):
            PiecewisePoly(np.array([0.0, 1.0]), np.array([[1.0], [1.0]]))
        with pytest.raises(ValueError):
            PiecewisePoly(np.array([0.0, 1.0]), np.array([[np.inf, 0.0]]))

    def test_immutable(self):
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[0.0, 1.0]]))
        with pytest.raises(ValueError):
            p.coefficients[0, 0] = 3.0

    def test_degree_and_domain(self):
        p = PiecewisePoly(np.array([1.0, 4.0]), np.array([[0.0, 1.0, 2.0]]))
        assert p.degree == 2
        assert p.domain == (1.0, 4.0)


class TestDerivative:
    def test_quadratic_segment(self):
        # y = 1 + 2x + 3x^2 -> y' = 2 + 6x
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[1.0, 2.0, 3.0]]))
        d = p.derivative()
        assert np.allclose(d.coefficients, [[2.0, 6.0]])

    def test_constant_gives_zero_poly(self):
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[4.0]]))
        d = p.derivative()
        assert d.degree == 0
        assert d(0.5) == 0.0

    def test_exact_quadratic_quintic_derivative(self):
        x = np.arange(5.0)
        s = build_odd_spline(x, x**2, degree=5)
        d = s.derivative()
        grid = dense(0, 4)
        assert np.max(np.abs(d(grid) - 2 * grid)) < 1e-8


class TestAntiderivative:
    def test_zero_spline_anchor(self):
        z = PiecewisePoly(np.array([0.0, 1.0, 2.0]), np.array([[0.0], [0.0]]))
        a = z.antiderivative(value_at_left=7.0)
        assert np.all(a(dense(0, 2)) == 7.0)

    def test_constant_two(self):
        c = PiecewisePoly(np.array([0.0, 3.0]), np.array([[2.0]]))
        a = c.antiderivative()
        grid = dense(0, 3)
        assert np.max(np.abs(a(grid) - 2 * grid)) < 1e-12

    def test_degree_five_rejected(self):
        p = PiecewisePoly(np.array([0.0, 1.0]), np.array([[0.0] * 6]))
        with pytest.raises(ValueError):
            p.antiderivative()

    @given(st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_derivative_of_antiderivative_roundtrip(self, degree, seed):
        gen = np.random.default_rng(seed)
        bp = np.sort(gen.uniform(-3, 3, 5))
        while np.any(np.diff(bp) < 1e-3):
            bp = np.sort(gen.uniform(-3, 3, 5))
        cf = gen.uniform(-2, 2, (4, degree + 1))
        p = PiecewisePoly(bp, cf)
        back = p.antiderivative(value_at_left=gen.uniform(-5, 5)).derivative()
        assert np.max(np.abs(back.coefficients - p.coefficients)) < 1e-12


class TestOddSplines:
    def test_quadratic_data_quintic_natural_exact(self):
        # zero 3rd/4th derivatives of a parabola satisfy the closure,
        # so every segment must come out algebraically equal to x^2
        x = np.arange(5.0)
        s = build_odd_spline(x, x**2, degree=5)
        assert np.max(np.abs(s.coefficients[:, 3:])) < 1e-9
        grid = dense(0, 4)
        assert np.max(np.abs(s(grid) - grid**2)) < 1e-9

    def test_two_point_natural_cubic_is_line(self):
        s = build_odd_spline([0.0, 1.0], [0.0, 1.0], degree=3)
        grid = dense(0, 1)
        assert np.max(np.abs(s(grid) - grid)) < 1e-12

    def test_clamped_quintic_sine(self):
        x = np.linspace(0, np.pi, 11)
        s = build_odd_spline(
            x,
            np.sin(x),
            degree=5,
            bc_left=BoundaryCondition.first_and_second_deriv(1.0, 0.0),
            bc_right=BoundaryCondition.first_and_second_deriv(-1.0, 0.0),
        )
        grid = dense(0, np.pi, 1000)
        assert np.max(np.abs(s(grid) - np.sin(grid))) < 1e-7
        assert abs(s(np.pi / 2) - 1.0) < 1e-7

    def test_natural_cubic_second_derivative_vanishes(self):
        gen = np.random.default_rng(3)
        x = np.arange(8.0)
        s = build_odd_spline(x, gen.normal(size=8), degree=3)
        d2 = s.derivative().derivative()
        assert abs(d2(x[0])) < 1e-8
        assert abs(d2(x[-1])) < 1e-8

    def test_natural_quintic_high_derivatives_vanish(self):
        gen = np.random.default_rng(4)
        x = np.arange(9.0)
        s = build_odd_spline(x, gen.normal(size=9), degree=5)
        d3 = s.derivative().derivative().derivative()
        d4 = d3.derivative()
        for d in (d3, d4):
            assert abs(d(x[0])) < 1e-7
            assert abs(d(x[-1])) < 1e-7

    def test_first_deriv_pin(self):
        x = np.arange(6.0)
        s = build_odd_spline(
            x,
            np.sin(x),
            degree=5,
            bc_left=BoundaryCondition.first_deriv(2.5),
            bc_right=BoundaryCondition.first_deriv(-1.5),
        )
        d = s.derivative()
        assert d(0.0) == pytest.approx(2.5, abs=1e-9)
        assert d(5.0) == pytest.approx(-1.5, abs=1e-9)

    def test_errors(self):
        with pytest.raises(NonIncreasingAbscissa):
            build_odd_spline([0.0, 1.0, 1.0, 2.0], [0.0, 1.0, 2.0, 3.0], degree=3)
        with pytest.raises(TooFewPoints):
            build_odd_spline([0.0, 1.0], [0.0, 1.0], degree=5)
        with pytest.raises(ValueError):
            build_odd_spline([0.0, 1.0, 2.0], [0.0, 1.0, 2.0], degree=4)
        with pytest.raises(ValueError):
            build_odd_spline(
                [0.0, 1.0, 2.0],
                [0.0, 1.0, 2.0],
                degree=3,
                bc_left=BoundaryCondition.first_and_second_deriv(0.0, 0.0),
            )


class TestEvenSplines:
    def test_linear_data_quadratic_natural(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        s = build_even_spline(x, x, degree=2)
        grid = dense(0, 3)
        assert np.max(np.abs(s(grid) - grid)) < 1e-10

    def test_cubic_data_quartic_natural(self):
        x = np.arange(6.0)
        s = build_even_spline(x, x**3, degree=4)
        assert np.max(np.abs(s.coefficients[:, 4])) < 1e-9
        grid = dense(0, 5)
        assert np.max(np.abs(s(grid) - grid**3)) < 1e-9

    def test_duplicate_abscissa(self):
        with pytest.raises(NonIncreasingAbscissa):
            build_even_spline([0.0, 1.0, 1.0, 2.0], [0.0, 1.0, 1.0, 2.0], degree=2)

    def test_sample_count_and_segments(self):
        # n samples produce n segments: knots between samples plus ends
        x = np.arange(7.0)
        s = build_even_spline(x, np.cos(x), degree=2)
        assert s.breakpoints.size == 8
        assert np.allclose(s.breakpoints[1:-1], 0.5 * (x[:-1] + x[1:]))

    def test_alpha_moves_knots(self):
        x = np.arange(5.0)
        s = build_even_spline(x, x**2, degree=2, alpha=0.25)
        assert np.allclose(s.breakpoints[1:-1], 0.25 * x[:-1] + 0.75 * x[1:])

    def test_alpha_validation(self):
        x = np.arange(5.0)
        for bad in (0.0, 1.0, -0.5, 2.0):
            with pytest.raises(ValueError):
                build_even_spline(x, x, degree=2, alpha=bad)

    def test_quadratic_natural_pins_secant_slope(self):
        gen = np.random.default_rng(5)
        x = np.arange(6.0)
        y = gen.normal(size=6)
        s = build_even_spline(x, y, degree=2)
        d = s.derivative()
        assert d(x[0]) == pytest.approx(y[1] - y[0], abs=1e-9)
        assert d(x[-1]) == pytest.approx(y[-1] - y[-2], abs=1e-9)

    def test_quartic_natural_closure_rows(self):
        gen = np.random.default_rng(6)
        x = np.arange(7.0)
        s = build_even_spline(x, gen.normal(size=7), degree=4)
        c4 = s.coefficients[:, 4]
        # fourth derivative continuous across the outermost knots and
        # vanishing on the end segments
        assert abs(c4[0]) < 1e-9
        assert abs(c4[0] - c4[1]) < 1e-9
        assert abs(c4[-1]) < 1e-9
        assert abs(c4[-1] - c4[-2]) < 1e-9

    def test_quartic_three_points_interpolates(self):
        x = np.array([0.0, 1.0, 2.5])
        y = np.array([1.0, -2.0, 4.0])
        s = build_even_spline(x, y, degree=4)
        assert np.max(np.abs(s(x) - y)) < 1e-9
        # both-natural closure on three points settles on a parabola
        grid = dense(0, 2.5)
        coeffs = np.polyfit(x, y, 2)
        assert np.max(np.abs(s(grid) - np.polyval(coeffs, grid))) < 1e-8

    def test_first_and_second_deriv_rejected_for_quadratic(self):
        x = np.arange(5.0)
        with pytest.raises(ValueError):
            build_even_spline(
                x, x, degree=2, bc_left=BoundaryCondition.first_and_second_deriv(1.0, 0.0)
            )

    @pytest.mark.parametrize("n", [3, 7, 20])
    @pytest.mark.parametrize("degree,factor", [(2, 3), (4, 5)])
    def test_system_dimensions(self, n, degree, factor):
        x = np.arange(float(n))
        sys, _ = _assemble_even(x, np.sin(x), degree, 0.5, NAT, NAT)
        assert sys.shape == (factor * n, factor * n)


POLY_TABLE = [
    (3, "natural", 1),
    (5, "natural", 2),
    (2, "first", 2),
    (3, "first", 3),
    (4, "first_second", 4),
    (5, "first_second", 5),
]


def build_with_exact_bcs(x, y, degree, bc_kind, poly):
    dp = np.polyder(poly)
    dp2 = np.polyder(poly, 2)
    if bc_kind == "natural":
        left = right = BoundaryCondition.natural()
    elif bc_kind == "first":
        left = BoundaryCondition.first_deriv(np.polyval(dp, x[0]))
        right = BoundaryCondition.first_deriv(np.polyval(dp, x[-1]))
    else:
        left = BoundaryCondition.first_and_second_deriv(
            np.polyval(dp, x[0]), np.polyval(dp2, x[0])
        )
        right = BoundaryCondition.first_and_second_deriv(
            np.polyval(dp, x[-1]), np.polyval(dp2, x[-1])
        )
    if degree in (3, 5):
        return build_odd_spline(x, y, degree=degree, bc_left=left, bc_right=right)
    return build_even_spline(x, y, degree=degree, bc_left=left, bc_right=right)


class TestPolynomialReproduction:
    @pytest.mark.parametrize("degree,bc_kind,poly_degree", POLY_TABLE)
    def test_reproduces_polynomials(self, degree, bc_kind, poly_degree):
        gen = np.random.default_rng(degree * 100 + poly_degree)
        for _ in range(10):
            coefs = gen.uniform(-2, 2, poly_degree + 1)
            x = np.sort(gen.uniform(0, 3, gen.integers(max(4, degree), 10)))
            while np.any(np.diff(x) < 1e-2):
                x = np.sort(gen.uniform(0, 3, x.size))
            y = np.polyval(coefs, x)
            s = build_with_exact_bcs(x, y, degree, bc_kind, coefs)
            grid = dense(x[0], x[-1], 200)
            target = np.polyval(coefs, grid)
            scale = max(1.0, np.max(np.abs(target)))
            assert np.max(np.abs(s(grid) - target)) < 1e-8 * scale


class TestInvariants:
    @given(
        st.integers(min_value=0, max_value=2**32 - 1),
        st.sampled_from([2, 3, 4, 5]),
    )
    @settings(max_examples=60, deadline=None)
    def test_interpolation_exactness(self, seed, degree):
        gen = np.random.default_rng(seed)
        n = int(gen.integers(4, 14))
        x = np.sort(gen.uniform(-5, 5, n))
        while np.any(np.diff(x) < 1e-2):
            x = np.sort(gen.uniform(-5, 5, n))
        y = gen.uniform(-10, 10, n)
        if degree in (3, 5):
            s = build_odd_spline(x, y, degree=degree)
        else:
            s = build_even_spline(x, y, degree=degree)
        err = np.abs(s(x) - y)
        assert np.all(err <= 1e-9 * np.maximum(1.0, np.abs(y)))

    @pytest.mark.parametrize("degree", [2, 3, 4, 5])
    def test_continuity_at_interior_breakpoints(self, degree):
        gen = np.random.default_rng(degree)
        x = np.sort(gen.uniform(0, 8, 9))
        while np.any(np.diff(x) < 1e-2):
            x = np.sort(gen.uniform(0, 8, 9))
        y = gen.normal(size=9)
        if degree in (3, 5):
            s = build_odd_spline(x, y, degree=degree)
        else:
            s = build_even_spline(x, y, degree=degree)
        for order in range(degree):
            widths = np.diff(s.breakpoints)
            for i in range(len(widths) - 1):
                left = _local_eval(s.coefficients[i], widths[i])
                right = s.coefficients[i + 1][0]
                scale = max(1.0, abs(left), abs(right))
                assert abs(left - right) <= 1e-8 * scale, (degree, order, i)
            s = s.derivative()


def _local_eval(coefs, xi):
    out = 0.0
    for c in coefs[::-1]:
        out = out * xi + c
    return out
