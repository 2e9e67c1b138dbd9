from fractions import Fraction

import numpy as np
import pytest

from src.cremona.birmap import families
from src.cremona.holodyn.chart_map import (
    ChartMap,
    DenominatorVanishes,
    IterateEscapesDomain,
    complex_ball_grid,
)
from src.cremona.poly.homog_poly import HomogPoly


def random_chart_map(rng) -> ChartMap:
    """(x1, x2) -> (x1, x2 + A(1, x1) / B(1, x1)) with B(1, x1) bounded away from 0 on the unit ball."""
    x0, x1 = HomogPoly.variable(3, 0), HomogPoly.variable(3, 1)
    ints = rng.integers(-4, 5, size=3)
    b = x0 * x0 + (x0 * x1).scalar_mul(Fraction(int(rng.integers(-2, 3)), 5))
    a = (x0 * x0).scalar_mul(int(ints[0])) + (x0 * x1).scalar_mul(int(ints[1])) + (x1 * x1).scalar_mul(
        int(ints[2])
    )
    if a.is_zero():
        a = x1 * x1
    return ChartMap(families.de_jonquieres(a, b), grid_density=5)


class TestComplexBallGrid:
    """Test suite for the complex lattice grid."""

    def test_center_is_a_grid_point(self):
        grid = complex_ball_grid([0.5j, 1.0], 0.2, 4)
        assert any(np.allclose(p, [0.5j, 1.0]) for p in grid)

    def test_points_inside_ball(self):
        grid = complex_ball_grid([0, 0], 1.0, 7)
        assert np.all(np.linalg.norm(grid, axis=1) <= 1.0 + 1e-12)

    def test_cap_limits_size(self):
        grid = complex_ball_grid([0, 0], 1.0, 21, cap=100)
        assert len(grid) <= 100

    def test_single_point(self):
        grid = complex_ball_grid([1j], 1.0, 1)
        np.testing.assert_allclose(grid, [[1j]])


class TestChartMap:
    """Test suite for chart maps of birational maps."""

    def test_identity_is_identity(self):
        f = ChartMap(families.identity(), grid_density=5)
        z = np.array([[0.1 + 0.2j, -0.3j]])
        np.testing.assert_allclose(f(z), z)
        np.testing.assert_allclose(f.jacobian(z)[0], np.eye(2))

    def test_chart_checked(self):
        with pytest.raises(ValueError, match="chart 3 out of range"):
            ChartMap(families.identity(), chart=3)
        with pytest.raises(ValueError, match="center must have 2 coordinates"):
            ChartMap(families.identity(), center=[0.0])

    def test_denominator_vanishes(self, sigma):
        with pytest.raises(DenominatorVanishes):
            ChartMap(sigma, grid_density=5)

    def test_other_chart(self):
        f = ChartMap(families.pointwise_failure(4), chart=2, center=[0.5, 0.0], radius=0.2, grid_density=5)
        z = np.array([[0.5, 0.1]])
        # [x0 : x1 : 1] -> [x0^2 : x0*x1 + 1/4 : x0]
        np.testing.assert_allclose(f(z), [[0.5, 0.6]])

    def test_iterates(self):
        f = ChartMap(families.translation([Fraction(1, 10), 0]), grid_density=5)
        z = np.zeros((1, 2))
        orbit = f.iterates(z, 3)
        np.testing.assert_allclose([w[0, 0] for w in orbit], [0.1, 0.2, 0.3])

    def test_iterate_escapes(self):
        f = ChartMap(families.linear([[1, Fraction(-1, 2), 0], [0, 1, 0], [0, 0, 1]]), grid_density=5)
        z = np.array([[1.0, 0.0]])
        np.testing.assert_allclose(f.iterate(z, 1), [[2.0, 0.0]])
        with pytest.raises(IterateEscapesDomain):
            f.iterate(z, 2)

    def test_jacobian_matches_finite_differences(self):
        rng = np.random.default_rng(1)
        h = 1e-6
        for _ in range(20):
            f = random_chart_map(rng)
            z = rng.uniform(-0.35, 0.35, (100, 2)) + 1j * rng.uniform(-0.35, 0.35, (100, 2))
            exact = f.jacobian(z)
            for a in range(2):
                step = np.zeros(2)
                step[a] = h
                numeric = (f(z + step) - f(z - step)) / (2 * h)
                np.testing.assert_allclose(exact[:, :, a], numeric, rtol=1e-6, atol=1e-6)
