import numpy as np
import pytest

from src.cremona.birmap import families
from src.cremona.poly.domains import RR
from src.cremona.poly.homog_poly import HomogPoly
from src.cremona.wspace.certificate import (
    CertificateKind,
    EmptyGrid,
    RegionCertifier,
    ball_grid,
    chordal_distance,
    lift_chart,
    sine_squared,
)


class TestHelpers:
    """Test suite for grid and distance helpers."""

    def test_chordal_distance(self):
        u = np.array([[1, 0, 0], [1, 0, 0], [1, 1, 0]], dtype=float)
        v = np.array([[2, 0, 0], [0, 1, 0], [-3, -3, 0]], dtype=float)
        np.testing.assert_allclose(chordal_distance(u, v), [0.0, 1.0, 0.0], atol=1e-12)

    def test_chordal_distance_of_equal_rows_is_exactly_zero(self):
        rng = np.random.default_rng(7)
        u = rng.standard_normal((200, 3)) + 1j * rng.standard_normal((200, 3))
        assert np.all(chordal_distance(u, u) == 0.0)
        assert np.all(chordal_distance(u, 3.0 * u) <= 1e-14)

    def test_sine_squared_of_orthonormal_rows(self):
        u = np.eye(3)
        np.testing.assert_allclose(sine_squared(u, np.roll(u, 1, axis=0)), [1.0, 1.0, 1.0])

    def test_ball_grid(self):
        grid = ball_grid((0.0, 0.0), 1.0, 3)
        assert len(grid) == 5
        assert np.all(np.linalg.norm(grid, axis=1) <= 1.0 + 1e-12)

    def test_ball_grid_contains_center(self):
        grid = ball_grid((0.5, -0.5), 0.25, 21)
        assert any(np.allclose(p, (0.5, -0.5)) for p in grid)

    def test_lift_chart(self):
        lifted = lift_chart(np.array([[2.0, 3.0]]), 1)
        np.testing.assert_allclose(lifted, [[2.0, 1.0, 3.0]])


class TestRegionCertifier:
    """Test suite for uniform-convergence certificates."""

    @pytest.fixture
    def certifier(self, logger_mock, config):
        return RegionCertifier(logger_mock, config)

    def test_certified_near_regular_point(self, certifier):
        ms = [5, 10, 20, 50, 100]
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 0, (0.0, 0.0), 0.5, m_list=ms
        )
        assert result.certified
        assert [m for m, _ in result.sup_errors] == ms
        assert all(e <= 3.0 / m for m, e in result.sup_errors)
        assert result.certificate.radius == 0.5
        assert result.certificate.denominator_floor > 0

    def test_family_as_pairs(self, certifier):
        members = [(m, families.pointwise_failure(m)) for m in (10, 20, 40, 80)]
        result = certifier.uniform_certificate(members, families.identity(2), 0, (0.0, 0.0), 0.5)
        assert result.certified

    def test_refuted_at_indeterminacy(self, certifier):
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 1, (0.0, 0.0), 0.5, m_list=[5, 10, 20]
        )
        assert result.kind is CertificateKind.REFUTED
        assert result.reason == "Indeterminate"
        assert result.witness == (0.0, 0.0)

    def test_refuted_where_limit_differs(self, certifier):
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 2, (0.0, 0.0), 0.3, m_list=[5, 10, 20]
        )
        assert not result.certified
        assert result.reason in ("NotMonotone", "ErrorAboveTolerance")
        assert result.floor > 0.5

    def test_function_family_needs_m_list(self, certifier):
        with pytest.raises(ValueError, match="explicit m_list"):
            certifier.uniform_certificate(families.pointwise_failure, families.identity(2), 0, (0.0, 0.0), 0.5)

    def test_radius_must_be_positive(self, certifier):
        with pytest.raises(ValueError):
            certifier.uniform_certificate([], families.identity(2), 0, (0.0, 0.0), 0.0)

    def test_explicit_grid_outside_ball(self, certifier):
        with pytest.raises(EmptyGrid):
            certifier.uniform_certificate(
                families.pointwise_failure,
                families.identity(2),
                0,
                (0.0, 0.0),
                0.1,
                m_list=[5],
                grid=np.array([[1.0, 1.0]]),
            )

    def test_invariant_region(self, certifier):
        rng = np.random.default_rng(0)
        grid = np.column_stack([np.ones(50), rng.uniform(-1, 1, (50, 2))])
        h = HomogPoly.variable(3, 0, RR)
        report = certifier.invariant_region_check(h, families.identity(2, RR).map_tuple, grid)
        assert report.holds
        assert report.min_cofactor == pytest.approx(1.0)

    def test_constant_identity_family_has_zero_error(self, certifier):
        members = [(m, families.identity(2)) for m in (1, 2, 3)]
        result = certifier.uniform_certificate(members, families.identity(2), 0, (0.3, -0.2), 0.5)
        assert result.certified
        assert [e for _, e in result.sup_errors] == [0.0, 0.0, 0.0]

    def test_head_outside_tail_is_ignored(self, certifier):
        members = [(1, families.identity(2))]
        members += [(m, families.pointwise_failure(m)) for m in range(5, 101, 5)]
        result = certifier.uniform_certificate(members, families.identity(2), 0, (0.0, 0.0), 0.5)
        assert result.sup_errors[0] == (1, 0.0)
        assert result.certified

    def test_non_monotone_tail_is_refuted(self, certifier):
        members = [
            (10, families.pointwise_failure(10)),
            (20, families.pointwise_failure(50)),
            (30, families.pointwise_failure(20)),
            (40, families.pointwise_failure(100)),
        ]
        result = certifier.uniform_certificate(members, families.identity(2), 0, (0.0, 0.0), 0.5)
        assert result.kind is CertificateKind.REFUTED
        assert result.reason == "NotMonotone"

    def test_refuted_around_point_sent_to_fixed_image(self, certifier):
        # chart x1 = 1, affine coordinates (x0, x2); the center is [0:1:1]
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 1, (0.0, 1.0), 0.2, m_list=[5, 10, 20, 50, 100]
        )
        assert result.kind is CertificateKind.REFUTED
        assert result.reason in ("NotMonotone", "ErrorAboveTolerance")
        assert result.floor > 0.9 * (1.0 / np.sqrt(2.0))

    @pytest.mark.parametrize("radius", [0.05, 0.1, 0.3])
    def test_pointwise_failure_never_certifies(self, certifier, radius):
        result = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 1, (0.0, 1.0), radius, m_list=[10, 100, 1000]
        )
        assert not result.certified

    def test_certificate_survives_smaller_radius(self, certifier):
        ms = [5, 10, 20, 50, 100]
        wide = certifier.uniform_certificate(
            families.pointwise_failure, families.identity(2), 0, (0.0, 0.0), 0.5, m_list=ms
        )
        assert wide.certified
        narrow = certifier.uniform_certificate(
            families.pointwise_failure,
            families.identity(2),
            0,
            (0.0, 0.0),
            0.25,
            m_list=ms,
            grid=wide.certificate.sample_grid,
        )
        assert narrow.certified
        assert len(narrow.certificate.sample_grid) < len(wide.certificate.sample_grid)
        for (_, small), (_, large) in zip(narrow.sup_errors, wide.sup_errors):
            assert small <= large
