import numpy as np
import pytest

from src.cremona.spacefill.hilbert import hilbert_points
from src.cremona.spacefill.unitary import (
    UnitarityViolation,
    UnitaryPoint,
    check_unitary,
    haar_so3,
    haar_su3,
    projective_gap,
    so3_from_box,
    so3_matrices,
    su3_from_box,
    su3_matrices,
)


def residuals(batch: np.ndarray) -> tuple[float, float]:
    gram = np.conj(np.swapaxes(batch, 1, 2)) @ batch
    gap = float(np.linalg.norm(gram - np.eye(3), axis=(1, 2)).max())
    det = float(np.abs(np.linalg.det(batch) - 1).max())
    return gap, det


class TestEulerAngles:
    """Test suite for the box-to-group parametrizations."""

    def test_su3_residuals(self):
        boxes = np.random.default_rng(0).random((10_000, 8))
        batch = su3_matrices(boxes)
        gap, det = residuals(batch)
        assert gap <= 1e-12 and det <= 1e-12
        check_unitary(batch)

    def test_so3_residuals(self):
        boxes = np.random.default_rng(1).random((10_000, 3))
        batch = so3_matrices(boxes)
        gap, det = residuals(batch)
        assert gap <= 1e-12 and det <= 1e-12
        assert np.all(batch.imag == 0)

    def test_box_corners(self):
        np.testing.assert_allclose(su3_from_box(np.zeros(8)).matrix, np.eye(3), atol=1e-15)
        assert so3_from_box(np.zeros(3)).is_real

    def test_inverse(self):
        point = su3_from_box(np.linspace(0.1, 0.8, 8))
        np.testing.assert_allclose(point.inverse() @ point.matrix, np.eye(3), atol=1e-12)

    def test_violation_detected(self):
        with pytest.raises(UnitarityViolation):
            UnitaryPoint(2 * np.eye(3, dtype=np.complex128), np.zeros(8))
        with pytest.raises(UnitarityViolation):
            check_unitary(np.stack([np.eye(3), np.diag([1.0, 1.0, -1.0])]).astype(np.complex128))


class TestHaarSamples:
    """Test suite for Haar references and projective gaps."""

    def test_haar_su3(self):
        gap, det = residuals(haar_su3(500, seed=2))
        assert gap <= 1e-12 and det <= 1e-12

    def test_haar_so3(self):
        batch = haar_so3(500, seed=3)
        gap, det = residuals(batch)
        assert gap <= 1e-12 and det <= 1e-12

    def test_projective_gap_ignores_center(self):
        u = haar_su3(10, seed=4)
        w = np.exp(2j * np.pi / 3)
        np.testing.assert_allclose(projective_gap(u, w * u), 0.0, atol=1e-12)
        assert np.all(projective_gap(u, haar_su3(10, seed=5)) > 0)

    def test_curve_density_improves_with_samples(self):
        """Nested curve samples get closer to fixed Haar targets."""
        targets = haar_su3(20, seed=6)
        t = np.random.default_rng(7).random(100_000)
        best = []
        for count in (1_000, 10_000, 100_000):
            samples = su3_matrices(hilbert_points(t[:count], 8, 6))
            gaps = np.stack([projective_gap(samples, v[None, :, :]) for v in targets])
            best.append(gaps.min(axis=1))
        assert np.all(best[1] <= best[0])
        assert np.all(best[2] <= best[1])
        assert best[2].mean() < best[0].mean()
