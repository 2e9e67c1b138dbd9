# Copyright (C) 2025 Khaled Arsalane
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class UnitarityViolation(AssertionError):
    """Raised when a generated matrix leaves SU(3) / SO(3) beyond 1e-12."""

    pass


UNITARY_TOLERANCE = 1e-12

# angle ranges of e^{i l3 a1} e^{i l2 a2} e^{i l3 a3} e^{i l5 a4} e^{i l3 a5} e^{i l2 a6} e^{i l3 a7} e^{i l8 a8}
SU3_RANGES = np.array(
    [np.pi, np.pi / 2, np.pi, np.pi / 2, np.pi, np.pi / 2, np.pi, np.sqrt(3.0) * np.pi]
)
SO3_RANGES = np.array([2 * np.pi, np.pi, 2 * np.pi])


@dataclass(frozen=True, eq=False)
class UnitaryPoint:
    matrix: np.ndarray
    angles: np.ndarray = field(repr=False)

    def __post_init__(self):
        u = self.matrix
        gap = np.linalg.norm(u.conj().T @ u - np.eye(3))
        det = abs(np.linalg.det(u) - 1)
        if gap > UNITARY_TOLERANCE or det > UNITARY_TOLERANCE:
            raise UnitarityViolation(f"|U*U - I| = {gap:.2e}, |det U - 1| = {det:.2e}")

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.matrix.imag == 0))

    def inverse(self) -> np.ndarray:
        return self.matrix.conj().T


def _phase(a: np.ndarray, weights: tuple[float, float, float]) -> np.ndarray:
    out = np.zeros((len(a), 3, 3), dtype=np.complex128)
    for k, w in enumerate(weights):
        out[:, k, k] = np.exp(1j * w * a)
    return out


def _rotation(a: np.ndarray, i: int, j: int) -> np.ndarray:
    """Rotation by angle a in the (i, j) coordinate plane; e^{i l2 a} for (0, 1), e^{i l5 a} for (0, 2)."""
    out = np.zeros((len(a), 3, 3), dtype=np.complex128)
    k = 3 - i - j
    out[:, k, k] = 1
    out[:, i, i] = out[:, j, j] = np.cos(a)
    out[:, i, j] = np.sin(a)
    out[:, j, i] = -np.sin(a)
    return out


def su3_matrices(x: np.ndarray) -> np.ndarray:
    """Generalized Euler angles, vectorized: rows of [0,1]^8 to SU(3) matrices (M, 3, 3)."""
    a = np.atleast_2d(np.asarray(x, dtype=float)) * SU3_RANGES
    l3 = (1.0, -1.0, 0.0)
    l8 = (1 / np.sqrt(3.0), 1 / np.sqrt(3.0), -2 / np.sqrt(3.0))
    factors = [
        _phase(a[:, 0], l3),
        _rotation(a[:, 1], 0, 1),
        _phase(a[:, 2], l3),
        _rotation(a[:, 3], 0, 2),
        _phase(a[:, 4], l3),
        _rotation(a[:, 5], 0, 1),
        _phase(a[:, 6], l3),
        _phase(a[:, 7], l8),
    ]
    out = factors[0]
    for f in factors[1:]:
        out = out @ f
    return out


def so3_matrices(x: np.ndarray) -> np.ndarray:
    """ZYZ Euler angles, vectorized: rows of [0,1]^3 to SO(3) matrices (M, 3, 3), complex dtype."""
    a = np.atleast_2d(np.asarray(x, dtype=float)) * SO3_RANGES
    return _rotation(a[:, 0], 0, 1) @ _rotation(a[:, 1], 0, 2) @ _rotation(a[:, 2], 0, 1)


def su3_from_box(x) -> UnitaryPoint:
    x = np.asarray(x, dtype=float)
    return UnitaryPoint(su3_matrices(x[None, :])[0], x)


def so3_from_box(x) -> UnitaryPoint:
    x = np.asarray(x, dtype=float)
    return UnitaryPoint(so3_matrices(x[None, :])[0], x)


def check_unitary(batch: np.ndarray) -> None:
    """Vectorized form of the UnitaryPoint check over a stack of matrices."""
    gram = np.conj(np.swapaxes(batch, 1, 2)) @ batch
    gap = np.linalg.norm(gram - np.eye(3), axis=(1, 2)).max(initial=0.0)
    det = np.abs(np.linalg.det(batch) - 1).max(initial=0.0)
    if gap > UNITARY_TOLERANCE or det > UNITARY_TOLERANCE:
        raise UnitarityViolation(f"|U*U - I| up to {gap:.2e}, |det U - 1| up to {det:.2e}")


def haar_su3(count: int, seed: Optional[int] = 0) -> np.ndarray:
    """Haar-distributed SU(3) samples via QR of complex Ginibre matrices."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((count, 3, 3)) + 1j * rng.standard_normal((count, 3, 3))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    q = q * (d / np.abs(d))[:, None, :]
    det = np.linalg.det(q)
    return q / (det ** (1.0 / 3.0))[:, None, None]


def haar_so3(count: int, seed: Optional[int] = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((count, 3, 3)))
    q = q * np.sign(np.diagonal(r, axis1=1, axis2=2))[:, None, :]
    q[np.linalg.det(q) < 0] *= -1
    return q.astype(np.complex128)


def projective_gap(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """min over cube roots of unity w of |U - w V| (Frobenius), row-wise over stacks."""
    roots = np.exp(2j * np.pi * np.arange(3) / 3)
    gaps = [np.linalg.norm(u - w * v, axis=(-2, -1)) for w in roots]
    return np.min(gaps, axis=0)
