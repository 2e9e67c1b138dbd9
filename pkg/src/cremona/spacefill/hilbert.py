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

"""k-dimensional Hilbert curve at finite depth, read as a continuous path [0,1] -> [0,1]^k.

Cell indices are decoded with Skilling's transpose algorithm. Between consecutive cells the
path is linear, and cell j along an axis sits at coordinate j / (2^depth - 1).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np


class ParamOutOfRange(ValueError):
    """Raised when a curve or family parameter leaves its admissible range."""

    pass


MAX_DIMS = 8
MAX_DEPTH = 10


def _check(dims: int, depth: int) -> None:
    if not 2 <= dims <= MAX_DIMS:
        raise ParamOutOfRange(f"dims must lie in [2, {MAX_DIMS}], got {dims}")
    if not 1 <= depth <= MAX_DEPTH:
        raise ParamOutOfRange(f"depth must lie in [1, {MAX_DEPTH}], got {depth}")


def transpose_to_axes(x: np.ndarray, depth: int) -> np.ndarray:
    """Skilling's TransposetoAxes on rows of transposed indices, shape (M, dims), in place."""
    dims = x.shape[1]
    top = 2 << (depth - 1)
    # Gray decode
    t = x[:, dims - 1] >> 1
    for i in range(dims - 1, 0, -1):
        x[:, i] ^= x[:, i - 1]
    x[:, 0] ^= t
    # undo excess work
    q = 2
    while q != top:
        p = q - 1
        for i in range(dims - 1, -1, -1):
            on = (x[:, i] & q) != 0
            x[on, 0] ^= p
            off = ~on
            swap = (x[off, 0] ^ x[off, i]) & p
            x[off, 0] ^= swap
            x[off, i] ^= swap
        q <<= 1
    return x


def _digits(t: np.ndarray, dims: int, depth: int) -> tuple[np.ndarray, np.ndarray]:
    """Base-2^dims digits of floor(t * 2^(dims*depth)) and the leftover fraction.

    Scaling by a power of two and removing the integer part are exact in floating point.
    """
    base = float(1 << dims)
    frac = t.copy()
    digits = np.zeros((len(t), depth), dtype=np.int64)
    for level in range(depth):
        frac = frac * base
        d = np.floor(frac)
        digits[:, level] = d.astype(np.int64)
        frac = frac - d
    last = t >= 1.0
    digits[last] = (1 << dims) - 1
    frac[last] = 0.0
    return digits, frac


def _increment(digits: np.ndarray, dims: int) -> np.ndarray:
    """Next cell index; the last cell stays put."""
    out = digits.copy()
    full = (1 << dims) - 1
    carry = np.ones(len(out), dtype=bool)
    for level in range(out.shape[1] - 1, -1, -1):
        bump = carry & (out[:, level] < full)
        roll = carry & ~bump
        out[bump, level] += 1
        out[roll, level] = 0
        carry = roll
    out[carry] = full
    return out


def cells_from_digits(digits: np.ndarray, dims: int, depth: int) -> np.ndarray:
    """Integer cell coordinates, shape (M, dims), of the given curve indices."""
    x = np.zeros((len(digits), dims), dtype=np.int64)
    for level in range(depth):
        bit = depth - 1 - level
        for i in range(dims):
            x[:, i] |= ((digits[:, level] >> (dims - 1 - i)) & 1) << bit
    return transpose_to_axes(x, depth)


def hilbert_points(t: np.ndarray, dims: int, depth: int) -> np.ndarray:
    """Vectorized curve evaluation, shape (M, dims)."""
    _check(dims, depth)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any((t < 0) | (t > 1)) or not np.all(np.isfinite(t)):
        raise ParamOutOfRange("curve parameters must lie in [0, 1]")
    digits, frac = _digits(t, dims, depth)
    here = cells_from_digits(digits, dims, depth)
    there = cells_from_digits(_increment(digits, dims), dims, depth)
    scale = float((1 << depth) - 1)
    return (here + frac[:, None] * (there - here)) / scale


def hilbert_point(t: float, dims: int, depth: int) -> np.ndarray:
    return hilbert_points(np.array([t]), dims, depth)[0]


@dataclass(frozen=True)
class SpaceFillingCurve:
    dims: int
    depth: int

    def __post_init__(self):
        _check(self.dims, self.depth)

    @property
    def modulus_constant(self) -> float:
        """C with |h(t) - h(s)|_inf <= C |t - s|^(1/dims)."""
        side = 1 << self.depth
        return 4.0 * 3.0 ** (1.0 / self.dims) * side / (side - 1)

    def __call__(self, t) -> np.ndarray:
        if np.ndim(t) == 0:
            return hilbert_point(float(t), self.dims, self.depth)
        return hilbert_points(t, self.dims, self.depth)

    def modulus_ratio(self, count: int, seed: Optional[int] = 0) -> float:
        """Largest |h(t) - h(s)|_inf / |t - s|^(1/dims) over ``count`` random pairs."""
        rng = np.random.default_rng(seed)
        t, s = rng.random(count), rng.random(count)
        gap = np.abs(t - s)
        keep = gap > 0
        spread = np.max(np.abs(self(t[keep]) - self(s[keep])), axis=1)
        return float(np.max(spread / gap[keep] ** (1.0 / self.dims)))

    def cells_hit(self, samples: int, resolution: Optional[int] = None) -> int:
        """Number of dyadic cells of side 2^-resolution met by the curve at ``samples`` even steps."""
        resolution = self.depth if resolution is None else resolution
        side = 1 << resolution
        points = self(np.linspace(0.0, 1.0, samples))
        cells = np.minimum(np.floor(points * side).astype(np.int64), side - 1)
        return len({tuple(row) for row in cells})
