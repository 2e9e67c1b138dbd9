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

from typing import Optional, Sequence

import numpy as np

from src.cremona.birmap.birational_map import BirationalMap
from src.cremona.poly.domains import CC


class HolodynError(Exception):
    """Base class for failures of the complex identity gate."""

    pass


class DenominatorVanishes(HolodynError):
    """Raised when the chart denominator gets too close to 0 on the domain ball."""

    pass


class IterateEscapesDomain(HolodynError):
    """Raised when an iterate lands where the next application is undefined."""

    pass


def complex_ball_grid(
    center: Sequence[complex], radius: float, density: int, cap: Optional[int] = None
) -> np.ndarray:
    """Lattice points of C^n (as R^2n) in the closed ball, at most ``cap`` before filtering.

    The per-axis count is forced odd so the center is always a grid point.
    """
    center = np.asarray(center, dtype=np.complex128)
    dims = 2 * len(center)
    per_axis = density
    if cap is not None:
        per_axis = min(per_axis, int(np.floor(cap ** (1.0 / dims) + 1e-9)))
    if per_axis % 2 == 0:
        per_axis -= 1
    per_axis = max(per_axis, 1)
    axis = np.linspace(-radius, radius, per_axis) if per_axis > 1 else np.zeros(1)
    mesh = np.stack(np.meshgrid(*([axis] * dims), indexing="ij"), axis=-1).reshape(-1, dims)
    mesh = mesh[np.linalg.norm(mesh, axis=1) <= radius * (1 + 1e-12)]
    offsets = mesh[:, 0::2] + 1j * mesh[:, 1::2]
    return center + offsets


class ChartMap:
    """A birational map of P^n seen as a rational self-map of C^n on the chart x_chart = 1.

    Component j is F_j / F_chart for j != chart. The denominator is checked on a grid of the
    ball of radius ``radius`` around ``center``.
    """

    def __init__(
        self,
        f: BirationalMap,
        chart: int = 0,
        center: Optional[Sequence[complex]] = None,
        radius: float = 1.0,
        grid_density: int = 21,
        grid_cap: Optional[int] = 9261,
        floor: float = 1e-12,
    ):
        if not 0 <= chart <= f.n:
            raise ValueError(f"chart {chart} out of range for P^{f.n}")
        self.source = f
        self.map = f if f.domain.tag == "CC" else f.to_domain(CC)
        self.chart = chart
        self.n = f.n
        self.center = np.zeros(self.n, dtype=np.complex128) if center is None else np.asarray(
            center, dtype=np.complex128
        )
        if self.center.shape != (self.n,):
            raise ValueError(f"center must have {self.n} coordinates")
        self.radius = float(radius)
        self.floor = floor
        self._others = [v for v in range(self.n + 1) if v != chart]
        comps = self.map.components
        self._partials = [[c.partial_derivative(v) for v in self._others] for c in comps]
        self.grid = complex_ball_grid(self.center, self.radius, grid_density, grid_cap)
        low = float(np.min(np.abs(self.denominator(self.grid))))
        if low <= floor:
            raise DenominatorVanishes(
                f"denominator reaches {low:.3e} on the ball of radius {radius} in chart {chart}"
            )
        self.denominator_floor = low

    def _lift(self, z: np.ndarray) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=np.complex128))
        return np.insert(z, self.chart, 1.0, axis=1)

    def denominator(self, z: np.ndarray) -> np.ndarray:
        return self.map.components[self.chart].evaluate_many(self._lift(z))

    def __call__(self, z: np.ndarray) -> np.ndarray:
        points = self._lift(z)
        values = np.stack([c.evaluate_many(points) for c in self.map.components], axis=1)
        return values[:, self._others] / values[:, [self.chart]]

    def iterate(self, z: np.ndarray, i: int) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=np.complex128))
        for step in range(i):
            den = np.abs(self.denominator(z))
            if not np.all(np.isfinite(z)) or den.min() <= self.floor:
                raise IterateEscapesDomain(f"iterate {step + 1} is undefined at some grid point")
            z = self(z)
        return z

    def iterates(self, z: np.ndarray, D: int) -> list[np.ndarray]:
        """[f^1(z), ..., f^D(z)]."""
        out, current = [], np.atleast_2d(np.asarray(z, dtype=np.complex128))
        for _ in range(D):
            current = self.iterate(current, 1)
            out.append(current)
        return out

    def jacobian(self, z: np.ndarray) -> np.ndarray:
        """Complex Jacobians, shape (M, n, n), from exact partials of the ratio components."""
        points = self._lift(z)
        comps = self.map.components
        values = np.stack([c.evaluate_many(points) for c in comps], axis=1)
        den = values[:, self.chart]
        d_den = [self._partials[self.chart][a].evaluate_many(points) for a in range(self.n)]
        rows = []
        for j in self._others:
            row = [
                (self._partials[j][a].evaluate_many(points) * den - values[:, j] * d_den[a])
                / den**2
                for a in range(self.n)
            ]
            rows.append(np.stack(row, axis=1))
        return np.stack(rows, axis=1)

    def __repr__(self):
        return f"ChartMap({self.map.to_text()}, chart={self.chart}, radius={self.radius})"
