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
from enum import Enum
from itertools import combinations
from typing import Callable, Optional, Sequence, Union

import numpy as np

from src.cremona.birmap.birational_map import BirationalMap
from src.cremona.birmap.map_tuple import MapTuple
from src.cremona.poly.homog_poly import HomogPoly
from src.cremona.wspace.wd_point import WspaceError
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger

Family = Union[Callable[[int], BirationalMap], Sequence[tuple[int, BirationalMap]]]


class EmptyGrid(WspaceError):
    """Raised when no lattice point falls inside the requested ball."""

    pass


class CertificateKind(Enum):
    CERTIFICATE = "Certificate"
    REFUTED = "Refuted"


@dataclass(frozen=True)
class RegionCertificate:
    chart: int
    center: tuple[float, ...]
    radius: float
    sample_grid: np.ndarray = field(repr=False)
    sup_errors: list[tuple[int, float]]
    denominator_floor: float


@dataclass(frozen=True)
class CertificateResult:
    kind: CertificateKind
    certificate: Optional[RegionCertificate] = None
    witness: Optional[tuple[float, ...]] = None
    floor: Optional[float] = None
    reason: Optional[str] = None
    sup_errors: list[tuple[int, float]] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.kind is CertificateKind.CERTIFICATE


@dataclass(frozen=True)
class InvariantRegionReport:
    min_cofactor: float
    max_residual: float
    holds: bool


def chordal_distance(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Row-wise sin of the angle between projective points given by (unnormalized) rows."""
    u = u / np.linalg.norm(u, axis=1, keepdims=True)
    v = v / np.linalg.norm(v, axis=1, keepdims=True)
    return np.sqrt(sine_squared(u, v))


def sine_squared(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Sum of |u_i v_j - u_j v_i|^2 over i < j along the last axis; sin^2 of the angle for unit rows.

    Exactly zero when u and v are the same vector.
    """
    total = np.zeros(np.broadcast_shapes(u.shape, v.shape)[:-1])
    for i, j in combinations(range(u.shape[-1]), 2):
        total = total + np.abs(u[..., i] * v[..., j] - u[..., j] * v[..., i]) ** 2
    return np.clip(total, 0.0, 1.0)


def ball_grid(center: Sequence[float], radius: float, density: int) -> np.ndarray:
    """Real lattice points with ``density`` values per axis that lie in the closed ball."""
    center = np.asarray(center, dtype=float)
    axis = np.linspace(-radius, radius, density)
    mesh = np.stack(np.meshgrid(*([axis] * len(center)), indexing="ij"), axis=-1)
    offsets = mesh.reshape(-1, len(center))
    inside = np.linalg.norm(offsets, axis=1) <= radius * (1 + 1e-12)
    return center + offsets[inside]


def lift_chart(points: np.ndarray, chart: int) -> np.ndarray:
    """Insert the coordinate x_chart = 1 into affine chart points."""
    return np.insert(np.asarray(points, dtype=np.complex128), chart, 1.0, axis=1)


def evaluate_tuple(tup: MapTuple, points: np.ndarray) -> np.ndarray:
    return np.stack([c.evaluate_many(points) for c in tup.components], axis=1)


class RegionCertifier:
    """Sampled evidence that f_m converges to f uniformly on a ball of an affine chart."""

    def __init__(self, log: Logger, config: Config = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.grid_density = self.config.get_int(
            Key.Wspace.grid_density.key, Key.Wspace.grid_density.default_value
        )
        self.uniform_tolerance = self.config.get_float(
            Key.Wspace.uniform_tolerance.key, Key.Wspace.uniform_tolerance.default_value
        )
        self.denominator_floor = self.config.get_float(
            Key.Wspace.denominator_floor.key, Key.Wspace.denominator_floor.default_value
        )

    @staticmethod
    def _members(family: Family, m_list: Optional[Sequence[int]]) -> list[tuple[int, BirationalMap]]:
        if callable(family):
            if not m_list:
                raise ValueError("a family given as a function needs an explicit m_list")
            return [(m, family(m)) for m in m_list]
        members = list(family)
        if m_list:
            wanted = set(m_list)
            members = [(m, f) for m, f in members if m in wanted]
        return members

    def uniform_certificate(
        self,
        family: Family,
        target: BirationalMap,
        chart: int,
        center: Sequence[float],
        radius: float,
        grid_density: Optional[int] = None,
        m_list: Optional[Sequence[int]] = None,
        grid: Optional[np.ndarray] = None,
    ) -> CertificateResult:
        if radius <= 0:
            raise ValueError(f"radius must be positive, got {radius}")
        if grid is None:
            grid = ball_grid(center, radius, grid_density or self.grid_density)
        else:
            grid = np.asarray(grid, dtype=float)
            inside = np.linalg.norm(grid - np.asarray(center, dtype=float), axis=1) <= radius
            grid = grid[inside]
        if len(grid) == 0:
            raise EmptyGrid(f"no grid point within {radius} of {tuple(center)}")
        members = self._members(family, m_list)
        points = lift_chart(grid, chart)
        target_values = evaluate_tuple(target.map_tuple, points)
        floor = float(np.min(np.linalg.norm(target_values, axis=1)))
        worst_point = int(np.argmin(np.linalg.norm(target_values, axis=1)))

        errors = np.zeros((len(members), len(grid)))
        for row, (m, f) in enumerate(members):
            values = evaluate_tuple(f.map_tuple, points)
            norms = np.linalg.norm(values, axis=1)
            if norms.min() < floor:
                floor, worst_point = float(norms.min()), int(np.argmin(norms))
            if norms.min() > self.denominator_floor:
                errors[row] = chordal_distance(values, target_values)
        self.__log.debugg(f"[WSPACE] denominator floor {floor:.3e} on {len(grid)} grid points")

        if floor <= self.denominator_floor:
            self.__log.info(f"[WSPACE] a map is undefined at {tuple(grid[worst_point])}")
            return CertificateResult(
                CertificateKind.REFUTED,
                witness=tuple(float(x) for x in grid[worst_point]),
                floor=0.0,
                reason="Indeterminate",
            )

        sup_errors = [(m, float(errors[row].max())) for row, (m, _) in enumerate(members)]
        sups = [e for _, e in sup_errors]
        tail = sups[-max(3, len(sups) // 2) :]
        monotone = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
        small = sups[-1] < self.uniform_tolerance if sups else True
        if monotone and small:
            certificate = RegionCertificate(
                chart=chart,
                center=tuple(float(c) for c in center),
                radius=float(radius),
                sample_grid=grid,
                sup_errors=sup_errors,
                denominator_floor=floor,
            )
            self.__log.info(f"[WSPACE] certified on {len(grid)} points, final error {sups[-1]:.3e}")
            return CertificateResult(CertificateKind.CERTIFICATE, certificate, sup_errors=sup_errors)

        persistent = errors.min(axis=0)
        witness = int(np.argmax(persistent))
        reason = "NotMonotone" if not monotone else "ErrorAboveTolerance"
        self.__log.info(f"[WSPACE] refuted ({reason}) at {tuple(grid[witness])}")
        return CertificateResult(
            CertificateKind.REFUTED,
            witness=tuple(float(x) for x in grid[witness]),
            floor=float(persistent[witness]),
            reason=reason,
            sup_errors=sup_errors,
        )

    def invariant_region_check(
        self, cofactor: HomogPoly, limit: MapTuple, grid: np.ndarray, tolerance: float = 1e-8
    ) -> InvariantRegionReport:
        """H nonvanishing on the grid and H(G(x)) = H(x)^d there (homogeneous grid points)."""
        grid = np.asarray(grid, dtype=np.complex128)
        h = cofactor.evaluate_many(grid)
        hg = cofactor.evaluate_many(evaluate_tuple(limit, grid))
        expected = h**limit.degree
        residual = np.abs(hg - expected) / np.maximum(1.0, np.abs(expected))
        min_h = float(np.min(np.abs(h)))
        max_res = float(np.max(residual))
        holds = min_h > self.denominator_floor and max_res < tolerance
        self.__log.debug(f"[WSPACE] invariant region: min |H| {min_h:.3e}, residual {max_res:.3e}")
        return InvariantRegionReport(min_h, max_res, holds)
