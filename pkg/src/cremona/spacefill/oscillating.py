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

from src.cremona.birmap.birational_map import BirationalMap, compose
from src.cremona.birmap.families import linear, oscillating_base
from src.cremona.poly.domains import CC, RR, CoefficientDomain
from src.cremona.spacefill.hilbert import ParamOutOfRange, hilbert_points
from src.cremona.spacefill.unitary import check_unitary, so3_matrices, su3_matrices
from src.cremona.wspace.certificate import sine_squared
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger

REFERENCE_SEED = 20240917


@dataclass(frozen=True)
class CloudReport:
    eps: float
    depth: int
    real: bool
    params: np.ndarray = field(repr=False)
    points: np.ndarray = field(repr=False)
    covering_radius: float
    reference_size: int


def covering_radius(points: np.ndarray, reference: np.ndarray) -> float:
    """max over the reference net of the chordal distance to the nearest cloud point.

    Rows are unit vectors; the net is processed in chunks to bound memory.
    """
    chunk = max(1, (1 << 19) // max(1, len(points)))
    worst = 0.0
    for start in range(0, len(reference), chunk):
        block = reference[start : start + chunk]
        nearest = np.sqrt(sine_squared(block[:, None, :], points[None, :, :]).min(axis=1))
        worst = max(worst, float(nearest.max()))
    return worst


def reference_net(size: int, real: bool = False, seed: int = REFERENCE_SEED) -> np.ndarray:
    """Uniform sample of the unit sphere in C^3 (or R^3), a fixed net on P^2."""
    rng = np.random.default_rng(seed)
    net = rng.standard_normal((size, 3)).astype(np.complex128)
    if not real:
        net = net + 1j * rng.standard_normal((size, 3))
    return net / np.linalg.norm(net, axis=1, keepdims=True)


class OscillatingFamily:
    """rho(t) = sigma_hat(t) o f_t o sigma_hat(t)^-1, with sigma a space-filling curve into PSU(3).

    sigma(s), s in [-1, 1], is su3_from_box of the 8-dimensional Hilbert curve at (s + 1) / 2;
    sigma_hat(t) = sigma(sin 1)^-1 sigma(sin(1/t)). The real variant uses PSO(3) and a
    3-dimensional curve.
    """

    def __init__(self, log: Logger, config: Config = None, depth: Optional[int] = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.depth = depth or self.config.get_int(
            Key.Spacefill.depth.key, Key.Spacefill.depth.default_value
        )
        self.reference_size = self.config.get_int(
            Key.Spacefill.reference_net.key, Key.Spacefill.reference_net.default_value
        )

    @staticmethod
    def _domain(real: bool) -> CoefficientDomain:
        return RR if real else CC

    def sigma(self, s: np.ndarray, real: bool = False, depth: Optional[int] = None) -> np.ndarray:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if np.any(np.abs(s) > 1):
            raise ParamOutOfRange("sigma is defined on [-1, 1]")
        u = np.clip((s + 1.0) / 2.0, 0.0, 1.0)
        box = hilbert_points(u, 3 if real else 8, depth or self.depth)
        out = so3_matrices(box) if real else su3_matrices(box)
        check_unitary(out)
        return out

    def sigma_hat(self, t: np.ndarray, real: bool = False, depth: Optional[int] = None) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t <= 0):
            raise ParamOutOfRange("sigma_hat needs t > 0")
        anchor = self.sigma(np.sin(1.0), real, depth)[0]
        return anchor.conj().T[None, :, :] @ self.sigma(np.sin(1.0 / t), real, depth)

    def _linear(self, u: np.ndarray, real: bool) -> BirationalMap:
        return linear((u.real if real else u).tolist(), self._domain(real))

    def _conjugate(self, u: np.ndarray, inner: BirationalMap, real: bool) -> BirationalMap:
        return compose(self._linear(u, real), compose(inner, self._linear(u.conj().T, real)))

    @staticmethod
    def _check_unit_interval(*values: float) -> None:
        for v in values:
            if not 0.0 <= v <= 1.0:
                raise ParamOutOfRange(f"parameter {v} outside [0, 1]")

    def rho_oscillating(
        self, t: float, depth: Optional[int] = None, real: bool = False, inverse: bool = False
    ) -> BirationalMap:
        """rho(t) (or its inverse), over ComplexFloat, or RealFloat when ``real``."""
        self._check_unit_interval(t)
        domain = self._domain(real)
        c = t * (1 - t)
        if c == 0:
            return BirationalMap.identity(2, domain)
        u = self.sigma_hat(t, real, depth)[0]
        base = oscillating_base(t, domain, coefficient=-c if inverse else c)
        self.__log.debuggg(f"[SPACEFILL] rho({t}) conjugated by sigma_hat({t})")
        return self._conjugate(u, base, real)

    def indeterminacy_point(self, t: float, depth: Optional[int] = None, real: bool = False) -> np.ndarray:
        """sigma_hat(t)([0:0:1]), where rho(t) is not regular for t not in {0, 1}."""
        return self.sigma_hat(t, real, depth)[0][:, 2]

    def homotopy_H(
        self, s: float, t: float, depth: Optional[int] = None, real: bool = False
    ) -> BirationalMap:
        """rho(t) for t >= s, sigma_hat(s) o f_t o sigma_hat(s)^-1 for t < s."""
        self._check_unit_interval(s, t)
        if t >= s:
            return self.rho_oscillating(t, depth, real)
        domain = self._domain(real)
        if t == 0:
            return BirationalMap.identity(2, domain)
        u = self.sigma_hat(s, real, depth)[0]
        return self._conjugate(u, oscillating_base(t, domain), real)

    def indeterminacy_cloud(
        self,
        eps: float,
        count: int,
        depth: Optional[int] = None,
        seed: Optional[int] = 0,
        real: bool = False,
    ) -> CloudReport:
        """Indeterminacy points of rho(t_i), t_i uniform in (0, eps], and their covering radius.

        The parameters for ``count`` samples are a prefix of those for any larger count.
        """
        if not 0 < eps < 1:
            raise ParamOutOfRange(f"eps must lie in (0, 1), got {eps}")
        if count < 1:
            raise ParamOutOfRange(f"need at least one sample, got {count}")
        depth = depth or self.depth
        rng = np.random.default_rng(seed)
        params = eps * (1.0 - rng.random(count))
        points = self.sigma_hat(params, real, depth)[:, :, 2]
        points = points / np.linalg.norm(points, axis=1, keepdims=True)
        net = reference_net(self.reference_size, real)
        radius = covering_radius(points, net)
        self.__log.info(
            f"[SPACEFILL] cloud of {count} points (eps={eps}, depth={depth}): covering radius {radius:.4f}"
        )
        return CloudReport(eps, depth, real, params, points, radius, len(net))
