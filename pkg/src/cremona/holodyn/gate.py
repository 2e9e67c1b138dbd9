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
from typing import Optional

import numpy as np

from src.cremona.holodyn.chart_map import ChartMap, HolodynError
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger


class SingularNewtonStep(HolodynError):
    """Raised when Df - I is numerically singular at the current Newton iterate."""

    pass


class StepSizeUnderflow(HolodynError):
    """Raised when the finite-difference step is too small to resolve second derivatives."""

    pass


class BodyKind(Enum):
    BODY = "Body"
    REFUSED = "Refused"


class FixedKind(Enum):
    FIXED = "Fixed"
    NOT_FOUND = "NotFound"


class CartanKind(Enum):
    FORCED_IDENTITY = "ForcedIdentity"
    NOT_FORCED = "NotForced"
    NOT_APPLICABLE = "NotApplicable"


class HessianKind(Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    FAILS = "Fails"


@dataclass(frozen=True)
class InvariantBody:
    r: float
    D: int
    samples: np.ndarray
    invariance_residual: float
    order_deviation: float
    center: np.ndarray = field(repr=False)

    def contains(self, f: ChartMap, z: np.ndarray, tolerance: float = 1e-8) -> np.ndarray:
        reach = np.max([np.linalg.norm(w - self.center, axis=1) for w in f.iterates(z, self.D)], axis=0)
        return reach <= self.r + tolerance


@dataclass(frozen=True)
class BodyResult:
    kind: BodyKind
    body: Optional[InvariantBody] = None
    reason: Optional[str] = None
    order_deviation: Optional[float] = None


@dataclass(frozen=True)
class FixedPointResult:
    kind: FixedKind
    point: Optional[np.ndarray] = None
    residual: Optional[float] = None
    seeds_tried: int = 0


@dataclass(frozen=True)
class CartanVerdict:
    kind: CartanKind
    eigenvalues: list[complex] = field(default_factory=list)
    reason: Optional[str] = None
    fixed_point: Optional[np.ndarray] = None
    differential_residual: Optional[float] = None
    order_deviation: Optional[float] = None
    invariance_residual: Optional[float] = None
    roots_of_unity_residual: Optional[float] = None


@dataclass(frozen=True)
class HessianResult:
    kind: HessianKind
    min_eigenvalue: float
    witness: Optional[np.ndarray] = None


class CartanGate:
    """Numerical version of the bounded-order argument on complex charts.

    For a chart map f with f^D = id on a ball: build the invariant body
    B = {z : |f^i(z)| <= r, i = 1..D}, locate a fixed point P in it, and check Df(P) = I.
    """

    def __init__(self, log: Logger, config: Config = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.outer_radius = self.config.get_float(
            Key.Holodyn.outer_radius.key, Key.Holodyn.outer_radius.default_value
        )
        self.radius = self.config.get_float(Key.Holodyn.radius.key, Key.Holodyn.radius.default_value)
        self.grid_density = self.config.get_int(
            Key.Holodyn.grid_density.key, Key.Holodyn.grid_density.default_value
        )
        self.grid_cap = self.config.get_int(Key.Holodyn.grid_cap.key, Key.Holodyn.grid_cap.default_value)
        self.order_tolerance = self.config.get_float(
            Key.Holodyn.order_tolerance.key, Key.Holodyn.order_tolerance.default_value
        )
        self.newton_steps = self.config.get_int(
            Key.Holodyn.newton_steps.key, Key.Holodyn.newton_steps.default_value
        )
        self.newton_seeds = self.config.get_int(
            Key.Holodyn.newton_seeds.key, Key.Holodyn.newton_seeds.default_value
        )
        self.fixed_point_tolerance = self.config.get_float(
            Key.Holodyn.fixed_point_tolerance.key, Key.Holodyn.fixed_point_tolerance.default_value
        )
        self.differential_tolerance = self.config.get_float(
            Key.Holodyn.differential_tolerance.key, Key.Holodyn.differential_tolerance.default_value
        )
        self.hessian_step = self.config.get_float(
            Key.Holodyn.hessian_step.key, Key.Holodyn.hessian_step.default_value
        )

    def chart(self, f, chart: int = 0, center=None, radius: Optional[float] = None) -> ChartMap:
        return ChartMap(
            f,
            chart=chart,
            center=center,
            radius=self.outer_radius if radius is None else radius,
            grid_density=self.grid_density,
            grid_cap=self.grid_cap,
        )

    # ---- invariant body -----------------------------------------------------------------------

    def build_body(self, f: ChartMap, D: int, r: Optional[float] = None) -> BodyResult:
        r = self.radius if r is None else r
        if D < 1:
            raise ValueError(f"order bound must be positive, got {D}")
        if not r < f.radius:
            raise ValueError(f"body radius {r} must be below the domain radius {f.radius}")
        grid = f.grid
        iterates = f.iterates(grid, D)

        scale = 1.0 + np.linalg.norm(grid, axis=1)
        deviation = float(np.max(np.linalg.norm(iterates[-1] - grid, axis=1) / scale))
        self.__log.debug(f"[CARTAN] max |f^{D}(z) - z| / (1 + |z|) = {deviation:.3e}")
        if deviation >= self.order_tolerance:
            return BodyResult(BodyKind.REFUSED, reason="NotOrderD", order_deviation=deviation)

        reach = np.max([np.linalg.norm(w - f.center, axis=1) for w in iterates], axis=0)
        members = grid[reach <= r]
        if len(members) == 0:
            return BodyResult(BodyKind.REFUSED, reason="EmptyBody", order_deviation=deviation)

        # f(B) ⊆ B on the samples: every iterate of f(z) stays within r
        images = f.iterates(members, D + 1)[1:]
        overshoot = np.max([np.linalg.norm(w - f.center, axis=1) for w in images], axis=0) - r
        residual = float(max(0.0, overshoot.max()))
        self.__log.debugg(f"[CARTAN] body has {len(members)} samples, invariance residual {residual:.3e}")
        if residual > self.order_tolerance:
            return BodyResult(BodyKind.REFUSED, reason="NoInvariance", order_deviation=deviation)
        body = InvariantBody(r, D, members, residual, deviation, f.center)
        return BodyResult(BodyKind.BODY, body=body, order_deviation=deviation)

    # ---- fixed point --------------------------------------------------------------------------

    def _newton_step(self, f: ChartMap, z: np.ndarray) -> np.ndarray:
        system = f.jacobian(z)[0] - np.eye(f.n)
        cond = np.linalg.cond(system)
        if not np.isfinite(cond) or cond > 1e12:
            raise SingularNewtonStep(f"Df - I is singular near {z[0]}")
        return z - np.linalg.solve(system, (f(z) - z)[0])[None, :]

    def find_fixed_point(self, f: ChartMap, body: Optional[InvariantBody] = None) -> FixedPointResult:
        candidates = f.grid if body is None else body.samples
        residuals = np.linalg.norm(f(candidates) - candidates, axis=1)
        spread = np.linalg.norm(candidates - f.center, axis=1)
        seeds = candidates[np.lexsort((spread, residuals))[: self.newton_seeds]]

        best: Optional[tuple[float, np.ndarray]] = None
        for index, seed in enumerate(seeds, start=1):
            z = seed[None, :]
            for _ in range(self.newton_steps):
                residual = float(np.linalg.norm(f(z) - z))
                if residual < self.fixed_point_tolerance:
                    break
                try:
                    z = self._newton_step(f, z)
                except SingularNewtonStep as e:
                    self.__log.debuggg(f"[CARTAN] {e}; damped step instead")
                    z = 0.5 * (z + f(z))
                if not np.all(np.isfinite(z)):
                    break
            if not np.all(np.isfinite(z)):
                continue
            residual = float(np.linalg.norm(f(z) - z))
            inside = body is None or bool(body.contains(f, z)[0])
            if residual < self.fixed_point_tolerance and inside:
                self.__log.debug(f"[CARTAN] fixed point {z[0]} from seed {index}, residual {residual:.2e}")
                return FixedPointResult(FixedKind.FIXED, z[0], residual, index)
            if best is None or residual < best[0]:
                best = (residual, z[0])
        self.__log.info(f"[CARTAN] no fixed point after {len(seeds)} seeds")
        return FixedPointResult(
            FixedKind.NOT_FOUND,
            None if best is None else best[1],
            None if best is None else best[0],
            len(seeds),
        )

    # ---- verdict ------------------------------------------------------------------------------

    def cartan_gate(self, f: ChartMap, D: int) -> CartanVerdict:
        built = self.build_body(f, D)
        if built.kind is BodyKind.REFUSED:
            self.__log.info(f"[CARTAN] not applicable: {built.reason}")
            return CartanVerdict(
                CartanKind.NOT_APPLICABLE, reason=built.reason, order_deviation=built.order_deviation
            )
        body = built.body
        fixed = self.find_fixed_point(f, body)
        if fixed.kind is FixedKind.NOT_FOUND:
            return CartanVerdict(
                CartanKind.NOT_APPLICABLE,
                reason="NoFixedPoint",
                order_deviation=body.order_deviation,
                invariance_residual=body.invariance_residual,
            )
        differential = f.jacobian(fixed.point[None, :])[0]
        eigenvalues = [complex(v) for v in np.linalg.eigvals(differential)]
        gap = float(np.linalg.norm(differential - np.eye(f.n)))
        unity = float(max(abs(v**D - 1) for v in eigenvalues))
        kind = CartanKind.FORCED_IDENTITY if gap < self.differential_tolerance else CartanKind.NOT_FORCED
        self.__log.info(f"[CARTAN] {kind.value}: |Df(P) - I| = {gap:.3e}, eigenvalues {eigenvalues}")
        return CartanVerdict(
            kind,
            eigenvalues=eigenvalues,
            fixed_point=fixed.point,
            differential_residual=gap,
            order_deviation=body.order_deviation,
            invariance_residual=body.invariance_residual,
            roots_of_unity_residual=unity,
        )

    # ---- convexity ----------------------------------------------------------------------------

    def hessian_convexity_check(
        self, f: ChartMap, i: int, grid: Optional[np.ndarray] = None, step: Optional[float] = None
    ) -> HessianResult:
        """Real Hessian of z -> |f^i(z) - center|^2 in 2n real variables, by central differences."""
        h = self.hessian_step if step is None else step
        if h < 1e-8:
            raise StepSizeUnderflow(f"finite-difference step {h} is below 1e-8")
        grid = f.grid if grid is None else np.atleast_2d(np.asarray(grid, dtype=np.complex128))
        dims = 2 * f.n
        basis = np.eye(dims)

        def energy(x: np.ndarray) -> np.ndarray:
            z = x[:, 0::2] + 1j * x[:, 1::2]
            return np.linalg.norm(f.iterate(z, i) - f.center, axis=1) ** 2

        x = np.empty((len(grid), dims))
        x[:, 0::2], x[:, 1::2] = grid.real, grid.imag
        hessian = np.empty((len(grid), dims, dims))
        for a in range(dims):
            for b in range(a, dims):
                ea, eb = h * basis[a], h * basis[b]
                value = (
                    energy(x + ea + eb) - energy(x + ea - eb) - energy(x - ea + eb) + energy(x - ea - eb)
                ) / (4 * h * h)
                hessian[:, a, b] = hessian[:, b, a] = value
        lowest = np.linalg.eigvalsh(hessian)[:, 0]
        worst = int(np.argmin(lowest))
        self.__log.debug(f"[CARTAN] min Hessian eigenvalue of |f^{i}|^2: {lowest[worst]:.4f}")
        if lowest[worst] > 0:
            return HessianResult(HessianKind.POSITIVE_DEFINITE, float(lowest[worst]))
        return HessianResult(HessianKind.FAILS, float(lowest[worst]), grid[worst])
