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
from fractions import Fraction
from typing import Optional

import numpy as np

from src.cremona.birmap import families
from src.cremona.birmap.birational_map import BirationalMap, compose
from src.cremona.padic.padic_num import PadicNum, valuation_of_int
from src.cremona.padic.tate import TateChartMap, chart_normalize
from src.cremona.poly.homog_poly import HomogPoly
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger


class TheoremViolation(AssertionError):
    """A finite-order map within 1/p^2 of the identity that is not the identity."""

    pass


class GateKind(Enum):
    FORCED_IDENTITY = "ForcedIdentity"
    BOUND_VIOLATED = "BoundViolated"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class PadicGateVerdict:
    kind: GateKind
    norm: Fraction
    bound: Fraction
    reason: Optional[str] = None
    order: Optional[int] = None


@dataclass(frozen=True)
class SubgroupSample:
    p: int
    m: int
    count: int
    ball: Fraction
    qs: list[int]
    elements: list[BirationalMap]
    distances: list[Fraction]
    products_checked: int
    closure_holds: bool
    gate_verdicts: list[GateKind]

    @property
    def all_in_ball(self) -> bool:
        return all(d <= self.ball for d in self.distances)


@dataclass(frozen=True)
class SweepReport:
    p: int
    size: int
    bound: Fraction
    kinds: list[str]
    distances: list[Fraction]
    violations: list[int] = field(default_factory=list)

    @property
    def violation_count(self) -> int:
        return len(self.violations)


@dataclass(frozen=True)
class FixedPointObstruction:
    obstructed: bool
    translation: list[PadicNum]
    preserves_unit_ball: bool
    reason: str


_FINITE_ORDER_LINEAR = {
    "negate": [[1, 0, 0], [0, -1, 0], [0, 0, 1]],
    "swap": [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
    "rotate3": [[1, 0, 0], [0, 0, 1], [0, -1, -1]],
}


class PadicGate:
    """Finite-order identity test on Tate charts, with its small-subgroup and sweep experiments."""

    def __init__(self, log: Logger, config: Config = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.p = self.config.get_int(Key.Padic.prime.key, Key.Padic.prime.default_value)
        self.N = self.config.get_int(Key.Padic.precision.key, Key.Padic.precision.default_value)
        self.T = self.config.get_int(Key.Padic.truncation.key, Key.Padic.truncation.default_value)
        self.sweep_size = self.config.get_int(
            Key.Padic.sweep_size.key, Key.Padic.sweep_size.default_value
        )
        self.seed = self.config.get_int(Key.Cremona.seed.key, Key.Cremona.seed.default_value)

    def chart(self, f: BirationalMap, p: Optional[int] = None, **kwargs) -> TateChartMap:
        return chart_normalize(f, p or self.p, self.N, self.T, **kwargs)

    def identity_gate(self, f: TateChartMap, D: int, oracle: BirationalMap) -> PadicGateVerdict:
        bound = Fraction(1, f.p**2)
        g = f.distance_to_identity()
        self.__log.debug(f"[PADIC] ||f' - id|| = {g} against {bound}")
        if g > bound:
            return PadicGateVerdict(GateKind.BOUND_VIOLATED, g, bound)
        result = oracle.order(D)
        if not result.is_finite:
            self.__log.debugg(f"[PADIC] no return to the identity within {D} iterates")
            return PadicGateVerdict(GateKind.NOT_APPLICABLE, g, bound, reason="OrderUnverified")
        if not oracle.is_identity():
            self.__log.error(f"[PADIC] order {result.order} map {oracle} within {bound} of id")
            raise TheoremViolation(
                f"{oracle} has order {result.order} and distance {g} but is not the identity"
            )
        return PadicGateVerdict(GateKind.FORCED_IDENTITY, g, bound, order=result.order)

    # ---- small subgroups ----------------------------------------------------------------------

    def _sample_q(self, rng: np.random.Generator, p: int, m: int) -> int:
        digits = rng.integers(0, p, size=self.N)
        digits[0] = rng.integers(1, p)
        q = sum(int(d) * p ** (m + i) for i, d in enumerate(digits))
        return q if rng.random() < 0.5 else -q

    @staticmethod
    def unipotent(q) -> BirationalMap:
        """[x0 + q*x1 : x1 : x2]."""
        return families.linear([[1, q, 0], [0, 1, 0], [0, 0, 1]])

    @staticmethod
    def _unipotent_entry(h: BirationalMap) -> Optional[Fraction]:
        """q if h = [x0 + q*x1 : x1 : x2] up to scalar, else None."""
        if h.degree != 1:
            return None
        x = [HomogPoly.variable(3, i) for i in range(3)]
        c0, c1, c2 = h.components
        if c1 != x[1] or c2 != x[2]:
            return None
        if c0.coefficient((1, 0, 0)) != 1 or c0.coefficient((0, 0, 1)) != 0:
            return None
        return Fraction(c0.coefficient((0, 1, 0)))

    def small_subgroup_sample(
        self,
        m: int,
        count: int,
        p: Optional[int] = None,
        seed: Optional[int] = None,
        order_bound: int = 6,
    ) -> SubgroupSample:
        p = p or self.p
        seed = self.seed if seed is None else seed
        if m < 1 or count < 1:
            raise ValueError(f"need m >= 1 and count >= 1, got m={m}, count={count}")
        self.__log.info(f"[PADIC] sampling {count} unipotent elements, p={p}, m={m}")
        qs = [
            self._sample_q(np.random.default_rng(np.random.SeedSequence([seed, i])), p, m)
            for i in range(count)
        ]
        elements = [self.unipotent(q) for q in qs]
        charts = [self.chart(e, p) for e in elements]
        distances = [c.distance_to_identity() for c in charts]

        closure = True
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                entry = self._unipotent_entry(compose(a, b))
                expected = qs[i] + qs[j]
                in_family = entry is not None and entry == expected
                in_ball = expected == 0 or valuation_of_int(expected, p) >= m
                if not (in_family and in_ball):
                    self.__log.warning(f"[PADIC] product {i}*{j} left the family")
                    closure = False

        verdicts = [self.identity_gate(c, order_bound, e).kind for c, e in zip(charts, elements)]
        return SubgroupSample(
            p=p,
            m=m,
            count=count,
            ball=Fraction(1, p**m),
            qs=qs,
            elements=elements,
            distances=distances,
            products_checked=count * count,
            closure_holds=closure,
            gate_verdicts=verdicts,
        )

    # ---- consistency sweep --------------------------------------------------------------------

    def _unit(self, rng: np.random.Generator, p: int) -> int:
        while True:
            u = int(rng.integers(1, 5 * p))
            if u % p:
                return u if rng.random() < 0.5 else -u

    def finite_order_element(self, index: int, seed: int, p: int) -> tuple[str, BirationalMap]:
        """A finite-order linear map conjugated by a de Jonquieres map with unit coefficients."""
        rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
        kind = list(_FINITE_ORDER_LINEAR)[index % len(_FINITE_ORDER_LINEAR)]
        x0, x1 = HomogPoly.variable(3, 0), HomogPoly.variable(3, 1)
        a = (x1 * x1).scalar_mul(self._unit(rng, p)) + (x0 * x1).scalar_mul(self._unit(rng, p))
        b = x0 * x0
        g = families.de_jonquieres(a, b)
        g_inv = families.de_jonquieres(-a, b)
        base = families.linear(_FINITE_ORDER_LINEAR[kind])
        return kind, compose(g, compose(base, g_inv))

    def consistency_sweep(
        self, size: Optional[int] = None, seed: Optional[int] = None, p: Optional[int] = None
    ) -> SweepReport:
        size = size or self.sweep_size
        seed = self.seed if seed is None else seed
        p = p or self.p
        bound = Fraction(1, p**2)
        kinds, distances, violations = [], [], []
        for i in range(size):
            kind, element = self.finite_order_element(i, seed, p)
            d = self.chart(element, p).distance_to_identity()
            kinds.append(kind)
            distances.append(d)
            if d <= bound:
                self.__log.error(f"[PADIC] finite-order element {element} within {bound} of id")
                violations.append(i)
        self.__log.info(f"[PADIC] sweep of {size} elements, {len(violations)} violations")
        return SweepReport(p, size, bound, kinds, distances, violations)

    # ---- fixed points -------------------------------------------------------------------------

    def fixed_point_obstruction(self, f: TateChartMap) -> FixedPointObstruction:
        """A map with f - id a nonzero constant has no fixed point on the unit polydisc."""
        diffs = f.difference_from_identity()
        preserves = all(n <= 1 for n in f.norms())
        if not all(d.is_constant() for d in diffs):
            return FixedPointObstruction(False, [], preserves, "f - id is not constant")
        shift = [d.constant_term() for d in diffs]
        if all(s.is_zero for s in shift):
            return FixedPointObstruction(False, shift, preserves, "f is the identity")
        unit = any(s.is_unit() for s in shift)
        reason = "unit translation" if unit else "non-unit translation"
        return FixedPointObstruction(True, shift, preserves, reason)
