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
from fractions import Fraction
from itertools import combinations
from math import acos, cos, pi
from typing import Any, Optional, Sequence

import sympy

from src.cremona.birmap.birational_map import BirationalMap
from src.cremona.birmap.map_tuple import MapTuple
from src.cremona.poly.domains import QQ, RR
from src.cremona.poly.homog_poly import HomogPoly
from src.cremona.spacefill.hilbert import ParamOutOfRange
from src.cremona.wspace.analyzer import ConvergenceAnalyzer, Verdict
from src.cremona.wspace.wd_point import WdPoint, embed_identity, wd_distance
from src.utils.Config import Config
from src.utils.Logger import Logger


def nonlift_family(
    t: Any, c: Optional[Any] = None, exact: bool = False, n: int = 2
) -> BirationalMap:
    """[x0*P : x1*P : x2*P + t*x0*x1 : x3*P : ... : xn*P] with P = c*x0 + x1.

    Float mode takes c = cos(2 pi / t) unless given. Exact mode needs rational t and c, the
    pair standing in for (t, cos(2 pi / t)); every member with the same c inverts to (-t, c).
    """
    if n < 2:
        raise ParamOutOfRange(f"the family lives on P^n with n >= 2, got n = {n}")
    if exact:
        if c is None:
            raise ParamOutOfRange("exact mode needs an explicit rational c")
        t, c = Fraction(t), Fraction(c)
        if not -1 <= c <= 1:
            raise ParamOutOfRange(f"c = {c} is not a cosine value")
        domain = QQ
    else:
        t = float(t)
        if t == 0:
            raise ParamOutOfRange("float mode needs t != 0")
        c = cos(2 * pi / t) if c is None else float(c)
        domain = RR
    nvars = n + 1
    xs = [HomogPoly.variable(nvars, i, domain) for i in range(nvars)]
    p = xs[0].scalar_mul(c) + xs[1]
    comps = [x * p for x in xs]
    comps[2] = comps[2] + (xs[0] * xs[1]).scalar_mul(t)
    return BirationalMap.from_tuple(MapTuple(comps))


def subsequence_params(s: float, m_max: int) -> list[float]:
    """t_m = 2 pi / (arccos(s) + 2 pi m), m = 1..m_max, so that cos(2 pi / t_m) = s."""
    if not -1 <= s <= 1:
        raise ParamOutOfRange(f"target {s} is not a cosine value")
    return [2 * pi / (acos(s) + 2 * pi * m) for m in range(1, m_max + 1)]


@dataclass(frozen=True)
class ObstructionReport:
    symbolic_vanishes: bool
    symbolic_restrictions: list[str]
    targets: list[float]
    verdicts: list[Verdict]
    limits: list[Optional[WdPoint]] = field(repr=False)
    pairwise: list[tuple[float, float, float]]
    diameter: float
    all_reduce_to_identity: bool
    closure_residuals: list[float]
    closure_match: bool


class NonliftObstruction:
    """Why t -> rho(t) has no continuous lift to tuples near t = 0.

    The canonical lift vanishes in its first two components on {c*x0 + x1 = 0}, and its limits
    along subsequences with cos(2 pi / t) = s are (s*x0 + x1) * id, which differ for different s.
    """

    def __init__(self, log: Logger, config: Config = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.analyzer = ConvergenceAnalyzer(log, self.config)

    @staticmethod
    def symbolic_restrictions() -> tuple[bool, list[str]]:
        x0, x1, x2, c, t = sympy.symbols("x0 x1 x2 c t")
        p = c * x0 + x1
        lift = [x0 * p, x1 * p, x2 * p + t * x0 * x1]
        on_line = [sympy.expand(h.subs(x1, -c * x0)) for h in lift]
        return on_line[0] == 0 and on_line[1] == 0, [str(h) for h in on_line]

    def nonlift_obstruction_demo(
        self, s_targets: Sequence[float], m_max: int = 200, closure_tolerance: float = 1e-6
    ) -> ObstructionReport:
        if not s_targets:
            raise ParamOutOfRange("need at least one target value s")
        if m_max < 2:
            raise ParamOutOfRange(f"m_max must be at least 2, got {m_max}")
        vanishes, restricted = self.symbolic_restrictions()
        self.__log.debug(f"[SPACEFILL] lift restricted to the line: {restricted}")

        limits, verdicts, residuals = [], [], []
        for s in s_targets:
            params = subsequence_params(s, m_max)
            seq = [nonlift_family(t).map_tuple for t in params]
            report = self.analyzer.sequence_limit(seq, params)
            verdicts.append(report.verdict)
            limits.append(report.limit)
            if report.limit is None:
                residuals.append(float("inf"))
                continue
            cofactor = HomogPoly(RR, 3, 1, {(1, 0, 0): float(s), (0, 1, 0): 1.0})
            residuals.append(wd_distance(report.limit, embed_identity(cofactor)))

        pairwise = []
        for (i, a), (j, b) in combinations(enumerate(limits), 2):
            if a is not None and b is not None and s_targets[i] != s_targets[j]:
                pairwise.append((float(s_targets[i]), float(s_targets[j]), wd_distance(a, b)))
        diameter = max((d for _, _, d in pairwise), default=0.0)
        all_identity = all(v is Verdict.CONVERGES_TO_ID for v in verdicts)
        match = all(r <= closure_tolerance for r in residuals)
        self.__log.info(
            f"[SPACEFILL] lift limits over {len(s_targets)} targets: diameter {diameter:.4f}, "
            f"all reduce to id: {all_identity}"
        )
        return ObstructionReport(
            symbolic_vanishes=vanishes,
            symbolic_restrictions=restricted,
            targets=[float(s) for s in s_targets],
            verdicts=verdicts,
            limits=limits,
            pairwise=pairwise,
            diameter=diameter,
            all_reduce_to_identity=all_identity,
            closure_residuals=residuals,
            closure_match=match,
        )
