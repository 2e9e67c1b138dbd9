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

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from src.cremona.birmap.birational_map import BirationalMap
from src.cremona.birmap.map_tuple import DimensionMismatch, MapTuple
from src.cremona.poly.domains import CC, RR
from src.cremona.poly.homog_poly import HomogPoly, monomials
from src.cremona.wspace.wd_point import (
    WdPoint,
    WspaceError,
    identity_distance,
    multiplication_matrix,
    wd_distance,
)
from src.utils.Config import Config
from src.utils.Defaults import DefaultKeys as Key
from src.utils.Logger import Logger


class MixedDegrees(WspaceError):
    """Raised when a sequence mixes tuple degrees."""

    pass


class TooShort(WspaceError):
    """Raised when a sequence has fewer than three elements."""

    pass


class Verdict(Enum):
    CONVERGES_TO_ID = "ConvergesToId"
    CONVERGES_TO_OTHER = "ConvergesToOther"
    DIVERGES = "Diverges"
    DEGREE_UNBOUNDED = "DegreeUnbounded"


class DegreeKind(Enum):
    BOUNDED = "Bounded"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class DegreeCheck:
    kind: DegreeKind
    bound: Optional[int]
    trace: tuple[int, ...]


@dataclass(frozen=True)
class NearFactor:
    degree: int
    cofactor: HomogPoly
    reduced: MapTuple
    singular_value: float


@dataclass(frozen=True)
class ConvergenceReport:
    d: int
    limit: Optional[WdPoint]
    cofactor: Optional[HomogPoly]
    reduced_limit_is_identity: bool
    distance_trace: list[tuple[int, float]]
    verdict: Verdict
    identity_fit_trace: list[tuple[int, float]] = field(default_factory=list)
    limit_uncertainty: float = 0.0
    reduced_limit: Optional[MapTuple] = None
    factor_singular_value: Optional[float] = None
    degree_trace: tuple[int, ...] = ()


class ConvergenceAnalyzer:
    """Limits of sequences in W_d, near-common-factor extraction and degree growth checks."""

    def __init__(self, log: Logger, config: Config = None):
        self.__log = log
        self.config = config if config is not None else Config(log)
        self.cauchy_tolerance = self.config.get_float(
            Key.Wspace.cauchy_tolerance.key, Key.Wspace.cauchy_tolerance.default_value
        )
        self.factor_residual = self.config.get_float(
            Key.Wspace.factor_residual.key, Key.Wspace.factor_residual.default_value
        )

    # ---- limits -------------------------------------------------------------------------------

    @staticmethod
    def _extrapolate(params: np.ndarray, vectors: np.ndarray, degree: int) -> np.ndarray:
        scale = np.max(np.abs(params)) or 1.0
        vander = np.vander(params / scale, degree + 1, increasing=True)
        coeffs, *_ = np.linalg.lstsq(vander.astype(np.complex128), vectors, rcond=None)
        return coeffs[0]

    def sequence_limit(
        self, seq: Sequence[MapTuple], params: Optional[Sequence[float]] = None
    ) -> ConvergenceReport:
        """Cauchy-style limit of the normalized tuples, extrapolated to parameter 0.

        The default sampling parameter of the k-th element (k from 1) is 1/k.
        """
        if len(seq) < 3:
            raise TooShort(f"need at least 3 tuples, got {len(seq)}")
        degrees = {t.degree for t in seq}
        if len(degrees) > 1:
            raise MixedDegrees(f"sequence mixes degrees {sorted(degrees)}")
        if len({t.nvars for t in seq}) > 1:
            raise DimensionMismatch("sequence mixes projective dimensions")
        d = degrees.pop()
        params = np.asarray(
            params if params is not None else [1.0 / (k + 1) for k in range(len(seq))], dtype=float
        )
        if len(params) != len(seq):
            raise ValueError(f"{len(params)} parameters for {len(seq)} tuples")

        points = [WdPoint.from_tuple(seq[0])]
        for tup in seq[1:]:
            points.append(WdPoint.from_tuple(tup).aligned_to(points[-1]))
        fits = [(k, identity_distance(pt).distance) for k, pt in enumerate(points)] if d >= 1 else []

        tail_len = min(len(points), max(3, len(points) // 2))
        tail = np.array([pt.vector for pt in points[-tail_len:]])
        complex_field = any(pt.is_complex for pt in points)
        if all(np.array_equal(row, tail[0]) for row in tail):
            raw, uncertainty = tail[0], 0.0
        else:
            degree = min(4, tail_len - 1)
            raw = self._extrapolate(params[-tail_len:], tail, degree)
            lower = self._extrapolate(params[-tail_len:], tail, degree - 1)
            uncertainty = float(np.linalg.norm(raw - lower) / max(np.linalg.norm(raw), 1e-300))
        nvars = seq[0].nvars
        if np.linalg.norm(raw) < 1e-12:
            trace = [(k, wd_distance(pt, points[-1])) for k, pt in enumerate(points)]
            return ConvergenceReport(d, None, None, False, trace, Verdict.DIVERGES, fits, uncertainty)
        limit = WdPoint.from_vector(raw, nvars, d, complex_field).aligned_to(points[-1])
        trace = [(k, wd_distance(pt, limit)) for k, pt in enumerate(points)]
        spread = max(dist for _, dist in trace[-tail_len:])
        self.__log.debug(
            f"[WSPACE] tail spread {spread:.3e}, extrapolation uncertainty {uncertainty:.3e}"
        )

        if spread > self.cauchy_tolerance:
            self.__log.info(f"[WSPACE] no limit: tail spread {spread:.3e} > {self.cauchy_tolerance}")
            return ConvergenceReport(
                d, None, None, False, trace, Verdict.DIVERGES, fits, uncertainty
            )

        threshold = max(self.factor_residual, 10 * uncertainty)
        factor = self.near_common_factor(limit, threshold)
        reduced = factor.reduced if factor is not None else limit.map_tuple
        is_identity = reduced.degree == 1 and (
            identity_distance(WdPoint.from_tuple(reduced)).distance < threshold
        )
        verdict = Verdict.CONVERGES_TO_ID if is_identity else Verdict.CONVERGES_TO_OTHER
        self.__log.info(f"[WSPACE] sequence of {len(seq)} tuples: {verdict.value}")
        return ConvergenceReport(
            d=d,
            limit=limit,
            cofactor=factor.cofactor if factor is not None else None,
            reduced_limit_is_identity=is_identity,
            distance_trace=trace,
            verdict=verdict,
            identity_fit_trace=fits,
            limit_uncertainty=uncertainty,
            reduced_limit=reduced,
            factor_singular_value=factor.singular_value if factor is not None else None,
        )

    # ---- near-common factors ------------------------------------------------------------------

    def near_common_factor(self, point: WdPoint, threshold: float) -> Optional[NearFactor]:
        """Largest-degree H with point ~ H*R, via the syzygies G_i*R_j - G_j*R_i = 0."""
        nvars, d = point.nvars, point.degree
        size_d = len(monomials(nvars, d))
        comps = [point.vector[i * size_d : (i + 1) * size_d] for i in range(nvars)]
        pairs = [(i, j) for i in range(nvars) for j in range(i + 1, nvars)]
        for e in range(d - 1, 0, -1):
            k = d - e
            size_k = len(monomials(nvars, k))
            mults = [multiplication_matrix(c, nvars, d, k) for c in comps]
            blocks = []
            for i, j in pairs:
                row = np.zeros((mults[0].shape[0], nvars * size_k), dtype=np.complex128)
                row[:, j * size_k : (j + 1) * size_k] += mults[i]
                row[:, i * size_k : (i + 1) * size_k] -= mults[j]
                blocks.append(row)
            _, sing, vh = np.linalg.svd(np.vstack(blocks))
            smallest = float(sing[-1])
            self.__log.debugg(f"[WSPACE] cofactor degree {e}: smallest singular value {smallest:.3e}")
            if smallest >= threshold:
                continue
            quotient = vh[-1].conj()
            quotient = quotient / quotient[np.argmax(np.abs(quotient))]
            return self._recover_cofactor(point, quotient, e, k, smallest)
        return None

    def _recover_cofactor(
        self, point: WdPoint, quotient: np.ndarray, e: int, k: int, smallest: float
    ) -> NearFactor:
        nvars = point.nvars
        size_k = len(monomials(nvars, k))
        system = np.vstack(
            [
                multiplication_matrix(quotient[i * size_k : (i + 1) * size_k], nvars, k, e)
                for i in range(nvars)
            ]
        )
        h, *_ = np.linalg.lstsq(system, point.vector, rcond=None)
        h = h / h[np.argmax(np.abs(h))]
        domain = CC if point.is_complex else RR
        if not point.is_complex:
            h, quotient = h.real, quotient.real
        cofactor = HomogPoly(domain, nvars, e, dict(zip(monomials(nvars, e), h.tolist())))
        reduced = MapTuple.from_coefficient_vector(quotient, nvars, k, domain)
        return NearFactor(e, cofactor, reduced, smallest)

    # ---- degree growth ------------------------------------------------------------------------

    def degree_bounded_check(
        self, seq: Sequence[BirationalMap], threshold: Optional[int] = None
    ) -> DegreeCheck:
        """Unbounded when the degrees past ``threshold`` (default: the first degree) form a
        strictly increasing run of at least two maps that lasts to the end of the sequence."""
        trace = tuple(f.degree for f in seq)
        if not trace:
            return DegreeCheck(DegreeKind.BOUNDED, None, trace)
        threshold = trace[0] if threshold is None else threshold
        beyond = [i for i, deg in enumerate(trace) if deg > threshold]
        if beyond:
            run = trace[beyond[0] :]
            increasing = all(b > a for a, b in zip(run, run[1:]))
            if len(run) >= 2 and increasing:
                self.__log.info(f"[WSPACE] degrees grow without bound: {trace}")
                return DegreeCheck(DegreeKind.UNBOUNDED, None, trace)
        return DegreeCheck(DegreeKind.BOUNDED, max(trace), trace)

    def analyse_sequence(
        self,
        maps: Sequence[BirationalMap],
        params: Optional[Sequence[float]] = None,
        threshold: Optional[int] = None,
    ) -> ConvergenceReport:
        """Degree check first, then the limit of the tuples lifted to the common degree by x0."""
        check = self.degree_bounded_check(maps, threshold)
        if check.kind is DegreeKind.UNBOUNDED:
            return ConvergenceReport(
                d=max(check.trace),
                limit=None,
                cofactor=None,
                reduced_limit_is_identity=False,
                distance_trace=[],
                verdict=Verdict.DEGREE_UNBOUNDED,
                degree_trace=check.trace,
            )
        top = max(check.trace)
        lifted = [f.map_tuple.raise_degree(top - f.degree) for f in maps]
        report = self.sequence_limit(lifted, params)
        return replace(report, degree_trace=check.trace)
