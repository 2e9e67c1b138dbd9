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

from dataclasses import dataclass
from math import factorial, prod, sqrt

import numpy as np

from src.cremona.birmap.map_tuple import DimensionMismatch, MapTuple, ZeroTuple
from src.cremona.poly.domains import CC, RR
from src.cremona.poly.homog_poly import DegreeMismatch, HomogPoly, monomials


class WspaceError(Exception):
    """Base class for parameter-space diagnostic failures."""

    pass


@dataclass(frozen=True, eq=False)
class WdPoint:
    """Unit-norm representative of a point of W_d.

    ``vector`` lists the coefficients of every component over the degree-d monomials in
    graded-lex order; ``map_tuple`` carries the same numbers as polynomials over RR or CC.
    """

    map_tuple: MapTuple
    vector: np.ndarray

    @classmethod
    def from_tuple(cls, tup: MapTuple) -> "WdPoint":
        vector = tup.coefficient_vector()
        return cls.from_vector(vector, tup.nvars, tup.degree, complex_field=tup.domain.tag == "CC")

    @classmethod
    def from_vector(
        cls, vector: np.ndarray, nvars: int, degree: int, complex_field: bool = True
    ) -> "WdPoint":
        vector = np.asarray(vector, dtype=np.complex128)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ZeroTuple("cannot normalize the zero tuple")
        vector = vector / norm
        if not complex_field:
            vector = vector.real.astype(np.complex128)
        domain = CC if complex_field else RR
        return cls(MapTuple.from_coefficient_vector(vector, nvars, degree, domain), vector)

    @property
    def nvars(self) -> int:
        return self.map_tuple.nvars

    @property
    def degree(self) -> int:
        return self.map_tuple.degree

    @property
    def is_complex(self) -> bool:
        return self.map_tuple.domain.tag == "CC"

    def phase_to(self, other: "WdPoint") -> complex:
        """Unit scalar lam maximizing Re <other, lam * self>."""
        z = np.vdot(self.vector, other.vector)
        if abs(z) == 0:
            return 1.0 + 0j
        lam = z / abs(z)
        if not (self.is_complex or other.is_complex):
            lam = 1.0 if lam.real >= 0 else -1.0
        return complex(lam)

    def aligned_to(self, other: "WdPoint") -> "WdPoint":
        return WdPoint.from_vector(
            self.vector * self.phase_to(other), self.nvars, self.degree, self.is_complex
        )


def _check(a: WdPoint, b: WdPoint) -> None:
    if a.nvars != b.nvars:
        raise DimensionMismatch(f"P^{a.nvars - 1} tuple vs P^{b.nvars - 1} tuple")
    if a.degree != b.degree:
        raise DegreeMismatch(f"W_{a.degree} point vs W_{b.degree} point")


def wd_distance(a: WdPoint, b: WdPoint) -> float:
    """min over unit scalars lam of ||a - lam*b||."""
    _check(a, b)
    # fixed operand order keeps the result exactly symmetric
    if a.vector.tobytes() > b.vector.tobytes():
        a, b = b, a
    lam = b.phase_to(a)
    return float(np.linalg.norm(a.vector - lam * b.vector))


def embed_identity(cofactor: HomogPoly) -> WdPoint:
    """The point H*(x0, ..., xn) of W_{deg H + 1}."""
    tup = MapTuple.identity(cofactor.nvars - 1, cofactor.domain).times(cofactor)
    return WdPoint.from_tuple(tup)


def multiplication_matrix(coeffs: np.ndarray, nvars: int, a: int, b: int) -> np.ndarray:
    """Matrix of R -> G*R from degree-b coefficients to degree-(a+b) ones, G of degree a."""
    rows = {e: i for i, e in enumerate(monomials(nvars, a + b))}
    cols = monomials(nvars, b)
    matrix = np.zeros((len(rows), len(cols)), dtype=np.complex128)
    for i, ma in enumerate(monomials(nvars, a)):
        if coeffs[i] == 0:
            continue
        for j, mb in enumerate(cols):
            matrix[rows[tuple(x + y for x, y in zip(ma, mb))], j] += coeffs[i]
    return matrix


def identity_embedding_matrix(nvars: int, degree: int) -> np.ndarray:
    """Linear map from cofactor coefficients (degree d-1) to the vector of H*(x0, ..., xn)."""
    rows = {e: i for i, e in enumerate(monomials(nvars, degree))}
    cols = monomials(nvars, degree - 1)
    size = len(rows)
    matrix = np.zeros((nvars * size, len(cols)))
    for j, mono in enumerate(cols):
        for i in range(nvars):
            raised = list(mono)
            raised[i] += 1
            matrix[i * size + rows[tuple(raised)], j] = 1.0
    return matrix


def bombieri_weights(nvars: int, degree: int) -> np.ndarray:
    """sqrt(a! / d!) for every degree-d monomial x^a, repeated once per component.

    Coefficient vectors scaled by these weights have a norm that no unitary change of
    coordinates (on the source or on the target) alters.
    """
    scale = [
        sqrt(prod(factorial(e) for e in mono) / factorial(degree))
        for mono in monomials(nvars, degree)
    ]
    return np.tile(np.array(scale), nvars)


@dataclass(frozen=True)
class IdentityFit:
    distance: float
    cofactor: HomogPoly


def identity_distance(point: WdPoint, invariant: bool = False) -> IdentityFit:
    """Distance to the nearest tuple H*(x0, ..., xn), with that H found by least squares.

    With ``invariant`` the fit and the distance are taken in the Bombieri-weighted coordinates,
    where conjugating the tuple by a unitary linear map leaves the distance unchanged.
    """
    if point.degree < 1:
        raise DegreeMismatch("a degree-0 tuple is never a multiple of the identity")
    matrix = identity_embedding_matrix(point.nvars, point.degree).astype(np.complex128)
    vector = point.vector
    if invariant:
        weights = bombieri_weights(point.nvars, point.degree)
        matrix = matrix * weights[:, None]
        vector = vector * weights
    coeffs, *_ = np.linalg.lstsq(matrix, vector, rcond=None)
    domain = CC if point.is_complex else RR
    values = coeffs if point.is_complex else coeffs.real
    basis = monomials(point.nvars, point.degree - 1)
    cofactor = HomogPoly(domain, point.nvars, point.degree - 1, dict(zip(basis, values.tolist())))
    if cofactor.is_zero():
        return IdentityFit(float(np.sqrt(2.0)), cofactor)
    if not invariant:
        return IdentityFit(wd_distance(point, embed_identity(cofactor)), cofactor)
    weighted = WdPoint.from_vector(vector, point.nvars, point.degree, point.is_complex)
    fit = WdPoint.from_vector(matrix @ coeffs, point.nvars, point.degree, point.is_complex)
    return IdentityFit(wd_distance(weighted, fit), cofactor)
