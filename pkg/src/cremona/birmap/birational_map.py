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
from typing import Any, Optional, Sequence

import numpy as np

from src.cremona.birmap.map_tuple import BirmapError, DimensionMismatch, MapTuple
from src.cremona.poly.domains import CoefficientDomain
from src.cremona.poly.gcd import UnsupportedDomain, exact_divide, gcd_many
from src.cremona.poly.homog_poly import HomogPoly


class ZeroVector(BirmapError):
    """Raised when a point has only zero coordinates."""

    pass


class DegenerateLine(BirmapError):
    """Raised when the two points spanning a line coincide projectively."""

    pass


class NotCertified(BirmapError):
    """Raised when a claimed inverse fails certification."""

    pass


class OrderKind(Enum):
    FINITE = "Finite"
    EXCEEDS_BOUND = "ExceedsBound"


class EvalKind(Enum):
    POINT = "Point"
    INDETERMINATE = "Indeterminate"


class ContractKind(Enum):
    CONTRACTS_TO = "ContractsTo"
    NOT_CONTRACTED = "NotContracted"


@dataclass(frozen=True)
class OrderResult:
    kind: OrderKind
    order: Optional[int] = None
    bound: int = 0
    degree_trace: tuple[int, ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.kind is OrderKind.FINITE


@dataclass(frozen=True)
class EvalResult:
    kind: EvalKind
    point: Optional[tuple] = None

    @property
    def is_point(self) -> bool:
        return self.kind is EvalKind.POINT


@dataclass(frozen=True)
class ContractResult:
    kind: ContractKind
    point: Optional[tuple] = None
    coefficient_matrix: list = field(default_factory=list, compare=False)

    @property
    def contracts(self) -> bool:
        return self.kind is ContractKind.CONTRACTS_TO


def normalize_point(coords: Sequence[Any], domain: CoefficientDomain) -> tuple:
    """Exact fields: last nonzero coordinate 1. Floats: unit norm, first nonzero coordinate real > 0."""
    coords = [domain.convert(c) for c in coords]
    if domain.is_float:
        vec = np.asarray(coords, dtype=np.complex128)
        norm = np.linalg.norm(vec)
        if norm <= domain.tolerance:
            raise ZeroVector(f"zero vector {coords}")
        vec = vec / norm
        lead = next(c for c in vec if abs(c) > domain.tolerance)
        vec = vec * (np.conj(lead) / abs(lead))
        if domain.tag == "RR":
            return tuple(float(c.real) for c in vec)
        return tuple(complex(c) for c in vec)
    live = [c for c in coords if not domain.is_zero(c)]
    if not live:
        raise ZeroVector(f"zero vector {coords}")
    last = live[-1]
    return tuple(domain.zero() if domain.is_zero(c) else c / last for c in coords)


def points_equal(a: Sequence[Any], b: Sequence[Any], domain: CoefficientDomain) -> bool:
    pa, pb = normalize_point(a, domain), normalize_point(b, domain)
    return all(domain.is_zero(x - y) for x, y in zip(pa, pb))


class BirationalMap:
    """A map tuple taken as an element of Bir(P^n).

    Over QQ the stored tuple has constant gcd (it went through ``reduce``); over float and
    p-adic fields it is kept as given and ``reduced_as_given`` is set. A certified inverse is
    attached only when built through ``certified``.
    """

    __slots__ = ("_tuple", "_reduced_as_given", "_certified_inverse")

    def __init__(
        self,
        tup: MapTuple,
        reduced_as_given: bool = False,
        certified_inverse: Optional["BirationalMap"] = None,
    ):
        object.__setattr__(self, "_tuple", tup)
        object.__setattr__(self, "_reduced_as_given", reduced_as_given)
        object.__setattr__(self, "_certified_inverse", certified_inverse)

    def __setattr__(self, key, value):
        raise AttributeError("BirationalMap is immutable")

    @classmethod
    def from_tuple(cls, tup: MapTuple) -> "BirationalMap":
        """Reduce over QQ; keep the tuple as given over other fields."""
        if tup.domain.is_exact:
            return reduce(tup)[0]
        return cls(tup.normalized(), reduced_as_given=True)

    @classmethod
    def from_components(cls, components: Sequence[HomogPoly]) -> "BirationalMap":
        return cls.from_tuple(MapTuple(components))

    @classmethod
    def identity(cls, n: int, domain: CoefficientDomain) -> "BirationalMap":
        return cls(MapTuple.identity(n, domain), reduced_as_given=not domain.is_exact)

    @property
    def map_tuple(self) -> MapTuple:
        return self._tuple

    @property
    def components(self) -> tuple[HomogPoly, ...]:
        return self._tuple.components

    @property
    def degree(self) -> int:
        return self._tuple.degree

    @property
    def n(self) -> int:
        return self._tuple.n

    @property
    def domain(self) -> CoefficientDomain:
        return self._tuple.domain

    @property
    def reduced_as_given(self) -> bool:
        return self._reduced_as_given

    @property
    def certified_inverse(self) -> Optional["BirationalMap"]:
        return self._certified_inverse

    def is_identity(self) -> bool:
        return self.degree == 1 and self._tuple == MapTuple.identity(self.n, self.domain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BirationalMap):
            return NotImplemented
        return self._tuple == other._tuple

    __hash__ = None

    def to_domain(self, domain: CoefficientDomain) -> "BirationalMap":
        return BirationalMap(self._tuple.to_domain(domain), reduced_as_given=not domain.is_exact)

    def to_text(self) -> str:
        return self._tuple.to_text()

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"BirationalMap[{self.domain}]({self.to_text()})"

    # ---- operations as methods ----------------------------------------------------------------

    def compose(self, other: "BirationalMap") -> "BirationalMap":
        return compose(self, other)

    def order(self, bound: int) -> OrderResult:
        return order(self, bound)

    def eval_point(self, point: Sequence[Any]) -> EvalResult:
        return eval_point(self, point)

    def jacobian_det(self) -> HomogPoly:
        return jacobian_det(self)

    def contract_image(self, a: Sequence[Any], b: Sequence[Any]) -> ContractResult:
        return contract_image(self, (a, b))


def reduce(tup: MapTuple) -> tuple[BirationalMap, HomogPoly]:
    """Split off the common factor: ``tup = cofactor * candidate`` up to a scalar."""
    if not tup.domain.is_exact or tup.domain.tag != "QQ":
        raise UnsupportedDomain(f"reduction needs QQ coefficients, got {tup.domain}")
    cofactor = gcd_many([c for c in tup.components if not c.is_zero()])
    reduced_degree = tup.degree - cofactor.degree
    quotients = [
        HomogPoly.zero(tup.nvars, reduced_degree) if c.is_zero() else exact_divide(c, cofactor)
        for c in tup.components
    ]
    return BirationalMap(MapTuple(quotients).normalized()), cofactor


def compose(f: BirationalMap, g: BirationalMap) -> BirationalMap:
    """f after g. Exact fields reduce the substituted tuple; floats keep it flagged as given."""
    if f.n != g.n:
        raise DimensionMismatch(f"cannot compose a map of P^{f.n} with a map of P^{g.n}")
    raw = f.map_tuple.substitute(g.map_tuple)
    if f.domain.tag == "QQ":
        return reduce(raw)[0]
    return BirationalMap(raw.normalized(), reduced_as_given=True)


def order(f: BirationalMap, bound: int) -> OrderResult:
    """Smallest k <= bound with f^k = id, iterating with a reduction after every step."""
    if f.domain.tag != "QQ":
        raise UnsupportedDomain(f"order needs QQ coefficients, got {f.domain}")
    if bound < 1:
        raise ValueError(f"order bound must be at least 1, got {bound}")
    iterate = f
    degrees = []
    for k in range(1, bound + 1):
        degrees.append(iterate.degree)
        if iterate.is_identity():
            return OrderResult(OrderKind.FINITE, k, bound, tuple(degrees))
        if k < bound:
            iterate = compose(f, iterate)
    return OrderResult(OrderKind.EXCEEDS_BOUND, None, bound, tuple(degrees))


def eval_point(f: BirationalMap, point: Sequence[Any]) -> EvalResult:
    domain = f.domain
    if len(point) != f.n + 1:
        raise DimensionMismatch(f"point has {len(point)} coordinates, map acts on P^{f.n}")
    p = normalize_point(point, domain)
    values = f.map_tuple.evaluate(p)
    if all(domain.is_zero(v) for v in values):
        return EvalResult(EvalKind.INDETERMINATE)
    return EvalResult(EvalKind.POINT, normalize_point(values, domain))


def _determinant(matrix: list[list[HomogPoly]]) -> HomogPoly:
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = None
    for j in range(size):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * _determinant(minor)
        term = -term if j % 2 else term
        total = term if total is None else total + term
    if total is None:
        return matrix[0][0]
    return total


def jacobian_det(f: BirationalMap) -> HomogPoly:
    """det(d f_i / d x_j), homogeneous of degree (n+1)(d-1)."""
    nvars = f.n + 1
    target = nvars * (f.degree - 1)
    if f.degree == 0:
        return HomogPoly.zero(nvars, 0, f.domain)
    matrix = [[c.partial_derivative(j) for j in range(nvars)] for c in f.components]
    det = _determinant(matrix)
    return det.with_degree(target) if det.is_zero() else det


def _line_forms(a: Sequence[Any], b: Sequence[Any], domain: CoefficientDomain) -> list[HomogPoly]:
    return [
        HomogPoly(domain, 2, 1, {(1, 0): domain.convert(x), (0, 1): domain.convert(y)})
        for x, y in zip(a, b)
    ]


def contract_image(f: BirationalMap, line: tuple[Sequence[Any], Sequence[Any]]) -> ContractResult:
    """Restrict f to the line s*a + u*b of P^2 and test whether its image is one point."""
    if f.n != 2:
        raise DimensionMismatch(f"line contraction is implemented on P^2, map acts on P^{f.n}")
    a, b = line
    if len(a) != 3 or len(b) != 3:
        raise DimensionMismatch("line points need three coordinates")
    domain = f.domain
    span = [[domain.convert(x) for x in a], [domain.convert(y) for y in b]]
    minors = [span[0][i] * span[1][j] - span[0][j] * span[1][i] for i, j in ((0, 1), (0, 2), (1, 2))]
    if all(domain.is_zero(m) for m in minors):
        raise DegenerateLine(f"{a} and {b} span no line")

    forms = [c.substitute(_line_forms(a, b, domain)) for c in f.components]
    d = f.degree
    matrix = [[form.coefficient((d - k, k)) for k in range(d + 1)] for form in forms]
    if domain.is_float:
        scale = max(abs(x) for row in matrix for x in row)
        if scale <= domain.tolerance:
            return ContractResult(ContractKind.NOT_CONTRACTED, coefficient_matrix=matrix)
        matrix = [[x / scale for x in row] for row in matrix]
    if all(domain.is_zero(x) for row in matrix for x in row):
        return ContractResult(ContractKind.NOT_CONTRACTED, coefficient_matrix=matrix)
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(d + 1):
                for l in range(k + 1, d + 1):
                    if not domain.is_zero(matrix[i][k] * matrix[j][l] - matrix[i][l] * matrix[j][k]):
                        return ContractResult(ContractKind.NOT_CONTRACTED, coefficient_matrix=matrix)
    if domain.is_float:
        column = max(range(d + 1), key=lambda k: max(abs(matrix[i][k]) for i in range(3)))
    else:
        column = next(k for k in range(d + 1) if any(not domain.is_zero(r[k]) for r in matrix))
    image = normalize_point([matrix[i][column] for i in range(3)], domain)
    return ContractResult(ContractKind.CONTRACTS_TO, image, matrix)


def certify_inverse(f: BirationalMap, g: BirationalMap) -> bool:
    """True iff f after g and g after f both reduce to the identity."""
    if f.domain.tag != "QQ" or g.domain.tag != "QQ":
        raise UnsupportedDomain("inverse certification needs QQ coefficients")
    if f.n != g.n:
        return False
    return compose(f, g).is_identity() and compose(g, f).is_identity()


def certified(f: BirationalMap, g: BirationalMap) -> BirationalMap:
    """Copy of f carrying g as its certified inverse; raises NotCertified if the check fails."""
    if not certify_inverse(f, g):
        raise NotCertified(f"{g} is not an inverse of {f}")
    return BirationalMap(f.map_tuple, f.reduced_as_given, certified_inverse=g)
