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

"""Standard maps of P^n with their closed-form inverses."""

from fractions import Fraction
from math import factorial
from typing import Any, Optional, Sequence

from sympy import Matrix, Rational

from src.cremona.birmap.birational_map import BirationalMap, certified
from src.cremona.birmap.map_tuple import DimensionMismatch, MapTuple
from src.cremona.poly.domains import QQ, CoefficientDomain
from src.cremona.poly.homog_poly import HomogPoly


def _x(i: int, nvars: int = 3, domain: CoefficientDomain = QQ) -> HomogPoly:
    return HomogPoly.variable(nvars, i, domain)


def _build(components: Sequence[HomogPoly], domain: CoefficientDomain) -> BirationalMap:
    tup = MapTuple(components)
    if domain.tag == "QQ":
        return BirationalMap.from_tuple(tup)
    return BirationalMap(tup, reduced_as_given=True)


def _with_inverse(f: BirationalMap, inverse: BirationalMap, certify: bool) -> BirationalMap:
    return certified(f, inverse) if certify else f


def identity(n: int = 2, domain: CoefficientDomain = QQ) -> BirationalMap:
    return BirationalMap.identity(n, domain)


def embedded_identity(cofactor: HomogPoly) -> MapTuple:
    """The tuple (H*x0, ..., H*xn): the identity seen in W_{deg H + 1}."""
    return MapTuple.identity(cofactor.nvars - 1, cofactor.domain).times(cofactor)


def sigma(domain: CoefficientDomain = QQ, certify: bool = False) -> BirationalMap:
    """Standard quadratic involution [x1*x2 : x0*x2 : x0*x1]."""
    x0, x1, x2 = (_x(i, 3, domain) for i in range(3))
    f = _build([x1 * x2, x0 * x2, x0 * x1], domain)
    return _with_inverse(f, f, certify)


def linear(matrix: Sequence[Sequence[Any]], domain: CoefficientDomain = QQ) -> BirationalMap:
    """x -> M x, acting on coordinate vectors."""
    nvars = len(matrix)
    if any(len(row) != nvars for row in matrix):
        raise DimensionMismatch("linear maps need a square matrix")
    xs = [_x(i, nvars, domain) for i in range(nvars)]
    comps = []
    for row in matrix:
        comp = HomogPoly.zero(nvars, 1, domain)
        for coeff, x in zip(row, xs):
            comp = comp + x.scalar_mul(coeff)
        comps.append(comp)
    return _build(comps, domain)


def linear_inverse_matrix(matrix: Sequence[Sequence[Any]]) -> list[list[Fraction]]:
    """Exact inverse of a rational matrix."""
    inv = Matrix(
        [[Rational(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in matrix]
    ).inv()
    return [[Fraction(int(v.p), int(v.q)) for v in inv.row(i)] for i in range(inv.rows)]


def linear_with_inverse(matrix: Sequence[Sequence[Any]], certify: bool = False) -> BirationalMap:
    f = linear(matrix)
    return _with_inverse(f, linear(linear_inverse_matrix(matrix)), certify)


def de_jonquieres(
    a: HomogPoly, b: HomogPoly, domain: CoefficientDomain = QQ, certify: bool = False
) -> BirationalMap:
    """[x0*B : x1*B : x2*B + x0*A] with A, B forms of equal degree in x0, x1.

    In the chart x0 = 1 this is (x1, x2) -> (x1, x2 + A(1, x1) / B(1, x1)); the inverse swaps A
    for -A.
    """
    if a.nvars != 3 or b.nvars != 3:
        raise DimensionMismatch("de Jonquieres maps act on P^2")
    if any(e[2] for e in a.terms) or any(e[2] for e in b.terms):
        raise ValueError("A and B must not involve x2")
    if b.is_zero():
        raise ValueError("B must be nonzero")
    a = a.with_degree(b.degree) if a.is_zero() else a
    x0, x1, x2 = (_x(i, 3, domain) for i in range(3))
    f = _build([x0 * b, x1 * b, x2 * b + x0 * a], domain)
    if not certify:
        return f
    return certified(f, de_jonquieres(-a, b, domain))


def translation(vector: Sequence[Any], domain: CoefficientDomain = QQ, certify: bool = False):
    """Chart translation x_i -> x_i + v_i on x0 = 1: [x0 : x1 + v1*x0 : ... ]."""
    nvars = len(vector) + 1
    x0 = _x(0, nvars, domain)
    comps = [x0] + [_x(i + 1, nvars, domain) + x0.scalar_mul(v) for i, v in enumerate(vector)]
    f = _build(comps, domain)
    if not certify:
        return f
    return certified(f, translation([-Fraction(v) for v in vector], domain))


def pointwise_failure(
    m: int, coefficient: Optional[Any] = None, domain: CoefficientDomain = QQ, certify: bool = False
) -> BirationalMap:
    """f_m = [x0^2 : x0*x1 + a_m*x2^2 : x0*x2] with a_m = 1/m unless given."""
    a = Fraction(1, m) if coefficient is None else coefficient
    x0, x1, x2 = (_x(i, 3, domain) for i in range(3))
    f = _build([x0 * x0, x0 * x1 + (x2 * x2).scalar_mul(a), x0 * x2], domain)
    if not certify:
        return f
    return certified(f, pointwise_failure(m, -a, domain))


def factorial_family(m: int, domain: CoefficientDomain = QQ) -> BirationalMap:
    """[x0^m : x0^(m-1)*x1 + x2^m/m! : x0^(m-1)*x2], of degree exactly m."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    x0, x1, x2 = (_x(i, 3, domain) for i in range(3))
    head = x0 ** (m - 1)
    return _build(
        [head * x0, head * x1 + (x2**m).scalar_mul(Fraction(1, factorial(m))), head * x2], domain
    )


def moving_line_conjugator(m: int, domain: CoefficientDomain = QQ) -> BirationalMap:
    """phi_m = [x0 + x1/m : x1 : x2], sending {x0 + x1/m = 0} to {x0 = 0}."""
    return linear([[1, Fraction(1, m), 0], [0, 1, 0], [0, 0, 1]], domain)


def oscillating_base(
    t: Any, domain: CoefficientDomain = QQ, coefficient: Optional[Any] = None
) -> BirationalMap:
    """f_t = [x0^2 : x0*x1 : x0*x2 + c*x1^2] with c = t(1-t) unless given; the identity at t = 0, 1.

    Negating c gives the inverse.
    """
    x0, x1, x2 = (_x(i, 3, domain) for i in range(3))
    c = t * (1 - t) if coefficient is None else coefficient
    return _build([x0 * x0, x0 * x1, x0 * x2 + (x1 * x1).scalar_mul(c)], domain)
