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

from fractions import Fraction
from functools import reduce
from typing import Sequence

from sympy import QQ as SYMPY_QQ
from sympy import Poly, Rational, symbols
from sympy.polys.polyconfig import using
from sympy.polys.polyerrors import ExactQuotientFailed

from src.cremona.poly.domains import RationalDomain
from src.cremona.poly.homog_poly import HomogPoly, PolyError, VarCountMismatch


class UnsupportedDomain(PolyError):
    """Raised when an exact-only operation receives float or p-adic coefficients."""

    pass


class NotDivisible(PolyError):
    """Raised by exact_divide when the divisor leaves a remainder."""

    pass


def _require_rational(*polys: HomogPoly) -> None:
    for f in polys:
        if not isinstance(f.domain, RationalDomain):
            raise UnsupportedDomain(f"exact gcd/division needs QQ coefficients, got {f.domain}")
    nvars = {f.nvars for f in polys}
    if len(nvars) > 1:
        raise VarCountMismatch(f"polynomials mix {sorted(nvars)} variables")


def _gens(nvars: int):
    # reversed so that the last variable is the main (outermost) one of the recursive representation
    return tuple(reversed(symbols(f"x0:{nvars}")))


def _to_sympy(f: HomogPoly) -> Poly:
    data = {
        tuple(reversed(exps)): Rational(c.numerator, c.denominator) for exps, c in f.terms.items()
    }
    return Poly.from_dict(data, *_gens(f.nvars), domain=SYMPY_QQ)


def _from_sympy(g: Poly, nvars: int) -> HomogPoly:
    terms = {}
    for monom, coeff in g.terms():
        if coeff == 0:
            continue
        terms[tuple(reversed(monom))] = Fraction(int(coeff.p), int(coeff.q))
    if not terms:
        return HomogPoly.zero(nvars)
    degree = sum(next(iter(terms)))
    return HomogPoly(RationalDomain(), nvars, degree, terms)


def normalize_monic(f: HomogPoly) -> HomogPoly:
    """Scale so the graded-lex leading coefficient is 1."""
    if f.is_zero():
        return f
    return f.scalar_mul(1 / f.leading_coefficient())


def poly_gcd(a: HomogPoly, b: HomogPoly) -> HomogPoly:
    """Monic greatest common divisor over QQ; gcd(a, 0) is a made monic."""
    _require_rational(a, b)
    if b.is_zero():
        return normalize_monic(a)
    if a.is_zero():
        return normalize_monic(b)
    with using(USE_HEU_GCD=False):
        g = _to_sympy(a).gcd(_to_sympy(b))
    return normalize_monic(_from_sympy(g, a.nvars))


def gcd_many(polys: Sequence[HomogPoly]) -> HomogPoly:
    if not polys:
        raise ValueError("gcd of an empty list")
    return reduce(poly_gcd, polys[1:], normalize_monic(polys[0]))


def exact_divide(a: HomogPoly, b: HomogPoly) -> HomogPoly:
    """Quotient a / b over QQ; raises NotDivisible when b does not divide a."""
    _require_rational(a, b)
    if b.is_zero():
        raise NotDivisible("division by the zero polynomial")
    if a.is_zero():
        return HomogPoly.zero(a.nvars, max(a.degree - b.degree, 0))
    try:
        q = _to_sympy(a).exquo(_to_sympy(b))
    except ExactQuotientFailed:
        raise NotDivisible(f"{b} does not divide {a}")
    return _from_sympy(q, a.nvars).with_degree(a.degree - b.degree)


def divides(b: HomogPoly, a: HomogPoly) -> bool:
    try:
        exact_divide(a, b)
        return True
    except NotDivisible:
        return False
