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
from fractions import Fraction
from typing import Any, Mapping, Optional, Sequence, Union

from src.cremona.birmap.birational_map import BirationalMap, compose
from src.cremona.padic.padic_num import PadicError, PadicNum, PrecisionExhausted
from src.cremona.poly.homog_poly import HomogPoly

Exponent = tuple[int, ...]


class DenominatorNotUnit(PadicError):
    """Raised when the chart denominator is not a unit constant modulo p."""

    pass


class CoefficientEscapesR(PadicError):
    """Raised when a chart expansion has a coefficient of norm greater than 1."""

    pass


class TruncatedSeries:
    """Power series in ``nvars`` affine variables over Q_p, cut at total degree ``T``.

    Exact zero coefficients are dropped; zeros known only to some absolute precision are kept
    so that norms stay honest about what is not known.
    """

    __slots__ = ("p", "N", "nvars", "T", "_coeffs")

    def __init__(self, p: int, N: int, nvars: int, T: int, coeffs: Mapping[Exponent, Any] = None):
        self.p, self.N, self.nvars, self.T = p, N, nvars, T
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars or sum(exps) > T:
                continue
            if not isinstance(c, PadicNum):
                c = PadicNum.from_rational(Fraction(c), p, N)
            if exps in clean:
                c = clean[exps] + c
            clean[exps] = c
        self._coeffs = {e: c for e, c in clean.items() if not c.is_exact_zero}

    @classmethod
    def constant(cls, p: int, N: int, nvars: int, T: int, value: Any) -> "TruncatedSeries":
        return cls(p, N, nvars, T, {(0,) * nvars: value})

    @classmethod
    def variable(cls, p: int, N: int, nvars: int, T: int, index: int) -> "TruncatedSeries":
        exps = [0] * nvars
        exps[index] = 1
        return cls(p, N, nvars, T, {tuple(exps): 1})

    @classmethod
    def from_homog(cls, f: HomogPoly, chart: int, p: int, N: int, T: int) -> "TruncatedSeries":
        """Dehomogenize f by x_chart = 1."""
        coeffs = {}
        for exps, c in f.terms.items():
            key = exps[:chart] + exps[chart + 1 :]
            coeffs[key] = c if isinstance(c, PadicNum) else PadicNum.from_rational(Fraction(c), p, N)
        return cls(p, N, f.nvars - 1, T, coeffs)

    @property
    def coeffs(self) -> Mapping[Exponent, PadicNum]:
        return dict(self._coeffs)

    def coefficient(self, exps: Sequence[int]) -> PadicNum:
        return self._coeffs.get(tuple(exps), PadicNum.zero(self.p, self.N))

    def constant_term(self) -> PadicNum:
        return self.coefficient((0,) * self.nvars)

    def nonconstant_part(self) -> "TruncatedSeries":
        zero = (0,) * self.nvars
        return self._like({e: c for e, c in self._coeffs.items() if e != zero})

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self._coeffs.values())

    def is_constant(self) -> bool:
        zero = (0,) * self.nvars
        return all(c.is_zero for e, c in self._coeffs.items() if e != zero)

    def _like(self, coeffs: Mapping[Exponent, PadicNum]) -> "TruncatedSeries":
        return TruncatedSeries(self.p, self.N, self.nvars, self.T, coeffs)

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise PadicError("series over different primes or variable counts")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        coeffs = dict(self._coeffs)
        for e, c in other._coeffs.items():
            coeffs[e] = coeffs[e] + c if e in coeffs else c
        return TruncatedSeries(self.p, self.N, self.nvars, min(self.T, other.T), coeffs)

    def __neg__(self) -> "TruncatedSeries":
        return self._like({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: Union["TruncatedSeries", PadicNum, int, Fraction]):
        if not isinstance(other, TruncatedSeries):
            return self._like({e: c * other for e, c in self._coeffs.items()})
        self._check(other)
        T = min(self.T, other.T)
        coeffs: dict[Exponent, PadicNum] = {}
        for ea, ca in self._coeffs.items():
            for eb, cb in other._coeffs.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if sum(e) > T:
                    continue
                coeffs[e] = coeffs[e] + ca * cb if e in coeffs else ca * cb
        return TruncatedSeries(self.p, self.N, self.nvars, T, coeffs)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncatedSeries":
        result = TruncatedSeries.constant(self.p, self.N, self.nvars, self.T, 1)
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "TruncatedSeries":
        """1/(c + E) = (1/c) * sum_k (-E/c)^k, for c a unit and E in p*R<x>."""
        c = self.constant_term()
        if not c.is_unit():
            raise DenominatorNotUnit(f"constant term {c} is not a p-adic unit")
        tail = self.nonconstant_part()
        if not tail.is_zero() and gauss_norm(tail) >= 1:
            raise DenominatorNotUnit("denominator is not a unit constant modulo p")
        ratio = tail * (-1 / c)
        total = TruncatedSeries.constant(self.p, self.N, self.nvars, self.T, 1)
        power = total
        # each power gains at least one p-adic digit, N terms reach the working precision
        for _ in range(self.N):
            power = power * ratio
            if power.is_zero():
                break
            total = total + power
        return total * (1 / c)

    def evaluate(self, point: Sequence[Any]) -> PadicNum:
        total = PadicNum.zero(self.p, self.N)
        for exps, c in self._coeffs.items():
            term = c
            for x, k in zip(point, exps):
                if k:
                    term = term * x**k
            total = total + term
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for exps, c in sorted(self._coeffs.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True):
            if c.is_zero:
                continue
            mono = "*".join(f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(exps) if k)
            parts.append(f"({c.to_text()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncatedSeries[p={self.p}, T={self.T}]({self.to_text()})"


def gauss_norm(f: Union[TruncatedSeries, HomogPoly]) -> Fraction:
    """sup of |a_I| over the coefficients, as an exact power of p (or 0).

    A coefficient known only as O(p^A) bounds its norm by p^-A; if such a bound could exceed
    the supremum of the known coefficients the norm is undetermined.
    """
    coeffs = f.coeffs.values() if isinstance(f, TruncatedSeries) else f.terms.values()
    known = Fraction(0)
    bounds = []
    for c in coeffs:
        if not isinstance(c, PadicNum):
            raise PadicError(f"gauss norm needs p-adic coefficients, got {c!r}")
        if c.is_zero:
            if c.precision is not None:
                if c.precision < 1:
                    raise PrecisionExhausted(f"coefficient known only modulo {c.p}^{c.precision}")
                bounds.append(Fraction(1, c.p**c.precision))
            continue
        known = max(known, c.norm())
    if known > 0 and any(b > known for b in bounds):
        raise PrecisionExhausted(f"norm {known} is below the precision floor {max(bounds)}")
    return known


@dataclass(frozen=True)
class TateChartMap:
    """Chart form of a map as n truncated series with coefficients in the p-adic unit ball."""

    components: tuple[TruncatedSeries, ...]
    p: int
    N: int
    T: int
    source: Optional[BirationalMap]
    chart: int
    base_point: tuple
    denominator_at_base: PadicNum

    @property
    def nvars(self) -> int:
        return len(self.components)

    def identity_components(self) -> list[TruncatedSeries]:
        return [
            TruncatedSeries.variable(self.p, self.N, self.nvars, self.T, i) for i in range(self.nvars)
        ]

    def difference_from_identity(self) -> list[TruncatedSeries]:
        return [c - x for c, x in zip(self.components, self.identity_components())]

    def distance_to_identity(self) -> Fraction:
        """max_i ||f'_i - x_i||."""
        return max(gauss_norm(d) for d in self.difference_from_identity())

    def norms(self) -> list[Fraction]:
        return [gauss_norm(c) for c in self.components]


def chart_normalize(
    f: BirationalMap,
    p: int,
    N: int = 12,
    T: int = 16,
    alpha: Optional[BirationalMap] = None,
    alpha_inv: Optional[BirationalMap] = None,
    chart: int = 0,
    base_point: Optional[Sequence[Any]] = None,
) -> TateChartMap:
    """Expand alpha^-1 . f . alpha in the chart x_chart = 1 as truncated series over Z_p."""
    g = f
    if alpha is not None:
        if alpha_inv is None:
            raise ValueError("conjugating by alpha needs its inverse")
        g = compose(alpha_inv, compose(f, alpha))
    comps = g.components
    n = g.n
    base = tuple(base_point) if base_point is not None else (1,) * n
    if len(base) != n:
        raise ValueError(f"base point needs {n} coordinates")

    denominator = TruncatedSeries.from_homog(comps[chart], chart, p, N, T)
    base_p = [PadicNum.from_rational(Fraction(x), p, N) for x in base]
    at_base = denominator.evaluate(base_p)
    if at_base.is_zero or not at_base.is_unit():
        raise DenominatorNotUnit(f"denominator is {at_base} at the base point, not a unit")
    inverse = denominator.inverse()
    series = []
    for j, comp in enumerate(comps):
        if j == chart:
            continue
        s = TruncatedSeries.from_homog(comp, chart, p, N, T) * inverse
        for exps, c in s.coeffs.items():
            if not c.is_zero and c.valuation < 0:
                raise CoefficientEscapesR(f"coefficient {c} of x^{exps} has norm {c.norm()} > 1")
        series.append(s)
    return TateChartMap(tuple(series), p, N, T, f, chart, base, at_base)
