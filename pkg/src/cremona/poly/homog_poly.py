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

from functools import reduce
from types import MappingProxyType
from typing import Any, Iterator, Mapping, Optional, Sequence

import numpy as np

from src.cremona.poly.domains import QQ, CoefficientDomain

Exponent = tuple[int, ...]


class PolyError(Exception):
    """Base class for polynomial arithmetic failures."""

    pass


class DegreeMismatch(PolyError):
    """Raised when homogeneous polynomials of different degrees are combined additively."""

    pass


class VarCountMismatch(PolyError):
    """Raised when polynomials in different numbers of variables are combined."""

    pass


class ArityMismatch(PolyError):
    """Raised when a substitution or a point does not have one entry per variable."""

    pass


class IndexOutOfRange(PolyError):
    """Raised for a variable index outside 0..nvars-1."""

    pass


class DomainMismatch(PolyError):
    """Raised when polynomials over different coefficient domains are combined."""

    pass


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given degree, in graded-lex order with x0 > x1 > ... first."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for head in range(degree, -1, -1):
        for tail in monomials(nvars - 1, degree - head):
            out.append((head,) + tail)
    return out


class HomogPoly:
    """Homogeneous polynomial in ``nvars`` variables over a coefficient domain.

    Terms map exponent vectors summing to ``degree`` to nonzero coefficients. The zero polynomial
    has no terms and compares equal to the zero polynomial of any degree. Instances are immutable.
    """

    __slots__ = ("_domain", "_nvars", "_degree", "_terms")

    def __init__(
        self,
        domain: CoefficientDomain,
        nvars: int,
        degree: int,
        terms: Optional[Mapping[Exponent, Any]] = None,
    ):
        if nvars < 1:
            raise VarCountMismatch(f"need at least one variable, got {nvars}")
        if degree < 0:
            raise DegreeMismatch(f"negative degree {degree}")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise VarCountMismatch(f"exponent {exps} has {len(exps)} entries, expected {nvars}")
            if any(e < 0 for e in exps) or sum(exps) != degree:
                raise DegreeMismatch(f"exponent {exps} is not of degree {degree}")
            value = domain.convert(coeff)
            if exps in clean:
                value = clean[exps] + value
            clean[exps] = value
        object.__setattr__(self, "_domain", domain)
        object.__setattr__(self, "_nvars", nvars)
        object.__setattr__(self, "_degree", degree)
        object.__setattr__(
            self, "_terms", {e: c for e, c in clean.items() if not domain.is_zero(c)}
        )

    def __setattr__(self, key, value):
        raise AttributeError("HomogPoly is immutable")

    # ---- constructors -------------------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, degree: int = 0, domain: CoefficientDomain = QQ) -> "HomogPoly":
        return cls(domain, nvars, degree)

    @classmethod
    def constant(cls, nvars: int, value: Any, domain: CoefficientDomain = QQ) -> "HomogPoly":
        return cls(domain, nvars, 0, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int, domain: CoefficientDomain = QQ) -> "HomogPoly":
        if not 0 <= index < nvars:
            raise IndexOutOfRange(f"variable x{index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(domain, nvars, 1, {tuple(exps): 1})

    @classmethod
    def monomial(
        cls, exps: Sequence[int], coeff: Any = 1, domain: CoefficientDomain = QQ
    ) -> "HomogPoly":
        return cls(domain, len(exps), sum(exps), {tuple(exps): coeff})

    # ---- accessors ----------------------------------------------------------------------------

    @property
    def domain(self) -> CoefficientDomain:
        return self._domain

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def terms(self) -> Mapping[Exponent, Any]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return self._degree == 0 or self.is_zero()

    def coefficient(self, exps: Sequence[int]) -> Any:
        return self._terms.get(tuple(exps), self._domain.zero())

    def sorted_terms(self) -> list[tuple[Exponent, Any]]:
        """Terms in graded-lex order, x0 > x1 > ..., leading term first."""
        return sorted(self._terms.items(), key=lambda item: item[0], reverse=True)

    def leading_term(self) -> tuple[Exponent, Any]:
        if self.is_zero():
            raise PolyError("the zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def leading_coefficient(self) -> Any:
        return self.leading_term()[1]

    def __iter__(self) -> Iterator[tuple[Exponent, Any]]:
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self._terms)

    # ---- arithmetic ---------------------------------------------------------------------------

    def _check_compatible(self, other: "HomogPoly") -> None:
        if self._nvars != other._nvars:
            raise VarCountMismatch(f"{self._nvars} variables vs {other._nvars}")
        if self._domain != other._domain:
            raise DomainMismatch(f"{self._domain} vs {other._domain}")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check_compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self._degree != other._degree:
            raise DegreeMismatch(f"cannot add degree {self._degree} and degree {other._degree}")
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms[exps] + coeff if exps in terms else coeff
        return HomogPoly(self._domain, self._nvars, self._degree, terms)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(
            self._domain, self._nvars, self._degree, {e: -c for e, c in self._terms.items()}
        )

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, value: Any) -> "HomogPoly":
        value = self._domain.convert(value)
        return HomogPoly(
            self._domain, self._nvars, self._degree, {e: c * value for e, c in self._terms.items()}
        )

    def __mul__(self, other) -> "HomogPoly":
        if not isinstance(other, HomogPoly):
            try:
                return self.scalar_mul(other)
            except Exception:
                return NotImplemented
        self._check_compatible(other)
        terms: dict[Exponent, Any] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                terms[exps] = terms[exps] + ca * cb if exps in terms else ca * cb
        return HomogPoly(self._domain, self._nvars, self._degree + other._degree, terms)

    def __rmul__(self, other) -> "HomogPoly":
        return self.scalar_mul(other)

    def __pow__(self, k: int) -> "HomogPoly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = HomogPoly.constant(self._nvars, 1, self._domain)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self._nvars != other._nvars or self._domain != other._domain:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self._degree != other._degree:
            return False
        return (self - other).is_zero()

    __hash__ = None

    # ---- composition and evaluation -----------------------------------------------------------

    def substitute(self, maps: Sequence["HomogPoly"]) -> "HomogPoly":
        """f(maps[0], ..., maps[n]); all maps share nvars and degree e, result has degree d*e."""
        if len(maps) != self._nvars:
            raise ArityMismatch(f"substitution needs {self._nvars} polynomials, got {len(maps)}")
        nvars, domain = maps[0].nvars, maps[0].domain
        degrees = {m.degree for m in maps if not m.is_zero()}
        if len(degrees) > 1:
            raise DegreeMismatch(f"substituted polynomials have degrees {sorted(degrees)}")
        e = degrees.pop() if degrees else maps[0].degree
        for m in maps:
            if m.nvars != nvars:
                raise VarCountMismatch(f"substituted polynomials mix {nvars} and {m.nvars} variables")
            if m.domain != domain:
                raise DomainMismatch(f"{domain} vs {m.domain}")
        one = HomogPoly.constant(nvars, 1, domain)
        powers: list[list[HomogPoly]] = [[one] for _ in maps]
        result = HomogPoly.zero(nvars, self._degree * e, domain)
        for exps, coeff in self._terms.items():
            factors = []
            for i, k in enumerate(exps):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * maps[i])
                factors.append(powers[i][k])
            term = reduce(lambda a, b: a * b, factors, one).scalar_mul(domain.convert(coeff))
            result = result + term
        if result.is_zero():
            return HomogPoly.zero(nvars, self._degree * e, domain)
        return result

    def evaluate(self, point: Sequence[Any]) -> Any:
        if len(point) != self._nvars:
            raise ArityMismatch(f"point has {len(point)} coordinates, expected {self._nvars}")
        total = self._domain.zero()
        for exps, coeff in self._terms.items():
            term = coeff
            for x, k in zip(point, exps):
                if k:
                    term = term * x**k
            total = total + term
        return total

    __call__ = evaluate

    def partial_derivative(self, index: int) -> "HomogPoly":
        if not 0 <= index < self._nvars:
            raise IndexOutOfRange(f"variable x{index} out of range for {self._nvars} variables")
        if self._degree == 0:
            return HomogPoly.zero(self._nvars, 0, self._domain)
        terms = {}
        for exps, coeff in self._terms.items():
            if exps[index] == 0:
                continue
            lowered = list(exps)
            lowered[index] -= 1
            terms[tuple(lowered)] = coeff * exps[index]
        return HomogPoly(self._domain, self._nvars, self._degree - 1, terms)

    def to_domain(self, domain: CoefficientDomain) -> "HomogPoly":
        return HomogPoly(
            domain,
            self._nvars,
            self._degree,
            {e: domain.convert(c) for e, c in self._terms.items()},
        )

    def with_degree(self, degree: int) -> "HomogPoly":
        """Relabel the zero polynomial with a degree; nonzero polynomials must already match."""
        if self.is_zero():
            return HomogPoly.zero(self._nvars, degree, self._domain)
        if degree != self._degree:
            raise DegreeMismatch(f"polynomial has degree {self._degree}, not {degree}")
        return self

    # ---- vectorized evaluation ----------------------------------------------------------------

    def exponent_matrix(self) -> np.ndarray:
        items = self.sorted_terms()
        if not items:
            return np.zeros((0, self._nvars), dtype=np.int64)
        return np.array([e for e, _ in items], dtype=np.int64)

    def coefficient_array(self) -> np.ndarray:
        return np.array([complex(c) for _, c in self.sorted_terms()], dtype=np.complex128)

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at each row of ``points`` (shape (M, nvars)) in complex floating point."""
        points = np.asarray(points, dtype=np.complex128)
        if points.ndim != 2 or points.shape[1] != self._nvars:
            raise ArityMismatch(f"points must have shape (M, {self._nvars}), got {points.shape}")
        if self.is_zero():
            return np.zeros(points.shape[0], dtype=np.complex128)
        powers = np.prod(points[:, None, :] ** self.exponent_matrix()[None, :, :], axis=2)
        return powers @ self.coefficient_array()

    # ---- text ---------------------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: graded-lex terms, coefficient first, ``x0^2*x1`` monomials."""
        if self.is_zero():
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if k == 1 else f"x{i}^{k}" for i, k in enumerate(exps) if k > 0
            )
            text = self._domain.to_text(coeff)
            if mono and self._domain.is_exact and coeff == 1:
                text = mono
            elif mono and self._domain.is_exact and coeff == -1:
                text = f"-{mono}"
            elif mono:
                text = f"{text}*{mono}"
            pieces.append(text)
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"HomogPoly[{self._domain}]({self.to_text()})"


def poly_arith(a: HomogPoly, b: Any, op: str) -> HomogPoly:
    """Dispatch ``add``, ``mul`` or ``scalar_mul``; ``b`` is a scalar for the latter."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scalar_mul(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_eval(f: HomogPoly, point: Sequence[Any]) -> Any:
    return f.evaluate(point)
