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
from numbers import Rational
from typing import Optional, Union


class PadicError(Exception):
    """Base class for p-adic arithmetic failures."""

    pass


class PrecisionExhausted(PadicError):
    """Raised when a value is not known to enough digits to answer a question about it."""

    pass


def valuation_of_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def _min_prec(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True, eq=False)
class PadicNum:
    """Element of Q_p stored as p^valuation * unit.

    ``unit`` is an integer coprime to p known modulo p^precision, where ``precision`` is the
    relative precision and never exceeds ``N``. Zero has ``valuation=None``; its ``precision``
    is then the absolute precision O(p^precision) to which it is known, or None for an exact 0.
    """

    p: int
    N: int
    valuation: Optional[int]
    unit: int
    precision: Optional[int]

    # ---- construction -------------------------------------------------------------------------

    @classmethod
    def zero(cls, p: int, N: int, absolute_precision: Optional[int] = None) -> "PadicNum":
        return cls(p, N, None, 0, absolute_precision)

    @classmethod
    def from_rational(cls, value: Union[int, Fraction], p: int, N: int) -> "PadicNum":
        value = Fraction(value)
        if value == 0:
            return cls.zero(p, N)
        num, den = value.numerator, value.denominator
        a, b = valuation_of_int(num, p), valuation_of_int(den, p)
        modulus = p**N
        unit = (num // p**a) * pow(den // p**b, -1, modulus) % modulus
        return cls(p, N, a - b, unit, N)

    @classmethod
    def from_digits(cls, p: int, N: int, valuation: int, digits: list[int]) -> "PadicNum":
        if not digits or digits[0] % p == 0:
            raise ValueError("leading digit of a unit part must be nonzero")
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls._normalize(p, N, unit, valuation, valuation + len(digits))

    @classmethod
    def _normalize(cls, p: int, N: int, s: int, base_valuation: int, absolute: int) -> "PadicNum":
        """Value p^base_valuation * s known modulo p^absolute."""
        span = absolute - base_valuation
        if span <= 0:
            return cls.zero(p, N, absolute)
        s %= p**span
        if s == 0:
            return cls.zero(p, N, absolute)
        k = valuation_of_int(s, p)
        v = base_valuation + k
        rel = min(absolute - v, N)
        return cls(p, N, v, (s // p**k) % p**rel, rel)

    # ---- basic properties ---------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.valuation is None

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation is None and self.precision is None

    @property
    def absolute_precision(self) -> Optional[int]:
        if self.valuation is None:
            return self.precision
        return self.valuation + self.precision

    def is_unit(self) -> bool:
        return self.valuation == 0

    def norm(self) -> Fraction:
        """|x| = p^-v, exactly."""
        if self.valuation is None:
            return Fraction(0)
        return Fraction(1, self.p**self.valuation) if self.valuation >= 0 else Fraction(
            self.p ** (-self.valuation)
        )

    def digits(self) -> list[int]:
        if self.valuation is None:
            return []
        out, u = [], self.unit
        for _ in range(self.precision):
            out.append(u % self.p)
            u //= self.p
        return out

    def residue(self, k: int) -> int:
        """Integer r with self = r mod p^k; requires an integral value known to k digits."""
        absolute = self.absolute_precision
        if absolute is not None and absolute < k:
            raise PrecisionExhausted(f"value known only modulo {self.p}^{absolute}, asked {k}")
        if self.valuation is None:
            return 0
        if self.valuation < 0:
            raise PrecisionExhausted(f"value has negative valuation {self.valuation}")
        return (self.unit * self.p**self.valuation) % self.p**k

    def to_fraction(self) -> Fraction:
        if self.valuation is None:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    # ---- arithmetic ---------------------------------------------------------------------------

    def _coerce(self, other) -> "PadicNum":
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError(f"mixing primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return PadicNum.from_rational(Fraction(other), self.p, self.N)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        absolute = _min_prec(self.absolute_precision, other.absolute_precision)
        live = [x for x in (self, other) if x.valuation is not None]
        if not live:
            return PadicNum.zero(self.p, self.N, absolute)
        vm = min(x.valuation for x in live)
        s = sum(x.unit * self.p ** (x.valuation - vm) for x in live)
        return PadicNum._normalize(self.p, self.N, s, vm, absolute)

    __radd__ = __add__

    def __neg__(self):
        if self.valuation is None:
            return self
        return PadicNum(self.p, self.N, self.valuation, (-self.unit) % self.p**self.precision,
                        self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.valuation is None or other.valuation is None:
            if self.is_exact_zero or other.is_exact_zero:
                return PadicNum.zero(self.p, self.N)
            return PadicNum.zero(
                self.p,
                self.N,
                self._zero_product_precision(other),
            )
        rel = min(self.precision, other.precision)
        return PadicNum(self.p, self.N, self.valuation + other.valuation,
                        (self.unit * other.unit) % self.p**rel, rel)

    __rmul__ = __mul__

    def _zero_product_precision(self, other: "PadicNum") -> int:
        if self.valuation is None and other.valuation is None:
            return self.precision + other.precision
        zero, live = (self, other) if self.valuation is None else (other, self)
        return zero.precision + live.valuation

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.valuation is None:
            raise ZeroDivisionError("p-adic division by zero")
        if self.valuation is None:
            if self.precision is None:
                return self
            return PadicNum.zero(self.p, self.N, self.precision - other.valuation)
        rel = min(self.precision, other.precision)
        modulus = self.p**rel
        return PadicNum(self.p, self.N, self.valuation - other.valuation,
                        self.unit * pow(other.unit, -1, modulus) % modulus, rel)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return PadicNum.from_rational(1, self.p, self.N) / (self ** (-exponent))
        result = PadicNum.from_rational(1, self.p, self.N)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, PadicNum) else other
        if other is NotImplemented or not isinstance(other, PadicNum):
            return NotImplemented
        return (self - other).is_zero

    # ---- text ---------------------------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical form ``p^v * (d0 + d1*p + ...)``."""
        if self.valuation is None:
            return "0"
        terms = []
        for i, d in enumerate(self.digits()):
            if i == 0:
                terms.append(f"{d}")
            elif i == 1:
                terms.append(f"{d}*{self.p}")
            else:
                terms.append(f"{d}*{self.p}^{i}")
        return f"{self.p}^{self.valuation} * ({' + '.join(terms)})"

    def __str__(self):
        return self.to_text()
