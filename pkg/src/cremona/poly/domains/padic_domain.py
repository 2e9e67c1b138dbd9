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
from typing import Any

from src.cremona.padic.padic_num import PadicNum
from src.cremona.poly.domains.base_domain import CoefficientDomain, DomainError


@dataclass(frozen=True)
class PadicDomain(CoefficientDomain):
    """Q_p at fixed relative precision N; zero tests are exact up to the tracked precision."""

    p: int = 3
    N: int = 12

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p**0.5) + 1)):
            raise DomainError(f"{self.p} is not a prime")
        if self.N < 1:
            raise DomainError(f"precision must be at least 1, got {self.N}")

    @property
    def tag(self) -> str:
        return f"Qp:{self.p}:{self.N}"

    def convert(self, value: Any) -> PadicNum:
        if isinstance(value, PadicNum):
            if value.p != self.p:
                raise DomainError(f"{value} is not a {self.p}-adic number")
            return value
        if isinstance(value, (int, Rational)):
            return PadicNum.from_rational(Fraction(value), self.p, self.N)
        if isinstance(value, str):
            return PadicNum.from_rational(Fraction(value), self.p, self.N)
        raise DomainError(f"cannot represent {value!r} in {self.tag}")

    def is_zero(self, value: PadicNum) -> bool:
        return value.is_zero

    def to_text(self, value: PadicNum) -> str:
        return f"({value.to_text()})"
