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

from src.cremona.poly.domains.base_domain import CoefficientDomain, DomainError


@dataclass(frozen=True)
class RationalDomain(CoefficientDomain):
    """Exact rationals backed by fractions.Fraction; zero tests are exact."""

    @property
    def tag(self) -> str:
        return "QQ"

    @property
    def is_exact(self) -> bool:
        return True

    def convert(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        if hasattr(value, "to_fraction"):
            return value.to_fraction()
        raise DomainError(f"cannot represent {value!r} in QQ")

    def is_zero(self, value: Any) -> bool:
        return value == 0

    def to_text(self, value: Fraction) -> str:
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
