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
from numbers import Complex, Real
from typing import Any

from src.cremona.poly.domains.base_domain import CoefficientDomain, DomainError


@dataclass(frozen=True)
class FloatDomain(CoefficientDomain):
    """Real or complex floats with an absolute zero tolerance."""

    complex_field: bool = False
    tolerance: float = 1e-10

    @property
    def tag(self) -> str:
        return "CC" if self.complex_field else "RR"

    @property
    def is_float(self) -> bool:
        return True

    def convert(self, value: Any) -> Any:
        if hasattr(value, "to_fraction"):
            value = value.to_fraction()
        if isinstance(value, Real):
            return complex(float(value)) if self.complex_field else float(value)
        if isinstance(value, Complex):
            if not self.complex_field:
                if abs(value.imag) > self.tolerance:
                    raise DomainError(f"cannot represent {value!r} in RR")
                return float(value.real)
            return complex(value)
        # numpy scalars
        try:
            return complex(value) if self.complex_field else float(value)
        except (TypeError, ValueError):
            raise DomainError(f"cannot represent {value!r} in {self.tag}")

    def is_zero(self, value: Any) -> bool:
        return abs(value) <= self.tolerance

    def to_text(self, value: Any) -> str:
        if not self.complex_field:
            return f"{value:.17g}"
        return f"({value.real:.17g}{value.imag:+.17g}i)"


def RealFloat(tolerance: float = 1e-10) -> FloatDomain:
    return FloatDomain(False, tolerance)


def ComplexFloat(tolerance: float = 1e-10) -> FloatDomain:
    return FloatDomain(True, tolerance)
