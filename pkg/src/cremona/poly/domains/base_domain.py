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

from abc import ABC, abstractmethod
from typing import Any


class DomainError(Exception):
    """Raised when a value cannot be represented in a coefficient domain."""

    pass


class CoefficientDomain(ABC):
    """Arithmetic contract shared by the exact rational, float and p-adic coefficient fields.

    Elements are plain Python values (Fraction, float, complex, PadicNum); the domain knows how
    to build, test and print them.
    """

    @property
    @abstractmethod
    def tag(self) -> str:
        """Field tag as written on the command line (QQ, RR, CC, Qp:p:N)."""
        pass

    @property
    def is_exact(self) -> bool:
        return False

    @property
    def is_float(self) -> bool:
        return False

    @abstractmethod
    def convert(self, value: Any) -> Any:
        pass

    @abstractmethod
    def is_zero(self, value: Any) -> bool:
        pass

    @abstractmethod
    def to_text(self, value: Any) -> str:
        pass

    def zero(self) -> Any:
        return self.convert(0)

    def one(self) -> Any:
        return self.convert(1)

    def equal(self, a: Any, b: Any) -> bool:
        return self.is_zero(self.convert(a) - self.convert(b))

    def __str__(self):
        return self.tag
