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

from typing import Callable, Dict, Optional

from src.cremona.poly.domains.base_domain import CoefficientDomain, DomainError
from src.cremona.poly.domains.float_domain import FloatDomain
from src.cremona.poly.domains.padic_domain import PadicDomain
from src.cremona.poly.domains.rational_domain import RationalDomain


class DomainCreationError(DomainError):
    """Raised when a field tag cannot be turned into a coefficient domain."""

    pass


class DomainFactory:
    """Factory for coefficient domains keyed by field tag."""

    _DOMAIN_TYPES: Dict[str, Callable[..., CoefficientDomain]] = {
        "QQ": lambda args, tol: RationalDomain(),
        "RR": lambda args, tol: FloatDomain(False, tol),
        "CC": lambda args, tol: FloatDomain(True, tol),
        "Qp": lambda args, tol: PadicDomain(int(args[0]), int(args[1])),
    }

    @classmethod
    def register_domain(cls, name: str, builder: Callable[..., CoefficientDomain]) -> None:
        """Register a builder called as ``builder(args, tolerance)``."""
        cls._DOMAIN_TYPES[name] = builder

    @classmethod
    def unregister_domain(cls, name: str) -> None:
        cls._DOMAIN_TYPES.pop(name, None)

    @classmethod
    def create_domain(cls, tag: str, tolerance: Optional[float] = None) -> CoefficientDomain:
        """Create a domain from ``QQ``, ``RR``, ``CC`` or ``Qp:<p>:<N>``."""
        if not tag:
            raise DomainCreationError("Field tag not specified")
        name, *args = tag.strip().split(":")
        builder = cls._DOMAIN_TYPES.get(name)
        if builder is None:
            raise DomainCreationError(
                f"Unsupported field: {tag}. Available fields: {', '.join(cls.get_supported_fields())}"
            )
        if name == "Qp" and len(args) != 2:
            raise DomainCreationError(f"Field {tag} must read Qp:<p>:<N>")
        try:
            return builder(args, 1e-10 if tolerance is None else tolerance)
        except (ValueError, DomainError) as e:
            raise DomainCreationError(f"Failed to create field {tag}: {str(e)}")

    @classmethod
    def get_supported_fields(cls) -> list[str]:
        return list(cls._DOMAIN_TYPES.keys())

    @classmethod
    def is_supported(cls, name: str) -> bool:
        return name in cls._DOMAIN_TYPES
