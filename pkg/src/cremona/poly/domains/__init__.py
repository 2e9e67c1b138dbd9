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

from src.cremona.poly.domains.base_domain import CoefficientDomain, DomainError
from src.cremona.poly.domains.factory import DomainCreationError, DomainFactory
from src.cremona.poly.domains.float_domain import ComplexFloat, FloatDomain, RealFloat
from src.cremona.poly.domains.padic_domain import PadicDomain
from src.cremona.poly.domains.rational_domain import RationalDomain

QQ = RationalDomain()
RR = RealFloat()
CC = ComplexFloat()
