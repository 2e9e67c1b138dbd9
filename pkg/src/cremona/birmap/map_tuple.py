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

from typing import Any, Sequence

import numpy as np

from src.cremona.poly.domains import QQ, CoefficientDomain
from src.cremona.poly.homog_poly import DegreeMismatch, HomogPoly, VarCountMismatch, monomials


class BirmapError(Exception):
    """Base class for failures on map tuples and birational maps."""

    pass


class ZeroTuple(BirmapError):
    """Raised when every component of a map tuple is the zero polynomial."""

    pass


class DimensionMismatch(BirmapError):
    """Raised when maps or points of different projective dimensions meet."""

    pass


class MapTuple:
    """An element of W_d: n+1 homogeneous polynomials of a common degree in n+1 variables.

    Two tuples that differ by a nonzero scalar describe the same point of W_d; ``==`` compares
    up to that scalar, ``same_components`` compares exactly.
    """

    __slots__ = ("_components",)

    def __init__(self, components: Sequence[HomogPoly]):
        components = tuple(components)
        if not components:
            raise ZeroTuple("empty map tuple")
        nvars = components[0].nvars
        if any(c.nvars != nvars for c in components):
            raise VarCountMismatch("components use different numbers of variables")
        if len(components) != nvars:
            raise DimensionMismatch(
                f"a self-map of P^{nvars - 1} needs {nvars} components, got {len(components)}"
            )
        live = [c for c in components if not c.is_zero()]
        if not live:
            raise ZeroTuple("all components vanish")
        degrees = {c.degree for c in live}
        if len(degrees) > 1:
            raise DegreeMismatch(f"components have degrees {sorted(degrees)}")
        d = degrees.pop()
        domains = {c.domain for c in live}
        if len(domains) > 1:
            raise DimensionMismatch(f"components over different fields {sorted(map(str, domains))}")
        domain = live[0].domain
        object.__setattr__(
            self,
            "_components",
            tuple(HomogPoly.zero(nvars, d, domain) if c.is_zero() else c for c in components),
        )

    def __setattr__(self, key, value):
        raise AttributeError("MapTuple is immutable")

    @classmethod
    def identity(cls, n: int, domain: CoefficientDomain = QQ) -> "MapTuple":
        return cls([HomogPoly.variable(n + 1, i, domain) for i in range(n + 1)])

    @property
    def components(self) -> tuple[HomogPoly, ...]:
        return self._components

    @property
    def nvars(self) -> int:
        return self._components[0].nvars

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def degree(self) -> int:
        return next(c.degree for c in self._components if not c.is_zero())

    @property
    def domain(self) -> CoefficientDomain:
        return next(c.domain for c in self._components if not c.is_zero())

    def __len__(self):
        return len(self._components)

    def __getitem__(self, i: int) -> HomogPoly:
        return self._components[i]

    def __iter__(self):
        return iter(self._components)

    # ---- scalar normalization -----------------------------------------------------------------

    def leading_coefficient(self) -> Any:
        """Graded-lex leading coefficient of the first nonzero component."""
        return next(c for c in self._components if not c.is_zero()).leading_coefficient()

    def normalized(self) -> "MapTuple":
        """Representative whose first nonzero component is monic."""
        lead = self.leading_coefficient()
        return MapTuple([c.scalar_mul(1 / lead) for c in self._components])

    def scale(self, value: Any) -> "MapTuple":
        return MapTuple([c.scalar_mul(value) for c in self._components])

    def times(self, cofactor: HomogPoly) -> "MapTuple":
        return MapTuple([c * cofactor for c in self._components])

    def same_components(self, other: "MapTuple") -> bool:
        return len(self) == len(other) and all(a == b for a, b in zip(self, other))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapTuple):
            return NotImplemented
        if self.nvars != other.nvars or self.domain != other.domain:
            return False
        if self.degree != other.degree:
            return False
        return self.normalized().same_components(other.normalized())

    __hash__ = None

    # ---- operations ---------------------------------------------------------------------------

    def substitute(self, inner: "MapTuple") -> "MapTuple":
        """Component-wise f_i(g_0, ..., g_n): the tuple of self after inner."""
        if inner.nvars != self.nvars:
            raise DimensionMismatch(f"P^{self.n} map after P^{inner.n} map")
        return MapTuple([c.substitute(inner.components) for c in self._components])

    def evaluate(self, point: Sequence[Any]) -> list[Any]:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point has {len(point)} coordinates, expected {self.nvars}")
        return [c.evaluate(point) for c in self._components]

    def to_domain(self, domain: CoefficientDomain) -> "MapTuple":
        return MapTuple([c.to_domain(domain) for c in self._components])

    def raise_degree(self, k: int, variable: int = 0) -> "MapTuple":
        """Embed into W_{d+k} by multiplying every component with x_variable^k."""
        exps = [0] * self.nvars
        exps[variable] = k
        return self.times(HomogPoly.monomial(exps, 1, self.domain))

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients over every degree-d monomial (graded-lex), component after component."""
        basis = monomials(self.nvars, self.degree)
        return np.array(
            [complex(c.coefficient(e)) for c in self._components for e in basis],
            dtype=np.complex128,
        )

    @classmethod
    def from_coefficient_vector(
        cls, vector: np.ndarray, nvars: int, degree: int, domain: CoefficientDomain
    ) -> "MapTuple":
        basis = monomials(nvars, degree)
        size = len(basis)
        if len(vector) != nvars * size:
            raise DimensionMismatch(f"vector of length {len(vector)} for {nvars}x{size} slots")
        comps = []
        for i in range(nvars):
            chunk = vector[i * size : (i + 1) * size]
            values = chunk if domain.tag == "CC" else np.real(chunk)
            comps.append(HomogPoly(domain, nvars, degree, dict(zip(basis, values.tolist()))))
        return cls(comps)

    def to_text(self) -> str:
        return "[" + " : ".join(c.to_text() for c in self._components) + "]"

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MapTuple[{self.domain}]({self.to_text()})"
