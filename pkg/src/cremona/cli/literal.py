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

"""Text form of maps: ``[expr : expr : ...]`` with polynomials in x0..xn.

Coefficients may be integers, ``int/int``, decimals (with exponents), ``a+bi`` over CC, or
``p^v*(d0 + d1*p + ...)`` over Qp. The printer is ``MapTuple.to_text`` and parsing its output
gives back the same tuple.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from src.cremona.birmap.map_tuple import MapTuple
from src.cremona.poly.domains import CoefficientDomain, DomainFactory
from src.cremona.poly.homog_poly import ArityMismatch, HomogPoly

Exponent = tuple[int, ...]
Terms = dict[Exponent, Any]


class LiteralError(Exception):
    """Base class for map literal failures."""

    pass


class MapSyntaxError(LiteralError):
    """Raised on malformed text; ``position`` is the 0-based offset of the offending character."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonHomogeneous(LiteralError):
    """Raised when a component mixes monomials of different degrees."""

    pass


class MixedDegrees(LiteralError):
    """Raised when components have different degrees."""

    pass


class UnknownVariable(LiteralError):
    """Raised when a variable index is not below the number of components."""

    pass


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag>i)?"
    r"|(?P<var>x\d+)"
    r"|(?P<unit>i)"
    r"|(?P<op>[-+*/^()\[\]:])"
    r")"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int
    imaginary: bool = False


def tokenize(text: str) -> list[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise MapSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = match.start(match.lastgroup)
        if match.group("number") is not None:
            start = match.start("number")
            tokens.append(Token("number", match.group("number"), start, match.group("imag") is not None))
        elif match.group("var") is not None:
            tokens.append(Token("var", match.group("var"), start))
        elif match.group("unit") is not None:
            tokens.append(Token("number", "1", start, True))
        else:
            tokens.append(Token(match.group("op"), match.group("op"), start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over sparse, not necessarily homogeneous, polynomials."""

    def __init__(self, text: str, domain: CoefficientDomain):
        self.text = text
        self.domain = domain
        self.tokens = tokenize(text)
        self.index = 0
        self.nvars = 0

    # ---- token helpers ------------------------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise MapSyntaxError(f"expected {kind!r}, found {found!r}", self.current.position)
        return self._advance()

    # ---- term arithmetic ----------------------------------------------------------------------

    def _clean(self, terms: Terms) -> Terms:
        return {e: c for e, c in terms.items() if not self.domain.is_zero(c)}

    def _constant(self, value: Any) -> Terms:
        return self._clean({(0,) * self.nvars: value})

    def _add(self, a: Terms, b: Terms, sign: int = 1) -> Terms:
        out = dict(a)
        for e, c in b.items():
            c = c if sign > 0 else -c
            out[e] = out[e] + c if e in out else c
        return self._clean(out)

    def _mul(self, a: Terms, b: Terms) -> Terms:
        out: Terms = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out[e] + ca * cb if e in out else ca * cb
        return self._clean(out)

    def _scalar_of(self, terms: Terms, position: int) -> Any:
        zero = (0,) * self.nvars
        if any(e != zero for e in terms):
            raise MapSyntaxError("expected a constant", position)
        return terms.get(zero, self.domain.zero())

    def _number(self, token: Token) -> Any:
        tag = self.domain.tag
        if token.imaginary and tag != "CC":
            raise MapSyntaxError(f"imaginary unit outside CC (field {tag})", token.position)
        if self.domain.is_float:
            value = float(token.text)
            return self.domain.convert(complex(0.0, value) if token.imaginary else value)
        return self.domain.convert(Fraction(token.text))

    # ---- grammar ------------------------------------------------------------------------------

    def parse_map(self) -> list[Terms]:
        self._expect("[")
        start = self.index
        self.nvars = self._count_components()
        self.index = start
        components = [self._expr()]
        while self.current.kind == ":":
            self._advance()
            components.append(self._expr())
        self._expect("]")
        self._expect("end")
        return components

    def _count_components(self) -> int:
        depth, count = 0, 1
        for token in self.tokens[self.index :]:
            if token.kind == "(":
                depth += 1
            elif token.kind == ")":
                depth -= 1
            elif token.kind == ":" and depth == 0:
                count += 1
            elif token.kind == "]" and depth == 0:
                return count
        raise MapSyntaxError("missing ']'", len(self.text))

    def _expr(self) -> Terms:
        terms = self._term()
        while self.current.kind in ("+", "-"):
            op = self._advance().kind
            terms = self._add(terms, self._term(), 1 if op == "+" else -1)
        return terms

    def _term(self) -> Terms:
        terms = self._factor()
        while self.current.kind in ("*", "/"):
            op = self._advance()
            right = self._factor()
            if op.kind == "*":
                terms = self._mul(terms, right)
            else:
                divisor = self._scalar_of(right, op.position)
                if self.domain.is_zero(divisor):
                    raise MapSyntaxError("division by zero", op.position)
                terms = self._clean({e: c / divisor for e, c in terms.items()})
        return terms

    def _factor(self) -> Terms:
        if self.current.kind in ("+", "-"):
            sign = self._advance().kind
            inner = self._factor()
            return inner if sign == "+" else {e: -c for e, c in inner.items()}
        base_token = self.current
        base = self._atom()
        if self.current.kind != "^":
            return base
        self._advance()
        negative = False
        if self.current.kind == "-":
            self._advance()
            negative = True
        exponent_token = self._expect("number")
        if exponent_token.imaginary or not exponent_token.text.isdigit():
            raise MapSyntaxError("exponents must be integers", exponent_token.position)
        k = int(exponent_token.text)
        if negative:
            value = self._scalar_of(base, base_token.position)
            if self.domain.is_zero(value):
                raise MapSyntaxError("negative power of zero", base_token.position)
            return self._constant(self.domain.one() / value**k)
        out = self._constant(self.domain.one())
        for _ in range(k):
            out = self._mul(out, base)
        return out

    def _atom(self) -> Terms:
        token = self.current
        if token.kind == "number":
            self._advance()
            return self._constant(self._number(token))
        if token.kind == "var":
            self._advance()
            index = int(token.text[1:])
            if index >= self.nvars:
                raise UnknownVariable(
                    f"{token.text} at position {token.position} in a map with {self.nvars} components"
                )
            exps = [0] * self.nvars
            exps[index] = 1
            return {tuple(exps): self.domain.one()}
        if token.kind == "(":
            self._advance()
            inner = self._expr()
            self._expect(")")
            return inner
        found = token.text or "end of input"
        raise MapSyntaxError(f"unexpected {found!r}", token.position)


def _homogeneous(terms: Terms, nvars: int, domain: CoefficientDomain, slot: int) -> HomogPoly:
    if not terms:
        return HomogPoly.zero(nvars, 0, domain)
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        raise NonHomogeneous(f"component {slot} mixes degrees {sorted(degrees)}")
    return HomogPoly(domain, nvars, degrees.pop(), terms)


@dataclass(frozen=True)
class MapLiteral:
    source: str
    map_tuple: MapTuple
    field: str


def parse_map(
    text: str, field: Union[str, CoefficientDomain] = "QQ", nvars: Optional[int] = None
) -> MapLiteral:
    """Parse ``[F0 : ... : Fn]``; with ``nvars`` given the component count must match it."""
    domain = DomainFactory.create_domain(field) if isinstance(field, str) else field
    parser = _Parser(text, domain)
    raw = parser.parse_map()
    if nvars is not None and len(raw) != nvars:
        raise ArityMismatch(f"{len(raw)} components given for a map in {nvars} variables")
    if len(raw) < 2:
        raise ArityMismatch("a map needs at least two components")
    comps = [_homogeneous(t, len(raw), domain, i) for i, t in enumerate(raw)]
    degrees = {c.degree for c in comps if not c.is_zero()}
    if len(degrees) > 1:
        raise MixedDegrees(f"components have degrees {sorted(degrees)}")
    return MapLiteral(text, MapTuple(comps), domain.tag)


def print_map(tup: MapTuple) -> str:
    return tup.to_text()
