"""The rational function field K = F_q(Y): reduced num/den pairs."""

from __future__ import annotations

import math

from .errors import DivisionByZero, ParseError
from .field import FiniteField
from .poly import FqPoly, format_poly, parse_poly, poly_gcd


class RatFunc:
    """An element of F_q(Y), normalized with monic denominator and gcd 1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: FqPoly, den: FqPoly | None = None):
        F = num.field
        if den is None:
            den = FqPoly.one(F)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            num, den = FqPoly.zero(F), FqPoly.one(F)
        else:
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num // g, den // g
            lc = den.leading()
            if lc != 1:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @staticmethod
    def zero(field):
        return RatFunc(FqPoly.zero(field))

    @staticmethod
    def one(field):
        return RatFunc(FqPoly.one(field))

    @staticmethod
    def const(field, c):
        return RatFunc(FqPoly.const(field, c))

    @staticmethod
    def from_poly(f: FqPoly):
        return RatFunc(f)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self):
        return self.den.is_one()

    def as_poly(self) -> FqPoly:
        if not self.den.is_one():
            raise DivisionByZero(f"{self} is not a polynomial")
        return self.num

    def val_infty(self):
        """v_inf = deg den - deg num; +inf for 0."""
        if self.is_zero():
            return math.inf
        return int(self.den.degree) - int(self.num.degree)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of 0")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, FqPoly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.const(self.field, other % self.field.p)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (FqPoly, int)):
            other = self._coerce(other)
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def v_at(self, pi: FqPoly) -> int | float:
        """Valuation at the finite place defined by the irreducible pi."""
        if self.is_zero():
            return math.inf
        return _poly_val(self.num, pi) - _poly_val(self.den, pi)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def _poly_val(f: FqPoly, pi: FqPoly) -> int:
    if f.is_zero():
        raise DivisionByZero("valuation of 0 polynomial")
    v = 0
    while True:
        q, r = f.divrem(pi)
        if not r.is_zero():
            return v
        v += 1
        f = q


def format_ratfunc(x: RatFunc) -> str:
    if x.den.is_one():
        return format_poly(x.num)
    return f"{format_poly(x.num)}/{format_poly(x.den)}"


def parse_ratfunc(field, text: str) -> RatFunc:
    t = text.strip()
    if "/" in t:
        np_, dp = t.split("/", 1)
        return RatFunc(parse_poly(field, np_), parse_poly(field, dp))
    return RatFunc(parse_poly(field, t))
