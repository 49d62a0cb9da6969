"""The completion K_inf = F_q((1/Y)) with explicit precision tracking.

A Laurent value stores its top exponent, a descending coefficient window and
a knowledge floor: exponents above top are exactly zero, exponents in
[floor, top] are stored, exponents below floor are unknown.  floor = None
means the element is exact (zero below the window).  Every operation
propagates the floor pessimistically; consumers read coefficients only
through accessors that raise PrecisionExhausted past the floor.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError, NoEmbedding, ParseError, PrecisionExhausted
from .field import FiniteField
from .poly import FqPoly, format_coeff, parse_coeff
from .rational import RatFunc


class Laurent:
    __slots__ = ("field", "top", "c", "floor")

    def __init__(self, field: FiniteField, top: int, coeffs, floor):
        c = np.asarray(coeffs, dtype=np.int64)
        # strip unknown-window leading zeros
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        if i:
            top -= i
            c = c[i:]
        if floor is None:
            j = len(c)
            while j > 0 and c[j - 1] == 0:
                j -= 1
            c = c[:j]
        else:
            if len(c) != top - floor + 1 and len(c) != 0:
                # pad the window down to the floor with stored zeros
                want = top - floor + 1
                if len(c) < want:
                    c = np.concatenate([c, np.zeros(want - len(c), dtype=np.int64)])
                else:
                    c = c[:want]
        self.field = field
        self.top = top if len(c) else None
        self.c = c
        self.floor = floor

    # -- constructors ------------------------------------------------------
    @staticmethod
    def exact_zero(field):
        return Laurent(field, 0, [], None)

    @staticmethod
    def zero_to_precision(field, floor: int):
        return Laurent._raw(field, None, np.zeros(0, dtype=np.int64), floor)

    @staticmethod
    def _raw(field, top, c, floor):
        obj = object.__new__(Laurent)
        obj.field = field
        obj.top = top
        obj.c = c
        obj.floor = floor
        return obj

    @staticmethod
    def from_poly(f: FqPoly):
        if f.is_zero():
            return Laurent.exact_zero(f.field)
        return Laurent(f.field, int(f.degree), list(reversed(f.coeffs)), None)

    @staticmethod
    def from_ratfunc(x: RatFunc, prec: int):
        num = Laurent.from_poly(x.num)
        if x.den.is_one():
            return num
        return num.div(Laurent.from_poly(x.den), prec)

    @staticmethod
    def uniformizer(field):
        """pi_inf = 1/Y."""
        return Laurent(field, -1, [1], None)

    # -- structure -----------------------------------------------------------
    def is_exact(self):
        return self.floor is None

    def is_exact_zero(self):
        return self.top is None and self.floor is None

    def is_zero_to_precision(self):
        return self.top is None and self.floor is not None

    def is_zeroish(self):
        return self.top is None

    def valuation(self):
        """v_inf; +inf for anything zero to current knowledge."""
        if self.top is None:
            return math.inf
        return -self.top

    def known_floor(self):
        return -math.inf if self.floor is None else self.floor

    def coeff_at(self, e: int) -> int:
        if self.top is not None and e > self.top:
            return 0
        if self.top is None:
            if self.floor is None or e >= self.floor:
                return 0
            raise PrecisionExhausted(f"coefficient at Y^{e} unknown")
        if self.floor is not None and e < self.floor:
            raise PrecisionExhausted(f"coefficient at Y^{e} unknown")
        if e > self.top:
            return 0
        idx = self.top - e
        if idx >= len(self.c):
            return 0
        return int(self.c[idx])

    def window(self, top: int, floor: int) -> np.ndarray:
        """Coefficient codes for exponents top..floor (descending), checked."""
        if self.floor is not None and floor < self.floor:
            raise PrecisionExhausted("window below knowledge floor")
        if top < floor:
            return np.zeros(0, dtype=np.int64)
        out = np.zeros(top - floor + 1, dtype=np.int64)
        if self.top is None:
            return out
        hi = min(top, self.top)                       # highest exponent to copy
        lo = max(floor, self.top - len(self.c) + 1)   # lowest stored exponent
        if hi >= lo:
            out[top - hi : top - lo + 1] = self.c[self.top - hi : self.top - lo + 1]
        return out

    # -- arithmetic ------------------------------------------------------------
    def _binary_floor(self, other):
        fl1 = self.known_floor()
        fl2 = other.known_floor()
        fl = max(fl1, fl2)
        return None if fl == -math.inf else int(fl)

    def __add__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        F = self.field
        fl = self._binary_floor(other)
        if self.top is None and other.top is None:
            return Laurent.exact_zero(F) if fl is None else Laurent.zero_to_precision(F, fl)
        top = max(t for t in (self.top, other.top) if t is not None)
        lo = fl if fl is not None else min(
            (t - len(x.c) + 1)
            for t, x in ((self.top, self), (other.top, other))
            if t is not None
        )
        lo = min(lo, top)
        a = self.window(top, lo)
        b = other.window(top, lo)
        return Laurent(F, top, F.vec_add(a, b), fl)

    def __neg__(self):
        if self.top is None:
            return self
        return Laurent._raw(self.field, self.top, self.field.vec_neg(self.c), self.floor)

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        return self + (-other)

    def scale(self, s: int):
        if s == 0:
            return (
                Laurent.exact_zero(self.field)
                if self.floor is None
                else Laurent.zero_to_precision(self.field, self.floor)
            )
        if self.top is None:
            return self
        return Laurent._raw(self.field, self.top, self.field.vec_scale(s, self.c), self.floor)

    def shift(self, k: int):
        """Multiply by Y^k."""
        if self.top is None:
            if self.floor is None:
                return self
            return Laurent.zero_to_precision(self.field, self.floor + k)
        return Laurent._raw(
            self.field, self.top + k, self.c, None if self.floor is None else self.floor + k
        )

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return NotImplemented
        F = self.field
        if self.is_exact_zero() or other.is_exact_zero():
            return Laurent.exact_zero(F)
        t1 = self.top if self.top is not None else self.floor - 1
        t2 = other.top if other.top is not None else other.floor - 1
        fl1, fl2 = self.known_floor(), other.known_floor()
        fl = max(fl1 + t2, fl2 + t1)
        floor = None if fl == -math.inf else int(fl)
        if self.top is None or other.top is None:
            return Laurent.zero_to_precision(F, floor)
        prod = F.vec_convolve(self.c, other.c)
        top = self.top + other.top
        if floor is not None:
            keep = top - floor + 1
            prod = prod[:keep]
        return Laurent(F, top, prod, floor)

    def truncate(self, new_floor: int):
        """Forget everything below new_floor."""
        if self.floor is not None and self.floor >= new_floor:
            return self
        if self.top is None or self.top < new_floor:
            return Laurent.zero_to_precision(self.field, new_floor)
        keep = self.top - new_floor + 1
        c = self.window(self.top, new_floor)
        return Laurent(self.field, self.top, c, new_floor)

    def inv(self, prec: int | None = None):
        """1/self; for exact inputs prec gives the requested window length."""
        F = self.field
        if self.top is None:
            raise DomainError("inverse of (possibly) zero Laurent value")
        t = self.top
        if self.floor is not None:
            window = t - self.floor + 1
        else:
            window = prec if prec is not None else 64
        u = self.window(t, t - window + 1)  # u[0] != 0
        r = _series_inverse(F, u, window)
        out_floor = None
        if self.floor is not None:
            # f = known + err, v(err) > ... : floor of 1/f is fl - 2t
            out_floor = self.floor - 2 * t
        elif prec is not None:
            out_floor = -t - window + 1
        return Laurent(F, -t, r, out_floor)

    def div(self, other: "Laurent", prec: int | None = None):
        return self * other.inv(prec)

    def square(self):
        return self * self

    # -- integer/fractional split -------------------------------------------
    def poly_part(self) -> FqPoly:
        if self.floor is not None and self.floor > 0:
            raise PrecisionExhausted("need knowledge down to Y^0 for [f]")
        if self.top is None or self.top < 0:
            return FqPoly.zero(self.field)
        coeffs = self.window(self.top, 0)
        return FqPoly(self.field, list(reversed(coeffs.tolist())))

    def frac_part(self) -> "Laurent":
        if self.floor is not None and self.floor > 0:
            raise PrecisionExhausted("need knowledge down to Y^0 for {f}")
        if self.top is None or self.top < 0:
            return self
        lo = self.floor if self.floor is not None else self.top - len(self.c) + 1
        if lo > -1:
            return (
                Laurent.exact_zero(self.field)
                if self.floor is None
                else Laurent.zero_to_precision(self.field, self.floor)
            )
        keep = self.window(-1, lo)
        return Laurent(self.field, -1, keep, self.floor)

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.field.q == other.field.q
            and self.top == other.top
            and self.floor == other.floor
            and np.array_equal(self.c, other.c)
        )

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _series_inverse(F: FiniteField, u: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of 1/(u as power series), u[0] a unit."""
    inv0 = F.inv(int(u[0]))
    r = np.array([inv0], dtype=np.int64)
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        ur = F.vec_convolve(u[:k2], r)[:k2]
        # e = 1 - u*r  (should vanish to order k)
        e = F.vec_neg(ur)
        e[0] = F.add(int(e[0]), 1)
        corr = F.vec_convolve(r, e[:k2])[:k2]
        r = np.concatenate([r, np.zeros(k2 - len(r), dtype=np.int64)])
        r = F.vec_add(r, corr)
        k = k2
    return r[:n]


def val_infty(f: Laurent):
    """v_inf(f); +inf for exact zero and for zero-to-precision values."""
    return f.valuation()


def integer_fractional_split(f: Laurent):
    """f = [f] + {f} with [f] in F_q[Y] and {f} in (1/Y) F_q[[1/Y]]."""
    return f.poly_part(), f.frac_part()


def artin_map(f: Laurent) -> Laurent:
    """Psi(f) = {1/f} on (1/Y)F_q[[1/Y]] minus 0."""
    if f.is_exact_zero():
        raise DomainError("Artin map undefined at 0")
    if f.is_zero_to_precision():
        raise PrecisionExhausted("cannot invert a value that is zero to precision")
    if f.valuation() < 1:
        raise DomainError("Artin map needs v_inf(f) >= 1")
    g = f.inv(prec=None if not f.is_exact() else 64)
    return g.frac_part()


def sqrt_laurent(delta: FqPoly, prec: int) -> Laurent:
    """Canonical square root of a polynomial in K_inf to prec coefficients.

    Needs even degree and a square leading coefficient; the leading
    coefficient of the result is the canonical square root in F_q (least
    code among r, -r).
    """
    F = delta.field
    if delta.is_zero():
        return Laurent.exact_zero(F)
    d = int(delta.degree)
    if d % 2 != 0:
        raise NoEmbedding(f"deg Delta = {d} is odd; no square root in K_inf")
    if not F.is_square(delta.leading()):
        raise NoEmbedding("leading coefficient is not a square in F_q")
    m = d // 2
    g0 = F.sqrt(delta.leading())
    D = Laurent.from_poly(delta).window(d, d - prec + 1)
    g = np.zeros(prec, dtype=np.int64)
    g[0] = g0
    inv2g0 = F.inv(F.mul(2 % F.p, g0))
    for j in range(1, prec):
        if F.e == 1:
            inner = int(np.dot(g[1:j], g[j - 1:0:-1]) % F.p)
        else:
            inner = 0
            for i in range(1, j):
                inner = F.add(inner, F.mul(int(g[i]), int(g[j - i])))
        rhs = F.sub(int(D[j]), inner)
        g[j] = F.mul(rhs, inv2g0)
    return Laurent(F, m, g, m - prec + 1)


def embed_quad(x, prec: int) -> Laurent:
    """Embed a QuadElem into K_inf using the canonical sqrt of Delta."""
    delta = x.ctx.delta
    s = sqrt_laurent(delta, prec + max(0, int(delta.degree)) + 8)
    num = Laurent.from_poly(x.a) + Laurent.from_poly(x.b) * s
    den = Laurent.from_poly(x.c)
    if num.is_zeroish():
        if x.is_zero():
            return Laurent.exact_zero(x.ctx.base)
        raise PrecisionExhausted("embedding cancels below precision")
    return num.div(den, prec + 8)


# -- text format -------------------------------------------------------------
# "Y^t*[c_t,c_{t-1},...]@floor" with floor "exact" for exact values.

def format_laurent(f: Laurent) -> str:
    if f.top is None:
        fl = "exact" if f.floor is None else str(f.floor)
        return f"0@{fl}"
    coeffs = ",".join(format_coeff(f.field, int(x)) for x in f.c)
    fl = "exact" if f.floor is None else str(f.floor)
    return f"Y^{f.top}*[{coeffs}]@{fl}"


def parse_laurent(field: FiniteField, text: str) -> Laurent:
    t = text.strip()
    if "@" not in t:
        raise ParseError(f"missing @floor in Laurent literal {text!r}")
    body, fl = t.rsplit("@", 1)
    floor = None if fl == "exact" else int(fl)
    if body.strip() == "0":
        return (
            Laurent.exact_zero(field)
            if floor is None
            else Laurent.zero_to_precision(field, floor)
        )
    if not body.startswith("Y^"):
        raise ParseError(f"bad Laurent literal {text!r}")
    head, bracket = body.split("*", 1)
    top = int(head[2:])
    if not (bracket.startswith("[") and bracket.endswith("]")):
        raise ParseError(f"bad Laurent literal {text!r}")
    inner = bracket[1:-1]
    if field.e == 1:
        codes = [parse_coeff(field, x) for x in inner.split(",")] if inner else []
    else:
        # split top-level commas outside digit brackets
        codes = []
        depth = 0
        cur = ""
        for ch in inner:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if ch == "," and depth == 0:
                codes.append(parse_coeff(field, cur))
                cur = ""
            else:
                cur += ch
        if cur:
            codes.append(parse_coeff(field, cur))
    return Laurent(field, top, codes, floor)
