"""2x2 matrices over the package's coefficient types, plus PGL_2 utilities.

Mat2 is generic: entries only need ring dunders.  The PGL_2(K) helpers work
on RatFunc entries and produce the canonical primitive integral form used
for structural equality and Gamma_inf membership tests.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotInGammaInfty, ParseError
from .poly import FqPoly, poly_gcd
from .rational import RatFunc, format_ratfunc, parse_ratfunc


class Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    def __mul__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, s):
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def adj(self):
        return Mat2(self.d, -self.b, -self.c, self.a)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def map(self, fn):
        return Mat2(fn(self.a), fn(self.b), fn(self.c), fn(self.d))

    def transpose(self):
        return Mat2(self.a, self.c, self.b, self.d)

    def __eq__(self, other):
        return isinstance(other, Mat2) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    @staticmethod
    def identity(one, zero):
        return Mat2(one, zero, zero, one)


def mat2_pow(m: Mat2, n: int, one, zero) -> Mat2:
    out = Mat2.identity(one, zero)
    base = m
    while n:
        if n & 1:
            out = out * base
        base = base * base
        n >>= 1
    return out


def proj_equal(m: Mat2, n: Mat2) -> bool:
    """Equality in PGL_2: the entry vectors are proportional."""
    me, ne = m.entries(), n.entries()
    for i in range(4):
        for j in range(i + 1, 4):
            if me[i] * ne[j] != me[j] * ne[i]:
                return False
    return True


def rat_mat(field, rows) -> Mat2:
    """Mat2 of RatFunc from any mix of FqPoly/RatFunc/int entries."""
    conv = []
    for x in rows:
        if isinstance(x, RatFunc):
            conv.append(x)
        elif isinstance(x, FqPoly):
            conv.append(RatFunc(x))
        elif isinstance(x, int):
            conv.append(RatFunc.const(field, x % field.p))
        else:
            raise ParseError(f"bad matrix entry {x!r}")
    return Mat2(*conv)


def integral_primitive(m: Mat2) -> Mat2:
    """The canonical integral representative of a PGL_2(K) class: clear
    denominators, divide out the content, make the first nonzero entry
    (scan order a, b, c, d) monic.  Entries come back as FqPoly."""
    ents = m.entries()
    field = None
    for x in ents:
        if isinstance(x, RatFunc):
            field = x.field
            break
        if isinstance(x, FqPoly):
            field = x.field
            break
    if field is None:
        raise ParseError("cannot infer field from matrix entries")
    rats = [x if isinstance(x, RatFunc) else RatFunc(x) for x in ents]
    if all(x.is_zero() for x in rats):
        raise DivisionByZero("zero matrix has no PGL_2 class")
    # lcm of denominators
    lcm = FqPoly.one(field)
    for x in rats:
        g = poly_gcd(lcm, x.den)
        lcm = (lcm // g) * x.den
    polys = [(x.num * (lcm // x.den)) for x in rats]
    content = FqPoly.zero(field)
    for pz in polys:
        content = poly_gcd(content, pz)
    polys = [pz // content for pz in polys]
    for pz in polys:
        if not pz.is_zero():
            lead = pz.leading()
            if lead != 1:
                inv = field.inv(lead)
                polys = [w.scale(inv) for w in polys]
            break
    return Mat2(*polys)


def in_gamma_infty(m: Mat2) -> bool:
    """Membership in PGL_2(F_q[Y]): integral primitive form with unit det."""
    prim = integral_primitive(m)
    dt = prim.det()
    return (not dt.is_zero()) and dt.is_constant()


def gamma_infty_poly_matrix(m: Mat2) -> Mat2:
    """Canonical FqPoly-entry representative of a Gamma_inf element."""
    prim = integral_primitive(m)
    dt = prim.det()
    if dt.is_zero() or not dt.is_constant():
        raise NotInGammaInfty("matrix is not in PGL_2(F_q[Y])")
    return prim


def format_mat2(m: Mat2) -> str:
    def fmt(x):
        if isinstance(x, RatFunc):
            return format_ratfunc(x)
        return str(x)

    return f"{fmt(m.a)},{fmt(m.b)};{fmt(m.c)},{fmt(m.d)}"


def parse_mat2(field, text: str) -> Mat2:
    t = text.strip()
    rows = t.split(";")
    if len(rows) != 2:
        raise ParseError(f"matrix literal needs two rows: {text!r}")
    ents = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise ParseError(f"matrix row needs two entries: {row!r}")
        ents.extend(parse_ratfunc(field, p) for p in parts)
    return Mat2(*ents)
