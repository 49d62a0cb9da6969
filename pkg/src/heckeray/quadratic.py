"""The quadratic extension K(sqrt(Delta)) and its place-wise valuations.

Elements are (a + b*sqrt(Delta))/c with a, b, c in F_q[Y], normalized so that
gcd(a, b, c) = 1 and c is monic.  Delta is a fixed non-square polynomial;
conjugation flips the sign of b.  Characteristic 2 is rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionByZero,
    DomainError,
    NotIrrational,
    UnsupportedCharacteristic,
)
from .field import FiniteField
from .poly import (
    FqPoly,
    format_poly,
    is_square_poly,
    poly_gcd,
    poly_xgcd,
    square_decompose,
)
from .rational import RatFunc, _poly_val


class QuadField:
    """Context object for K(sqrt(Delta)), Delta a non-square polynomial."""

    def __init__(self, delta: FqPoly):
        F = delta.field
        if F.p == 2:
            raise UnsupportedCharacteristic("quadratic machinery needs p != 2")
        if delta.is_zero() or is_square_poly(delta):
            raise NotIrrational(f"Delta = {format_poly(delta)} is a square in K")
        self.base = F
        self.delta = delta

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.delta == other.delta

    def __hash__(self):
        return hash(("QuadField", self.delta))

    def __repr__(self):
        return f"K(sqrt({format_poly(self.delta)}))"

    # constructors
    def zero(self):
        return QuadElem(self, FqPoly.zero(self.base), FqPoly.zero(self.base))

    def one(self):
        return QuadElem(self, FqPoly.one(self.base), FqPoly.zero(self.base))

    def from_rat(self, x: RatFunc):
        return QuadElem(self, x.num, FqPoly.zero(self.base), x.den)

    def sqrt_delta(self):
        return QuadElem(self, FqPoly.zero(self.base), FqPoly.one(self.base))


class QuadElem:
    __slots__ = ("ctx", "a", "b", "c", "_hash")

    def __init__(self, ctx: QuadField, a: FqPoly, b: FqPoly, c: FqPoly | None = None):
        F = ctx.base
        if c is None:
            c = FqPoly.one(F)
        if c.is_zero():
            raise DivisionByZero("QuadElem with zero denominator")
        if a.is_zero() and b.is_zero():
            a, b, c = FqPoly.zero(F), FqPoly.zero(F), FqPoly.one(F)
        else:
            g = poly_gcd(poly_gcd(a, b), c)
            if not g.is_one():
                a, b, c = a // g, b // g, c // g
            lc = c.leading()
            if lc != 1:
                inv = F.inv(lc)
                a, b, c = a.scale(inv), b.scale(inv), c.scale(inv)
        self.ctx = ctx
        self.a = a
        self.b = b
        self.c = c
        self._hash = None

    # -- structure -------------------------------------------------------
    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self):
        return self.b.is_zero()

    def as_rat(self) -> RatFunc:
        if not self.is_rational():
            raise NotIrrational(f"{self} is irrational")
        return RatFunc(self.a, self.c)

    def conj(self):
        return QuadElem(self.ctx, self.a, -self.b, self.c)

    def trace(self) -> RatFunc:
        return RatFunc(self.a.scale(2), self.c)

    def norm(self) -> RatFunc:
        num = self.a * self.a - self.b * self.b * self.ctx.delta
        return RatFunc(num, self.c * self.c)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, FqPoly, int)):
            other = _coerce(self.ctx, other)
        return (
            isinstance(other, QuadElem)
            and self.ctx == other.ctx
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx.delta, self.a, self.b, self.c))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(self.ctx, other)
        return QuadElem(
            self.ctx,
            self.a * other.c + other.a * self.c,
            self.b * other.c + other.b * self.c,
            self.c * other.c,
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return QuadElem(self.ctx, -self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-_coerce(self.ctx, other))

    def __rsub__(self, other):
        return _coerce(self.ctx, other) - self

    def __mul__(self, other):
        other = _coerce(self.ctx, other)
        d = self.ctx.delta
        return QuadElem(
            self.ctx,
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            self.c * other.c,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of 0 in K(sqrt(Delta))")
        # 1/x = conj(x) * c^2 / (a^2 - b^2 Delta), then renormalize
        n = self.a * self.a - self.b * self.b * self.ctx.delta
        # (a - b sqrt(D))/c * c^2/n = c(a - b sqrt(D))/n
        return QuadElem(self.ctx, self.c * self.a, -(self.c * self.b), n)

    def __truediv__(self, other):
        return self * _coerce(self.ctx, other).inv()

    def __rtruediv__(self, other):
        return _coerce(self.ctx, other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"({format_poly(self.a)}+({format_poly(self.b)})*sqrt({format_poly(self.ctx.delta)}))/({format_poly(self.c)})"


def _coerce(ctx: QuadField, other):
    if isinstance(other, QuadElem):
        if other.ctx != ctx:
            raise DomainError("mixed quadratic fields")
        return other
    if isinstance(other, RatFunc):
        return ctx.from_rat(other)
    if isinstance(other, FqPoly):
        return QuadElem(ctx, other, FqPoly.zero(ctx.base))
    if isinstance(other, int):
        return QuadElem(
            ctx, FqPoly.const(ctx.base, other % ctx.base.p), FqPoly.zero(ctx.base)
        )
    raise DomainError(f"cannot coerce {other!r}")


def quad_minpoly_root(B: RatFunc, C: RatFunc):
    """Both roots of x^2 + B x + C over K, as QuadElem over the core of the
    discriminant; the +sqrt root comes first.

    Raises NotIrrational when the discriminant is a square in K.
    """
    F = B.field
    if F.p == 2:
        raise UnsupportedCharacteristic("p = 2 not supported")
    disc = B * B - 4 * C
    if disc.is_zero():
        raise NotIrrational("repeated root")
    # disc = n/d reduced; n d = core * s^2; sqrt(disc) = (s/d) sqrt(core)
    n, d = disc.num, disc.den
    nd = n * d
    core, s = square_decompose(nd)
    if core.is_constant() and F.is_square(core.constant_term()):
        raise NotIrrational("square discriminant")
    ctx = QuadField(core)
    half = F.inv(2 % F.p)
    # roots: (-B +- (s/d) sqrt(core)) / 2
    minus_b = -B
    a_part = (minus_b.num * d).scale(half)
    b_part = (minus_b.den * s).scale(half)
    c_part = minus_b.den * d
    rootp = QuadElem(ctx, a_part, b_part, c_part)
    rootm = QuadElem(ctx, a_part, -b_part, c_part)
    return rootp, rootm


# -- nu-adic valuation ------------------------------------------------------

def _hensel_sqrt_mod(u: FqPoly, pi: FqPoly, k: int) -> FqPoly:
    """A square root of u modulo pi^k (u a unit square mod pi), canonical
    branch: the residue chosen by FiniteField.sqrt in k_nu = F_q[Y]/pi."""
    F = u.field
    # residue field arithmetic: represent k_nu elements as polys mod pi
    # find s0 with s0^2 = u mod pi by brute force over residue polys is too
    # slow for big q_nu; use the group structure instead: s0 = u^((q_nu+1)/4)
    # only works for q_nu = 3 mod 4, so fall back to Tonelli-style search in
    # the cyclic group when needed.
    s = _residue_sqrt(u % pi, pi)
    mod = pi
    half = F.inv(2 % F.p)
    big = pi ** k
    while _mod_degree(mod) < k * _mod_degree(pi):
        # lift s from mod pi^j to mod pi^(2j): s' = (s + u/s)/2
        modsq = mod * mod
        g, sinv, _ = poly_xgcd(s % modsq, modsq)
        if not g.is_one():
            raise DomainError("hensel sqrt: non-unit")
        s = ((s + (u % modsq) * sinv) % modsq).scale(half)
        mod = modsq
    return s % big


def _mod_degree(f: FqPoly) -> int:
    return int(f.degree)


def _residue_sqrt(u: FqPoly, pi: FqPoly) -> FqPoly:
    """Canonical square root in k_nu = F_q[Y]/(pi): the least root in the
    coefficient-tuple order."""
    F = u.field
    dpi = int(pi.degree)
    qnu = F.q ** dpi
    # exponentiation search: x = u^((qnu+1)/4) when qnu % 4 == 3
    if qnu % 4 == 3:
        x = _pow_mod_poly(u, (qnu + 1) // 4, pi)
        if ((x * x - u) % pi).is_zero():
            return _canonical_residue(x % pi, pi)
    # generic: brute-force over residues (used only for tiny residue fields)
    if qnu <= 6561:
        for code in range(qnu):
            cand = _poly_from_code(F, code, dpi)
            if ((cand * cand - u) % pi).is_zero():
                return _canonical_residue(cand, pi)
        raise DomainError("not a square in the residue field")
    raise DomainError("residue sqrt: residue field too large")


def _canonical_residue(x: FqPoly, pi: FqPoly) -> FqPoly:
    y = (-x) % pi
    x = x % pi
    return min(x, y, key=lambda f: tuple(reversed(f.coeffs)))


def _poly_from_code(F: FiniteField, code: int, d: int) -> FqPoly:
    out = []
    for _ in range(d):
        out.append(code % F.q)
        code //= F.q
    return FqPoly(F, out)


def _pow_mod_poly(base: FqPoly, n: int, mod: FqPoly) -> FqPoly:
    out = FqPoly.one(base.field)
    base = base % mod
    while n:
        if n & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        n >>= 1
    return out


def quad_val_nu(x: QuadElem, pi: FqPoly) -> Fraction:
    """nu-adic valuation of x, normalized so v_nu(pi) = 1 (values in (1/e)Z).

    Non-split cases read the valuation off the norm; the split case pins the
    embedding by Hensel-lifting the canonical square root of Delta and lifts
    until the valuation is certified.
    """
    if x.is_zero():
        raise DomainError("valuation of 0")
    if x.is_rational():
        return Fraction(x.as_rat().v_at(pi))
    delta = x.ctx.delta
    vd = _poly_val(delta, pi)
    vN = x.norm().v_at(pi)
    if vd % 2 == 1:
        return Fraction(vN, 2)  # ramified; may be a half-integer
    u = (delta // pi ** vd) % pi
    if not _residue_is_square(u, pi):
        return Fraction(vN, 2)  # inert; vN is even
    # split: Delta = pi^vd * u with u a square unit; sqrt(Delta) in K_nu
    a, b, c = x.a, x.b, x.c
    vc = _poly_val(c, pi)
    k = max(8, vN + 2 * vc + 8)
    while True:
        s = _hensel_sqrt_mod((delta // pi ** vd), pi, k)
        s_full = (s * pi ** (vd // 2)) % pi ** k
        top = (a + b * s_full) % pi ** k
        if top.is_zero():
            k *= 2
            if k > 16 * (vN + 2 * vc + 8) + 1024:
                raise DomainError("valuation lift failed to certify")
            continue
        vtop = _poly_val(top, pi)
        if vtop < k - 2:
            return Fraction(vtop - vc)
        k *= 2


def _residue_is_square(u: FqPoly, pi: FqPoly) -> bool:
    F = u.field
    u = u % pi
    if u.is_zero():
        return True
    qnu = F.q ** int(pi.degree)
    t = _pow_mod_poly(u, (qnu - 1) // 2, pi)
    return t.is_one()
