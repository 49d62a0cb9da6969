"""Univariate polynomials over F_q (the ring R = F_q[Y]).

Coefficients are stored ascending-degree as a tuple of field codes with no
trailing zeros; deg 0 = -inf by the usual sentinel so deg(fg) = deg f + deg g
holds identically.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import DivisionByZero, InvalidDegree, ParseError
from .field import FiniteField, GF

NEG_INF = -math.inf


class FqPoly:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FiniteField, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        for x in c:
            if not (0 <= x < field.q):
                raise ParseError(f"coefficient code {x} out of range for F_{field.q}")
        self.field = field
        self.coeffs = tuple(c)
        self._hash = None

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(field):
        return FqPoly(field, ())

    @staticmethod
    def one(field):
        return FqPoly(field, (1,))

    @staticmethod
    def const(field, c):
        return FqPoly(field, (c,))

    @staticmethod
    def gen(field):
        """The variable Y."""
        return FqPoly(field, (0, 1))

    @staticmethod
    def monomial(field, c, k):
        return FqPoly(field, (0,) * k + (c,))

    # -- basic structure -------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def is_one(self):
        return self.coeffs == (1,)

    def leading(self) -> int:
        if not self.coeffs:
            raise DivisionByZero("leading coefficient of 0")
        return self.coeffs[-1]

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FqPoly)
            and self.field.q == other.field.q
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.coeffs))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = F.add(out[i], x)
        return FqPoly(F, out)

    def __neg__(self):
        F = self.field
        return FqPoly(F, [F.neg(x) for x in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, FqPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return FqPoly.zero(F)
        a = np.array(self.coeffs, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        return FqPoly(F, F.vec_convolve(a, b).tolist())

    def scale(self, c: int):
        F = self.field
        if F.e == 1:
            c %= F.p
        if c == 0:
            return FqPoly.zero(F)
        return FqPoly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, k: int):
        """Multiply by Y^k (k >= 0)."""
        if self.is_zero():
            return self
        return FqPoly(self.field, (0,) * k + self.coeffs)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divrem(self, other: "FqPoly"):
        F = self.field
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        inv_lead = F.inv(b[-1])
        q = [0] * max(len(a) - db, 0)
        while len(a) - 1 >= db and a:
            c = F.mul(a[-1], inv_lead)
            shift = len(a) - 1 - db
            q[shift] = c
            for i, bi in enumerate(b):
                a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
            while a and a[-1] == 0:
                a.pop()
        return FqPoly(F, q), FqPoly(F, a)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def __pow__(self, n: int):
        out = FqPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def derivative(self):
        F = self.field
        out = []
        for k in range(1, len(self.coeffs)):
            out.append(F.mul(k % F.p, self.coeffs[k]))
        return FqPoly(F, out)

    def pth_root(self):
        """Exact p-th root of a polynomial whose derivative vanishes."""
        F = self.field
        p = F.p
        out = []
        for k in range(0, len(self.coeffs), p):
            out.append(F.frobenius_root(self.coeffs[k]))
        return FqPoly(F, out)

    def __repr__(self):
        return f"FqPoly({self.field}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


# -- Euclidean toolbox ----------------------------------------------------

def poly_gcd(a: FqPoly, b: FqPoly) -> FqPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_xgcd(a: FqPoly, b: FqPoly):
    """g, u, v with u*a + v*b = g, g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = FqPoly.one(F), FqPoly.zero(F)
    t0, t1 = FqPoly.zero(F), FqPoly.one(F)
    while not r1.is_zero():
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.leading())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def poly_arith(a: FqPoly, b: FqPoly, kind: str):
    """Dispatch entry point mirroring the module contract."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "divrem":
        return a.divrem(b)
    if kind == "gcd":
        return poly_gcd(a, b)
    raise ParseError(f"unknown poly_arith kind {kind!r}")


def _pow_mod(base: FqPoly, n: int, mod: FqPoly) -> FqPoly:
    out = FqPoly.one(base.field)
    base = base % mod
    while n:
        if n & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        n >>= 1
    return out


def is_irreducible(f: FqPoly) -> bool:
    """Deterministic irreducibility test (gcd-with-Frobenius / Rabin)."""
    if f.is_constant():
        raise InvalidDegree("irreducibility undefined for constants")
    F = f.field
    q = F.q
    n = int(f.degree)
    f = f.monic()
    y = FqPoly.gen(F)
    # x^(q^n) == x mod f
    t = y % f
    for _ in range(n):
        t = _pow_mod(t, q, f)
    if t != y % f:
        return False
    for ell in _prime_divisors(n):
        t = y % f
        for _ in range(n // ell):
            t = _pow_mod(t, q, f)
        if not poly_gcd(t - y, f).is_one():
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_part(f: FqPoly) -> FqPoly:
    """Monic product of the distinct irreducible factors of f (char p safe)."""
    if f.is_zero():
        raise DivisionByZero("squarefree part of 0")
    f = f.monic()
    if f.is_constant():
        return FqPoly.one(f.field)
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(f.pth_root())
    g = poly_gcd(f, d)
    w = (f // g).monic()  # primes with multiplicity not divisible by p, once each
    gg = g
    while True:
        c = poly_gcd(gg, w)
        if c.is_one():
            break
        gg = (gg // c).monic()
    # gg now holds exactly the primes of f whose multiplicity is divisible by p
    if gg.is_constant():
        return w
    return (w * squarefree_part(gg)).monic()


def square_decompose(f: FqPoly):
    """Write f = core * s^2 exactly, s monic, core with no square factor."""
    F = f.field
    if f.is_zero():
        return f, FqPoly.one(F)
    if F.p == 2:
        raise ParseError("square decomposition requires odd characteristic")
    s = FqPoly.one(F)
    core = f
    while not core.is_constant():
        d = core.derivative()
        if d.is_zero():
            r = core.pth_root()  # core == r^p exactly
            half = (F.p - 1) // 2
            s = s * r ** half
            core = r
            continue
        g = poly_gcd(core, d)
        if g.is_constant():
            break
        h = squarefree_part(g)  # primes of core with multiplicity >= 2
        if h.is_constant():
            break
        q2, rem = core.divrem(h * h)
        if not rem.is_zero():
            raise DivisionByZero("square_decompose internal: h^2 does not divide f")
        s = s * h
        core = q2
    # move s's leading constant onto core so that s is monic
    lc = s.leading()
    if lc != 1:
        core = core.scale(F.mul(lc, lc))
        s = s.monic()
    return core, s


def is_square_poly(f: FqPoly) -> bool:
    if f.is_zero():
        return True
    core, _ = square_decompose(f)
    return core.is_constant() and f.field.is_square(core.constant_term())


# -- text format -----------------------------------------------------------
# Terms "c*Y^k" joined by "+"; coefficient 1 omitted on nonconstant terms;
# extension-field coefficients print as bracketed base-p digit vectors.

_TERM_RE = re.compile(
    r"^\s*(?:(\[[0-9,\s]*\]|\d+)\s*\*?\s*)?(Y(?:\^(\d+))?)?\s*$"
)


def format_coeff(field: FiniteField, c: int) -> str:
    if field.e == 1:
        return str(c)
    digits = []
    code = c
    for _ in range(field.e):
        digits.append(code % field.p)
        code //= field.p
    return "[" + ",".join(str(d) for d in digits) + "]"


def format_poly(f: FqPoly) -> str:
    if f.is_zero():
        return "0"
    terms = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if c == 0:
            continue
        cs = format_coeff(f.field, c)
        if k == 0:
            terms.append(cs)
        else:
            ypart = "Y" if k == 1 else f"Y^{k}"
            terms.append(ypart if (c == 1) else f"{cs}*{ypart}")
    return "+".join(terms)


def parse_coeff(field: FiniteField, s: str) -> int:
    s = s.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"bad coefficient {s!r}")
        inner = s[1:-1].strip()
        digits = [int(x) % field.p for x in inner.split(",")] if inner else []
        if len(digits) > field.e:
            raise ParseError(f"coefficient vector too long for F_{field.q}: {s!r}")
        digits += [0] * (field.e - len(digits))
        code = 0
        for d in reversed(digits):
            code = code * field.p + d
        return code
    try:
        v = int(s)
    except ValueError as exc:
        raise ParseError(f"bad coefficient {s!r}") from exc
    if field.e == 1:
        return v % field.p
    return v % field.p  # plain integers mean prime-subfield constants


def parse_poly(field: FiniteField, text: str) -> FqPoly:
    t = text.strip().replace(" ", "")
    if not t:
        raise ParseError("empty polynomial")
    # split on +/- at top level (no parentheses in the grammar)
    terms = []
    cur = ""
    sign = 1
    i = 0
    depth = 0
    for ch in t:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch in "+-" and depth == 0 and cur:
            terms.append((sign, cur))
            sign = -1 if ch == "-" else 1
            cur = ""
        elif ch in "+-" and depth == 0 and not cur:
            sign = sign * (-1 if ch == "-" else 1)
        else:
            cur += ch
    if cur:
        terms.append((sign, cur))
    if not terms:
        raise ParseError(f"cannot parse polynomial {text!r}")
    acc = FqPoly.zero(field)
    for sg, term in terms:
        m = _TERM_RE.match(term)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ParseError(f"cannot parse term {term!r} in {text!r}")
        cpart, ypart, kpart = m.group(1), m.group(2), m.group(3)
        c = parse_coeff(field, cpart) if cpart is not None else 1
        k = 0
        if ypart is not None:
            k = int(kpart) if kpart is not None else 1
        if sg < 0:
            c = field.neg(c)
        acc = acc + FqPoly.monomial(field, c, k)
    return acc
