"""Tree combinatorics at both places.

At the finite place nu: spheres of the Bruhat-Tits tree parameterized by
P^1(F_q[Y]/pi^n), the Gamma_inf action by reduction, orbit/cycle counting
(full enumeration, exact fixed-point counting, and the single-ray shortcut),
and the one-dimensional unit orbit lengths.

At the place infinity: heights of points of Gamma_inf \\ PGL_2(K_inf) via
two-row Gauss reduction of Laurent matrices against the degree norm, and
geodesic height profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceeded,
    DomainError,
    NotInGammaInfty,
    OutOfRange,
    PrecisionExhausted,
)
from .field import FiniteField
from .laurent import Laurent
from .matrices import Mat2
from .poly import FqPoly, poly_gcd, poly_xgcd
from .rational import _poly_val


# ---------------------------------------------------------------------------
# spheres at nu: P^1(F_q[Y]/pi^n)
# ---------------------------------------------------------------------------

class SphereContext:
    """The sphere S_nu(n), i.e. P^1(F_q[Y]/pi^n) with canonical points.

    Canonical forms: (0, b) for [1 : b], and (1, a) for [a : 1] with pi | a.
    """

    def __init__(self, pi: FqPoly, n: int):
        if n < 1:
            raise OutOfRange("sphere radius must be >= 1")
        self.pi = pi
        self.n = n
        self.field = pi.field
        self.modulus = pi ** n
        self.deg_mod = int(self.modulus.degree)
        self.q_nu = self.field.q ** int(pi.degree)

    def size(self) -> int:
        return (self.q_nu + 1) * self.q_nu ** (self.n - 1)

    def reduce(self, f: FqPoly) -> FqPoly:
        return f % self.modulus

    def inv_mod(self, f: FqPoly) -> FqPoly:
        g, u, _ = poly_xgcd(f % self.modulus, self.modulus)
        if not g.is_one():
            raise DomainError("non-unit modulo pi^n")
        return u % self.modulus

    def is_unit(self, f: FqPoly) -> bool:
        return not (f % self.pi).is_zero()

    def canonical(self, x: FqPoly, y: FqPoly):
        x, y = self.reduce(x), self.reduce(y)
        if self.is_unit(x):
            return (0, self.reduce(y * self.inv_mod(x)))
        if self.is_unit(y):
            return (1, self.reduce(x * self.inv_mod(y)))
        raise DomainError("non-unimodular pair is not a projective point")

    def base_ray_point(self):
        """The point of the standard ray toward the end fixed by the
        upper-triangular subgroup: [1 : 0]."""
        return (0, FqPoly.zero(self.field))

    def vector_of(self, pt):
        kind, val = pt
        one = FqPoly.one(self.field)
        if kind == 0:
            return (one, val)
        return (val, one)

    def enumerate_points(self, budget: int | None = None):
        if budget is not None and self.size() > budget:
            raise BudgetExceeded(
                f"sphere has {self.size()} points > budget {budget}"
            )
        F = self.field
        q = F.q
        dmod = self.deg_mod
        dpi = int(self.pi.degree)
        for code in range(q ** dmod):
            yield (0, _poly_from_code(F, code, dmod))
        for code in range(q ** (dmod - dpi)):
            t = _poly_from_code(F, code, dmod - dpi)
            yield (1, self.reduce(t * self.pi))

    def point_index(self, pt) -> int:
        kind, val = pt
        if kind == 0:
            return _poly_to_code(self.field, val, self.deg_mod)
        t = val // self.pi
        chart0 = self.field.q ** self.deg_mod
        return chart0 + _poly_to_code(self.field, t, self.deg_mod - int(self.pi.degree))


def _poly_from_code(F: FiniteField, code: int, d: int) -> FqPoly:
    out = []
    for _ in range(d):
        out.append(code % F.q)
        code //= F.q
    return FqPoly(F, out)


def _poly_to_code(F: FiniteField, f: FqPoly, d: int) -> int:
    coeffs = list(f.coeffs) + [0] * (d - len(f.coeffs))
    code = 0
    for c in reversed(coeffs[:d]):
        code = code * F.q + c
    return code


def reduced_matrix(m: Mat2, sphere: SphereContext) -> Mat2:
    """gamma in Gamma_inf reduced modulo pi^n; entries must be integral."""
    ents = []
    for x in m.entries():
        if isinstance(x, FqPoly):
            ents.append(sphere.reduce(x))
        else:
            if not x.den.is_one():
                raise NotInGammaInfty("matrix has non-polynomial entries")
            ents.append(sphere.reduce(x.num))
    return Mat2(*ents)


def gamma_action_on_sphere(gamma_mod: Mat2, pt, sphere: SphereContext):
    x, y = sphere.vector_of(pt)
    nx = sphere.reduce(gamma_mod.a * x + gamma_mod.b * y)
    ny = sphere.reduce(gamma_mod.c * x + gamma_mod.d * y)
    return sphere.canonical(nx, ny)


def orbit_size(gamma_mod: Mat2, pt, sphere: SphereContext, cap: int = 10 ** 7) -> int:
    cur = gamma_action_on_sphere(gamma_mod, pt, sphere)
    k = 1
    while cur != pt:
        cur = gamma_action_on_sphere(gamma_mod, cur, sphere)
        k += 1
        if k > cap:
            raise BudgetExceeded("orbit walk exceeded cap")
    return k


def max_orbit_enumerate(gamma_mod: Mat2, sphere: SphereContext, budget: int = 300_000) -> int:
    """m_n by full sphere enumeration (exact, needs |S| <= budget)."""
    size = sphere.size()
    if size > budget:
        raise BudgetExceeded(f"sphere size {size} exceeds budget {budget}")
    visited = bytearray(sphere.q_nu ** sphere.n + size)
    best = 0
    for pt in sphere.enumerate_points():
        idx = sphere.point_index(pt)
        if visited[idx]:
            continue
        cycle = [pt]
        visited[idx] = 1
        cur = gamma_action_on_sphere(gamma_mod, pt, sphere)
        while cur != pt:
            visited[sphere.point_index(cur)] = 1
            cycle.append(cur)
            cur = gamma_action_on_sphere(gamma_mod, cur, sphere)
        best = max(best, len(cycle))
    return best


def matrix_order_mod(gamma_mod: Mat2, sphere: SphereContext, cap: int = 10 ** 6) -> int:
    """Order of gamma in PGL_2(F_q[Y]/pi^n): least k with gamma^k scalar."""
    acc = gamma_mod
    for k in range(1, cap + 1):
        if (
            acc.b.is_zero()
            and acc.c.is_zero()
            and (acc.a - acc.d).is_zero()
        ):
            return k
        acc = reduced_matrix(acc * gamma_mod, sphere)
    raise BudgetExceeded("matrix order exceeded cap")


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _moebius(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def _content_val(coeffs, pi: FqPoly, cap: int) -> int:
    v = cap
    for c in coeffs:
        if c.is_zero():
            continue
        v = min(v, _poly_val(c, pi))
        if v == 0:
            return 0
    return v


def _residue_roots(coeffs, pi: FqPoly):
    """Roots in k_nu of a (pi-primitive) polynomial with FqPoly coefficients,
    by scanning the residue field."""
    F = pi.field
    dpi = int(pi.degree)
    red = [c % pi for c in coeffs]
    roots = []
    for code in range(F.q ** dpi):
        t = _poly_from_code(F, code, dpi)
        acc = FqPoly.zero(F)
        for c in reversed(red):
            acc = (acc * t + c) % pi
        if acc.is_zero():
            roots.append(t)
    return roots


def _shift_poly(coeffs, r: FqPoly, pi: FqPoly):
    """Coefficients of f(r + pi*s) as a polynomial in s."""
    F = pi.field
    deg = len(coeffs) - 1
    out = [FqPoly.zero(F) for _ in range(deg + 1)]
    # f(r + pi s) = sum_j c_j (r + pi s)^j, expanded by binomials
    for j, c in enumerate(coeffs):
        if c.is_zero():
            continue
        # (r + pi s)^j: term choose(j, i) r^(j-i) pi^i s^i
        term = [FqPoly.one(F)]
        for _ in range(j):
            # multiply (as poly in s) by (r + pi*s)
            new = [FqPoly.zero(F) for _ in range(len(term) + 1)]
            for i, t in enumerate(term):
                new[i] = new[i] + t * r
                new[i + 1] = new[i + 1] + t * pi
            term = new
        for i, t in enumerate(term):
            out[i] = out[i] + c * t
    return out


def _count_roots(coeffs, pi: FqPoly, target: int, srange: int) -> int:
    """#{s mod pi^srange : f(s) = 0 mod pi^target}, exact."""
    q_nu = pi.field.q ** int(pi.degree)
    if target <= 0:
        return q_nu ** srange
    m = _content_val(coeffs, pi, target)
    if m >= target:
        return q_nu ** srange
    if m > 0:
        pim = pi ** m
        return _count_roots([c // pim for c in coeffs], pi, target - m, srange)
    if srange == 0:
        c0 = coeffs[0]
        v0 = target if c0.is_zero() else _poly_val(c0, pi)
        return 1 if v0 >= target else 0
    total = 0
    for r in _residue_roots(coeffs, pi):
        g = _shift_poly(coeffs, r, pi)
        total += _count_roots(g, pi, target, srange - 1)
    return total


def count_fixed_points(mat_mod: Mat2, sphere: SphereContext) -> int:
    """|Fix| of a matrix acting on P^1(F_q[Y]/pi^n), by root counting."""
    A, B, C, D = mat_mod.entries()
    pi, n = sphere.pi, sphere.n
    F = sphere.field
    # chart [1 : t]: B t^2 + (A - D) t - C = 0 mod pi^n
    q_coeffs = [-C, A - D, B]
    total = _count_roots(q_coeffs, pi, n, n)
    # chart [a : 1], pi | a, a = pi u: -C a^2 + (A - D) a + B = 0
    r_coeffs = [B, (A - D) * pi, -C * pi * pi]
    total += _count_roots(r_coeffs, pi, n, n - 1)
    return total


def max_orbit_exact(gamma_mod: Mat2, sphere: SphereContext) -> int:
    """m_n via fixed-point counts over the divisors of the matrix order;
    exact for any n, no enumeration."""
    omega = matrix_order_mod(gamma_mod, sphere)
    divisors = _divisors(omega)
    fix = {}
    acc = gamma_mod
    k = 1
    divset = set(divisors)
    while k <= omega:
        if k in divset:
            fix[k] = count_fixed_points(acc, sphere)
        if k == omega:
            break
        acc = reduced_matrix(acc * gamma_mod, sphere)
        k += 1
    for k in reversed(divisors):
        exact = sum(_moebius(k // dd) * fix[dd] for dd in _divisors(k))
        if exact > 0:
            return k
    raise DomainError("no orbit found (empty sphere?)")


def max_orbit_size(gamma_mod: Mat2, sphere: SphereContext, budget: int = 300_000) -> int:
    """m_n: enumeration when affordable, exact counting beyond."""
    if sphere.size() <= budget:
        return max_orbit_enumerate(gamma_mod, sphere, budget)
    return max_orbit_exact(gamma_mod, sphere)


def unit_orbit_length(lam: FqPoly, a: FqPoly | int, pi: FqPoly, n: int,
                      cap: int = 10 ** 7) -> int:
    """Least k >= 1 with lam^k = a^k mod pi^n, for lam = a mod pi a unit."""
    F = pi.field
    if isinstance(a, int):
        a = FqPoly.const(F, a)
    mod = pi ** n
    lam = lam % mod
    a_red = a % mod
    if not ((lam - a_red) % pi).is_zero():
        raise DomainError("lam is not congruent to a modulo pi")
    if (a % pi).is_zero():
        raise DomainError("a must be a unit")
    diff = lam - a_red
    r_lam = _poly_val(diff, pi) if not diff.is_zero() else math.inf
    if n <= r_lam:
        raise OutOfRange(f"n = {n} <= r_lambda = {r_lam}")
    lk, ak = lam, a_red
    for k in range(1, cap + 1):
        if ((lk - ak) % mod).is_zero():
            return k
        lk = (lk * lam) % mod
        ak = (ak * a_red) % mod
    raise BudgetExceeded("unit orbit exceeded cap")


# ---------------------------------------------------------------------------
# heights at infinity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingType:
    """Double-coset invariant (m1, m2), m1 <= m2; the height is the gap."""

    m1: int
    m2: int

    @property
    def height(self) -> int:
        return self.m2 - self.m1


def _row_valuation(row):
    vals = [e.valuation() for e in row]
    return min(vals)


def _row_lead_vector(row, deg: int):
    """F_q coefficients at exponent `deg` for both entries."""
    return tuple(e.coeff_at(deg) for e in row)


def splitting_type(m: Mat2, guard: int = 8) -> SplittingType:
    """Gauss-type two-row reduction over F_q[Y] against the Laurent degree
    norm.  Certifies the answer only with `guard` digits of slack below the
    smaller row degree; raises PrecisionExhausted otherwise."""
    F = None
    for e in m.entries():
        if isinstance(e, Laurent):
            F = e.field
            break
    if F is None:
        raise DomainError("splitting_type needs Laurent entries")
    r1 = [m.a, m.b]
    r2 = [m.c, m.d]
    det = m.a * m.d - m.b * m.c
    if det.is_zeroish():
        raise PrecisionExhausted("determinant vanishes to precision")
    vdet = det.valuation()
    steps = 0
    while True:
        steps += 1
        if steps > 10000:
            raise DomainError("row reduction failed to terminate")
        v1, v2 = _row_valuation(r1), _row_valuation(r2)
        if v1 == math.inf or v2 == math.inf:
            raise PrecisionExhausted("a row vanished to working precision")
        if -(v1 + v2) < -vdet:
            raise DomainError("row valuations exceeded the determinant bound")
        d1, d2 = -int(v1), -int(v2)
        if d1 < d2:
            r1, r2 = r2, r1
            d1, d2 = d2, d1
        # precision check: both rows must be known `guard` digits below -d2
        for row, dd in ((r1, d1), (r2, d2)):
            for e in row:
                if e.known_floor() > -dd - guard:
                    raise PrecisionExhausted("insufficient guard band")
        lc1 = _row_lead_vector(r1, d1)
        lc2 = _row_lead_vector(r2, d2)
        cross = F.sub(F.mul(lc1[0], lc2[1]), F.mul(lc1[1], lc2[0]))
        if cross != 0:
            m1, m2 = sorted((-d1, -d2))
            return SplittingType(m1, m2)
        # parallel leading vectors: cancel r1's top with c * Y^(d1-d2) * r2
        j = 0 if lc2[0] != 0 else 1
        c = F.div(lc1[j], lc2[j])
        shift = d1 - d2
        r1 = [
            r1[i] - r2[i].shift(shift).scale(c)
            for i in range(2)
        ]


def height_infty(m: Mat2, guard: int = 8) -> tuple[int, SplittingType]:
    st = splitting_type(m, guard)
    return st.height, st


def geodesic_heights(m: Mat2, steps: int, guard: int = 8) -> list[int]:
    """Heights of the vertices m * a_inf^i * base for i = 0..steps-1."""
    out = []
    for i in range(steps):
        shifted = Mat2(m.a, m.b.shift(-i), m.c, m.d.shift(-i))
        h, _ = height_infty(shifted, guard)
        out.append(h)
    return out


# ---------------------------------------------------------------------------
# the modular ray: stabilizer sizes and the stationary height model
# ---------------------------------------------------------------------------

def ray_stabilizer_size(q: int, h: int) -> int:
    """|F_h| in PGL_2: the full finite group at the origin, then the
    upper-triangular groups with deg b <= h along the cuspidal ray."""
    if h == 0:
        return q * (q - 1) * (q + 1)
    return (q - 1) * q ** (h + 1)


def model_height_masses(q: int, parity: int | None, h_max: int) -> dict[int, Fraction]:
    """Stationary model: mass at height h proportional to 1/|F_h|, optionally
    restricted to one parity class and renormalized.  Includes the exact tail
    beyond h_max lumped onto the key h_max + 1."""
    weights = {}
    hs = [h for h in range(0, h_max + 1) if parity is None or h % 2 == parity]
    for h in hs:
        weights[h] = Fraction(1, ray_stabilizer_size(q, h))
    # geometric tail: sum_{h > h_max, parity} 1/((q-1) q^(h+1))
    start = h_max + 1
    if parity is not None:
        if start % 2 != parity:
            start += 1
        ratio_pow = 2
    else:
        ratio_pow = 1
    tail = Fraction(1, (q - 1) * q ** (start + 1)) / (1 - Fraction(1, q ** ratio_pow))
    weights[h_max + 1] = tail
    total = sum(weights.values())
    return {h: w / total for h, w in weights.items()}
