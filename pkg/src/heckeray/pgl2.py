"""Loxodromic elements of Gamma_inf = PGL_2(F_q[Y]): eigen-data, translation
lengths, fixed quadratic irrationals, and the place-nu splitting invariants
(e, d, r) feeding the escaped-mass constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DomainError,
    NotLoxodromic,
    PeriodSearchExhausted,
)
from .laurent import embed_quad
from .matrices import (
    Mat2,
    gamma_infty_poly_matrix,
    integral_primitive,
    mat2_pow,
    rat_mat,
)
from .poly import FqPoly, format_poly, poly_gcd, square_decompose
from .quadratic import QuadElem, QuadField, quad_val_nu, _residue_is_square
from .rational import RatFunc, _poly_val


class LoxodromicData:
    """A loxodromic gamma_0 in Gamma_inf, stored as its canonical GL_2(R_inf)
    representative with unit determinant.

    Carries trace, determinant, Delta = tr^2 - 4 det decomposed as s^2 * core,
    both eigenvalues as exact elements of K(sqrt(core)), the translation
    length ell0 = 2 deg tr, and t0 = lambda_- / lambda_+.
    """

    def __init__(self, mat: Mat2):
        m = gamma_infty_poly_matrix(mat)
        F = m.a.field
        self.field = F
        self.mat = m  # FqPoly entries, det a unit
        tr = m.trace()
        det = m.det()
        self.tr = tr
        self.det_code = det.constant_term()
        if tr.is_zero() or tr.is_constant():
            raise NotLoxodromic(
                f"trace {format_poly(tr)} is constant; element is not loxodromic"
            )
        delta = tr * tr - det.scale(4 % F.p)
        self.delta = delta
        core, s = square_decompose(delta)
        self.core = core
        self.sqrt_scale = s
        self.ell0 = 2 * int(tr.degree)
        self.ctx = QuadField(core)
        half = F.inv(2 % F.p)
        a_part = tr.scale(half)
        b_part = s.scale(half)
        root_plus = QuadElem(self.ctx, a_part, b_part)
        root_minus = QuadElem(self.ctx, a_part, -b_part)
        # lambda_+ has v_inf = -deg tr: its leading terms must not cancel
        lead_tr = tr.leading()
        lead_surd = F.mul(s.leading(), F.sqrt(core.leading()))
        if lead_surd == lead_tr:
            self.lambda_plus, self.lambda_minus = root_plus, root_minus
        elif lead_surd == F.neg(lead_tr):
            self.lambda_plus, self.lambda_minus = root_minus, root_plus
        else:
            raise DomainError("eigenvalue leading-term bookkeeping failed")
        self.t0 = self.lambda_minus / self.lambda_plus

    @property
    def rat_mat(self) -> Mat2:
        return Mat2(*(RatFunc(x) for x in self.mat.entries()))

    def __repr__(self):
        return f"LoxodromicData({format_poly(self.mat.a)},...; ell0={self.ell0})"


def translation_length_infty(m: Mat2) -> int:
    """Translation length on the tree at infinity via Newton slopes of the
    characteristic polynomial; 0 means the element is not loxodromic."""
    tr = m.trace()
    det = m.det()
    if isinstance(tr, FqPoly):
        tr, det = RatFunc(tr), RatFunc(det)
    if det.is_zero():
        raise DomainError("singular matrix")
    vt = tr.val_infty()
    vd = det.val_infty()
    if 2 * vt <= vd:
        return int(abs(vd - 2 * vt))
    return 0


def fixed_quadratic(m: Mat2):
    """(attracting, repelling) fixed points of a loxodromic element of
    PGL_2(K) whose fixed points are irrational."""
    prim = integral_primitive(m)
    if translation_length_infty(prim) == 0:
        raise NotLoxodromic("translation length 0")
    F = prim.a.field
    tr = prim.trace()
    det = prim.det()
    delta = tr * tr - det.scale(4 % F.p)
    core, s = square_decompose(delta)
    if core.is_constant() and F.is_square(core.constant_term()):
        raise NotLoxodromic("fixed points are rational (split trace form)")
    ctx = QuadField(core)
    half = F.inv(2 % F.p)
    lam_p = QuadElem(ctx, tr.scale(half), s.scale(half))
    lam_m = QuadElem(ctx, tr.scale(half), (-s).scale(half))
    # order eigenvalues by v_inf (attracting = larger absolute value)
    vp = _quad_val_infty(lam_p)
    vm = _quad_val_infty(lam_m)
    if vp == vm:
        raise NotLoxodromic("equal eigenvalue valuations")
    if vp > vm:
        lam_p, lam_m = lam_m, lam_p
    if prim.c.is_zero():
        raise NotLoxodromic("upper-triangular element has rational fixed points")
    cinv = RatFunc(prim.c).inv()
    f_att = (lam_p - RatFunc(prim.d)) * cinv
    f_rep = (lam_m - RatFunc(prim.d)) * cinv
    return f_att, f_rep


def _quad_val_infty(x: QuadElem):
    """Exact v_inf of a nonzero element of K(sqrt(core))."""
    if x.is_zero():
        return math.inf
    if x.is_rational():
        return x.as_rat().val_infty()
    prec = 32
    while True:
        emb = embed_quad(x, prec)
        if not emb.is_zeroish():
            return emb.valuation()
        norm_val = x.norm().val_infty()
        if prec > 4 * abs(norm_val) + 256:
            # conjugate pair with wildly unbalanced valuations; fall back
            return norm_val - _quad_val_infty(x.conj())
        prec *= 2


def periodic_point_rep(f: QuadElem) -> Mat2:
    """g_f = [[f, f^sigma], [1, 1]] whose lattice class is A_inf-periodic."""
    one = f.ctx.one()
    return Mat2(f, f.conj(), one, one)


@dataclass(frozen=True)
class SplitData:
    e: int        # ramification index of the splitting field at nu
    d: int        # order of the eigenvalue ratio in the residue field
    r: int        # pi~-adic valuation of (lambda_+/lambda_-)^d - 1
    res_deg: int  # residual degree of the splitting field

    def as_dict(self):
        return {"e": self.e, "d": self.d, "r": self.r}


class _ResQuad:
    """Arithmetic in k_nu[t]/(t^2 - u): elements are (x, y) = x + y t."""

    def __init__(self, pi: FqPoly, u: FqPoly):
        self.pi = pi
        self.u = u % pi

    def mul(self, a, b):
        x1, y1 = a
        x2, y2 = b
        pi, u = self.pi, self.u
        return ((x1 * x2 + y1 * y2 * u) % pi, (x1 * y2 + x2 * y1) % pi)

    def is_one(self, a):
        return a[0].is_one() and a[1].is_zero()

    def is_zero(self, a):
        return a[0].is_zero() and a[1].is_zero()


def _residue_order(pi: FqPoly, u: FqPoly | None, num, den) -> int:
    """Multiplicative order of num/den in k_nu (u None) or k_nu[t]/(t^2-u)."""
    ring = _ResQuad(pi, u if u is not None else FqPoly.zero(pi.field))
    if ring.is_zero(num) or ring.is_zero(den):
        raise DomainError("residue order of non-unit")
    acc_n = num
    acc_d = den
    qnu = pi.field.q ** int(pi.degree)
    for k in range(1, qnu * qnu):
        # num^k == den^k  <=>  (num/den)^k == 1
        if acc_n == acc_d:
            return k
        acc_n = ring.mul(acc_n, num)
        acc_d = ring.mul(acc_d, den)
    raise DomainError("residue order not found (non-unit ratio?)")


def split_data_at_nu(gamma: LoxodromicData, pi: FqPoly) -> SplitData:
    """(e_nu, d_nu, r_nu) of a loxodromic gamma_0 at the place pi_nu."""
    F = gamma.field
    core = gamma.core
    vcore = _poly_val(core, pi) if not core.is_constant() else (
        0 if core.constant_term() != 0 else _bad_core()
    )
    if vcore % 2 == 1:
        e, res_deg, u = 2, 1, None
    else:
        u0 = (core // pi ** vcore) % pi
        if _residue_is_square(u0, pi):
            e, res_deg, u = 1, 1, None
        else:
            e, res_deg, u = 1, 2, u0
    # reductions of lambda_{+-} = (tr +- s sqrt(core))/2 modulo pi~
    tr_bar = gamma.tr % pi
    s_poly = gamma.sqrt_scale
    surd_val2 = 2 * _poly_val(s_poly, pi) + vcore if not s_poly.is_zero() else 10 ** 9
    # surd_val2 = twice the pi~-valuation of s*sqrt(core) when e = 1,
    # and exactly it when e = 2; positive in either case means the surd
    # term vanishes in the residue field.
    half = FqPoly.const(F, F.inv(2 % F.p))
    zero = FqPoly.zero(F)
    if surd_val2 > 0:
        d = 1
    else:
        sbar = (s_poly % pi)
        if res_deg == 2:
            ap = ((tr_bar * half) % pi, (sbar * half) % pi)
            am = ((tr_bar * half) % pi, ((-sbar) * half) % pi)
            d = _residue_order(pi, u, ap, am)
        else:
            # split: sqrt(core) reduces into k_nu via the canonical branch
            from .quadratic import _residue_sqrt

            c0 = _residue_sqrt((core // pi ** vcore) % pi, pi)
            surd_bar = (sbar * c0) % pi
            ap = (((tr_bar + surd_bar) * half) % pi, zero)
            am = (((tr_bar - surd_bar) * half) % pi, zero)
            d = _residue_order(pi, None, ap, am)
    ratio = gamma.lambda_plus / gamma.lambda_minus
    x = ratio ** d - 1
    rv = quad_val_nu(x, pi) if not x.is_zero() else None
    if rv is None:
        raise NotLoxodromic("eigenvalue ratio is a root of unity")
    r_scaled = rv * e
    if r_scaled.denominator != 1 or r_scaled <= 0:
        raise DomainError(f"r_nu = {r_scaled} is not a positive integer")
    return SplitData(e=e, d=d, r=int(r_scaled), res_deg=res_deg)


def _bad_core():
    raise DomainError("zero discriminant core")


def lom(gamma: LoxodromicData, pi: FqPoly) -> tuple[Fraction, SplitData]:
    """The escaped-mass constant r|v_inf(pi)| / (|v_inf(tr)| e d), exact."""
    sd = split_data_at_nu(gamma, pi)
    val = Fraction(sd.r * int(pi.degree), (gamma.ell0 // 2) * sd.e * sd.d)
    return val, sd


def find_primitive_period(m: Mat2, gamma: LoxodromicData, k_max: int, hint: int | None = None):
    """Minimal k >= 1 with m gamma_0^k m^{-1} in PGL_2(F_q[Y]), and that
    conjugate delta as a polynomial matrix.  The associated closed-geodesic
    period is ell0 * k."""
    F = gamma.field
    g = gamma.rat_mat
    madj = m.adj()

    def try_k(k: int, power: Mat2):
        cand = m * power * madj
        prim = integral_primitive(cand)
        dt = prim.det()
        if not dt.is_zero() and dt.is_constant():
            return prim
        return None

    if hint is not None and 1 <= hint <= k_max:
        from .matrices import mat2_pow

        power = mat2_pow(g, hint, RatFunc.one(F), RatFunc.zero(F))
        prim = try_k(hint, power)
        if prim is not None and _is_minimal_k(m, gamma, hint):
            return hint, prim
    power = g
    for k in range(1, k_max + 1):
        prim = try_k(k, power)
        if prim is not None:
            return k, prim
        power = power * g
    raise PeriodSearchExhausted(f"no conjugation exponent k <= {k_max}")


def _is_minimal_k(m: Mat2, gamma: LoxodromicData, k: int) -> bool:
    """The valid exponents form a subgroup kZ, so minimality only needs the
    proper divisors of k."""
    from .matrices import mat2_pow

    F = gamma.field
    g = gamma.rat_mat
    madj = m.adj()
    for ell in _prime_factors(k):
        kk = k // ell
        power = mat2_pow(g, kk, RatFunc.one(F), RatFunc.zero(F))
        cand = integral_primitive(m * power * madj)
        dt = cand.det()
        if not dt.is_zero() and dt.is_constant():
            return False
    return True


def _prime_factors(n: int):
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
