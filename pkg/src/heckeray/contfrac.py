"""Continued fractions over K_inf: the exact surd engine and the truncated
Laurent engine.

The exact engine walks complete quotients (P + sqrt(D))/Q with the classical
invariant Q | D - P^2; the finite state space of (P, Q) pairs forces a cycle,
detected by first revisit, which yields the exact preperiod and the minimal
period.  The Laurent engine is the independent cross-check: it iterates
f -> 1/{f} on truncated data and loses precision as it goes.
"""

from __future__ import annotations

import json

from .errors import (
    DomainError,
    NotIrrational,
    NotRealQuadratic,
    PeriodNotFound,
    PrecisionExhausted,
)
from .laurent import Laurent, sqrt_laurent
from .poly import FqPoly, format_poly, parse_poly
from .quadratic import QuadElem
from .rational import RatFunc


class CFExpansion:
    """Eventually periodic expansion: preperiod a_0..a_{r-1}, then a cycle."""

    def __init__(self, preperiod, period):
        self.preperiod = list(preperiod)
        self.period = list(period)

    def __eq__(self, other):
        return (
            isinstance(other, CFExpansion)
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __repr__(self):
        pp = [format_poly(a) for a in self.preperiod]
        pe = [format_poly(a) for a in self.period]
        return f"CFExpansion(preperiod={pp}, period={pe})"

    def quotients(self, n: int):
        """First n partial quotients a_0, a_1, ..."""
        out = list(self.preperiod)
        while len(out) < n:
            if not self.period:
                break
            out.extend(self.period)
        return out[:n]

    def period_degrees(self):
        return [int(a.degree) for a in self.period]

    def to_json(self) -> str:
        return json.dumps(
            {
                "preperiod": [format_poly(a) for a in self.preperiod],
                "period": [format_poly(a) for a in self.period],
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(field, text: str) -> "CFExpansion":
        data = json.loads(text)
        return CFExpansion(
            [parse_poly(field, s) for s in data["preperiod"]],
            [parse_poly(field, s) for s in data["period"]],
        )


class SurdState:
    """Complete quotient (P + sqrt(D))/Q with Q | D - P^2."""

    __slots__ = ("P", "Q", "D", "_sqrt_cache")

    def __init__(self, P: FqPoly, Q: FqPoly, D: FqPoly, _cache=None):
        if Q.is_zero():
            raise DomainError("SurdState with Q = 0")
        rem = (D - P * P) % Q
        if not rem.is_zero():
            raise DomainError("SurdState invariant Q | D - P^2 violated")
        self.P = P
        self.Q = Q
        self.D = D
        self._sqrt_cache = _cache if _cache is not None else {}

    @staticmethod
    def from_quadelem(x: QuadElem) -> "SurdState":
        """Fold (a + b sqrt(Delta))/c into standard (P + sqrt(D))/Q form."""
        if x.is_rational():
            raise NotIrrational("rational element has a terminating expansion")
        F = x.ctx.base
        a, b, c = x.a, x.b, x.c
        delta = x.ctx.delta
        dd = int(delta.degree)
        if dd % 2 != 0 or not F.is_square(delta.leading()):
            raise NotRealQuadratic("Delta has no square root in K_inf")
        D = b * b * c * c * delta
        P = a * c
        Q = c * c
        # sign bookkeeping: sqrt(D) is the canonical root; we need b*c*sqrt(Delta)
        lead_bc = F.mul(b.leading(), c.leading())
        lead_sd = F.sqrt(delta.leading())
        want = F.mul(lead_bc, lead_sd)
        got = F.sqrt(D.leading())
        if want != got:
            P, Q = -P, -Q
        return SurdState(P, Q, D)

    def sqrt_D(self, prec: int) -> Laurent:
        best = self._sqrt_cache.get("s")
        if best is None or self._sqrt_cache["prec"] < prec:
            s = sqrt_laurent(self.D, prec)
            self._sqrt_cache["s"] = s
            self._sqrt_cache["prec"] = prec
            return s
        return best

    def value(self, prec: int) -> Laurent:
        s = self.sqrt_D(prec)
        num = Laurent.from_poly(self.P) + s
        return num.div(Laurent.from_poly(self.Q), prec)

    def step(self):
        """One CF step: returns (partial quotient, next state)."""
        dP = int(self.P.degree) if not self.P.is_zero() else 0
        dD = int(self.D.degree) // 2
        dQ = int(self.Q.degree)
        prec = max(dP, dD) + dQ + 32
        a = self.value(prec).poly_part()
        P1 = a * self.Q - self.P
        num = self.D - P1 * P1
        Q1, rem = num.divrem(self.Q)
        if not rem.is_zero():
            raise DomainError("CF step broke the Q | D - P^2 invariant")
        return a, SurdState(P1, Q1, self.D, self._sqrt_cache)

    def key(self):
        return (self.P, self.Q)


def cf_expand_surd(x: QuadElem, max_steps: int = 2000) -> CFExpansion:
    """Exact eventually-periodic expansion of a quadratic irrational."""
    state = SurdState.from_quadelem(x)
    seen = {}
    quotients = []
    for i in range(max_steps):
        k = state.key()
        if k in seen:
            j = seen[k]
            expansion = CFExpansion(quotients[:j], quotients[j:])
            _validate_quotients(expansion)
            return expansion
        seen[k] = i
        a, state = state.step()
        quotients.append(a)
    raise PeriodNotFound(f"no period within {max_steps} steps")


def _validate_quotients(exp: CFExpansion):
    seq = exp.preperiod + exp.period
    for i, a in enumerate(seq):
        if i >= 1 and a.is_constant():
            raise DomainError(f"partial quotient a_{i} = {format_poly(a)} is constant")


def cf_expand_laurent(f: Laurent, max_steps: int):
    """Partial quotients from truncated Laurent data, while precision lasts.

    Stops early (returning what it has) if the tail becomes zero to
    precision, which is all a truncated representation can certify.
    """
    out = []
    cur = f
    for _ in range(max_steps):
        try:
            a = cur.poly_part()
        except PrecisionExhausted:
            break
        out.append(a)
        rest = cur - Laurent.from_poly(a)
        if rest.is_exact_zero() or rest.is_zero_to_precision():
            break
        try:
            cur = rest.inv()
        except DomainError:
            break
    return out


def convergents(quotients, field):
    """h_k / k_k for the given partial quotients, as RatFunc."""
    hs, ks = [], []
    h_prev2, h_prev1 = FqPoly.one(field), None
    k_prev2, k_prev1 = FqPoly.zero(field), None
    for i, a in enumerate(quotients):
        if i == 0:
            h_prev1, k_prev1 = a, FqPoly.one(field)
        else:
            h_prev1, h_prev2 = a * h_prev1 + h_prev2, h_prev1
            k_prev1, k_prev2 = a * k_prev1 + k_prev2, k_prev1
        hs.append(h_prev1)
        ks.append(k_prev1)
    return [RatFunc(h, k) for h, k in zip(hs, ks)]
