"""Finite fields F_q, q = p^e with p an odd prime (p = 2 allowed for plain
polynomial arithmetic, rejected by the quadratic machinery downstream).

Elements are encoded as integers 0..q-1: the base-p digits of the code are
the coordinates in the polynomial basis 1, x, ..., x^(e-1) of F_q over F_p.
Small lookup tables make element arithmetic O(1) and let polynomial code
vectorize over numpy arrays of codes.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import DivisionByZero, DomainError, ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                raise ParseError(f"q = {q} is not a prime power")
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ParseError(f"q = {q} is not a prime power")
            return p, e
    raise ParseError(f"bad field order {q}")


def _fp_poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        while a and a[-1] == 0:
            a.pop()
    a = a + [0] * (dm - len(a))
    return a[:dm]


def _fp_irreducible(m: list[int], p: int) -> bool:
    # trial division by all monic polynomials of degree <= deg(m)/2
    deg = len(m) - 1
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            div = []
            c = code
            for _ in range(d):
                div.append(c % p)
                c //= p
            div.append(1)
            if all(x == 0 for x in _fp_poly_mod(m, div, p)):
                return False
    return True


def _default_modulus(p: int, e: int) -> list[int]:
    # first monic irreducible of degree e over F_p in code order
    for code in range(p ** e):
        m = []
        c = code
        for _ in range(e):
            m.append(c % p)
            c //= p
        m.append(1)
        if _fp_irreducible(m, p):
            return m
    raise ParseError(f"no irreducible polynomial of degree {e} over F_{p}")


class FiniteField:
    """Arithmetic context for F_q; elements are plain ints 0..q-1."""

    def __init__(self, q: int):
        p, e = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        self.modulus = _default_modulus(p, e) if e > 1 else None
        self._build_tables()

    def _decode(self, code: int) -> list[int]:
        digits = []
        for _ in range(self.e):
            digits.append(code % self.p)
            code //= self.p
        return digits

    def _encode(self, digits: list[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + (d % self.p)
        return out

    def _build_tables(self):
        q, p = self.q, self.p
        if self.e == 1:
            a = np.arange(q, dtype=np.int64)
            self.add_table = (a[:, None] + a[None, :]) % p
            self.mul_table = (a[:, None] * a[None, :]) % p
            self.neg_table = (-a) % p
        else:
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            neg = np.zeros(q, dtype=np.int64)
            decs = [self._decode(c) for c in range(q)]
            for i in range(q):
                neg[i] = self._encode([(-d) % p for d in decs[i]])
                for j in range(q):
                    add[i, j] = self._encode(
                        [(x + y) % p for x, y in zip(decs[i], decs[j])]
                    )
                    prod = _fp_poly_mul(decs[i], decs[j], p)
                    mul[i, j] = self._encode(_fp_poly_mod(prod, self.modulus, p))
            self.add_table = add
            self.mul_table = mul
            self.neg_table = neg
        inv = np.zeros(q, dtype=np.int64)
        for i in range(1, q):
            for j in range(1, q):
                if self.mul_table[i, j] == 1:
                    inv[i] = j
                    break
        self.inv_table = inv
        # decode matrix for vectorized extension-field convolution
        self.digit_table = np.array([self._decode(c) for c in range(q)], dtype=np.int64)
        pows = self.p ** np.arange(self.e, dtype=np.int64)
        self.encode_weights = pows
        if self.e > 1:
            # reduction rows: x^(e+t) expressed in the polynomial basis
            rows = []
            cur = self.modulus[:-1]
            cur = [(-c) % p for c in cur]  # x^e = -(lower part)
            rows.append(list(cur))
            for _ in range(self.e - 2):
                shifted = [0] + cur[:-1]
                carry = cur[-1]
                red = [(shifted[s] + carry * rows[0][s]) % p for s in range(self.e)]
                rows.append(red)
                cur = red
            self.reduction_rows = np.array(rows, dtype=np.int64) if rows else None
        else:
            self.reduction_rows = None
        sq = {}
        for i in range(q):
            sq.setdefault(int(self.mul_table[i, i]), i)
        self.sqrt_table = sq  # square -> least root in code order

    # -- element ops ---------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_q")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        out, base = 1, a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_square(self, a: int) -> bool:
        return a in self.sqrt_table

    def sqrt(self, a: int) -> int:
        """Canonical square root: the least root in the 0..q-1 code order."""
        if a not in self.sqrt_table:
            raise DomainError(f"{a} is not a square in F_{self.q}")
        r = self.sqrt_table[a]
        return min(r, int(self.neg_table[r]))

    def frobenius_root(self, a: int) -> int:
        """The unique p-th root of a (x -> x^(q/p) since x^q = x)."""
        return self.pow(a, self.q // self.p)

    def order(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("order of 0")
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- vectorized ops over numpy arrays of codes ----------------------
    def vec_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add_table[a, b]

    def vec_neg(self, a: np.ndarray) -> np.ndarray:
        return self.neg_table[a]

    def vec_scale(self, s: int, a: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (s * a) % self.p
        return self.mul_table[s, a]

    def vec_convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Polynomial product of two coefficient-code vectors."""
        if len(a) == 0 or len(b) == 0:
            return np.zeros(0, dtype=np.int64)
        if self.e == 1:
            return np.convolve(a.astype(np.int64), b.astype(np.int64)) % self.p
        da = self.digit_table[a]  # (n, e)
        db = self.digit_table[b]  # (m, e)
        n, m, e, p = len(a), len(b), self.e, self.p
        full = np.zeros((n + m - 1, 2 * e - 1), dtype=np.int64)
        for u in range(e):
            for v in range(e):
                full[:, u + v] += np.convolve(da[:, u], db[:, v])
        full %= p
        out = full[:, :e].copy()
        for t in range(e - 1):
            col = full[:, e + t]
            out += col[:, None] * self.reduction_rows[t][None, :]
        out %= p
        return out @ self.encode_weights

    def __repr__(self):
        return f"F_{self.q}"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.q == other.q

    def __hash__(self):
        return hash(("FiniteField", self.q))


@functools.lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    return FiniteField(q)
