"""Arithmetic in F_p and F_{p^m}.

Elements are represented by their integer encoding enc(x) = sum coeffs[i] * p^i,
a bijection onto [0, q).  The modulus is always the least monic irreducible of
degree m under that encoding, so two processes constructing the same (p, m)
agree bit for bit.
"""

from __future__ import annotations

import functools
import math
import os

import numpy as np

from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    InvalidSubfield,
    MixedContexts,
    NoIrreducibleFound,
    NotPrime,
    UnsupportedK,
    WrongCharacteristic,
)

DEFAULT_MAX_Q = 2**16
# Full q x q multiplication tables are only built below this size.
TABLE_LIMIT = 2048


def max_field_size() -> int:
    """Field-size bound; overridable through the PPKIT_MAX_Q env var."""
    return int(os.environ.get("PPKIT_MAX_Q", DEFAULT_MAX_Q))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# dense coefficient-tuple polynomials over F_p
# ---------------------------------------------------------------------------

def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return _poly_trim(a)


def _poly_divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            qc = c * inv_lead % p
            quo[i - db] = qc
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - qc * b[j]) % p
    return _poly_trim(quo), _poly_trim(a)


def _enc_to_poly(e: int, p: int) -> tuple[int, ...]:
    c = []
    while e:
        c.append(e % p)
        e //= p
    return tuple(c)


def _poly_to_enc(c, p: int) -> int:
    e = 0
    for ci in reversed(c):
        e = e * p + ci
    return e


def _is_irreducible(c, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Degree <= 3 reduces to a root check; higher degrees use full trial
    division by every monic polynomial of degree up to deg/2.
    """
    deg = len(c) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if deg <= 3:
        return all(_poly_eval_int(c, x, p) != 0 for x in range(p))
    for d in range(1, deg // 2 + 1):
        for enc in range(p**d, 2 * p**d):  # monic of degree d
            div = _enc_to_poly(enc, p)
            if not _poly_divmod(c, div, p)[1]:
                return False
    return True


def _poly_eval_int(c, x: int, p: int) -> int:
    v = 0
    for ci in reversed(c):
        v = (v * x + ci) % p
    return v


@functools.cache
def _least_irreducible(p: int, m: int) -> tuple[int, ...]:
    if m == 1:
        return (0, 1)  # x itself, by convention for prime fields
    # monic degree-m polynomials in increasing encoding order
    for enc in range(p**m, 2 * p**m):
        c = _enc_to_poly(enc, p)
        if _is_irreducible(c, p):
            return c
    raise NoIrreducibleFound(f"no irreducible of degree {m} over F_{p}")


# ---------------------------------------------------------------------------
# field context and elements
# ---------------------------------------------------------------------------

class FieldCtx:
    """The field F_{p^m} with the canonical (least) irreducible modulus.

    Arithmetic methods work on integer encodings; :class:`FieldElem` is a
    thin typed wrapper.  Immutable after construction, safe to share.
    """

    def __init__(self, p: int, m: int, _token=None):
        if _token is not _CTX_TOKEN:
            raise TypeError("use build_field(p, m)")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = _least_irreducible(p, m)
        self._add_table = None
        self._mul_table = None
        self._neg_table = None
        self._inv_table = None

    # -- encoding ----------------------------------------------------------

    def elem(self, enc: int) -> "FieldElem":
        if not 0 <= enc < self.q:
            raise ValueError(f"encoding {enc} out of [0, {self.q})")
        return FieldElem(self, enc)

    def coeffs(self, enc: int) -> tuple[int, ...]:
        c = _enc_to_poly(enc, self.p)
        return c + (0,) * (self.m - len(c))

    def elements(self):
        return (FieldElem(self, e) for e in range(self.q))

    # -- integer-encoding arithmetic ----------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        if self.m == 1:
            return (x + y) % p
        out = 0
        mult = 1
        for _ in range(self.m):
            out += (x % p + y % p) % p * mult
            x //= p
            y //= p
            mult *= p
        return out

    def neg(self, x: int) -> int:
        p = self.p
        if self.m == 1:
            return (-x) % p
        out = 0
        mult = 1
        for _ in range(self.m):
            out += (-x % p) % p * mult
            x //= p
            mult *= p
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        t = self._mul_table
        if t is not None:
            return int(t[x, y])
        if self.m == 1:
            return x * y % self.p
        prod = _poly_mul(_enc_to_poly(x, self.p), _enc_to_poly(y, self.p), self.p)
        return _poly_to_enc(_poly_mod(prod, self.modulus, self.p), self.p)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        t = self._inv_table
        if t is not None:
            return int(t[x])
        return self.pow(x, self.q - 2)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("exponent must be >= 0")
        if x == 0:
            return 1 if e == 0 else 0  # empty-product convention at e = 0
        e %= self.q - 1
        result = 1
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def scalar(self, n: int) -> int:
        """Embedding of the integer n (image of n * 1)."""
        return n % self.p

    # -- dense tables for vectorized sweeps ---------------------------------

    def tables(self):
        """(ADD, MUL, NEG, INV) numpy tables over encodings; INV[0] = 0."""
        if self._mul_table is None:
            if self.q > TABLE_LIMIT:
                raise DegreeTooLarge(f"q={self.q} exceeds table limit {TABLE_LIMIT}")
            q = self.q
            mul = np.empty((q, q), dtype=np.int32)
            for x in range(q):
                px = _enc_to_poly(x, self.p)
                for y in range(x, q):
                    prod = _poly_mul(px, _enc_to_poly(y, self.p), self.p)
                    v = _poly_to_enc(_poly_mod(prod, self.modulus, self.p), self.p)
                    mul[x, y] = v
                    mul[y, x] = v
            add = np.empty((q, q), dtype=np.int32)
            for x in range(q):
                for y in range(x, q):
                    v = self.add(x, y)
                    add[x, y] = v
                    add[y, x] = v
            neg = np.array([self.neg(x) for x in range(q)], dtype=np.int32)
            inv = np.zeros(q, dtype=np.int32)
            self._add_table = add
            self._neg_table = neg
            self._mul_table = mul
            for x in range(1, q):
                inv[x] = self.pow(x, q - 2)
            self._inv_table = inv
        return self._add_table, self._mul_table, self._neg_table, self._inv_table

    # -- misc ----------------------------------------------------------------

    def serialize(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))


_CTX_TOKEN = object()


@functools.cache
def build_field(p: int, m: int) -> FieldCtx:
    """Construct F_{p^m} with the canonical deterministic modulus."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("m must be >= 1")
    if p**m > max_field_size():
        raise DegreeTooLarge(f"p^m = {p**m} exceeds bound {max_field_size()}")
    return FieldCtx(p, m, _token=_CTX_TOKEN)


class FieldElem:
    """Element of a FieldCtx, identified by its integer encoding."""

    __slots__ = ("ctx", "enc")

    def __init__(self, ctx: FieldCtx, enc: int):
        self.ctx = ctx
        self.enc = enc

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs(self.enc)

    def _same(self, other) -> int:
        if isinstance(other, int):
            return self.ctx.scalar(other)
        if not isinstance(other, FieldElem) or other.ctx is not self.ctx:
            raise MixedContexts("operands from different fields")
        return other.enc

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.enc, self._same(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.enc, self._same(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._same(other), self.enc))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.enc, self._same(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.enc, self._same(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self._same(other), self.enc))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.enc, e))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.enc))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.enc == self.ctx.scalar(other)
        return (
            isinstance(other, FieldElem)
            and other.ctx is self.ctx
            and other.enc == self.enc
        )

    def __hash__(self):
        return hash((id(self.ctx), self.enc))

    def __bool__(self):
        return self.enc != 0

    def __repr__(self):
        return f"<{self.enc} in F_{self.ctx.q}>"


def arith(ctx: FieldCtx, op: str, x: FieldElem, y=None) -> FieldElem:
    """Uniform entry point for field operations on elements of ctx."""
    if x.ctx is not ctx or (isinstance(y, FieldElem) and y.ctx is not ctx):
        raise MixedContexts("operand does not belong to ctx")
    if op == "neg":
        return -x
    if op == "inv":
        return FieldElem(ctx, ctx.inv(x.enc))
    if op == "pow":
        return x**y
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](y)


def _check_subfield(ctx: FieldCtx, sub: int) -> int:
    """Return j with sub = p^j and j | m, or raise InvalidSubfield."""
    p, j, s = ctx.p, 0, 1
    while s < sub:
        s *= p
        j += 1
    if s != sub or j == 0 or ctx.m % j != 0:
        raise InvalidSubfield(f"{sub} is not a subfield order of F_{ctx.q}")
    return j


def frobenius(ctx: FieldCtx, x: FieldElem, base: int, k: int) -> FieldElem:
    """x^(base^k), the k-fold Frobenius relative to the subfield of order base."""
    _check_subfield(ctx, base)
    if k < 0:
        raise ValueError("k must be >= 0")
    out = x.enc
    for _ in range(k):
        out = ctx.pow(out, base)
    return FieldElem(ctx, out)


def trace_and_norm(ctx: FieldCtx, x: FieldElem, sub: int) -> tuple[FieldElem, FieldElem]:
    """Trace and norm of x down to the subfield of order sub."""
    j = _check_subfield(ctx, sub)
    n = ctx.m // j
    tr = 0
    power = x.enc
    for _ in range(n):
        tr = ctx.add(tr, power)
        power = ctx.pow(power, sub)
    if x.enc == 0:
        nm = 0
    else:
        nm = ctx.pow(x.enc, (ctx.q - 1) // (sub - 1)) if sub > 1 else x.enc
    return FieldElem(ctx, tr), FieldElem(ctx, nm)


def in_subfield(ctx: FieldCtx, x: FieldElem, sub: int) -> bool:
    _check_subfield(ctx, sub)
    return ctx.pow(x.enc, sub) == x.enc


def power_class(ctx: FieldCtx, x: FieldElem, k: int) -> bool:
    """True iff x = y^k for some y; zero counts as every power."""
    if k not in (2, 4):
        raise UnsupportedK(f"k={k}; only 2 and 4 supported")
    if x.enc == 0:
        return True
    d = math.gcd(k, ctx.q - 1)
    return ctx.pow(x.enc, (ctx.q - 1) // d) == 1


def is_square(ctx: FieldCtx, x: FieldElem) -> bool:
    return power_class(ctx, x, 2)


def find_special(ctx: FieldCtx, kind: str) -> FieldElem:
    """Least element of the requested kind, in integer-encoding order."""
    if kind == "non_square":
        if ctx.q % 2 == 0:
            raise WrongCharacteristic("non-squares require odd q")
        for e in range(ctx.q):
            if not power_class(ctx, FieldElem(ctx, e), 2):
                return FieldElem(ctx, e)
    elif kind == "abs_trace_one":
        if ctx.p != 2:
            raise WrongCharacteristic("absolute trace one requires even q")
        for e in range(ctx.q):
            t, _ = trace_and_norm(ctx, FieldElem(ctx, e), 2)
            if t.enc == 1:
                return FieldElem(ctx, e)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    raise NoIrreducibleFound("no qualifying element; internal bug")
