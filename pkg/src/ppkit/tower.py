"""The canonical quadratic extension F_{q^2}/F_q with basis {1, alpha}.

Odd characteristic uses alpha^2 = u for the least non-square u; even
characteristic uses alpha^2 = alpha + u for the least u of absolute trace 1.
Elements are coordinate pairs (c0, c1) over the base field, encoded as
enc(c0) + q * enc(c1).
"""

from __future__ import annotations

import numpy as np

from . import gf
from .errors import (
    DegreeTooLarge,
    DependentBasis,
    DivisionByZero,
    MixedContexts,
    SingularGram,
)
from .gf import FieldCtx, FieldElem, find_special

TOWER_TABLE_LIMIT = 4096


class TowerCtx:
    """F_{q^2} over a base FieldCtx, with a fixed reduction rule for alpha^2."""

    def __init__(self, base: FieldCtx, u: int, kind: str):
        self.base = base
        self.u = u
        self.kind = kind  # "odd" or "even"
        self.q = base.q
        self.order = base.q**2
        if kind == "odd":
            self._half = base.inv(base.scalar(2))
        self._tables = None

    # -- encoding ------------------------------------------------------------

    def elem(self, enc: int) -> "TowerElem":
        if not 0 <= enc < self.order:
            raise ValueError(f"encoding {enc} out of [0, {self.order})")
        return TowerElem(self, enc)

    def from_coords(self, c0: int, c1: int) -> int:
        return c0 + self.q * c1

    def split(self, x: int) -> tuple[int, int]:
        return x % self.q, x // self.q

    def elements(self):
        return (TowerElem(self, e) for e in range(self.order))

    @property
    def alpha(self) -> "TowerElem":
        return TowerElem(self, self.from_coords(0, 1))

    def embed(self, c0: int) -> int:
        """Encoding of the base-field element c0 inside the tower."""
        return c0

    # -- integer-encoding arithmetic ------------------------------------------

    def add(self, x: int, y: int) -> int:
        b = self.base
        x0, x1 = self.split(x)
        y0, y1 = self.split(y)
        return self.from_coords(b.add(x0, y0), b.add(x1, y1))

    def neg(self, x: int) -> int:
        b = self.base
        x0, x1 = self.split(x)
        return self.from_coords(b.neg(x0), b.neg(x1))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        b = self.base
        x0, x1 = self.split(x)
        y0, y1 = self.split(y)
        cross = b.add(b.mul(x0, y1), b.mul(x1, y0))
        hi = b.mul(x1, y1)
        lo = b.add(b.mul(x0, y0), b.mul(self.u, hi))
        if self.kind == "even":
            # alpha^2 = alpha + u contributes hi to the alpha coordinate too
            cross = b.add(cross, hi)
        return self.from_coords(lo, cross)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            raise ValueError("exponent must be >= 0")
        if x == 0:
            return 1 if e == 0 else 0
        e %= self.order - 1
        result = 1
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(x, self.order - 2)

    def frob(self, x: int) -> int:
        """x^q in coordinates: conjugation by the reduction rule."""
        b = self.base
        x0, x1 = self.split(x)
        if self.kind == "odd":
            return self.from_coords(x0, b.neg(x1))  # alpha^q = -alpha
        return self.from_coords(b.add(x0, x1), x1)  # alpha^q = 1 + alpha

    def trace(self, x: int) -> int:
        """Tr_q^{q^2}(x) as a base-field encoding."""
        t0, t1 = self.split(self.add(x, self.frob(x)))
        assert t1 == 0
        return t0

    def norm(self, x: int) -> int:
        """N_q^{q^2}(x) as a base-field encoding."""
        n0, n1 = self.split(self.mul(x, self.frob(x)))
        assert n1 == 0
        return n0

    # -- dense tables ----------------------------------------------------------

    def tables(self):
        """(ADD, MUL, FROB, NEG) numpy tables over tower encodings."""
        if self._tables is None:
            if self.order > TOWER_TABLE_LIMIT:
                raise DegreeTooLarge(
                    f"q^2={self.order} exceeds table limit {TOWER_TABLE_LIMIT}"
                )
            badd, bmul, bneg, _ = self.base.tables()
            q = self.q
            xs = np.arange(self.order)
            lo, hi = xs % q, xs // q
            add = (
                badd[np.ix_(lo, lo)] + q * badd[np.ix_(hi, hi)]
            ).astype(np.int32)
            cross = badd[bmul[np.ix_(lo, hi)].T, bmul[np.ix_(lo, hi)]]
            hh = bmul[np.ix_(hi, hi)]
            low = badd[bmul[np.ix_(lo, lo)], bmul[self.u][hh]]
            if self.kind == "even":
                cross = badd[cross, hh]
            mul = (low + q * cross).astype(np.int32)
            frob = np.array([self.frob(int(x)) for x in xs], dtype=np.int32)
            neg = (bneg[lo] + q * bneg[hi]).astype(np.int32)
            self._tables = (add, mul, frob, neg)
        return self._tables

    def pow_vec(self, vec: np.ndarray, e: int) -> np.ndarray:
        """Elementwise vec**e via the dense multiplication table."""
        _, mul, _, _ = self.tables()
        if e == 0:  # matches pow: 0**0 == 1
            return np.ones(len(vec), dtype=np.int32)
        e %= self.order - 1
        zero_mask = vec == 0
        result = np.ones(len(vec), dtype=np.int32)
        base = vec.astype(np.int32)
        while e:
            if e & 1:
                result = mul[result, base]
            base = mul[base, base]
            e >>= 1
        result[zero_mask] = 0
        return result

    def __repr__(self):
        return f"TowerCtx(q={self.q}, kind={self.kind}, u={self.u})"


class TowerElem:
    """Element of F_{q^2} as coordinates w.r.t. {1, alpha}."""

    __slots__ = ("ctx", "enc")

    def __init__(self, ctx: TowerCtx, enc: int):
        self.ctx = ctx
        self.enc = enc

    @property
    def c0(self) -> FieldElem:
        return self.ctx.base.elem(self.enc % self.ctx.q)

    @property
    def c1(self) -> FieldElem:
        return self.ctx.base.elem(self.enc // self.ctx.q)

    def _same(self, other) -> int:
        if isinstance(other, int):
            return self.ctx.base.scalar(other)
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx.base:
                raise MixedContexts("base element from another field")
            return other.enc
        if not isinstance(other, TowerElem) or other.ctx is not self.ctx:
            raise MixedContexts("operands from different towers")
        return other.enc

    def __add__(self, other):
        return TowerElem(self.ctx, self.ctx.add(self.enc, self._same(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return TowerElem(self.ctx, self.ctx.sub(self.enc, self._same(other)))

    def __rsub__(self, other):
        return TowerElem(self.ctx, self.ctx.sub(self._same(other), self.enc))

    def __mul__(self, other):
        return TowerElem(self.ctx, self.ctx.mul(self.enc, self._same(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return TowerElem(self.ctx, self.ctx.pow(self.enc, e))

    def __neg__(self):
        return TowerElem(self.ctx, self.ctx.neg(self.enc))

    def __truediv__(self, other):
        return TowerElem(
            self.ctx, self.ctx.mul(self.enc, self.ctx.inv(self._same(other)))
        )

    def __eq__(self, other):
        if isinstance(other, int):
            return self.enc == self.ctx.base.scalar(other)
        return (
            isinstance(other, TowerElem)
            and other.ctx is self.ctx
            and other.enc == self.enc
        )

    def __hash__(self):
        return hash((id(self.ctx), self.enc))

    def __bool__(self):
        return self.enc != 0

    def __repr__(self):
        return f"<{self.enc} in F_{self.ctx.q}^2>"


def build_tower(base: FieldCtx, u: int | None = None) -> TowerCtx:
    """Canonical F_{q^2} over base; u may override the canonical special element."""
    kind = "even" if base.p == 2 else "odd"
    if u is None:
        want = "abs_trace_one" if kind == "even" else "non_square"
        u = find_special(base, want).enc
    else:
        if kind == "odd" and gf.power_class(base, base.elem(u), 2):
            raise ValueError(f"u={u} is a square in F_{base.q}")
        if kind == "even":
            t, _ = gf.trace_and_norm(base, base.elem(u), 2)
            if t.enc != 1:
                raise ValueError(f"u={u} has absolute trace 0")
    return TowerCtx(base, u, kind)


def valid_us(base: FieldCtx) -> list[int]:
    """All admissible u values for a tower over base, in encoding order."""
    if base.p == 2:
        return [
            e
            for e in range(base.q)
            if gf.trace_and_norm(base, base.elem(e), 2)[0].enc == 1
        ]
    return [
        e
        for e in range(1, base.q)
        if not gf.power_class(base, base.elem(e), 2)
    ]


def tower_arith(t: TowerCtx, op: str, x: TowerElem, y=None) -> TowerElem:
    if x.ctx is not t or (isinstance(y, TowerElem) and y.ctx is not t):
        raise MixedContexts("operand does not belong to the tower")
    if op == "neg":
        return -x
    if op == "inv":
        return TowerElem(t, t.inv(x.enc))
    if op == "pow":
        return x**y
    ops = {"add": x.__add__, "sub": x.__sub__, "mul": x.__mul__, "div": x.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](y)


def coords(t: TowerCtx, x: TowerElem) -> tuple[FieldElem, FieldElem]:
    if x.ctx is not t:
        raise MixedContexts("element from another tower")
    return x.c0, x.c1


def from_coords(t: TowerCtx, c0: FieldElem, c1: FieldElem) -> TowerElem:
    if c0.ctx is not t.base or c1.ctx is not t.base:
        raise MixedContexts("coordinates must live in the base field")
    return TowerElem(t, t.from_coords(c0.enc, c1.enc))


def dual_basis(
    t: TowerCtx, basis: tuple[TowerElem, TowerElem]
) -> tuple[TowerElem, TowerElem]:
    """Dual basis w.r.t. the trace form, via the 2x2 Gram system over F_q."""
    a1, a2 = basis
    # linear independence: a1*x = a2 solvable in F_q means dependence
    if a1.enc == 0 or a2.enc == 0:
        raise DependentBasis("zero vector supplied")
    ratio = t.mul(a2.enc, t.inv(a1.enc))
    if ratio % t.q == ratio:  # ratio lies in the base field
        raise DependentBasis("basis vectors are F_q-proportional")
    b = t.base
    g = [[t.trace(t.mul(x.enc, y.enc)) for y in basis] for x in basis]
    det = b.sub(b.mul(g[0][0], g[1][1]), b.mul(g[0][1], g[1][0]))
    if det == 0:
        raise SingularGram("trace Gram matrix is singular")
    dinv = b.inv(det)
    # inverse of the symmetric 2x2 Gram matrix
    inv = [
        [b.mul(dinv, g[1][1]), b.neg(b.mul(dinv, g[0][1]))],
        [b.neg(b.mul(dinv, g[1][0])), b.mul(dinv, g[0][0])],
    ]
    duals = []
    for j in range(2):
        acc = 0
        for k in range(2):
            acc = t.add(acc, t.mul(t.embed(inv[j][k]), basis[k].enc))
        duals.append(TowerElem(t, acc))
    return duals[0], duals[1]


def proof_substitution(t: TowerCtx, delta: TowerElem, y: FieldElem, z: FieldElem) -> TowerElem:
    """The substitution point x(y, z) used throughout the quadratic analysis.

    Odd towers return x = y - (z - b) * alpha / 2, so that
    x^q - x + delta = a + z*alpha.  Even towers return x = y + (z + a) * alpha,
    so that x^q + x + delta = z + b*alpha.  Here (a, b) are the coordinates
    of delta.
    """
    b = t.base
    a_enc, b_enc = t.split(delta.enc)
    if t.kind == "odd":
        c1 = b.neg(b.mul(b.sub(z.enc, b_enc), t._half))
    else:
        c1 = b.add(z.enc, a_enc)
    return TowerElem(t, t.from_coords(y.enc, c1))
